//! Closed-form hyperbolic trigonometry used across the crate.

use crate::error::{Error, Result};
use std::f64::consts::PI;

fn positive(what: &'static str, value: f64) -> Result<f64> {
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Argument { what, value })
    }
}

/// Width of the standard collar about a simple closed geodesic of length `l`.
pub fn collar_width(l: f64) -> Result<f64> {
    positive("collar_width", l)?;
    Ok((1.0 / (l / 2.0).sinh()).asinh())
}

/// Half-width of the ε-thin cylinder about a geodesic of length `l`:
/// `arccosh(sinh ε / sinh(l/2))`.
pub fn cylinder_halfwidth(l: f64, eps: f64) -> Result<f64> {
    positive("cylinder_halfwidth (length)", l)?;
    positive("cylinder_halfwidth (epsilon)", eps)?;
    let ratio = eps.sinh() / (l / 2.0).sinh();
    if ratio < 1.0 {
        return Err(Error::Argument { what: "cylinder_halfwidth (l > 2 eps)", value: l });
    }
    Ok(ratio.acosh())
}

/// Length of the common perpendicular between the boundary geodesics of
/// lengths `l1` and `l2` in a pair of pants with third boundary `l3`.
pub fn hexagon_orthogeodesic(l1: f64, l2: f64, l3: f64) -> Result<f64> {
    positive("hexagon_orthogeodesic", l1)?;
    positive("hexagon_orthogeodesic", l2)?;
    positive("hexagon_orthogeodesic", l3)?;
    let (h1, h2, h3) = (l1 / 2.0, l2 / 2.0, l3 / 2.0);
    Ok(((h3.cosh() + h1.cosh() * h2.cosh()) / (h1.sinh() * h2.sinh())).acosh())
}

/// Hypotenuse of a right triangle with legs `a`, `b`.
pub fn pythagoras(a: f64, b: f64) -> f64 {
    (a.cosh() * b.cosh()).acosh()
}

/// Area of a hyperbolic disk of radius `r`.
pub fn disk_area(r: f64) -> f64 {
    2.0 * PI * (r.cosh() - 1.0)
}

/// Side length of the equilateral triangle with interior angles `alpha`.
pub fn equilateral_side(alpha: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha < PI / 3.0) {
        return Err(Error::Argument { what: "equilateral_side (alpha)", value: alpha });
    }
    let c = alpha.cos();
    Ok((c / (1.0 - c)).acosh())
}

/// Translation length `2 arccosh(|tr|/2)` of a hyperbolic element.
pub fn translation_length_from_trace(trace: f64) -> Result<f64> {
    let t = trace.abs() / 2.0;
    if !(t > 1.0) {
        return Err(Error::Argument { what: "translation_length (|tr| <= 2)", value: trace });
    }
    Ok(2.0 * t.acosh())
}
