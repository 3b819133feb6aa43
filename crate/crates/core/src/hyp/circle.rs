use super::{dist, Mobius, C64};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// A compact hyperbolic disk, stored by hyperbolic centre and radius.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HypCircle {
    pub center: C64,
    pub radius: f64,
}

impl HypCircle {
    /// Signed depth of `p`: positive when `p` is strictly inside.
    pub fn depth(&self, p: C64) -> f64 {
        self.radius - dist(self.center, p)
    }

    /// Closed-disk membership with slack `tol`.
    pub fn contains(&self, p: C64, tol: f64) -> bool {
        self.depth(p) >= -tol
    }

    /// Strict interior membership with slack `tol`.
    pub fn strictly_contains(&self, p: C64, tol: f64) -> bool {
        self.depth(p) > tol
    }

    /// Euclidean centre and radius of the same circle.
    pub fn euclidean(&self) -> (C64, f64) {
        let m = Mobius::recenter(self.center).inverse();
        let rho = (self.radius / 2.0).tanh();
        // Image of the Euclidean circle |z| = rho: take the two points on the
        // diameter through the centre and average.
        let dir = if self.center.norm() > 1e-300 { self.center / self.center.norm() } else { C64::new(1.0, 0.0) };
        let p1 = m.apply(dir * rho);
        let p2 = m.apply(-dir * rho);
        ((p1 + p2) / 2.0, (p1 - p2).norm() / 2.0)
    }
}

/// Circumscribed hyperbolic disk of three points.
///
/// Collinear points yield [`Error::DegenerateTriangle`]; a circumcircle that
/// is a horocycle or hypercycle yields [`Error::NoCompactCircumdisk`].
pub fn circumdisk(a: C64, b: C64, c: C64) -> Result<HypCircle> {
    for z in [a, b, c] {
        super::check_point(z)?;
    }
    // Work with `a` at the origin: hyperbolic collinearity becomes
    // Euclidean collinearity and the conditioning does not depend on where
    // the triangle sits in the disk.
    let m = Mobius::recenter(a);
    let (u, v) = (m.apply(b), m.apply(c));
    let cross = u.re * v.im - u.im * v.re;
    let scale = u.norm() * v.norm() * (u - v).norm();
    if cross.abs() <= 1e-14 * scale.max(1e-300) {
        return Err(Error::DegenerateTriangle);
    }
    // Euclidean circumcentre of 0, u, v.
    let d = 2.0 * cross;
    let (un, vn) = (u.norm_sqr(), v.norm_sqr());
    let e = C64::new((v.im * un - u.im * vn) / d, (u.re * vn - v.re * un) / d);
    let rho = e.norm();
    if e.norm() + rho >= 1.0 - 1e-15 {
        return Err(Error::NoCompactCircumdisk);
    }
    // The circle passes through the origin; along the diameter through its
    // Euclidean centre it spans [0, 2 rho] (signed), so its hyperbolic
    // centre is the hyperbolic midpoint of 0 and 2 rho e/|e|.
    let far = 2.0 * rho;
    let r = far.atanh();
    let center0 = e / rho * (r / 2.0).tanh();
    Ok(HypCircle { center: m.inverse().apply(center0), radius: r })
}
