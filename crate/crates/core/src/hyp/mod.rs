//! Poincaré disk primitives: points, distances, isometries and circles.
//!
//! Points are plain [`C64`] values with modulus below one. Functions named
//! `checked_*` validate their inputs; the unchecked forms are used on hot
//! paths where the caller already guarantees membership in the disk.

mod circle;
mod mobius;
pub mod trig;

pub use circle::{circumdisk, HypCircle};
pub use mobius::Mobius;

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

pub type C64 = num_complex::Complex64;

/// Numerical tolerances shared by the geometric predicates and the audits.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    /// Slack for geometric predicates (circle membership, coincidence).
    pub geom: f64,
    /// Slack for closed-form audits.
    pub audit: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { geom: 1e-9, audit: 1e-6 }
    }
}

/// Validates that `z` lies in the open unit disk.
pub fn check_point(z: C64) -> Result<C64> {
    let r = z.norm();
    if !(r < 1.0) {
        return Err(Error::Domain(r));
    }
    Ok(z)
}

/// Hyperbolic distance in the Poincaré disk (curvature -1).
///
/// Evaluated as `2 artanh(|p - q| / |1 - conj(p) q|)`, which keeps full
/// relative precision for nearby points.
pub fn dist(p: C64, q: C64) -> f64 {
    let num = (p - q).norm();
    let den = (C64::new(1.0, 0.0) - p.conj() * q).norm();
    let t = (num / den).min(1.0);
    2.0 * t.atanh()
}

/// [`dist`] with domain validation.
pub fn checked_dist(p: C64, q: C64) -> Result<f64> {
    check_point(p)?;
    check_point(q)?;
    Ok(dist(p, q))
}

/// Distance from the origin.
pub fn dist0(p: C64) -> f64 {
    2.0 * p.norm().min(1.0).atanh()
}

/// Disk point at hyperbolic distance `d` from the origin in direction `theta`.
pub fn polar(d: f64, theta: f64) -> C64 {
    C64::from_polar((d / 2.0).tanh(), theta)
}

/// Point at distance `t` from `p` along the geodesic towards `q`.
pub fn along(p: C64, q: C64, t: f64) -> C64 {
    let to0 = Mobius::recenter(p);
    let w = to0.apply(q);
    to0.inverse().apply(polar(t, w.arg()))
}

/// Hyperbolic midpoint of the segment `pq`.
pub fn midpoint(p: C64, q: C64) -> C64 {
    along(p, q, dist(p, q) / 2.0)
}

/// Poincaré to Klein coordinates.
pub fn to_klein(z: C64) -> C64 {
    z * (2.0 / (1.0 + z.norm_sqr()))
}

/// Klein to Poincaré coordinates.
pub fn from_klein(k: C64) -> C64 {
    k / (1.0 + (1.0 - k.norm_sqr()).max(0.0).sqrt())
}

/// Orientation of `p` relative to the oriented geodesic through `a` and `b`:
/// positive on the left, negative on the right, magnitude comparable to a
/// hyperbolic distance for nearby points.
pub fn side_of_geodesic(a: C64, b: C64, p: C64) -> f64 {
    let s = Mobius::from_segment(a, b).inverse();
    let w = s.apply(p);
    // In this frame the geodesic is the real diameter; Klein ordinate is a
    // monotone proxy for signed distance.
    to_klein(w).im
}

/// Interior angle at `a` of the geodesic triangle `abc` (conformal model).
pub fn angle_at(a: C64, b: C64, c: C64) -> f64 {
    let m = Mobius::recenter(a);
    let u = m.apply(b);
    let v = m.apply(c);
    (u.conj() * v).arg().abs()
}

/// Signed area orientation of the hyperbolic triangle `abc`; positive when
/// counterclockwise. Hyperbolic and Euclidean orientation agree after
/// recentring since geodesics through the origin are diameters.
pub fn orient(a: C64, b: C64, c: C64) -> f64 {
    let m = Mobius::recenter(a);
    let u = m.apply(b);
    let v = m.apply(c);
    u.re * v.im - u.im * v.re
}

/// Foot of the perpendicular from `p` onto the geodesic with ideal endpoints
/// `e1`, `e2`.
pub fn project_to_geodesic(e1: C64, e2: C64, p: C64) -> C64 {
    let s = Mobius::ideal_frame(e1, e2);
    let w = s.apply(p);
    let k = to_klein(w);
    s.inverse().apply(from_klein(C64::new(k.re, 0.0)))
}

/// Distance from `p` to the geodesic with ideal endpoints `e1`, `e2`.
pub fn dist_to_geodesic(e1: C64, e2: C64, p: C64) -> f64 {
    dist(p, project_to_geodesic(e1, e2, p))
}

/// Distance from `p` to the geodesic segment `[a, b]`.
pub fn dist_to_segment(a: C64, b: C64, p: C64) -> f64 {
    let s = Mobius::from_segment(a, b).inverse();
    let w = s.apply(p);
    let end = to_klein(s.apply(b)).re;
    let foot = to_klein(w).re.clamp(0.0, end);
    dist(w, from_klein(C64::new(foot, 0.0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    // Textbook form, kept independent of the artanh implementation.
    fn dist_acosh(p: C64, q: C64) -> f64 {
        let num = 2.0 * (p - q).norm_sqr();
        let den = (1.0 - p.norm_sqr()) * (1.0 - q.norm_sqr());
        (1.0 + num / den).acosh()
    }

    #[test]
    fn radial_distance_is_ln3() {
        let d = dist(C64::new(0.0, 0.0), C64::new(0.5, 0.0));
        assert_relative_eq!(d, 3f64.ln(), epsilon = 1e-14);
        assert_relative_eq!(d, dist_acosh(C64::new(0.0, 0.0), C64::new(0.5, 0.0)), epsilon = 1e-14);
    }

    #[test]
    fn boundary_point_is_rejected() {
        assert!(matches!(checked_dist(C64::new(1.0, 0.0), C64::new(0.0, 0.0)), Err(Error::Domain(_))));
    }

    #[test]
    fn projection_onto_diameter() {
        let f = project_to_geodesic(C64::new(-1.0, 0.0), C64::new(1.0, 0.0), C64::new(0.3, 0.4));
        assert!(f.im.abs() < 1e-14);
        // Perpendicular from the foot reaches p at a right angle.
        let a = angle_at(f, C64::new(0.9, 0.0), C64::new(0.3, 0.4));
        assert_relative_eq!(a, std::f64::consts::FRAC_PI_2, epsilon = 1e-12);
    }

    fn disk_point() -> impl Strategy<Value = C64> {
        (0.0f64..0.95, 0.0f64..std::f64::consts::TAU).prop_map(|(r, t)| C64::from_polar(r, t))
    }

    proptest! {
        #[test]
        fn distance_axioms(p in disk_point(), q in disk_point(), r in disk_point()) {
            let pq = dist(p, q);
            prop_assert!(pq >= 0.0);
            prop_assert!((pq - dist(q, p)).abs() < 1e-12);
            prop_assert!(dist(p, p) < 1e-15);
            prop_assert!(pq <= dist(p, r) + dist(r, q) + 1e-9);
            prop_assert!((pq - dist_acosh(p, q)).abs() < 1e-7 * (1.0 + pq));
        }

        #[test]
        fn along_hits_requested_distance(p in disk_point(), q in disk_point(), s in 0.0f64..1.0) {
            prop_assume!(dist(p, q) > 1e-6);
            let d = dist(p, q);
            let x = along(p, q, s * d);
            prop_assert!((dist(p, x) - s * d).abs() < 1e-8);
            prop_assert!((dist(x, q) - (1.0 - s) * d).abs() < 1e-8);
        }

        #[test]
        fn segment_distance_bounded_by_endpoints(a in disk_point(), b in disk_point(), p in disk_point(), s in 0.0f64..1.0) {
            prop_assume!(dist(a, b) > 1e-6);
            let d = dist_to_segment(a, b, p);
            prop_assert!(d <= dist(a, p).min(dist(b, p)) + 1e-9);
            // No sampled point of the segment is closer than the reported value.
            let x = along(a, b, s * dist(a, b));
            prop_assert!(d <= dist(x, p) + 1e-9);
        }
    }
}
