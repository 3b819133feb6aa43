use super::{polar, C64};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Orientation-preserving isometry of the disk, `z -> (a z + b) / (conj(b) z + conj(a))`
/// with `|a|^2 - |b|^2 = 1`.
///
/// The normalisation is restored after every composition so long products
/// do not drift off SU(1,1).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Mobius {
    pub a: C64,
    pub b: C64,
}

impl Default for Mobius {
    fn default() -> Self {
        Mobius::identity()
    }
}

impl Mobius {
    pub fn identity() -> Self {
        Mobius { a: C64::new(1.0, 0.0), b: C64::new(0.0, 0.0) }
    }

    /// Builds and normalises a map; fails when `|a| <= |b|`.
    pub fn new(a: C64, b: C64) -> Result<Self> {
        let det = a.norm_sqr() - b.norm_sqr();
        if !(det > 0.0) || !det.is_finite() {
            return Err(Error::Argument { what: "Mobius::new (|a|^2 - |b|^2)", value: det });
        }
        let s = det.sqrt();
        Ok(Mobius { a: a / s, b: b / s })
    }

    fn normalized(a: C64, b: C64) -> Self {
        let s = (a.norm_sqr() - b.norm_sqr()).sqrt();
        Mobius { a: a / s, b: b / s }
    }

    pub fn apply(&self, z: C64) -> C64 {
        (self.a * z + self.b) / (self.b.conj() * z + self.a.conj())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Mobius) -> Mobius {
        let a = self.a * other.a + self.b * other.b.conj();
        let b = self.a * other.b + self.b * other.a.conj();
        Mobius::normalized(a, b)
    }

    pub fn inverse(&self) -> Mobius {
        Mobius { a: self.a.conj(), b: -self.b }
    }

    /// Trace of the SU(1,1) matrix, defined up to sign.
    pub fn trace(&self) -> f64 {
        2.0 * self.a.re
    }

    pub fn is_hyperbolic(&self) -> bool {
        self.a.re.abs() > 1.0 + 1e-12
    }

    /// `2 arccosh(|tr| / 2)` for hyperbolic maps, zero otherwise.
    pub fn translation_length(&self) -> f64 {
        let t = self.a.re.abs();
        if t <= 1.0 {
            0.0
        } else {
            2.0 * t.acosh()
        }
    }

    /// Rotation about the origin by `theta`.
    pub fn rotation(theta: f64) -> Mobius {
        let h = C64::from_polar(1.0, theta / 2.0);
        Mobius { a: h, b: C64::new(0.0, 0.0) }
    }

    /// Translation by `d` along the real diameter, towards `+1`.
    pub fn translation_x(d: f64) -> Mobius {
        Mobius { a: C64::new((d / 2.0).cosh(), 0.0), b: C64::new((d / 2.0).sinh(), 0.0) }
    }

    /// The transvection along the diameter through `p` sending `p` to the origin.
    pub fn recenter(p: C64) -> Mobius {
        let s = (1.0 - p.norm_sqr()).sqrt();
        Mobius { a: C64::new(1.0 / s, 0.0), b: -p / s }
    }

    /// Isometry sending the origin to `p` and the positive real direction
    /// to the direction of the geodesic from `p` towards `q`.
    pub fn from_segment(p: C64, q: C64) -> Mobius {
        let to0 = Mobius::recenter(p);
        let w = to0.apply(q);
        to0.inverse().compose(&Mobius::rotation(w.arg()))
    }

    /// Isometry sending the origin to `p` with the positive real direction
    /// turned to angle `theta` (measured at `p` in the conformal model).
    pub fn from_point_dir(p: C64, theta: f64) -> Mobius {
        Mobius::recenter(p).inverse().compose(&Mobius::rotation(theta))
    }

    /// The isometry carrying segment `p1 p2` onto `q1 q2`, assuming equal
    /// lengths.
    pub fn segment_to_segment(p1: C64, p2: C64, q1: C64, q2: C64) -> Mobius {
        Mobius::from_segment(q1, q2).compose(&Mobius::from_segment(p1, p2).inverse())
    }

    /// Isometry sending the ideal points `e1`, `e2` to `-1` and `+1`.
    pub fn ideal_frame(e1: C64, e2: C64) -> Mobius {
        let u1 = e1 / e1.norm();
        let u2 = e2 / e2.norm();
        let half = ((u2 * u1.conj()).arg() / 2.0).abs();
        let dir = (u1 + u2).arg();
        let r = if (u1 + u2).norm() < 1e-15 { 0.0 } else { (1.0 - half.sin()) / half.cos() };
        let m = C64::from_polar(r, dir);
        let s0 = Mobius::recenter(m);
        let t = s0.apply(u2);
        Mobius::rotation(-t.arg()).compose(&s0)
    }

    /// Repelling and attracting fixed points of a hyperbolic map.
    pub fn fixed_points(&self) -> Option<(C64, C64)> {
        if !self.is_hyperbolic() {
            return None;
        }
        let root = (self.a.re * self.a.re - 1.0).sqrt();
        let bc = self.b.conj();
        if bc.norm() < 1e-300 {
            return None;
        }
        let i_im = C64::new(0.0, self.a.im);
        let z1 = (i_im + root) / bc;
        let z2 = (i_im - root) / bc;
        let deriv = |z: C64| 1.0 / (bc * z + self.a.conj()).norm_sqr();
        if deriv(z1) < 1.0 {
            Some((z2, z1))
        } else {
            Some((z1, z2))
        }
    }

    /// Displacement `d(z, self(z))`.
    pub fn displacement(&self, z: C64) -> f64 {
        super::dist(z, self.apply(z))
    }

    /// Largest coefficient deviation from `other`, used to compare maps.
    pub fn distance_to(&self, other: &Mobius) -> f64 {
        let d1 = (self.a - other.a).norm().max((self.b - other.b).norm());
        let d2 = (self.a + other.a).norm().max((self.b + other.b).norm());
        d1.min(d2)
    }

    /// Point at distance `d` from the origin along direction `theta` mapped by `self`.
    pub fn polar_image(&self, d: f64, theta: f64) -> C64 {
        self.apply(polar(d, theta))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyp::dist;
    use proptest::prelude::*;

    fn mobius() -> impl Strategy<Value = Mobius> {
        (0.0f64..0.9, 0.0f64..6.3, 0.0f64..6.3).prop_map(|(r, t, phi)| Mobius::from_point_dir(C64::from_polar(r, t), phi))
    }
    fn point() -> impl Strategy<Value = C64> {
        (0.0f64..0.9, 0.0f64..6.3).prop_map(|(r, t)| C64::from_polar(r, t))
    }

    #[test]
    fn translation_length_of_x_translation() {
        let t = Mobius::translation_x(1.25);
        assert!((t.translation_length() - 1.25).abs() < 1e-13);
        let (r, a) = t.fixed_points().unwrap();
        assert!((r - C64::new(-1.0, 0.0)).norm() < 1e-12);
        assert!((a - C64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn non_positive_determinant_rejected() {
        assert!(Mobius::new(C64::new(0.5, 0.0), C64::new(1.0, 0.0)).is_err());
    }

    #[test]
    fn ideal_frame_sends_endpoints() {
        let e1 = C64::from_polar(1.0, 0.3);
        let e2 = C64::from_polar(1.0, 2.1);
        let s = Mobius::ideal_frame(e1, e2);
        assert!((s.apply(e1) - C64::new(-1.0, 0.0)).norm() < 1e-10);
        assert!((s.apply(e2) - C64::new(1.0, 0.0)).norm() < 1e-10);
    }

    proptest! {
        #[test]
        fn isometry_and_group_laws(f in mobius(), g in mobius(), p in point(), q in point()) {
            prop_assert!((dist(f.apply(p), f.apply(q)) - dist(p, q)).abs() < 1e-8);
            let fg = f.compose(&g);
            prop_assert!((fg.a.norm_sqr() - fg.b.norm_sqr() - 1.0).abs() < 1e-10);
            prop_assert!((fg.apply(p) - f.apply(g.apply(p))).norm() < 1e-10);
            prop_assert!((f.compose(&f.inverse()).distance_to(&Mobius::identity())) < 1e-10);
            let tr1 = fg.trace().abs();
            let tr2 = g.compose(&f).trace().abs();
            prop_assert!((tr1 - tr2).abs() < 1e-9 * (1.0 + tr1));
        }

        #[test]
        fn segment_map_matches_endpoints(p in point(), d in 0.1f64..3.0, t1 in 0.0f64..6.3, t2 in 0.0f64..6.3) {
            let p2 = super::super::along(p, C64::from_polar(0.99, t1), d);
            let q = C64::from_polar(0.2, t2);
            let q2 = super::super::along(q, C64::from_polar(0.99, t1 + 1.0), d);
            let m = Mobius::segment_to_segment(p, p2, q, q2);
            prop_assert!((m.apply(p) - q).norm() < 1e-9);
            prop_assert!(dist(m.apply(p2), q2) < 1e-7);
        }
    }
}
