//! The ε-thin part of a surface, its cylinders, and the point sets placed in
//! and around them.

mod audit;
mod net;
mod standard;

pub use audit::{appendix_a_audit, collar_margin_audit, standard_cycle_audit, AppendixAReport, CollarReport, CycleCoverReport};
pub use net::{thick_net, thick_net_with, EpsilonNet, NetOptions};
pub use standard::{standard_cycle, standard_triangulation, CylinderLift, LiftRef, StandardCycle, StandardTriangulation};

use crate::error::{Error, Result};
use crate::hyp::{self, trig, Mobius, C64};
use crate::surface::geodesics::{short_geodesics, ClosedGeodesic};
use crate::surface::Atlas;
use serde::{Deserialize, Serialize};

/// Default thin-part parameter.
pub const EPSILON: f64 = 0.72;
/// Ratio `ε' / ε` separating thin from thick cylinders.
pub const EPSILON_PRIME_RATIO: f64 = 0.99;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CylinderClass {
    Thin,
    Thick,
}

/// A component of the ε-thin part: a collar around a closed geodesic of
/// length below `2ε`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Cylinder {
    pub waist: ClosedGeodesic,
    pub length: f64,
    /// Distance from the waist to either boundary curve.
    pub k_c: f64,
    pub class: CylinderClass,
    pub epsilon: f64,
    /// Point on the waist where the first waist vertex goes, in the frame of
    /// `waist.chart`.
    pub base: C64,
}

/// Classifies a waist length against `2ε' = 2 · 0.99 ε`.
pub fn classify(length: f64, eps: f64) -> CylinderClass {
    if length < 2.0 * EPSILON_PRIME_RATIO * eps {
        CylinderClass::Thin
    } else {
        CylinderClass::Thick
    }
}

impl Cylinder {
    pub fn new(waist: ClosedGeodesic, base: C64, eps: f64) -> Result<Self> {
        let length = waist.length;
        if length >= 2.0 * eps {
            return Err(Error::WrongClassification { length, expected: "shorter than 2 epsilon" });
        }
        let k_c = trig::cylinder_halfwidth(length, eps)?;
        Ok(Cylinder { waist, length, k_c, class: classify(length, eps), epsilon: eps, base })
    }

    /// Coordinates along and across the waist, in the frame of `waist.chart`.
    pub fn frame(&self, atlas: &Atlas) -> Result<WaistFrame> {
        WaistFrame::new(self.waist.chart, self.waist.element(atlas)?, self.base)
    }
}

/// Fermi coordinates about the axis of a waist element.
#[derive(Clone, Debug)]
pub struct WaistFrame {
    pub chart: usize,
    pub element: Mobius,
    /// Sends the axis to the real diameter, translating towards `+1`.
    to_axis: Mobius,
    offset: f64,
}

impl WaistFrame {
    pub fn new(chart: usize, element: Mobius, base: C64) -> Result<Self> {
        let (rep, att) = element
            .fixed_points()
            .ok_or(Error::Argument { what: "waist frame (non-hyperbolic element)", value: element.translation_length() })?;
        let to_axis = Mobius::ideal_frame(rep, att);
        let b = to_axis.apply(base);
        let foot = hyp::to_klein(b).re;
        let offset = 2.0 * hyp::from_klein(C64::new(foot, 0.0)).re.atanh();
        Ok(WaistFrame { chart, element, to_axis, offset })
    }

    /// Point at arc length `s` along the waist from the base point and
    /// signed distance `h` from it (positive to the left).
    pub fn point(&self, s: f64, h: f64) -> C64 {
        let p = if h >= 0.0 { hyp::polar(h, std::f64::consts::FRAC_PI_2) } else { hyp::polar(-h, -std::f64::consts::FRAC_PI_2) };
        self.to_axis.inverse().compose(&Mobius::translation_x(self.offset + s)).apply(p)
    }

    /// Signed distance of `z` from the axis.
    pub fn height(&self, z: C64) -> f64 {
        let w = self.to_axis.apply(z);
        let d = hyp::dist(w, hyp::from_klein(C64::new(hyp::to_klein(w).re, 0.0)));
        if w.im >= 0.0 {
            d
        } else {
            -d
        }
    }
}

/// All cylinders of the ε-thin part, in order of waist length.
pub fn detect_thin_part(atlas: &Atlas, eps: f64) -> Result<Vec<Cylinder>> {
    if !(eps > 0.0 && eps < 1f64.asinh()) {
        return Err(Error::InvalidEpsilon(eps));
    }
    let mut out = Vec::new();
    for g in short_geodesics(atlas, 2.0 * eps)? {
        // Pants curves start at the seam foot; other geodesics at the foot of
        // the perpendicular from their chart centre.
        let (waist, base) = match g.pants_curve {
            Some(e) => {
                let c = &atlas.cuffs[e];
                let waist = ClosedGeodesic {
                    chart: c.chart,
                    word: c.word.clone(),
                    length: g.length,
                    generators: atlas.generator_word(&c.word),
                    pants_curve: Some(e),
                };
                (waist, atlas.charts[c.chart].vertices[c.side])
            }
            None => {
                let m = g.element(atlas)?;
                let (a, b) = m.fixed_points().expect("short geodesics are hyperbolic");
                let foot = hyp::project_to_geodesic(a, b, atlas.charts[g.chart].center);
                (g, foot)
            }
        };
        out.push(Cylinder::new(waist, base, eps)?);
    }
    let max = 3 * atlas.genus - 3;
    if out.len() > max {
        return Err(Error::ConstructionFailure(format!("{} thin cylinders exceed the bound {max}", out.len())));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::cover::{lift_ball, locate};
    use crate::surface::{build_atlas, linear_graph, FnCoordinates};

    pub(crate) fn genus2(lengths: [f64; 3], twists: [f64; 3]) -> Atlas {
        build_atlas(&linear_graph(2).unwrap(), &FnCoordinates { lengths: lengths.to_vec(), twists: twists.to_vec() }).unwrap()
    }

    #[test]
    fn long_cuffs_have_no_thin_part() {
        let a = genus2([2.0; 3], [0.0; 3]);
        assert!(detect_thin_part(&a, EPSILON).unwrap().is_empty());
    }

    #[test]
    fn epsilon_is_bounded() {
        let a = genus2([2.0; 3], [0.0; 3]);
        assert!(matches!(detect_thin_part(&a, 0.9), Err(Error::InvalidEpsilon(_))));
    }

    #[test]
    fn short_cuff_gives_a_thin_cylinder() {
        let a = genus2([1.6, 0.5, 1.5], [0.0, 0.1, 0.0]);
        let cyl = detect_thin_part(&a, EPSILON).unwrap();
        assert_eq!(cyl.len(), 1);
        let c = &cyl[0];
        assert_eq!(c.class, CylinderClass::Thin);
        assert_eq!(c.waist.pants_curve, Some(1));
        assert!((c.length - 0.5).abs() < 1e-7);
        assert!((c.k_c.cosh() - 0.72f64.sinh() / 0.25f64.sinh()).abs() < 1e-10);
        assert!((c.k_c - 1.79846).abs() < 1e-5);
    }

    #[test]
    fn boundary_curve_has_injectivity_radius_epsilon() {
        // At distance K_C from the waist the shortest essential loop has
        // length exactly 2ε; measured through the cover, not the formula.
        let a = genus2([1.6, 0.5, 1.5], [0.0, 0.1, 0.0]);
        let c = &detect_thin_part(&a, EPSILON).unwrap()[0];
        let f = c.frame(&a).unwrap();
        for s in [0.0, 0.13, 0.31] {
            for h in [c.k_c, -c.k_c] {
                let (_, p) = locate(&a, f.chart, f.point(s, h)).unwrap();
                let lifts = lift_ball(&a, p, 2.0).unwrap();
                let loop_len =
                    lifts.iter().filter(|l| !l.word.is_empty()).map(|l| hyp::dist(p.z, l.position)).fold(f64::INFINITY, f64::min);
                assert!((loop_len - 2.0 * EPSILON).abs() < 1e-7, "{loop_len}");
            }
        }
    }

    #[test]
    fn classification_boundary() {
        // 2ε' = 1.4256, so 1.43 is already thick.
        assert_eq!(classify(1.42, EPSILON), CylinderClass::Thin);
        assert_eq!(classify(1.43, EPSILON), CylinderClass::Thick);
        assert_eq!(classify(1.44 * 0.995, EPSILON), CylinderClass::Thick);
        assert_eq!(classify(2.0 * 0.99 * EPSILON, EPSILON), CylinderClass::Thick);
        let a = genus2([1.6, 1.4328, 1.5], [0.0; 3]);
        let cyl = detect_thin_part(&a, EPSILON).unwrap();
        assert_eq!(cyl.len(), 1);
        assert_eq!(cyl[0].class, CylinderClass::Thick);
    }

    #[test]
    fn waist_frame_moves_along_the_axis() {
        let a = genus2([1.6, 0.5, 1.5], [0.0, 0.1, 0.0]);
        let c = &detect_thin_part(&a, EPSILON).unwrap()[0];
        let f = c.frame(&a).unwrap();
        assert!(hyp::dist(f.point(0.0, 0.0), c.base) < 1e-10);
        assert!(hyp::dist(f.point(c.length, 0.0), f.element.apply(c.base)) < 1e-9);
        assert!((f.height(f.point(0.2, 0.4)) - 0.4).abs() < 1e-10);
        assert!((f.height(f.point(0.2, -0.3)) + 0.3).abs() < 1e-10);
    }
}
