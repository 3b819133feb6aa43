//! Enumeration of short closed geodesics.

use super::atlas::{Atlas, Word};
use super::cover::{lifts_near, locate, tiles_within, SurfacePoint};
use crate::error::{Error, Result};
use crate::hyp::{self, Mobius, C64};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// A primitive closed geodesic, represented by a loop based in one chart.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClosedGeodesic {
    pub chart: usize,
    /// Closed path from `chart` back to itself whose deck element has the
    /// geodesic as its axis.
    pub word: Word,
    pub length: f64,
    /// The same class as a word in the deck generators.
    pub generators: Vec<i32>,
    /// Index of the pants curve this geodesic is, if any.
    pub pants_curve: Option<usize>,
}

impl ClosedGeodesic {
    /// Deck element in the frame of `chart`.
    pub fn element(&self, atlas: &Atlas) -> Result<Mobius> {
        Ok(atlas.eval_word(self.chart, &self.word)?.1)
    }
}

/// Axis data of a hyperbolic element acting on a chart frame.
#[derive(Clone, Debug)]
struct Axis {
    chart: usize,
    ends: (C64, C64),
    length: f64,
    /// Foot of the perpendicular from the chart centre, and a second axis
    /// point a short way along.
    foot: C64,
    ahead: C64,
}

impl Axis {
    fn new(atlas: &Atlas, chart: usize, m: &Mobius) -> Option<Axis> {
        if !m.is_hyperbolic() {
            return None;
        }
        let ends = m.fixed_points()?;
        let foot = hyp::project_to_geodesic(ends.0, ends.1, atlas.charts[chart].center);
        let length = m.translation_length();
        let ahead = hyp::along(foot, m.apply(foot), (length / 3.0).min(0.1));
        Some(Axis { chart, ends, length, foot, ahead })
    }

    fn on_axis(&self, z: C64, tol: f64) -> bool {
        hyp::dist_to_geodesic(self.ends.0, self.ends.1, z) < tol
    }
}

const SAME_AXIS: f64 = 1e-6;

/// Whether `a` and `b` project to the same closed geodesic (as unoriented
/// curves, ignoring multiplicity).
fn same_geodesic(atlas: &Atlas, a: &Axis, b: &Axis) -> Result<bool> {
    // Bring a's marker points into a chart where `foot` is interior, then
    // look for a lift lying on b's axis within half a period of b's foot.
    let (tile, f) = locate(atlas, a.chart, a.foot)?;
    let ahead = tile.map.inverse().apply(a.ahead);
    for lift in lifts_near(atlas, f, b.chart, b.foot, b.length / 2.0 + 1e-6)? {
        if !b.on_axis(lift.position, SAME_AXIS) {
            continue;
        }
        let (_, m) = atlas.eval_word(b.chart, &lift.word)?;
        if b.on_axis(m.apply(ahead), SAME_AXIS) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// All primitive closed geodesics shorter than `threshold`, each listed once
/// up to free homotopy and orientation, sorted by length.
pub fn short_geodesics(atlas: &Atlas, threshold: f64) -> Result<Vec<ClosedGeodesic>> {
    if !(threshold > 0.0) {
        return Err(Error::Argument { what: "short_geodesics (threshold)", value: threshold });
    }
    if threshold > atlas.caps.r_max {
        return Err(Error::RadiusCap { cap: atlas.caps.r_max, needed: threshold });
    }
    // Every closed geodesic meets some chart; translating a point of it in
    // that chart by its length stays within 2 rad + length of the centre.
    let per_chart: Vec<Vec<(Axis, Word)>> = (0..atlas.charts.len())
        .into_par_iter()
        .map(|k| {
            let chart = &atlas.charts[k];
            let r = 2.0 * chart.radius + threshold;
            let mut out = Vec::new();
            for t in tiles_within(atlas, k, chart.center, r)? {
                if t.chart != k || t.word.is_empty() {
                    continue;
                }
                let Some(axis) = Axis::new(atlas, k, &t.map) else { continue };
                if axis.length >= threshold || hyp::dist(axis.foot, chart.center) > chart.radius + 1e-9 {
                    continue;
                }
                out.push((axis, t.word));
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    let mut cands: Vec<(Axis, Word)> = per_chart.into_iter().flatten().collect();
    cands.sort_by(|x, y| x.0.length.total_cmp(&y.0.length));

    let mut found: Vec<(Axis, Word)> = Vec::new();
    for (axis, word) in cands {
        let mut dup = false;
        for (g, _) in &found {
            let ratio = axis.length / g.length;
            if (ratio - ratio.round()).abs() > 1e-6 * ratio.max(1.0) || ratio.round() < 1.0 {
                continue;
            }
            if same_geodesic(atlas, g, &axis)? {
                dup = true;
                break;
            }
        }
        if !dup {
            found.push((axis, word));
        }
    }

    let mut out = Vec::with_capacity(found.len());
    for (axis, word) in found {
        let mut pants_curve = None;
        for (e, c) in atlas.cuffs.iter().enumerate() {
            if (c.length - axis.length).abs() > 1e-6 * (1.0 + c.length) {
                continue;
            }
            let (_, m) = atlas.eval_word(c.chart, &c.word)?;
            let cuff_axis = Axis::new(atlas, c.chart, &m).expect("pants curves are hyperbolic");
            if same_geodesic(atlas, &cuff_axis, &axis)? {
                pants_curve = Some(e);
                break;
            }
        }
        let generators = atlas.generator_word(&word);
        out.push(ClosedGeodesic { chart: axis.chart, word, length: axis.length, generators, pants_curve });
    }
    Ok(out)
}

/// Lengths of all primitive closed geodesics below `threshold`, ascending.
pub fn length_spectrum(atlas: &Atlas, threshold: f64) -> Result<Vec<f64>> {
    Ok(short_geodesics(atlas, threshold)?.into_iter().map(|g| g.length).collect())
}

/// Whether `p` lies on the closed geodesic `g` (within `tol`).
pub fn point_on_geodesic(atlas: &Atlas, g: &ClosedGeodesic, p: SurfacePoint, tol: f64) -> Result<bool> {
    let m = g.element(atlas)?;
    let axis = Axis::new(atlas, g.chart, &m).ok_or(Error::Argument { what: "point_on_geodesic (elliptic)", value: g.length })?;
    Ok(lifts_near(atlas, p, g.chart, axis.foot, g.length / 2.0 + tol)?.iter().any(|l| axis.on_axis(l.position, tol)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::pants::build_atlas;
    use crate::surface::spec::{linear_graph, FnCoordinates};
    use std::collections::HashSet;

    fn atlas(g: usize, lengths: Vec<f64>, twists: Vec<f64>) -> Atlas {
        build_atlas(&linear_graph(g).unwrap(), &FnCoordinates { lengths, twists }).unwrap()
    }

    /// Shortest translation length over all closed tile paths of length at
    /// most `depth`, found without any geometric pruning. Tiles are told
    /// apart by polar coordinates of their centre scaled to arc length.
    fn brute_force_systole(a: &Atlas, depth: usize) -> (f64, usize) {
        let mut best = f64::INFINITY;
        let mut count = 0;
        for start in 0..a.charts.len() {
            let mut seen: HashSet<(usize, i64, i64)> = HashSet::new();
            let mut layer = vec![(start, Mobius::identity())];
            for _ in 0..depth {
                let mut next = Vec::new();
                for (k, m) in layer {
                    for piece in &a.charts[k].pieces {
                        let n = m.compose(&piece.map);
                        let c = n.apply(C64::new(0.0, 0.0));
                        let d = hyp::dist0(c);
                        let key = (piece.to_chart, (d * 1e4).round() as i64, (c.arg() * d.sinh() * 1e4).round() as i64);
                        if !seen.insert(key) {
                            continue;
                        }
                        if piece.to_chart == start && d > 1e-6 {
                            best = best.min(n.translation_length());
                        }
                        next.push((piece.to_chart, n));
                    }
                }
                count += next.len();
                layer = next;
            }
        }
        (best, count)
    }

    #[test]
    fn long_cuffs_have_no_short_geodesics() {
        let a = atlas(2, vec![2.0; 3], vec![0.0; 3]);
        let found = short_geodesics(&a, 1.44).unwrap();
        assert!(found.is_empty(), "{found:?}");
        let (sys, count) = brute_force_systole(&a, 10);
        assert!(count > 1_000_000);
        assert!(sys >= 1.44);
    }

    #[test]
    fn short_pants_curve_is_found_once() {
        let a = atlas(2, vec![1.3, 0.5, 1.6], vec![0.1, 0.2, 0.0]);
        let found = short_geodesics(&a, 1.44).unwrap();
        let hits: Vec<_> = found.iter().filter(|g| g.pants_curve == Some(1)).collect();
        assert_eq!(hits.len(), 1);
        assert!((hits[0].length - 0.5).abs() < 1e-7);
        assert!((found[0].length - 0.5).abs() < 1e-7);
        assert!(found.iter().all(|g| g.length < 1.44));
    }

    #[test]
    fn cuffs_below_threshold_are_labelled() {
        let a = atlas(3, vec![0.6, 1.0, 0.9, 1.2, 0.7, 1.1], vec![0.0; 6]);
        let found = short_geodesics(&a, 1.25).unwrap();
        let labels: HashSet<usize> = found.iter().filter_map(|g| g.pants_curve).collect();
        assert_eq!(labels, (0..6).collect());
        for g in &found {
            assert!(g.length < 1.25);
            let m = g.element(&a).unwrap();
            assert!((m.translation_length() - g.length).abs() < 1e-12);
        }
    }

    #[test]
    fn systole_agrees_with_brute_force() {
        let a = atlas(2, vec![1.0, 1.2, 0.9], vec![0.3, -0.2, 0.45]);
        let found = short_geodesics(&a, 1.44).unwrap();
        let (brute, _) = brute_force_systole(&a, 8);
        // Deep tile products lose a few digits in the oracle.
        assert!((found[0].length - brute).abs() < 1e-5, "{} vs {brute}", found[0].length);
    }

    #[test]
    fn spectrum_is_invariant_under_full_twists() {
        let l = [1.0, 0.8, 1.1];
        let a = atlas(2, l.to_vec(), vec![0.2, 0.3, 0.0]);
        let b = atlas(2, l.to_vec(), vec![0.2 + l[0], 0.3 - l[1], l[2]]);
        let sa = length_spectrum(&a, 6.0).unwrap();
        let sb = length_spectrum(&b, 6.0).unwrap();
        let cut = |s: &[f64]| s.iter().copied().filter(|&x| x < 5.9).collect::<Vec<_>>();
        let (sa, sb) = (cut(&sa), cut(&sb));
        assert_eq!(sa.len(), sb.len());
        for (x, y) in sa.iter().zip(&sb) {
            assert!((x - y).abs() < 1e-6);
        }
    }

    #[test]
    fn cuff_points_lie_on_their_curves() {
        let a = atlas(2, vec![0.5, 1.3, 0.6], vec![0.0, 0.4, 0.0]);
        let found = short_geodesics(&a, 1.44).unwrap();
        for g in found.iter().filter(|g| g.pants_curve.is_some()) {
            let c = &a.cuffs[g.pants_curve.unwrap()];
            let p = SurfacePoint::new(c.chart, a.charts[c.chart].vertices[c.side]);
            assert!(point_on_geodesic(&a, g, p, 1e-7).unwrap());
        }
    }
}
