//! Realisation of a surface from Fenchel-Nielsen data as two right-angled
//! hexagons per pair of pants.
//!
//! Hexagon sides alternate between half-cuffs and seams. The front hexagon
//! of a pants runs `c1, s12, c2, s23, c3, s31` counterclockwise; the back
//! hexagon is its mirror image, `c1, s31, c3, s23, c2, s12`. Along each cuff
//! the front half is followed by the back half, so arc length `s` on the
//! cuff starts at the front side's first vertex (the foot of the seam to
//! the previous cuff). A curve with twist `t` identifies `s` on its first
//! pants with `u = t - s` on its second.

use super::atlas::{polygon_from_sides, set_pieces, Atlas, Chart, CuffCurve, Piece, PieceKind, Word};
use super::spec::{FnCoordinates, PantsGraph};
use crate::error::{Error, Result};
use crate::hyp::{self, trig, Mobius, C64};
use std::f64::consts::FRAC_PI_2;

/// Side of the back hexagon carrying cuff slot `i`.
fn back_side(i: usize) -> usize {
    (6 - 2 * i) % 6
}

struct Proto {
    chart: usize,
    side: usize,
    off0: f64,
    off1: f64,
    partner: usize,
    kind: PieceKind,
}

/// Seam lengths `[s12, s23, s31]` of a pants with cuffs `l`.
pub fn seam_lengths(l: [f64; 3]) -> Result<[f64; 3]> {
    Ok([
        trig::hexagon_orthogeodesic(l[0], l[1], l[2])?,
        trig::hexagon_orthogeodesic(l[1], l[2], l[0])?,
        trig::hexagon_orthogeodesic(l[2], l[0], l[1])?,
    ])
}

/// Builds the hexagon atlas of the surface with the given pants graph and
/// Fenchel-Nielsen coordinates.
pub fn build_atlas(graph: &PantsGraph, fnc: &FnCoordinates) -> Result<Atlas> {
    graph.validate()?;
    fnc.validate(graph)?;
    let slots = graph.slots();
    let mut charts: Vec<Chart> = Vec::with_capacity(2 * graph.nodes);
    for slot in &slots {
        let l = [fnc.lengths[slot[0].curve], fnc.lengths[slot[1].curve], fnc.lengths[slot[2].curve]];
        let s = seam_lengths(l)?;
        let right = [FRAC_PI_2; 6];
        let front = [l[0] / 2.0, s[0], l[1] / 2.0, s[1], l[2] / 2.0, s[2]];
        let back = [l[0] / 2.0, s[2], l[2] / 2.0, s[1], l[1] / 2.0, s[0]];
        charts.push(polygon_from_sides(&front, &right)?);
        charts.push(polygon_from_sides(&back, &right)?);
    }

    let mut protos: Vec<Proto> = Vec::new();
    let pair = |protos: &mut Vec<Proto>, a: (usize, usize, f64, f64), b: (usize, usize, f64, f64), kind| {
        let ia = protos.len();
        protos.push(Proto { chart: a.0, side: a.1, off0: a.2, off1: a.3, partner: ia + 1, kind });
        protos.push(Proto { chart: b.0, side: b.1, off0: b.2, off1: b.3, partner: ia, kind });
    };
    let side_len = |charts: &Vec<Chart>, k: usize, side: usize| {
        let v = &charts[k].vertices;
        hyp::dist(v[side], v[(side + 1) % 6])
    };
    for p in 0..graph.nodes {
        let (f, b) = (2 * p, 2 * p + 1);
        for (fs, bs) in [(1, 5), (3, 3), (5, 1)] {
            let len = side_len(&charts, f, fs);
            pair(&mut protos, (f, fs, 0.0, len), (b, bs, 0.0, len), PieceKind::Seam);
        }
    }

    let mut cuffs = Vec::with_capacity(graph.edges.len());
    for (e, &(u, v)) in graph.edges.iter().enumerate() {
        let l = fnc.lengths[e];
        let half = l / 2.0;
        let i = slots[u].iter().position(|s| s.curve == e && s.end == 0).expect("slot of first end");
        let j = slots[v].iter().position(|s| s.curve == e && s.end == 1).expect("slot of second end");
        // (chart, side, param origin) for the two halves on each side.
        let a_half = |s: f64| if s < half { (2 * u, 2 * i, 0.0) } else { (2 * u + 1, back_side(i), half) };
        let b_half = |s: f64| if s < half { (2 * v, 2 * j, 0.0) } else { (2 * v + 1, back_side(j), half) };
        let snap_tol = 1e-9 * l.max(1.0);
        let mut t = fnc.twists[e].rem_euclid(l);
        for target in [0.0, half, l] {
            if (t - target).abs() < snap_tol {
                t = target;
            }
        }
        if t >= l {
            t = 0.0;
        }
        let mut bps = vec![0.0, half, t, (t - half).rem_euclid(l), l];
        bps.sort_by(f64::total_cmp);
        bps.dedup_by(|x, y| (*x - *y).abs() < snap_tol);
        for w in bps.windows(2) {
            let (s0, s1) = (w[0], w[1]);
            if s1 - s0 < snap_tol {
                continue;
            }
            let mid = (s0 + s1) / 2.0;
            let (ca, sa, oa) = a_half(mid);
            let um = (t - mid).rem_euclid(l);
            let (cb, sb, ob) = b_half(um);
            let len = s1 - s0;
            let clamp = |x: f64| {
                let x = x.clamp(0.0, half);
                if x < snap_tol {
                    0.0
                } else if half - x < snap_tol {
                    half
                } else {
                    x
                }
            };
            pair(
                &mut protos,
                (ca, sa, clamp(s0 - oa), clamp(s1 - oa)),
                (cb, sb, clamp(um - len / 2.0 - ob), clamp(um + len / 2.0 - ob)),
                PieceKind::Cuff(e),
            );
        }
        cuffs.push((e, u, i, l));
    }

    // Order pieces around each chart and resolve partners.
    let mut per_chart: Vec<Vec<usize>> = vec![Vec::new(); charts.len()];
    for (id, pr) in protos.iter().enumerate() {
        per_chart[pr.chart].push(id);
    }
    let mut index_of = vec![(0usize, 0usize); protos.len()];
    for (k, ids) in per_chart.iter_mut().enumerate() {
        ids.sort_by(|&x, &y| (protos[x].side, protos[x].off0).partial_cmp(&(protos[y].side, protos[y].off0)).unwrap());
        for (idx, &id) in ids.iter().enumerate() {
            index_of[id] = (k, idx);
        }
    }
    let point_on = |charts: &Vec<Chart>, k: usize, side: usize, off: f64| {
        let v = &charts[k].vertices;
        let (a, b) = (v[side], v[(side + 1) % v.len()]);
        if off == 0.0 {
            a
        } else {
            let len = hyp::dist(a, b);
            if (off - len).abs() < 1e-12 {
                b
            } else {
                hyp::along(a, b, off)
            }
        }
    };
    let mut all_pieces: Vec<Vec<Piece>> = vec![Vec::new(); charts.len()];
    for (k, ids) in per_chart.iter().enumerate() {
        for &id in ids {
            let pr = &protos[id];
            let q = &protos[pr.partner];
            let start = point_on(&charts, k, pr.side, pr.off0);
            let end = point_on(&charts, k, pr.side, pr.off1);
            let qs = point_on(&charts, q.chart, q.side, q.off0);
            let qe = point_on(&charts, q.chart, q.side, q.off1);
            let (tc, tp) = index_of[pr.partner];
            all_pieces[k].push(Piece {
                start,
                end,
                side: pr.side,
                start_corner: pr.off0 == 0.0,
                to_chart: tc,
                to_piece: tp,
                map: Mobius::segment_to_segment(qe, qs, start, end),
                kind: pr.kind,
            });
        }
    }
    // Make the two directions of each gluing exact inverses of each other.
    for k in 0..charts.len() {
        for p in 0..all_pieces[k].len() {
            let (tc, tp) = (all_pieces[k][p].to_chart, all_pieces[k][p].to_piece);
            if (tc, tp) > (k, p) {
                let inv = all_pieces[k][p].map.inverse();
                all_pieces[tc][tp].map = inv;
            }
        }
    }
    for (chart, pieces) in charts.iter_mut().zip(all_pieces) {
        set_pieces(chart, pieces);
    }

    let mut cuff_curves = Vec::with_capacity(cuffs.len());
    for (e, u, i, l) in cuffs {
        let (f, b) = (2 * u, 2 * u + 1);
        let seam_after = |k: usize, side: usize| charts[k].pieces.iter().position(|p| p.side == (side + 1) % 6).expect("seam piece");
        let p1 = seam_after(f, 2 * i);
        let p2 = seam_after(b, back_side(i));
        let offs = |k: usize| charts[..k].iter().map(|c| c.pieces.len()).sum::<usize>() as u32;
        let word = Word(vec![offs(f) + p1 as u32, offs(b) + p2 as u32]);
        cuff_curves.push(CuffCurve { chart: f, side: 2 * i, word, length: l });
        let _ = e;
    }
    let atlas = Atlas::from_charts(graph.genus(), charts, cuff_curves)?;
    for (e, c) in atlas.cuffs.iter().enumerate() {
        let (end, m) = atlas.eval_word(c.chart, &c.word)?;
        let tl = m.translation_length();
        if end != c.chart || (tl - c.length).abs() > 1e-7 * (1.0 + c.length) {
            return Err(Error::ConstructionFailure(format!(
                "pants curve {e}: translation length {tl} differs from prescribed {}",
                c.length
            )));
        }
    }
    Ok(atlas)
}

/// Point of chart `chart` at arc offset `off` along side `side`.
pub fn side_point(chart: &Chart, side: usize, off: f64) -> C64 {
    let v = &chart.vertices;
    hyp::along(v[side], v[(side + 1) % v.len()], off)
}
