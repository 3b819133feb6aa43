//! Delaunay triangulation of the full preimage of a point set.
//!
//! Each vertex computes its own star. In the frame where the vertex sits at
//! the origin, the inversion `w -> w / |w|^2` turns circles through the
//! origin into lines, so the neighbours of the origin are the vertices of
//! the convex hull of the inverted lifts. A hull edge is accepted once the
//! circumdisk it defines lies inside the ball of lifts already gathered;
//! otherwise the ball is doubled. Cocircular cells are collected whole and
//! cut into triangles after deduplication, so every lift of a cell receives
//! the same cut.

use super::polygon::{rebase, Corner, PolygonSet};
use super::{DegeneracyNote, EdgeRef, Resolution, TriComplex, TriEdge, Triangle};
use crate::error::{Error, Result};
use crate::hyp::{self, Mobius, C64};
use crate::surface::atlas::{Atlas, Word};
use crate::surface::cover::{tiles_within, SurfacePoint};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct DelaunayOptions {
    /// Radius of the first ball of lifts gathered around each vertex.
    pub initial_radius: f64,
    /// Points whose distance to a circumcircle is below this are treated as
    /// lying on it.
    pub cocircular_tol: f64,
    /// Minimum surface distance between distinct input points.
    pub coincidence_tol: f64,
}

impl Default for DelaunayOptions {
    fn default() -> Self {
        DelaunayOptions { initial_radius: 1.0, cocircular_tol: 1e-8, coincidence_tol: 1e-9 }
    }
}

/// A triangle whose chords are used first when a cocircular cell has to be
/// cut. Positions are in the frame of `chart`.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct PreferredTriangle {
    pub chart: usize,
    pub positions: [C64; 3],
}

/// Delaunay triangulation of `points` with default options.
pub fn lifted_delaunay(atlas: &Atlas, points: &[SurfacePoint], initial_radius: f64) -> Result<TriComplex> {
    let opts = DelaunayOptions { initial_radius, ..DelaunayOptions::default() };
    lifted_delaunay_with(atlas, points, opts, &[])
}

struct Lift {
    /// Position in the frame where the star's vertex is at the origin.
    w: C64,
    corner: Corner,
}

fn cross(a: C64, b: C64) -> f64 {
    a.re * b.im - a.im * b.re
}

/// Strict convex hull, counterclockwise, as indices into `pts`.
fn convex_hull(pts: &[C64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..pts.len()).collect();
    idx.sort_by(|&a, &b| pts[a].re.total_cmp(&pts[b].re).then(pts[a].im.total_cmp(&pts[b].im)));
    if idx.len() < 3 {
        return idx;
    }
    let turn = |o: usize, a: usize, b: usize| cross(pts[a] - pts[o], pts[b] - pts[o]);
    let mut hull: Vec<usize> = Vec::with_capacity(2 * idx.len());
    for pass in 0..2 {
        let start = hull.len();
        let seq: Box<dyn Iterator<Item = &usize>> = if pass == 0 { Box::new(idx.iter()) } else { Box::new(idx.iter().rev()) };
        for &i in seq {
            while hull.len() >= start + 2 && turn(hull[hull.len() - 2], hull[hull.len() - 1], i) <= 0.0 {
                hull.pop();
            }
            hull.push(i);
        }
        hull.pop();
    }
    hull
}

enum Star {
    Cells(Vec<Vec<Corner>>),
    Grow,
}

fn star_at(atlas: &Atlas, points: &[SurfacePoint], by_chart: &[Vec<usize>], i: usize, rho: f64, opts: &DelaunayOptions) -> Result<Star> {
    let v = points[i];
    let to0 = Mobius::recenter(v.z);
    let mut lifts = Vec::new();
    for t in tiles_within(atlas, v.chart, v.z, rho)? {
        for &j in &by_chart[t.chart] {
            let pos = t.map.apply(points[j].z);
            let d = hyp::dist(v.z, pos);
            if d > rho {
                continue;
            }
            if d < opts.coincidence_tol {
                if j == i {
                    continue;
                }
                return Err(Error::ConstructionFailure(format!("points {i} and {j} coincide on the surface")));
            }
            lifts.push(Lift { w: to0.apply(pos), corner: Corner { vertex: j, map: t.map, word: t.word.clone() } });
        }
    }
    if lifts.len() < 3 {
        return Ok(Star::Grow);
    }
    let inverted: Vec<C64> = lifts.iter().map(|l| l.w / l.w.norm_sqr()).collect();
    let hull = convex_hull(&inverted);
    if hull.len() < 3 {
        return Ok(Star::Grow);
    }
    let origin = C64::new(0.0, 0.0);
    let mut cells = Vec::with_capacity(hull.len());
    for k in 0..hull.len() {
        let (a, b) = (hull[k], hull[(k + 1) % hull.len()]);
        // The origin must lie strictly inside the hull.
        if cross(inverted[a], inverted[b]) <= 0.0 {
            return Ok(Star::Grow);
        }
        let Ok(circle) = hyp::circumdisk(origin, lifts[a].w, lifts[b].w) else {
            return Ok(Star::Grow);
        };
        if 2.0 * circle.radius + opts.cocircular_tol >= rho {
            return Ok(Star::Grow);
        }
        let around = Mobius::recenter(circle.center);
        let mut members: Vec<(f64, Corner)> = vec![(around.apply(origin).arg(), Corner::base(i))];
        for l in &lifts {
            if circle.depth(l.w) >= -opts.cocircular_tol {
                members.push((around.apply(l.w).arg(), l.corner.clone()));
            }
        }
        members.sort_by(|x, y| x.0.total_cmp(&y.0));
        let at = members.iter().position(|m| m.1.word.is_empty() && m.1.vertex == i).expect("the centre vertex is a member");
        let n = members.len();
        cells.push((0..n).map(|j| members[(at + j) % n].1.clone()).collect());
    }
    Ok(Star::Cells(cells))
}

fn star(
    atlas: &Atlas,
    points: &[SurfacePoint],
    by_chart: &[Vec<usize>],
    i: usize,
    opts: &DelaunayOptions,
) -> Result<(Vec<Vec<Corner>>, f64)> {
    let cap = atlas.caps.r_max;
    let mut rho = opts.initial_radius.min(cap);
    loop {
        if let Star::Cells(c) = star_at(atlas, points, by_chart, i, rho, opts)? {
            return Ok((c, rho));
        }
        if rho >= cap {
            return Err(Error::RadiusCap { cap, needed: 2.0 * rho });
        }
        rho = (2.0 * rho).min(cap);
    }
}

/// Cuts a cell (canonical representative) into triangles: first along
/// preferred chords, then by fanning each remaining piece from its earliest
/// corner.
fn cut_cell(atlas: &Atlas, points: &[SurfacePoint], cell: &[Corner], chords: &PolygonSet, out: &mut Vec<Vec<Corner>>) -> (bool, bool) {
    let mut used_preferred = false;
    let mut used_fan = false;
    let mut stack: Vec<Vec<usize>> = vec![(0..cell.len()).collect()];
    while let Some(poly) = stack.pop() {
        let n = poly.len();
        if n == 3 {
            out.push(poly.iter().map(|&k| cell[k].clone()).collect());
            continue;
        }
        let mut split = None;
        'search: for a in 0..n {
            for b in a + 2..n {
                if a == 0 && b == n - 1 {
                    continue;
                }
                let pair = [cell[poly[a]].clone(), cell[poly[b]].clone()];
                if chords.find(atlas, points, &pair).is_some() {
                    split = Some((a, b));
                    break 'search;
                }
            }
        }
        match split {
            Some((a, b)) => {
                used_preferred = true;
                stack.push(poly[a..=b].to_vec());
                stack.push(poly[b..].iter().chain(&poly[..=a]).copied().collect());
            }
            None => {
                used_fan = true;
                for k in 1..n - 1 {
                    out.push([poly[0], poly[k], poly[k + 1]].iter().map(|&c| cell[c].clone()).collect());
                }
            }
        }
    }
    (used_preferred, used_fan)
}

/// Corners of a preferred triangle, matched to input vertices. A corner may
/// sit on a chart boundary, so every tile touching it is searched.
fn preferred_corners(atlas: &Atlas, points: &[SurfacePoint], by_chart: &[Vec<usize>], t: &PreferredTriangle) -> Result<Vec<Corner>> {
    t.positions
        .iter()
        .map(|&z| {
            for tile in tiles_within(atlas, t.chart, z, 1e-6)? {
                for &j in &by_chart[tile.chart] {
                    if hyp::dist(tile.map.apply(points[j].z), z) < 1e-7 {
                        return Ok(Corner { vertex: j, map: tile.map, word: tile.word });
                    }
                }
            }
            Err(Error::ConstructionFailure(format!("preferred triangle corner {z} is not an input point")))
        })
        .collect()
}

pub(crate) fn sort_points(points: &[SurfacePoint]) -> Vec<SurfacePoint> {
    let mut v = points.to_vec();
    v.sort_by(|a, b| a.chart.cmp(&b.chart).then(a.z.re.total_cmp(&b.z.re)).then(a.z.im.total_cmp(&b.z.im)));
    v
}

pub(crate) fn chart_buckets(atlas: &Atlas, points: &[SurfacePoint]) -> Result<Vec<Vec<usize>>> {
    let mut by_chart = vec![Vec::new(); atlas.charts.len()];
    for (j, p) in points.iter().enumerate() {
        if p.chart >= atlas.charts.len() {
            return Err(Error::Argument { what: "lifted_delaunay (chart index)", value: p.chart as f64 });
        }
        hyp::check_point(p.z)?;
        by_chart[p.chart].push(j);
    }
    Ok(by_chart)
}

/// Triangles of a complex as a polygon set, for membership queries.
pub(crate) fn triangle_set(atlas: &Atlas, complex: &TriComplex) -> Result<PolygonSet> {
    let mut set = PolygonSet::new();
    for t in 0..complex.triangles.len() {
        let maps = complex.triangle_maps(atlas, t)?;
        let tri = &complex.triangles[t];
        let corners: Vec<Corner> = (0..3).map(|i| Corner { vertex: tri.vertices[i], map: maps[i], word: tri.words[i].clone() }).collect();
        set.insert(atlas, &complex.vertices, &corners);
    }
    Ok(set)
}

/// Whether `t` is a triangle of `complex`.
pub(crate) fn contains_triangle(atlas: &Atlas, complex: &TriComplex, set: &PolygonSet, t: &PreferredTriangle) -> Result<bool> {
    let by_chart = chart_buckets(atlas, &complex.vertices)?;
    let corners = preferred_corners(atlas, &complex.vertices, &by_chart, t)?;
    Ok(set.find(atlas, &complex.vertices, &corners).is_some())
}

/// Delaunay triangulation of `points`. Vertices of the result are the input
/// points sorted by `(chart, x, y)`. Cocircular cells are cut along chords
/// of `preferred` triangles where possible and fanned otherwise.
pub fn lifted_delaunay_with(
    atlas: &Atlas,
    points: &[SurfacePoint],
    opts: DelaunayOptions,
    preferred: &[PreferredTriangle],
) -> Result<TriComplex> {
    if !(opts.initial_radius > 0.0) {
        return Err(Error::Argument { what: "lifted_delaunay (initial radius)", value: opts.initial_radius });
    }
    if points.is_empty() {
        return Err(Error::Argument { what: "lifted_delaunay (point count)", value: 0.0 });
    }
    let points = sort_points(points);
    let by_chart = chart_buckets(atlas, &points)?;

    let stars: Vec<(Vec<Vec<Corner>>, f64)> =
        (0..points.len()).into_par_iter().map(|i| star(atlas, &points, &by_chart, i, &opts)).collect::<Result<_>>()?;

    let mut cells = PolygonSet::new();
    for (s, _) in &stars {
        for c in s {
            cells.insert(atlas, &points, c);
        }
    }

    let mut chords = PolygonSet::new();
    for t in preferred {
        let corners = preferred_corners(atlas, &points, &by_chart, t)?;
        for k in 0..3 {
            let r = rebase(atlas, &corners, k);
            chords.insert(atlas, &points, &r[..2]);
        }
    }

    let mut pieces = Vec::new();
    let mut degeneracies = Vec::new();
    for cell in &cells.items {
        let (pref, fan) = cut_cell(atlas, &points, cell, &chords, &mut pieces);
        if cell.len() > 3 {
            let resolution = match (pref, fan) {
                (true, false) => Resolution::Preferred,
                (false, _) => Resolution::Fan,
                (true, true) => Resolution::Mixed,
            };
            degeneracies.push(DegeneracyNote { vertices: cell.iter().map(|c| c.vertex).collect(), resolution });
        }
    }

    let mut tris = PolygonSet::new();
    for p in &pieces {
        tris.insert(atlas, &points, p);
    }
    let mut edges = PolygonSet::new();
    let mut triangles = Vec::with_capacity(tris.len());
    for tri in &tris.items {
        let mut refs = [EdgeRef { edge: 0, reversed: false }; 3];
        for (k, r) in refs.iter_mut().enumerate() {
            let pair = [tri[k].clone(), tri[(k + 1) % 3].clone()];
            let (edge, rot, _) = edges.insert(atlas, &points, &pair);
            *r = EdgeRef { edge, reversed: rot == 1 };
        }
        triangles.push(Triangle {
            vertices: [tri[0].vertex, tri[1].vertex, tri[2].vertex],
            words: [Word::default(), tri[1].word.clone(), tri[2].word.clone()],
            edges: refs,
        });
    }
    let edges: Vec<TriEdge> = edges.items.iter().map(|e| TriEdge { u: e[0].vertex, v: e[1].vertex, word: e[1].word.clone() }).collect();

    let mut uses = vec![[0usize; 2]; edges.len()];
    for t in &triangles {
        for r in &t.edges {
            uses[r.edge][r.reversed as usize] += 1;
        }
    }
    if let Some(e) = uses.iter().position(|u| *u != [1, 1]) {
        return Err(Error::ConstructionFailure(format!(
            "edge {e} is used {:?} times (forward, backward); the stars do not fit together",
            uses[e]
        )));
    }
    Ok(TriComplex { genus: atlas.genus, vertices: points, edges, triangles, degeneracies })
}
