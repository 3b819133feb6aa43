use super::{CheckResult, Witness};
use crate::delaunay::TriComplex;
use crate::error::{Error, Result};
use crate::hyp::{self, C64};
use crate::surface::cover::{surface_distance, tiles_within};
use crate::surface::Atlas;
use rayon::prelude::*;
use std::collections::HashMap;

/// Fewest vertices of a simplicial triangulation of the closed orientable
/// surface of genus `g`: `ceil((7 + sqrt(1 + 48 g)) / 2)`.
pub fn jungerman_ringel(g: usize) -> usize {
    let d = 1 + 48 * g as u64;
    // Integer square root, rounded up.
    let mut s = (d as f64).sqrt() as u64;
    while s * s > d {
        s -= 1;
    }
    while s * s < d {
        s += 1;
    }
    ((7 + s) as usize).div_ceil(2)
}

fn structure_failure(message: String) -> CheckResult {
    CheckResult::new("structure", false, -1.0, Some(Witness::Structure { message }))
}

/// Well-formedness of a closed oriented triangulated surface: valid indices
/// and lift words, counterclockwise triangles, each edge used once in each
/// direction with matching lifts, one cycle of triangles around every
/// vertex, and `v - e + f = 2 - 2g`. The margin is the largest lift
/// mismatch subtracted from `1e-7`.
pub fn check_structure(t: &TriComplex, atlas: &Atlas) -> CheckResult {
    let (nv, ne, nf) = t.counts();
    if nv == 0 || nf == 0 {
        return structure_failure("empty complex".into());
    }
    for (i, p) in t.vertices.iter().enumerate() {
        if p.chart >= atlas.charts.len() || p.z.norm() >= 1.0 {
            return structure_failure(format!("vertex {i} is not a point of the atlas"));
        }
    }
    for (i, e) in t.edges.iter().enumerate() {
        if e.u >= nv || e.v >= nv {
            return structure_failure(format!("edge {i} references a missing vertex"));
        }
    }
    let mut uses = vec![[0usize; 2]; ne];
    let mut worst: f64 = 0.0;
    for (k, tri) in t.triangles.iter().enumerate() {
        if tri.vertices.iter().any(|&v| v >= nv) || tri.edges.iter().any(|r| r.edge >= ne) {
            return structure_failure(format!("triangle {k} references a missing vertex or edge"));
        }
        if !tri.words[0].is_empty() {
            return structure_failure(format!("triangle {k} has a non-empty first corner word"));
        }
        let maps = match t.triangle_maps(atlas, k) {
            Ok(m) => m,
            Err(e) => return structure_failure(format!("triangle {k}: {e}")),
        };
        let p: [C64; 3] = [0, 1, 2].map(|i| maps[i].apply(t.vertices[tri.vertices[i]].z));
        if hyp::orient(p[0], p[1], p[2]) <= 0.0 {
            return structure_failure(format!("triangle {k} is not counterclockwise"));
        }
        for i in 0..3 {
            let r = tri.edges[i];
            let e = &t.edges[r.edge];
            let (a, b) = if r.reversed { ((i + 1) % 3, i) } else { (i, (i + 1) % 3) };
            if (e.u, e.v) != (tri.vertices[a], tri.vertices[b]) {
                return structure_failure(format!("triangle {k} side {i} does not match the endpoints of edge {}", r.edge));
            }
            let (chart, m) = match atlas.eval_word(t.vertices[e.u].chart, &e.word) {
                Ok(x) => x,
                Err(err) => return structure_failure(format!("edge {}: {err}", r.edge)),
            };
            if chart != t.vertices[e.v].chart {
                return structure_failure(format!("edge {} word ends in the wrong chart", r.edge));
            }
            let far = maps[a].compose(&m).apply(t.vertices[e.v].z);
            let gap = hyp::dist(far, p[b]);
            worst = worst.max(gap);
            if !(gap < 1e-7) {
                return structure_failure(format!("triangle {k} side {i} is not the lift of edge {} (off by {gap:.3e})", r.edge));
            }
            uses[r.edge][r.reversed as usize] += 1;
        }
    }
    if let Some(e) = uses.iter().position(|u| *u != [1, 1]) {
        return structure_failure(format!("edge {e} is used {} times forwards and {} times backwards", uses[e][0], uses[e][1]));
    }
    // Corners around a vertex are linked through the edge ends they share.
    let mut parent: Vec<usize> = (0..3 * nf).collect();
    fn root(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut seen: HashMap<(usize, bool), usize> = HashMap::new();
    for (k, tri) in t.triangles.iter().enumerate() {
        for i in 0..3 {
            let corner = 3 * k + i;
            let out = tri.edges[i];
            let inc = tri.edges[(i + 2) % 3];
            // Corner i is the start of side i and the end of side i - 1.
            for end in [(out.edge, out.reversed), (inc.edge, !inc.reversed)] {
                match seen.get(&end) {
                    Some(&other) => {
                        let (ra, rb) = (root(&mut parent, corner), root(&mut parent, other));
                        parent[ra] = rb;
                    }
                    None => {
                        seen.insert(end, corner);
                    }
                }
            }
        }
    }
    let mut components = vec![0usize; nv];
    let mut counted = vec![false; 3 * nf];
    for (k, tri) in t.triangles.iter().enumerate() {
        for i in 0..3 {
            let r = root(&mut parent, 3 * k + i);
            if !counted[r] {
                counted[r] = true;
                components[tri.vertices[i]] += 1;
            }
        }
    }
    if let Some(v) = components.iter().position(|&c| c != 1) {
        return structure_failure(format!("vertex {v} has {} cycles of triangles around it", components[v]));
    }
    let chi = t.euler_characteristic();
    let expected = 2 - 2 * t.genus as i64;
    if chi != expected {
        return CheckResult::new("structure", false, -1.0, Some(Witness::Count { lhs: chi as f64, rhs: expected as f64 }));
    }
    if t.genus != atlas.genus {
        return structure_failure(format!("complex has genus {} but the surface has genus {}", t.genus, atlas.genus));
    }
    CheckResult::new("structure", true, 1e-7 - worst, None)
}

/// No edge from a vertex to itself and no two edges between the same pair
/// of vertices.
pub fn check_simplicial(t: &TriComplex) -> CheckResult {
    if let Some((edge, e)) = t.edges.iter().enumerate().find(|(_, e)| e.u == e.v) {
        return CheckResult::new("simplicial", false, -1.0, Some(Witness::Loop { edge, vertex: e.u }));
    }
    let mut first: HashMap<(usize, usize), usize> = HashMap::new();
    for (i, e) in t.edges.iter().enumerate() {
        let key = (e.u.min(e.v), e.u.max(e.v));
        if let Some(&j) = first.get(&key) {
            return CheckResult::new("simplicial", false, -1.0, Some(Witness::DoubleEdge { edges: [j, i], endpoints: [key.0, key.1] }));
        }
        first.insert(key, i);
    }
    CheckResult::new("simplicial", true, 1.0, None)
}

/// Deepest intrusion of a lifted vertex into the closed circumdisk of
/// triangle `k`, excluding its own corners.
fn deepest_intruder(t: &TriComplex, atlas: &Atlas, k: usize) -> Result<std::result::Result<(f64, usize, C64), Witness>> {
    let p = t.triangle_lift(atlas, k)?;
    let circle = match hyp::circumdisk(p[0], p[1], p[2]) {
        Ok(c) => c,
        Err(Error::NoCompactCircumdisk) | Err(Error::DegenerateTriangle) => return Ok(Err(Witness::OpenCircumcircle { triangle: k })),
        Err(e) => return Err(e),
    };
    let chart = t.vertices[t.triangles[k].vertices[0]].chart;
    let mut best = (f64::NEG_INFINITY, usize::MAX, C64::new(0.0, 0.0));
    for tile in tiles_within(atlas, chart, circle.center, circle.radius)? {
        for (j, v) in t.vertices.iter().enumerate() {
            if v.chart != tile.chart {
                continue;
            }
            let z = tile.map.apply(v.z);
            if p.iter().any(|&c| hyp::dist(c, z) < 1e-9) {
                continue;
            }
            let d = circle.depth(z);
            if d > best.0 {
                best = (d, j, z);
            }
        }
    }
    Ok(Ok(best))
}

/// Every triangle's closed circumdisk contains no lifted vertex deeper than
/// `tol`. The margin is the smallest `-depth` over all triangles.
pub fn check_delaunay(t: &TriComplex, atlas: &Atlas, tol: f64) -> Result<CheckResult> {
    let results: Vec<_> = (0..t.triangles.len()).into_par_iter().map(|k| deepest_intruder(t, atlas, k)).collect::<Result<_>>()?;
    let mut margin = f64::INFINITY;
    let mut witness = None;
    for (k, r) in results.into_iter().enumerate() {
        match r {
            Err(w) => {
                return Ok(CheckResult::new("delaunay", false, f64::NEG_INFINITY, Some(w)));
            }
            Ok((depth, vertex, z)) => {
                if -depth < margin {
                    margin = -depth;
                    if depth > tol {
                        witness = Some(Witness::Intruder { triangle: k, vertex, position: [z.re, z.im], depth });
                    }
                }
            }
        }
    }
    Ok(CheckResult::new("delaunay", margin >= -tol, margin, witness))
}

/// Every edge's geodesic representative is as short as the surface distance
/// between its endpoints, up to `tol`.
pub fn check_distance_paths(t: &TriComplex, atlas: &Atlas, tol: f64) -> Result<CheckResult> {
    let rows: Vec<(f64, f64, Vec<u32>)> = (0..t.edges.len())
        .into_par_iter()
        .map(|e| {
            let realized = t.edge_length(atlas, e)?;
            let edge = &t.edges[e];
            let (d, w) = surface_distance(atlas, t.vertices[edge.u], t.vertices[edge.v])?;
            Ok((realized, d, w.word.0))
        })
        .collect::<Result<_>>()?;
    let mut margin = f64::INFINITY;
    let mut witness = None;
    for (e, (realized, distance, word)) in rows.into_iter().enumerate() {
        let m = tol - (realized - distance).abs();
        if m < margin {
            margin = m;
            if m < 0.0 {
                let generators = atlas.generator_word(&crate::surface::Word(word.clone()));
                witness = Some(Witness::Shortcut { edge: e, realized, distance, word, generators });
            }
        }
    }
    Ok(CheckResult::new("distance_paths", margin >= 0.0, margin, witness))
}

/// Counting identities and bounds: `3v - e = 6 - 6g`, `v >=` the
/// Jungerman-Ringel bound (meaningful for simplicial complexes), and for
/// thick-thin outputs `v <= 27(g-1) + 2(g-1)/(cosh(eps/4) - 1) <= 151 g`.
pub fn count_audits(t: &TriComplex, g: usize, eps: f64, thick_thin: bool) -> Vec<CheckResult> {
    let (v, e, _) = t.counts();
    let mut out = Vec::new();
    let lhs = 3 * v as i64 - e as i64;
    let rhs = 6 - 6 * g as i64;
    out.push(CheckResult::new(
        "euler_edges",
        lhs == rhs,
        -((lhs - rhs).abs() as f64),
        (lhs != rhs).then_some(Witness::Count { lhs: lhs as f64, rhs: rhs as f64 }),
    ));
    let jr = jungerman_ringel(g);
    out.push(CheckResult::new(
        "jungerman_ringel",
        v >= jr,
        v as f64 - jr as f64,
        (v < jr).then_some(Witness::Count { lhs: v as f64, rhs: jr as f64 }),
    ));
    if thick_thin {
        let gm = (g - 1) as f64;
        let refined = 27.0 * gm + 2.0 * gm / ((eps / 4.0).cosh() - 1.0);
        out.push(CheckResult::new(
            "vertex_bound",
            v as f64 <= refined,
            refined - v as f64,
            (v as f64 > refined).then_some(Witness::Count { lhs: v as f64, rhs: refined }),
        ));
        let cap = 151 * g;
        out.push(CheckResult::new(
            "vertex_bound_151g",
            v <= cap,
            cap as f64 - v as f64,
            (v > cap).then_some(Witness::Count { lhs: v as f64, rhs: cap as f64 }),
        ));
    }
    out
}
