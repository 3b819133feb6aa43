//! Edge-count inequalities over a cluster decomposition.

use super::clusters::{ClusterDecomposition, EdgeTallies};
use crate::delaunay::TriComplex;
use crate::embedding::Embedding;
use crate::error::Result;
use crate::verify::{CheckResult, Witness};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

fn bound(name: String, lhs: f64, rhs: f64) -> CheckResult {
    let passed = lhs <= rhs;
    CheckResult::new(&name, passed, rhs - lhs, (!passed).then_some(Witness::Count { lhs, rhs }))
}

fn equal(name: &str, lhs: f64, rhs: f64) -> CheckResult {
    let passed = lhs == rhs;
    CheckResult::new(name, passed, -(lhs - rhs).abs(), (!passed).then_some(Witness::Count { lhs, rhs }))
}

/// Keeps the tightest of a family of `lhs <= rhs` rows under one name.
fn tightest(name: &str, rows: impl IntoIterator<Item = (f64, f64)>) -> CheckResult {
    let worst = rows.into_iter().min_by(|a, b| (a.1 - a.0).total_cmp(&(b.1 - b.0)));
    match worst {
        Some((lhs, rhs)) => {
            let mut r = bound(name.to_string(), lhs, rhs);
            r.witness = Some(Witness::Count { lhs, rhs });
            r
        }
        None => CheckResult::new(name, true, f64::INFINITY, None),
    }
}

fn not_applicable(name: String, why: String) -> CheckResult {
    CheckResult::new(&name, true, f64::NAN, Some(Witness::Structure { message: format!("not applicable: {why}") }))
}

/// The counting identities and bounds that make `v` grow linearly in `g`.
/// Rows that aggregate over clusters carry the tightest instance as
/// witness.
pub fn edge_bound_audit(d: &ClusterDecomposition, e: &EdgeTallies, t: &TriComplex) -> Vec<CheckResult> {
    let (v, edges, _) = t.counts();
    let (v, edges, g) = (v as f64, edges as f64, t.genus as f64);
    let n = d.n as f64;
    let nn = n * (n + 1.0);
    let vc: Vec<f64> = d.vertex_counts.iter().map(|&x| x as f64).collect();
    let total_within: usize = e.within.iter().sum();
    let total_between: usize = e.between.iter().sum();
    vec![
        bound("clusters_at_most_vertices".into(), d.clusters.len() as f64, v),
        equal("vertex_sum", vc.iter().sum(), v),
        equal("edge_sum", (total_within + total_between) as f64, edges),
        tightest("within_cluster_edges", e.within.iter().zip(&vc).map(|(&w, &x)| (w as f64, 3.0 * x + 18.0 * nn))),
        tightest("between_cluster_edges", e.between.iter().enumerate().map(|(i, &b)| (b as f64, 18.0 * (vc[i] + vc[i + 1]) + 216.0 * nn))),
        equal("euler_edges", edges, 3.0 * v + 6.0 * g - 6.0),
        bound("linear_lower_bound".into(), (g - 1.0) / (6.0 + 39.0 * nn), v),
    ]
}

/// Counts for the subgraph of a triangulation spanned by a vertex set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgraphCounts {
    pub vertices: usize,
    pub edges: usize,
    /// Faces of the induced embedding, traced from the rotation system.
    pub faces: usize,
    /// Triangles of the triangulation with all corners in the set.
    pub triangles: usize,
    /// Edges lying on 0, 1 and 2 of those triangles.
    pub delta: [usize; 3],
    pub components: usize,
    /// Genus of the induced embedding, an upper bound for the graph genus.
    pub embedded_genus: usize,
}

/// Restricts the triangulation's rotation system to `keep` and traces it.
pub fn subgraph_counts(t: &TriComplex, full: &Embedding, keep: &[bool]) -> Result<SubgraphCounts> {
    let mut index = vec![usize::MAX; keep.len()];
    let mut vertices = 0;
    for (v, &k) in keep.iter().enumerate() {
        if k {
            index[v] = vertices;
            vertices += 1;
        }
    }
    let mut edge_index = vec![usize::MAX; full.edges.len()];
    let mut edges = Vec::new();
    for (i, &(u, v)) in full.edges.iter().enumerate() {
        if keep[u] && keep[v] {
            edge_index[i] = edges.len();
            edges.push((index[u], index[v]));
        }
    }
    let mut rotation = vec![Vec::new(); vertices];
    for (v, rot) in full.rotation.iter().enumerate() {
        if keep[v] {
            rotation[index[v]] = rot.iter().filter(|&&d| edge_index[d / 2] != usize::MAX).map(|&d| 2 * edge_index[d / 2] + d % 2).collect();
        }
    }
    let sub = Embedding { vertices, edges, rotation };
    let faces = sub.trace()?;
    let mut uses = vec![0usize; sub.edges.len()];
    let mut triangles = 0;
    for tri in &t.triangles {
        if tri.vertices.iter().all(|&v| keep[v]) {
            triangles += 1;
            for r in &tri.edges {
                uses[edge_index[r.edge]] += 1;
            }
        }
    }
    let mut delta = [0; 3];
    for &u in &uses {
        delta[u.min(2)] += 1;
    }
    let embedded_genus = faces.genus(vertices, sub.edges.len())?;
    Ok(SubgraphCounts {
        vertices,
        edges: sub.edges.len(),
        faces: faces.count(),
        triangles,
        delta,
        components: faces.components,
        embedded_genus,
    })
}

fn triangle_in(adj: &[Vec<usize>]) -> Option<[usize; 3]> {
    for a in 0..adj.len() {
        for &b in &adj[a] {
            for &c in &adj[b] {
                if c != a && b != a && adj[c].contains(&a) {
                    return Some([a, b, c]);
                }
            }
        }
    }
    None
}

fn connected(adj: &[Vec<usize>], present: &[bool]) -> bool {
    let Some(start) = present.iter().position(|&p| p) else { return true };
    let mut seen = vec![false; adj.len()];
    let mut stack = vec![start];
    seen[start] = true;
    while let Some(x) = stack.pop() {
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    present.iter().zip(&seen).all(|(&p, &s)| !p || s)
}

fn cluster_pair_rows(d: &ClusterDecomposition, e: &EdgeTallies, t: &TriComplex, full: &Embedding, i: usize) -> Result<Vec<CheckResult>> {
    let c = &e.cluster_of_vertex;
    let keep: Vec<bool> = c.iter().map(|&x| x == i || x == i + 1).collect();
    let s = subgraph_counts(t, full, &keep)?;
    let mut rows = Vec::new();
    let (f, d0, d1, d2) = (s.faces as f64, s.delta[0] as f64, s.delta[1] as f64, s.delta[2] as f64);
    rows.push(equal(&format!("triangle_sides[{i}]"), 3.0 * s.triangles as f64, 2.0 * d2 + d1));
    rows.push(bound(format!("face_count[{i}]"), 2.0 * d2 + d1, 3.0 * f));
    rows.push(bound(format!("cross_faces[{i}]"), 2.0 * e.between[i] as f64, 3.0 * f));
    rows.push(bound(format!("thin_edges[{i}]"), 2.0 * d0 + d1, 2.0 * (e.within[i] + e.within[i + 1]) as f64));
    let chi = s.vertices as f64 - s.edges as f64 + f;
    rows.push(equal(&format!("euler[{i}]"), chi, 2.0 * s.components as f64 - 2.0 * s.embedded_genus as f64));

    // The bipartite graph of edges between the two clusters.
    let mut adj = vec![Vec::new(); t.vertices.len()];
    let mut present = vec![false; t.vertices.len()];
    for edge in &t.edges {
        if c[edge.u].min(c[edge.v]) == i && c[edge.u].abs_diff(c[edge.v]) == 1 {
            adj[edge.u].push(edge.v);
            adj[edge.v].push(edge.u);
            present[edge.u] = true;
            present[edge.v] = true;
        }
    }
    let tri = triangle_in(&adj);
    rows.push(CheckResult::new(
        &format!("bipartite_triangle_free[{i}]"),
        tri.is_none(),
        0.0,
        tri.map(|x| Witness::Structure { message: format!("triangle {x:?} among edges between clusters") }),
    ));
    let gap = d.separation(i);
    let needed = 6 * d.n * d.n + 2;
    let name = format!("bipartite_connected[{i}]");
    if gap > needed {
        let ok = connected(&adj, &present);
        rows.push(CheckResult::new(
            &name,
            ok,
            0.0,
            (!ok).then(|| Witness::Structure { message: format!("edges between clusters {i} and {} form more than one component", i + 1) }),
        ));
    } else {
        rows.push(not_applicable(name, format!("{gap} pants separate the clusters, at most 6N² + 2 = {needed}")));
    }
    Ok(rows)
}

fn cluster_rows(e: &EdgeTallies, t: &TriComplex, full: &Embedding, i: usize) -> Result<CheckResult> {
    let keep: Vec<bool> = e.cluster_of_vertex.iter().map(|&x| x == i).collect();
    let s = subgraph_counts(t, full, &keep)?;
    let name = format!("embedded_genus_bound[{i}]");
    if s.components != 1 || s.vertices < 3 {
        return Ok(not_applicable(name, format!("{} vertices in {} components", s.vertices, s.components)));
    }
    // Sufficient, not tight: the embedded genus bounds the graph genus
    // from above.
    Ok(bound(name, s.edges as f64, 6.0 * s.embedded_genus as f64 + 3.0 * s.vertices as f64 - 6.0))
}

/// Face counting and Euler identities on the subgraphs spanned by each
/// cluster and each consecutive pair of clusters.
pub fn appendix_b_audit(d: &ClusterDecomposition, e: &EdgeTallies, t: &TriComplex) -> Result<Vec<CheckResult>> {
    let full = t.embedding()?;
    let k = d.clusters.len();
    let singles: Vec<CheckResult> = (0..k).into_par_iter().map(|i| cluster_rows(e, t, &full, i)).collect::<Result<_>>()?;
    let pairs: Vec<Vec<CheckResult>> =
        (0..k.saturating_sub(1)).into_par_iter().map(|i| cluster_pair_rows(d, e, t, &full, i)).collect::<Result<_>>()?;
    Ok(singles.into_iter().chain(pairs.into_iter().flatten()).collect())
}
