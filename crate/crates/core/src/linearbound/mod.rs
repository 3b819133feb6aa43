//! Edge-count audits for surfaces built on the linear pants graph, whose
//! pants `Y_1, ..., Y_{2g-2}` form a chain.
//!
//! A triangulation is split into clusters of consecutive pants such that
//! every edge stays within one cluster or joins two consecutive ones. The
//! per-cluster edge counts are then checked against the bounds that force
//! the vertex count to grow linearly with the genus.

mod audit;
mod clusters;

pub use audit::{appendix_b_audit, edge_bound_audit, subgraph_counts, SubgraphCounts};
pub use clusters::{cluster_decomposition, edge_tallies, Cluster, ClusterDecomposition, EdgeTallies};

use crate::delaunay::TriComplex;
use crate::error::{Error, Result};
use crate::hyp;
use crate::surface::atlas::{polygon_from_sides, Atlas, PieceKind};
use crate::surface::pants::seam_lengths;
use serde::{Deserialize, Serialize};

/// Bounds on the geometry of every pants with cuff lengths in `[a, b]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PantsConstants {
    pub a: f64,
    pub b: f64,
    pub grid_n: usize,
    /// `m`: lower bound on the distance between two cuffs of one pants.
    pub mindist: f64,
    /// `M`: upper bound on the diameter of a pants.
    pub diam: f64,
    /// `ceil(M / m) + 1`.
    pub n: usize,
}

fn hexagon_diameter(l: [f64; 3]) -> Result<f64> {
    let s = seam_lengths(l)?;
    let chart = polygon_from_sides(&[l[0] / 2.0, s[0], l[1] / 2.0, s[1], l[2] / 2.0, s[2]], &[std::f64::consts::FRAC_PI_2; 6])?;
    let v = &chart.vertices;
    let mut d: f64 = 0.0;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            d = d.max(hyp::dist(v[i], v[j]));
        }
    }
    Ok(d)
}

/// Evaluates `m`, `M` and `N` over a `grid_n`³ grid of cuff lengths.
///
/// The cuff distances are monotone in each length, so the grid corners
/// certify `m`. `M` bounds the diameter by two hexagon diameters plus half
/// a cuff, maximised over the grid.
pub fn pants_constants(a: f64, b: f64, grid_n: usize) -> Result<PantsConstants> {
    if !(a > 0.0 && b >= a && b.is_finite()) {
        return Err(Error::InvalidInterval { lo: a, hi: b });
    }
    if grid_n < 8 {
        return Err(Error::Argument { what: "pants_constants (grid_n >= 8)", value: grid_n as f64 });
    }
    let step = (b - a) / (grid_n - 1) as f64;
    let grid: Vec<f64> = (0..grid_n).map(|i| if i + 1 == grid_n { b } else { a + step * i as f64 }).collect();
    let mut mindist = f64::INFINITY;
    let mut diam: f64 = 0.0;
    for &l1 in &grid {
        for &l2 in &grid {
            for &l3 in &grid {
                let s = seam_lengths([l1, l2, l3])?;
                mindist = mindist.min(s[0]).min(s[1]).min(s[2]);
                diam = diam.max(2.0 * hexagon_diameter([l1, l2, l3])? + b / 2.0);
            }
        }
    }
    let n = (diam / mindist).ceil() as usize + 1;
    Ok(PantsConstants { a, b, grid_n, mindist, diam, n })
}

/// Which pants each vertex lies in, and how many vertices each pants has.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PantsTally {
    pub pants_of_vertex: Vec<usize>,
    pub tallies: Vec<usize>,
}

impl PantsTally {
    pub fn empty_pants(&self) -> Vec<usize> {
        (0..self.tallies.len()).filter(|&p| self.tallies[p] == 0).collect()
    }
}

/// Distance below which a vertex counts as lying on a cuff.
const ON_CUFF: f64 = 1e-9;

/// Assigns every vertex to the pants of its chart. A vertex on a cuff
/// belongs to both adjacent pants and goes to the lower index.
pub fn locate_vertices_in_pants(atlas: &Atlas, t: &TriComplex) -> Result<PantsTally> {
    let g = atlas.genus;
    let pants = 2 * g - 2;
    if atlas.charts.len() != 2 * pants || atlas.cuffs.len() != 3 * g - 3 {
        return Err(Error::InvalidGraph(format!(
            "{} charts and {} cuffs do not come from a genus {g} pants graph",
            atlas.charts.len(),
            atlas.cuffs.len()
        )));
    }
    let mut pants_of_vertex = Vec::with_capacity(t.vertices.len());
    let mut tallies = vec![0; pants];
    for p in &t.vertices {
        let chart = &atlas.charts[p.chart];
        let mut y = p.chart / 2;
        for piece in &chart.pieces {
            if matches!(piece.kind, PieceKind::Cuff(_)) && hyp::dist_to_segment(piece.start, piece.end, p.z) < ON_CUFF {
                y = y.min(piece.to_chart / 2);
            }
        }
        pants_of_vertex.push(y);
        tallies[y] += 1;
    }
    Ok(PantsTally { pants_of_vertex, tallies })
}
