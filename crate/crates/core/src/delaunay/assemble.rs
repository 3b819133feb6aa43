//! The thick-thin triangulation: cylinder vertices plus a thick net,
//! triangulated with the thin standard triangles preferred.

use super::lifted::{contains_triangle, lifted_delaunay_with, triangle_set, DelaunayOptions, PreferredTriangle};
use super::TriComplex;
use crate::error::{Error, Result};
use crate::surface::Atlas;
use crate::thickthin::{detect_thin_part, standard_triangulation, thick_net, Cylinder, CylinderClass, EpsilonNet};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ThickThin {
    pub complex: TriComplex,
    pub cylinders: Vec<Cylinder>,
    pub net: EpsilonNet,
    /// Number of cylinder vertices.
    pub p1: usize,
    /// Number of net points outside the thin standard triangles.
    pub p2: usize,
    /// Thin standard triangles found among the Delaunay triangles.
    pub standard_triangles: usize,
}

/// Builds the thick-thin vertex set for `eps` and triangulates it.
///
/// Fails if a thin standard triangle is missing from the result or if the
/// vertex count exceeds `151 g`.
pub fn thick_thin_triangulation(atlas: &Atlas, eps: f64) -> Result<ThickThin> {
    let cylinders = detect_thin_part(atlas, eps)?;
    let net = thick_net(atlas, &cylinders, eps)?;
    let mut preferred = Vec::new();
    for cyl in cylinders.iter().filter(|c| c.class == CylinderClass::Thin) {
        let st = standard_triangulation(atlas, cyl)?;
        for t in &st.triangles {
            preferred.push(PreferredTriangle { chart: st.lift.chart, positions: t.map(|r| st.lift.position(r)) });
        }
    }
    let points: Vec<_> = net.cylinder_vertices.iter().chain(&net.points).copied().collect();
    let (p1, p2) = (net.cylinder_vertices.len(), net.points.len());
    let bound = 151 * atlas.genus;
    if points.len() > bound {
        return Err(Error::ConstructionFailure(format!("{} vertices exceed 151g = {bound}", points.len())));
    }
    let opts = DelaunayOptions { initial_radius: eps.max(0.5), ..DelaunayOptions::default() };
    let complex = lifted_delaunay_with(atlas, &points, opts, &preferred)?;
    let set = triangle_set(atlas, &complex)?;
    for (k, t) in preferred.iter().enumerate() {
        if !contains_triangle(atlas, &complex, &set, t)? {
            return Err(Error::ConstructionFailure(format!(
                "standard triangle {k} at {:?} (chart {}) is not a Delaunay triangle",
                t.positions, t.chart
            )));
        }
    }
    Ok(ThickThin { complex, cylinders, net, p1, p2, standard_triangles: preferred.len() })
}
