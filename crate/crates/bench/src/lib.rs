//! Shared fixtures for the benchmarks in `benches/`.

use hypdel::delaunay::{thick_thin_triangulation, ThickThin};
use hypdel::surface::{build_atlas, linear_graph, Atlas, FnCoordinates};
use hypdel::thickthin::EPSILON;

/// `S_g` on the linear pants graph with every cuff of length `length`.
pub fn linear_surface(g: usize, length: f64) -> Atlas {
    let graph = linear_graph(g).expect("genus >= 2");
    build_atlas(&graph, &FnCoordinates::uniform(graph.edges.len(), length)).expect("valid lengths")
}

pub fn thick_thin(atlas: &Atlas) -> ThickThin {
    thick_thin_triangulation(atlas, EPSILON).expect("triangulation")
}
