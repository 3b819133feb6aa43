//! Closed hyperbolic surfaces given by a pants decomposition.

pub mod atlas;
pub mod cover;
pub mod geodesics;
pub mod pants;
pub mod spec;

pub use atlas::{Atlas, Caps, Chart, CuffCurve, Piece, PieceKind, Word};
pub use cover::{lift_ball, locate, surface_distance, LiftedPoint, SurfacePoint, Tile};
pub use geodesics::{short_geodesics, ClosedGeodesic};
pub use pants::build_atlas;
pub use spec::{linear_graph, FnCoordinates, PantsGraph, SurfaceSpec};
