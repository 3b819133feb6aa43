//! Distance Delaunay triangulations of closed hyperbolic surfaces.
//!
//! A surface is described by a pants decomposition with Fenchel-Nielsen
//! coordinates and realised as a complex of right-angled hexagons in the
//! Poincaré disk. On top of that atlas the crate builds thick-thin vertex
//! sets, lifted Delaunay triangulations, independent certificates, the
//! linear lower-bound audits for the family `S_g(a, b)`, and certified
//! equilateral surfaces obtained from triangular embeddings of `K_n`.

// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod delaunay;
pub mod embedding;
pub mod equilateral;
pub mod error;
pub mod hyp;
pub mod linearbound;
pub mod surface;
pub mod thickthin;
pub mod verify;

pub use error::{Error, Result};
pub use hyp::{Mobius, Tolerance, C64};
