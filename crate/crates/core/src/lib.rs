//! Double normals of convex bodies.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod cli;
pub mod constructions;
pub mod directions;
pub mod error;
pub mod geometry;
pub mod inventory;
pub mod io;
pub mod polytope;
pub mod smooth;

pub use error::{Error, Result};
pub use geometry::{AffineSubspace, Chord, Hyperplane, Point, DEFAULT_TOL};
pub use inventory::NormalInventory;
pub use polytope::Polytope;
