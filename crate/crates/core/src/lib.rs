//! Exact geometry of cubical subsets of the unit cube and the relative
//! isoperimetric problem among them.
//!
//! Everything here is pure and allocation-only: sets are canonical unions of
//! rational boxes, every functional is computed exactly, and irrational
//! quantities appear only as certified rational enclosures.
#![no_std]

extern crate alloc;

mod grid;

pub mod bitgrid;
pub mod classify;
pub mod enclosure;
pub mod geometry;
pub mod isometry;
pub mod rat;
pub mod search;
pub mod symmetrize;
pub mod variation;
pub mod voxel;

pub use geometry::{AxisBox, CubicalSet, Facet, GeometryError, Side};
pub use isometry::{equal_up_to_isometry, CubeIsometry};
pub use rat::Rat;
pub use voxel::{devoxelize, voxelize, VoxelSet};
