//! Torus-equivariant Chow rings of Hilbert schemes of points on smooth
//! projective toric surfaces, computed by localization to fixed points.

pub mod algebra;
pub mod assembly;
pub mod cli;
pub mod data;
pub mod error;
pub mod fixed_points;
pub mod graded_hilbert;
pub mod staircase;
pub mod toric;

pub use error::{Error, Result};
