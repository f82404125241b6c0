//! Exact arithmetic: characters, polynomials over `Q`, linear algebra and
//! graded submodules of `R^F`.

pub mod character;
pub mod linalg;
pub mod module;
pub mod polynomial;

pub use character::{Character, LatticeMap};
pub use linalg::Subspace;
pub use module::{span_piece, GradedSubmodule, GradedVector, ModuleJson};
pub use polynomial::{divisible_by_linear_power, elementary_symmetric, Polynomial};

pub type Rational = num_rational::BigRational;
