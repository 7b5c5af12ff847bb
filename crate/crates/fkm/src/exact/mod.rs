//! Exact rational linear algebra: dense matrices, canonical subspaces, and
//! the float conversion layer used by the numeric spectrum code.

pub mod matrix;
pub mod subspace;
pub mod vector;

pub use matrix::{involution_eigenspace, ExactMatrix};
pub use subspace::{column_space, nullspace, Subspace};
pub use vector::Q;
