//! Exact arithmetic substrate: rationals, sparse polynomials, dense matrices.

pub mod linalg;
pub mod matrix;
pub mod mpoly;
pub mod point;
pub mod rat;
pub mod symmetric;

pub use matrix::{Matrix, PolyMatrix, QMatrix};
pub use mpoly::{MPoly, Vars};
pub use point::ProjSymPoint;
pub use rat::Rat;
pub use symmetric::{lowest_degree_part, minors, symmetric_indeterminate_matrix, SymLayout};
