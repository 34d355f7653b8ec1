//! Laurent polynomials and exact sparse linear algebra.

mod matrix;
mod poly;

pub use matrix::SparseMatrix;
pub use poly::{Poly, Substitution, Var};
