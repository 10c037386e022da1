//! Dense symmetric eigensolver, small-degree polynomial roots, and
//! tolerance-aware eigenvalue multisets.

mod eigen;
mod matrix;
mod poly;
mod spectrum;

pub use eigen::{eigen_sym, eigenvalues_sym, eigenvalues_sym_with_tol, pseudoinverse, SymEigen};
pub use matrix::{matmul, SymMatrix};
pub use poly::{poly_roots, Polynomial};
pub use spectrum::{spectra_equal, Eigenvalue, Spectrum};
