//! Dense kernels and the Lanczos eigensolver.

mod cholesky;
mod dense;
mod lanczos;
mod symmetric;

pub use cholesky::{cholesky_pd, Breakdown};
pub use dense::DenseMatrix;
pub use lanczos::{lanczos_smallest, LanczosOptions, RitzPair};
pub use symmetric::{symmetric_eigen, symmetric_eigenvalues, tridiagonal_eigen, SymmetricEigen};
