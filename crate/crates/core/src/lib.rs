//! Lower bounds and constructions for the vector chromatic number of sparse
//! graphs, driven by the non-backtracking operator and the deformed
//! Laplacian `L(z) = z^2 I - z A + D - I`.
//!
//! Numerical kernels are generic over [`scalar::Real`]; the aliases at the
//! crate root fix them to `f64`.

// `!(x > 0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod certificate;
pub mod coloring;
pub mod corpus;
pub mod deformed;
pub mod error;
pub mod graph;
pub mod linalg;
pub mod maxcut;
pub mod nb;
pub mod oracle;
pub mod poly;
pub mod rng;
pub mod scalar;

pub use error::{Error, Ineligibility, Result};
pub use graph::{classify, parse_edge_list, parse_edge_list_compact, sample_er, EligibilityReport, Graph};
pub use nb::DirectedEdgeIndex;

pub use certificate::{LowerBoundCertificate, Verification, Weighting};
pub use oracle::{Feasibility, OracleResult};

pub type Perron = nb::PerronData<f64>;
pub type Coloring = coloring::VectorColoring<f64>;
pub type Walk<'a> = coloring::WalkModel<'a, f64>;
pub type Witness = coloring::Witness<f64>;
pub type RealEig = deformed::RealEigLocation<f64>;
pub type ScanOptions = deformed::ScanOptions<f64>;
pub type RootScan = deformed::RootScan<f64>;
pub type PsdCheck = deformed::PsdCheck<f64>;
pub type Matrix = linalg::DenseMatrix<f64>;
