//! Exact hafnian-based graph invariants built on the Gaussian boson sampling
//! encoding `c(A ⊕ A + kI)` of a graph adjacency matrix `A`.
//!
//! Hafnians, orbit sizes and certificate data are exact big integers or
//! rationals. Only probabilities and photon-distribution outputs are `f64`.

pub mod combinatorics;
pub mod error;
pub mod gbs;
pub mod graphs;
pub mod hafnian;
pub mod invariants;
pub mod matrix;
mod scan;

pub use combinatorics::{DetectionEvent, Orbit};
pub use error::{Error, Result};
pub use gbs::{encode, GbsEncoding, ProbabilityRecord};
pub use graphs::Graph;
pub use invariants::{certify, compare_certificates, Certificate, ComparisonReport, OrbitCertificate};
pub use matrix::{SymmetricIntMatrix, SymmetricMatrix, SymmetricRationalMatrix};
