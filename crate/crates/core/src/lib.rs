//! Exact arithmetic over cyclotomic fields Q(ζ_n), with determinants,
//! characteristic polynomials and eigenpair checks for matrices whose entries
//! are rational functions of ζ^{j−k}.
//!
//! Everything is symbolic: rationals are arbitrary precision and field elements
//! are reduced modulo the nth cyclotomic polynomial, so every identity is
//! compared by exact equality.

pub mod cli;
pub mod combinatorics;
pub mod cyclotomic;
pub mod error;
pub mod identities;
pub mod linalg;
mod modular;
pub mod numbers;
pub mod poly;
pub mod suite;

pub use combinatorics::{derangement_count, signed_derangement_sum, Permutation};
pub use cyclotomic::{cyclotomic_polynomial, CycloContext, CycloElem};
pub use error::{Error, Result};
pub use identities::{build, IdentityReport, MatrixKind};
pub use linalg::CMatrix;
pub use numbers::{Integer, Rational};
pub use poly::CPoly;
