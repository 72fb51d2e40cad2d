//! Exact integer and rational linear algebra.
//!
//! Everything here works over arbitrary-precision integers; nothing is ever
//! approximated in floating point.

mod eigen;
mod lattice;
mod matrix;
mod parse;
mod rational;
mod snf;

pub use eigen::{
    eigenvalue_profile, finite_order, in_centralizer_span, EigenKind, EigenProfile, Mixed3,
    Residual,
};
pub use lattice::{
    eigenlattice, kernel_lattice, lattice_index, lattice_membership, membership_certificate,
    saturate, LatticeBasis, Membership,
};
pub use matrix::{IntMatrix, IntVector};
pub use parse::{parse_matrix, parse_matrix_json, parse_matrix_text, parse_vector_text, ParseError};
pub use rational::RatMatrix;
pub use snf::{cokernel_representatives, smith_normal_form, SnfResult};

use num_bigint::BigInt;
use num_traits::ToPrimitive;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinAlgError {
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: String, found: String },
    #[error("matrix is not unimodular (det = {det})")]
    NotUnimodular { det: BigInt },
    #[error("unsupported dimension {0}")]
    UnsupportedDimension(usize),
    #[error("matrix has no entries")]
    Empty,
    #[error("rows have different lengths")]
    Ragged,
    #[error("{0}")]
    Precondition(String),
}

pub(crate) fn big_to_json(x: &BigInt) -> serde_json::Value {
    match x.to_i64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::String(x.to_string()),
    }
}

/// Shorthand for building a `BigInt` vector from small literals.
pub fn ivec(entries: &[i64]) -> IntVector {
    entries.iter().map(|&x| BigInt::from(x)).collect()
}
