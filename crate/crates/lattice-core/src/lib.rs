//! Exact and floating scalar arithmetic, dense matrices, canonical subspaces
//! and integer Smith normal form.
//!
//! Everything in this crate is immutable after construction and every
//! operation is pure, so values can be shared and sent between threads
//! freely.
//!
//! Two scalar backends are supported: exact Gaussian rationals (every
//! equality test is decidable) and double-precision complex numbers (rank
//! decisions use a relative singular-value threshold, default `1e-9`).

mod matrix;
mod scalar;
mod snf;
mod subspace;

pub use matrix::Matrix;
pub use scalar::{Backend, Scalar};
pub use snf::{smith_normal_form, solve_integer, SmithDecomposition};
pub use subspace::Subspace;

use thiserror::Error;

/// Default relative threshold for float-backend rank decisions.
pub const DEFAULT_RANK_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LatticeError {
    #[error("backend mismatch: {0:?} vs {1:?}")]
    BackendMismatch(Backend, Backend),
    #[error("dimension mismatch: {context}: {left} vs {right}")]
    DimensionMismatch {
        context: &'static str,
        left: usize,
        right: usize,
    },
    #[error("matrix entry is not an integer")]
    NonInteger,
    #[error("division by zero scalar")]
    DivisionByZero,
    #[error("matrix is singular")]
    Singular,
    #[error("linear system has no solution")]
    Inconsistent,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, LatticeError>;
