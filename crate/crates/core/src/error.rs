//! Error type shared across the crate.

use thiserror::Error;

/// Errors produced by the numerical routines and the CLI front end.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix entry ({row},{col}) is not finite")]
    NonFiniteEntry { row: usize, col: usize },

    #[error("index {index} out of represented range (limit {limit})")]
    OutOfRange { index: usize, limit: usize },

    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not banded with widths ({p},{q}): entry ({row},{col}) = {value}")]
    NotBanded {
        p: usize,
        q: usize,
        row: usize,
        col: usize,
        value: f64,
    },

    #[error("{context}: zero pivot at position {position}")]
    Degenerate { context: String, position: usize },

    #[error("eigenvalue iteration failed to converge after {iterations} iterations")]
    EigenNoConvergence { iterations: usize },

    #[error("degenerate spectrum: eigenvalues {a} and {b} closer than {gap:.3e} (generalized eigenvector regime is unsupported)")]
    DegenerateSpectrum { a: f64, b: f64, gap: f64 },

    #[error("{context}: residual {residual:.3e} exceeds tolerance {tolerance:.3e}")]
    ToleranceExceeded {
        context: String,
        residual: f64,
        tolerance: f64,
    },

    #[error("evaluation point {z} within {distance:.3e} of a pole")]
    PoleProximity { z: String, distance: f64 },

    #[error("oscillatory shift search exhausted: no positive factorization below s = {ceiling}")]
    SearchExhausted { ceiling: f64 },

    #[error("moment matrix regularity failure: leading minor {minor} is singular")]
    Regularity { minor: usize },

    #[error("darboux variant {variant} invalid for {q} lower and {p} upper factors")]
    InvalidVariant { variant: i32, p: usize, q: usize },

    #[error("factorization incomplete: expected {expected_lowers} lower and {expected_uppers} upper factors")]
    WrongFactorCount {
        expected_lowers: usize,
        expected_uppers: usize,
    },

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
