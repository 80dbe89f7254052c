//! Spectral toolkit for bounded banded matrices of oscillatory type.
//!
//! The crate covers the tridiagonal (Jacobi) case and the representative
//! banded case with two superdiagonals and three subdiagonals: recursion
//! polynomial families of both kinds, truncation spectra with left and
//! right eigenvector formulas, Christoffel numbers and discrete spectral
//! measures, Christoffel--Darboux kernels, Weyl functions, positive
//! bidiagonal factorizations with their Darboux transformations, the
//! block-Hankel moment matrix with its Gauss--Borel factorization, and the
//! mixed multiple Gauss quadrature rules with their degrees of precision.

pub mod band;
pub mod cli;
pub mod dd;
pub mod dense;
pub mod eigen;
pub mod error;
pub mod input;
pub mod jacobi;
pub mod mixed;
pub mod moments;
pub mod neville;
pub mod poly;
pub mod report;

pub use band::BandedMatrix;
pub use dense::DenseMatrix;
pub use error::{Error, Result};
pub use jacobi::JacobiMatrix;
pub use mixed::{InitialConditions, TruncationSpectrum};
pub use neville::BidiagonalFactorization;
pub use poly::Poly;
