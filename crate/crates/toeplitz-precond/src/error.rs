//! Error type shared by every module of the crate.

use thiserror::Error;

/// Errors produced while constructing matrices and preconditioners or while
/// running the iterative solvers.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A dimension argument was zero or otherwise unusable.
    #[error("invalid dimension n = {n}: {reason}")]
    InvalidDimension { n: usize, reason: &'static str },

    /// A slice had a different length than the operation requires.
    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    /// The requested band does not fit in an `n`-dimensional matrix. Banded
    /// factorization requires `n > 2 * bandwidth`.
    #[error("bandwidth {bandwidth} too large for dimension {n}")]
    BandTooWide { bandwidth: usize, n: usize },

    /// Gaussian elimination met a pivot that is exactly zero.
    #[error("zero pivot at elimination step {index}")]
    ZeroPivot { index: usize },

    /// A circulant factor has an eigenvalue equal (or numerically equal) to
    /// zero, so its inverse cannot be applied.
    #[error("circulant eigenvalue {index} is zero")]
    ZeroCirculantEigenvalue { index: usize },

    /// A root specification lies outside the open interval (0, pi).
    #[error("root location {x} outside the open interval (0, pi)")]
    RootOutsideDomain { x: f64 },

    /// A multiplicity has the wrong parity (the even-part order of a root at
    /// zero must be even, the odd-part order must be odd or zero).
    #[error("invalid multiplicity {value} for {context}")]
    InvalidMultiplicity { context: &'static str, value: usize },

    /// No sign assignment makes the real part of f/g positive.
    #[error("no sign choice gives the ratio a positive real part")]
    NoPositiveSignChoice,

    /// The exchange algorithm failed to settle on a reference.
    #[error("minimax exchange did not converge within {iterations} iterations")]
    NoMinimaxConvergence { iterations: usize },

    /// Too few usable nodes remain after filtering to fit the basis.
    #[error("need at least {needed} nodes, only {available} available")]
    InsufficientNodes { needed: usize, available: usize },

    /// The iteration produced a quantity that is not finite.
    #[error("numerical failure: {context}")]
    NumericalFailure { context: &'static str },

    /// A Krylov method hit an exact breakdown before reaching the tolerance.
    #[error("{method} breakdown at iteration {iteration}")]
    Breakdown {
        method: &'static str,
        iteration: usize,
    },

    /// The inverse-power sequence did not decrease, so no multiplicity can be
    /// read off.
    #[error("smallest-eigenvalue sequence is not decreasing (lambda_32 <= lambda_64)")]
    MultiplicityNotDecreasing,

    /// The dyadic ratio of the eigenvalue sequence is too far from a power of
    /// two to round to an integer multiplicity.
    #[error("log2 ratio {log2_ratio} is not within {tolerance} of an integer")]
    NonIntegerMultiplicity { log2_ratio: f64, tolerance: f64 },

    /// The symbol pieces do not tile the period (-pi, pi].
    #[error("pieces do not cover (-pi, pi] contiguously: {reason}")]
    BadPieces { reason: &'static str },

    /// An identifier does not name a corpus symbol.
    #[error("unknown symbol id `{id}`")]
    UnknownSymbol { id: String },
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
