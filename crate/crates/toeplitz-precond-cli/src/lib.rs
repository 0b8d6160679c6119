//! Experiment plumbing behind the `toeplitz-precond` command-line tool.
//!
//! The binary solves real non-symmetric Toeplitz systems `T_n(f) x = b`
//! with PGMRES and PCGN under the preconditioners built by the
//! `toeplitz-precond` library: banded Toeplitz matrices from zero
//! elimination and minimax correction, circulants (sampled, Strang,
//! Frobenius-optimal), band-times-circulant composites, and the automatic
//! variants that estimate the zero structure from the matrix entries alone.
//!
//! This crate exposes the pieces the binary is made of — experiment
//! descriptions, the runner, the published reference tables, and the
//! matrix-file format — so integration tests can drive them directly.

pub mod experiment;
pub mod matfile;
pub mod reference;
pub mod tables;

pub use experiment::{
    BandApprox, CliError, Experiment, PrecondSpec, RunRecord, SymbolSource,
};
