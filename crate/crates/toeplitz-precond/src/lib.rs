//! Preconditioners for non-symmetric real Toeplitz systems.
//!
//! A Toeplitz matrix `T_n(f)` collects the Fourier coefficients
//! `t_k = (1/2pi) int_{-pi}^{pi} f(x) e^{-ikx} dx` of a generating function
//! `f = f_1 + i f_2` with even real part and odd imaginary part, so that
//! `(T_n)_{jk} = t_{j-k}` is real but non-symmetric. When `f` vanishes
//! somewhere on the period, `T_n` is ill conditioned and plain circulant
//! preconditioners lose their clustering; the constructions here follow the
//! band-times-circulant program:
//!
//! * eliminate the zeros of `f` by a trigonometric polynomial `g` built
//!   from factors `(2 - 2 cos x)`, `(cos x_0 - cos x)` and `sin x`
//!   ([`elimination_polynomial`]),
//! * correct the smooth remainder `f / g` by a low-degree minimax or
//!   interpolatory trigonometric polynomial `q` ([`band_minimax`],
//!   [`band_interpolation`]), giving the banded preconditioner
//!   `B = T_n(g q)` with spectra clustered at one,
//! * or combine a band with a circulant, `M = T_n(g) C_n(f/g)`
//!   ([`BandCirculantPreconditioner`]), alongside the classical Strang and
//!   optimal circulants ([`CirculantPreconditioner`]).
//!
//! When only the matrix entries are known, the same structures are
//! recovered automatically: the partial Fourier sum `F_{n-1}` is sampled on
//! estimation grids, its zeros located and their orders estimated from the
//! decay of small eigenvalues of auxiliary sections ([`estimate`]), and the
//! preconditioners assembled from the estimated structure ([`auto_band`],
//! [`auto_circulant`]).
//!
//! Systems are solved by preconditioned GMRES and CGN ([`pgmres`],
//! [`pcgn`]) with fast Toeplitz products by circulant embedding, and the
//! clustering claims can be checked directly on dense spectra of
//! `M^{-1} T_n` ([`spectra`]).

pub mod banded;
pub mod corpus;
pub mod error;
pub mod estimate;
pub mod krylov;
pub mod precond;
mod quadrature;
pub mod remez;
pub mod spectra;
pub mod symbol;
pub mod toeplitz;
pub mod trig;

pub use banded::BandedLu;
pub use error::{Error, Result};
pub use estimate::{
    auto_band, auto_circulant, estimate_multiplicity, estimate_zero_structure,
    fourier_expansion, AutoBandPreconditioner, AutoCirculantKind, AutoCirculantPreconditioner,
    FourierExpansion, Grid, MultiplicityEstimate, SymbolPart, ZeroStructureEstimate,
    DEFAULT_POWER_ITERS,
};
pub use krylov::{
    pcgn, pgmres, solve_experiment, ExperimentOutcome, KrylovMethod, RightHandSide,
    SolveOptions, SolveOutcome,
};
pub use precond::{
    band_interpolation, band_minimax, elimination_polynomial, elimination_polynomial_parts,
    fit_correction, BandCirculantPreconditioner, BandPreconditioner, CirculantPreconditioner,
    CorrectionFit, IdentityPreconditioner, PartZeros, Preconditioner, RootSpec,
};
pub use remez::{MinimaxResult, Parity, TrigApproximant};
pub use spectra::{
    eigenvalue_cluster, eigenvalues, preconditioned_matrix, singular_value_cluster,
    singular_values, ClusterStats,
};
pub use symbol::{GeneratingSymbol, Piece};
pub use toeplitz::ToeplitzMatrix;
pub use trig::{CosineSeries, SineSeries, TrigPolynomial};
