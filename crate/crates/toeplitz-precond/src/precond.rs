//! Band, circulant, and band-times-circulant preconditioners.
//!
//! For a nonsymmetric Toeplitz system `T_n(f) x = b` the preconditioners in
//! this module come in three families:
//!
//! * **Band** `T_n(p)`: `p = g q` where the trigonometric polynomial `g`
//!   carries the zeros of `f` (see [`elimination_polynomial`]) and
//!   `q = q_1 + i q_2` is a minimax or interpolatory correction fitted to
//!   `f / g`. Applying the inverse costs `O(n)` via banded LU with partial
//!   pivoting; the matrix and its transpose are factored separately.
//! * **Circulant**: Strang's copy-the-central-band circulant, T. Chan's
//!   Frobenius-optimal circulant, or the circulant with eigenvalues sampled
//!   from a symbol, `lambda_j = f(2 pi j / n)`. Inverses cost two FFTs.
//! * **Band times circulant** `T_n(g) C`: the band factor eliminates the
//!   zeros and the circulant factor (sampled from `f/g`, or Frobenius-optimal
//!   for `T_n(f/g)`) handles the smooth remainder.
//!
//! Every preconditioner exposes `M^{-1} r` and `M^{-T} r` through the
//! [`Preconditioner`] trait, which is all the Krylov solvers need.
//!
//! Circulant eigenvalues are stored in sampling order: `lambda_j` belongs to
//! the eigenvector `(e^{-2 pi i j k / n})_k`, so a circulant with first
//! column `c` has `lambda_j = sum_k c_k e^{2 pi i j k / n}`. Real circulants
//! satisfy `lambda_j = conj(lambda_{n-j})`; the constructor re-imposes that
//! symmetry by averaging mirror pairs and rejects (near-)zero eigenvalues.

use crate::banded::BandedLu;
use crate::error::{Error, Result};
use crate::remez::{self, MinimaxResult, Parity};
use crate::symbol::{GeneratingSymbol, Piece, PieceFn};
use crate::toeplitz::ToeplitzMatrix;
use crate::trig::{CosineSeries, SineSeries, TrigPolynomial};
use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use std::f64::consts::{PI, TAU};
use std::sync::Arc;

/// Left preconditioner interface: application of `M^{-1}` and `M^{-T}`.
pub trait Preconditioner {
    /// Matrix dimension.
    fn dim(&self) -> usize;
    /// Computes `M^{-1} r`.
    fn apply_inverse(&self, r: &[f64]) -> Result<Vec<f64>>;
    /// Computes `M^{-T} r`.
    fn apply_inverse_transpose(&self, r: &[f64]) -> Result<Vec<f64>>;
}

/// The identity (no preconditioning).
#[derive(Debug, Clone)]
pub struct IdentityPreconditioner {
    n: usize,
}

impl IdentityPreconditioner {
    /// Identity of the given dimension.
    pub fn new(n: usize) -> Self {
        Self { n }
    }
}

impl Preconditioner for IdentityPreconditioner {
    fn dim(&self) -> usize {
        self.n
    }

    fn apply_inverse(&self, r: &[f64]) -> Result<Vec<f64>> {
        if r.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                actual: r.len(),
            });
        }
        Ok(r.to_vec())
    }

    fn apply_inverse_transpose(&self, r: &[f64]) -> Result<Vec<f64>> {
        self.apply_inverse(r)
    }
}

/// Band Toeplitz preconditioner `T_n(p)` for a trigonometric polynomial `p`,
/// with `T_n(p)` and `T_n(p)^T` factored once.
#[derive(Debug, Clone)]
pub struct BandPreconditioner {
    symbol: TrigPolynomial,
    lu: BandedLu,
    lu_transpose: BandedLu,
}

impl BandPreconditioner {
    /// Factors `T_n(p)` and its transpose. Requires `n > 2 deg(p)`.
    pub fn new(symbol: TrigPolynomial, n: usize) -> Result<Self> {
        let band = symbol.band_coefficients();
        let lu = BandedLu::factor_toeplitz_band(&band, n)?;
        let reversed: Vec<f64> = band.iter().rev().copied().collect();
        let lu_transpose = BandedLu::factor_toeplitz_band(&reversed, n)?;
        Ok(Self {
            symbol,
            lu,
            lu_transpose,
        })
    }

    /// The generating polynomial `p`.
    pub fn symbol(&self) -> &TrigPolynomial {
        &self.symbol
    }
}

impl Preconditioner for BandPreconditioner {
    fn dim(&self) -> usize {
        self.lu.dim()
    }

    fn apply_inverse(&self, r: &[f64]) -> Result<Vec<f64>> {
        self.lu.solve(r)
    }

    fn apply_inverse_transpose(&self, r: &[f64]) -> Result<Vec<f64>> {
        self.lu_transpose.solve(r)
    }
}

/// Real circulant preconditioner held by its eigenvalues in sampling order.
#[derive(Clone)]
pub struct CirculantPreconditioner {
    n: usize,
    eigenvalues: Vec<Complex64>,
    fwd: Arc<dyn Fft<f64>>,
    inv: Arc<dyn Fft<f64>>,
}

impl std::fmt::Debug for CirculantPreconditioner {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CirculantPreconditioner")
            .field("n", &self.n)
            .finish()
    }
}

impl CirculantPreconditioner {
    /// Builds the circulant from eigenvalues `lambda_j` in sampling order
    /// (`lambda_j` is the value attached to the grid angle `2 pi j / n`).
    /// Conjugate symmetry is re-imposed by averaging mirror pairs; a
    /// (near-)zero eigenvalue is rejected because the preconditioner could
    /// not be inverted stably.
    pub fn from_eigenvalues(mut eigenvalues: Vec<Complex64>) -> Result<Self> {
        let n = eigenvalues.len();
        if n == 0 {
            return Err(Error::InvalidDimension {
                n,
                reason: "a circulant needs at least one eigenvalue",
            });
        }
        eigenvalues[0] = Complex64::new(eigenvalues[0].re, 0.0);
        for k in 1..=(n - 1) / 2 {
            let p = n - k;
            let avg = 0.5 * (eigenvalues[k] + eigenvalues[p].conj());
            eigenvalues[k] = avg;
            eigenvalues[p] = avg.conj();
        }
        if n % 2 == 0 {
            let h = n / 2;
            eigenvalues[h] = Complex64::new(eigenvalues[h].re, 0.0);
        }
        let max = eigenvalues.iter().map(|l| l.norm()).fold(0.0, f64::max);
        for (index, l) in eigenvalues.iter().enumerate() {
            if l.norm() <= 1e-14 * max {
                return Err(Error::ZeroCirculantEigenvalue { index });
            }
        }
        let mut planner = FftPlanner::new();
        let fwd = planner.plan_fft_forward(n);
        let inv = planner.plan_fft_inverse(n);
        Ok(Self {
            n,
            eigenvalues,
            fwd,
            inv,
        })
    }

    /// Circulant with eigenvalues sampled from a symbol:
    /// `lambda_j = f(2 pi j / n)`.
    pub fn sampled(f: impl Fn(f64) -> Complex64, n: usize) -> Result<Self> {
        let eigenvalues = (0..n).map(|j| f(TAU * j as f64 / n as f64)).collect();
        Self::from_eigenvalues(eigenvalues)
    }

    fn from_first_column(column: &[f64]) -> Result<Self> {
        let n = column.len();
        let mut buf: Vec<Complex64> = column.iter().map(|&c| Complex64::new(c, 0.0)).collect();
        let mut planner = FftPlanner::new();
        planner.plan_fft_inverse(n).process(&mut buf);
        Self::from_eigenvalues(buf)
    }

    /// Strang's circulant: copy the central band of the Toeplitz matrix
    /// (`c_k = t_k` for `k <= n/2`, else `c_k = t_{k-n}`).
    pub fn strang(t: &ToeplitzMatrix) -> Result<Self> {
        let n = t.dim();
        let half = n / 2;
        let column: Vec<f64> = (0..n)
            .map(|k| {
                if k <= half {
                    t.diagonal(k as i64)
                } else {
                    t.diagonal(k as i64 - n as i64)
                }
            })
            .collect();
        Self::from_first_column(&column)
    }

    /// T. Chan's Frobenius-optimal circulant:
    /// `c_k = ((n - k) t_k + k t_{k-n}) / n`.
    pub fn optimal(t: &ToeplitzMatrix) -> Result<Self> {
        let n = t.dim();
        let column: Vec<f64> = (0..n)
            .map(|k| {
                let w = k as f64 / n as f64;
                (1.0 - w) * t.diagonal(k as i64) + w * t.diagonal(k as i64 - n as i64)
            })
            .collect();
        Self::from_first_column(&column)
    }

    /// The eigenvalues in sampling order.
    pub fn eigenvalues(&self) -> &[Complex64] {
        &self.eigenvalues
    }

    fn check_len(&self, r: &[f64]) -> Result<()> {
        if r.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                actual: r.len(),
            });
        }
        Ok(())
    }

    fn to_complex(r: &[f64]) -> Vec<Complex64> {
        r.iter().map(|&v| Complex64::new(v, 0.0)).collect()
    }

    fn take_real(&self, buf: Vec<Complex64>) -> Vec<f64> {
        let scale = 1.0 / self.n as f64;
        buf.into_iter().map(|c| c.re * scale).collect()
    }

    /// Forward product `C x`.
    pub fn apply(&self, r: &[f64]) -> Result<Vec<f64>> {
        self.check_len(r)?;
        let mut buf = Self::to_complex(r);
        self.inv.process(&mut buf);
        for (b, l) in buf.iter_mut().zip(self.eigenvalues.iter()) {
            *b *= l;
        }
        self.fwd.process(&mut buf);
        Ok(self.take_real(buf))
    }
}

impl Preconditioner for CirculantPreconditioner {
    fn dim(&self) -> usize {
        self.n
    }

    fn apply_inverse(&self, r: &[f64]) -> Result<Vec<f64>> {
        self.check_len(r)?;
        let mut buf = Self::to_complex(r);
        self.inv.process(&mut buf);
        for (b, l) in buf.iter_mut().zip(self.eigenvalues.iter()) {
            *b /= l;
        }
        self.fwd.process(&mut buf);
        Ok(self.take_real(buf))
    }

    fn apply_inverse_transpose(&self, r: &[f64]) -> Result<Vec<f64>> {
        self.check_len(r)?;
        let mut buf = Self::to_complex(r);
        self.fwd.process(&mut buf);
        for (b, l) in buf.iter_mut().zip(self.eigenvalues.iter()) {
            *b /= l;
        }
        self.inv.process(&mut buf);
        Ok(self.take_real(buf))
    }
}

/// Composite preconditioner `M = T_n(g) C`.
#[derive(Debug, Clone)]
pub struct BandCirculantPreconditioner {
    /// The band factor `T_n(g)`.
    pub band: BandPreconditioner,
    /// The circulant factor `C`.
    pub circulant: CirculantPreconditioner,
}

impl BandCirculantPreconditioner {
    /// Combines a band and a circulant factor of matching dimension.
    pub fn new(band: BandPreconditioner, circulant: CirculantPreconditioner) -> Result<Self> {
        if band.dim() != circulant.dim() {
            return Err(Error::LengthMismatch {
                expected: band.dim(),
                actual: circulant.dim(),
            });
        }
        Ok(Self { band, circulant })
    }

    /// `T_n(g) C` with `C` sampled from the eliminated ratio `f / g`.
    pub fn with_sampled_circulant(
        f: &GeneratingSymbol,
        g: &TrigPolynomial,
        n: usize,
    ) -> Result<Self> {
        let band = BandPreconditioner::new(g.clone(), n)?;
        let fe = |x: f64| f.eval(x);
        let circulant = CirculantPreconditioner::sampled(|x| ratio_value(&fe, g, x), n)?;
        Ok(Self { band, circulant })
    }

    /// `T_n(g) C` with `C` the Frobenius-optimal circulant for `T_n(f/g)`,
    /// whose diagonals come from quadrature on the eliminated ratio.
    pub fn with_optimal_circulant(
        f: &GeneratingSymbol,
        g: &TrigPolynomial,
        n: usize,
    ) -> Result<Self> {
        let band = BandPreconditioner::new(g.clone(), n)?;
        let ratio = ratio_symbol(f, g)?;
        let t_ratio = ToeplitzMatrix::from_symbol(&ratio, n)?;
        let circulant = CirculantPreconditioner::optimal(&t_ratio)?;
        Ok(Self { band, circulant })
    }
}

impl Preconditioner for BandCirculantPreconditioner {
    fn dim(&self) -> usize {
        self.band.dim()
    }

    // M = T_n(g) C, so M^{-1} = C^{-1} T_n(g)^{-1} and
    // M^{-T} = T_n(g)^{-T} C^{-T}.
    fn apply_inverse(&self, r: &[f64]) -> Result<Vec<f64>> {
        self.circulant.apply_inverse(&self.band.apply_inverse(r)?)
    }

    fn apply_inverse_transpose(&self, r: &[f64]) -> Result<Vec<f64>> {
        self.band
            .apply_inverse_transpose(&self.circulant.apply_inverse_transpose(r)?)
    }
}

/// Zero structure of a symbol `f = f_1 + i f_2`: multiplicities at the
/// origin and at interior points of `(0, pi)`, separately for the even part
/// `f_1` and the odd part `f_2`. A zero of the odd part at `pi` is never
/// listed: the `sin x` factor of the eliminating polynomial covers it
/// implicitly.
#[derive(Debug, Clone, PartialEq)]
pub struct RootSpec {
    /// `(m_0^1, m_0^2)`: zero multiplicities of `(f_1, f_2)` at `x = 0`.
    pub origin: (usize, usize),
    /// Interior zeros `(x, m^1, m^2)` with `0 < x < pi`.
    pub interior: Vec<(f64, usize, usize)>,
}

impl RootSpec {
    /// A symbol without prescribed zeros.
    pub fn none() -> Self {
        Self {
            origin: (0, 0),
            interior: Vec::new(),
        }
    }

    /// Whether no zeros are prescribed.
    pub fn is_empty(&self) -> bool {
        self.origin == (0, 0) && self.interior.is_empty()
    }

    /// Checks the structural constraints: the even part vanishes to even
    /// order at the origin, the odd part to odd order (or not at all), and
    /// interior zeros lie strictly inside `(0, pi)`.
    pub fn validate(&self) -> Result<()> {
        if self.origin.0 % 2 != 0 {
            return Err(Error::InvalidMultiplicity {
                context: "even-part multiplicity at the origin must be even",
                value: self.origin.0,
            });
        }
        if self.origin.1 != 0 && self.origin.1 % 2 == 0 {
            return Err(Error::InvalidMultiplicity {
                context: "odd-part multiplicity at the origin must be odd or zero",
                value: self.origin.1,
            });
        }
        for &(x, _, _) in &self.interior {
            if !(x > 0.0 && x < PI) {
                return Err(Error::RootOutsideDomain { x });
            }
        }
        Ok(())
    }

    /// Whether a purely real eliminating polynomial suffices: every zero of
    /// the even part must be matched by the odd part to at least the same
    /// order, so `f / g` stays bounded with a real `g`.
    pub fn real_feasible(&self) -> bool {
        (self.origin.0 == 0 || self.origin.0 <= self.origin.1)
            && self
                .interior
                .iter()
                .all(|&(_, m1, m2)| m1 == 0 || m1 <= m2)
    }

    /// All prescribed zero locations folded into `[0, pi)`.
    pub fn locations(&self) -> Vec<f64> {
        let mut v = Vec::new();
        if self.origin != (0, 0) {
            v.push(0.0);
        }
        v.extend(self.interior.iter().map(|&(x, _, _)| x));
        v
    }
}

/// Zero structure of one part (real or imaginary) of a symbol, with its own
/// zero locations. The two parts of a symbol may place the "same" zero at
/// slightly different points when the locations are estimated numerically.
#[derive(Debug, Clone, Default)]
pub struct PartZeros {
    /// Vanishing order at `x = 0`.
    pub origin: usize,
    /// Interior zeros `(x, m)` with `0 < x < pi`.
    pub interior: Vec<(f64, usize)>,
}

impl PartZeros {
    /// Whether this part has no prescribed zeros.
    pub fn is_empty(&self) -> bool {
        self.origin == 0 && self.interior.iter().all(|&(_, m)| m == 0)
    }
}

/// Builds the zero-eliminating trigonometric polynomial `g` for a symbol
/// with the given zero structure.
///
/// When a real `g` is feasible it is
/// `s_1 (2 - 2 cos x)^{m_0^1 / 2} prod_i (cos x_i - cos x)^{m_i^1}`;
/// otherwise the odd part
/// `s_2 (sin x)^{m_0^2} prod_i (cos x_i - cos x)^{m_i^2}` is added. The
/// signs `(s_1, s_2)` are chosen to maximize the minimum of `Re(f/g)` over a
/// period grid away from the zeros; if no choice keeps it positive the
/// construction fails.
pub fn elimination_polynomial(
    f: &dyn Fn(f64) -> Complex64,
    spec: &RootSpec,
) -> Result<TrigPolynomial> {
    spec.validate()?;
    let real = PartZeros {
        origin: spec.origin.0,
        interior: spec.interior.iter().map(|&(x, m1, _)| (x, m1)).collect(),
    };
    let imag = PartZeros {
        origin: spec.origin.1,
        interior: spec.interior.iter().map(|&(x, _, m2)| (x, m2)).collect(),
    };
    elimination_polynomial_parts(f, &real, &imag, !spec.real_feasible())
}

/// [`elimination_polynomial`] with independently located zeros per part.
///
/// `real` drives the cosine component of `g`; when `combined` is set the
/// sine component is built from `imag` (whose origin order must then be
/// odd), otherwise `imag` only marks locations to avoid when choosing signs.
pub fn elimination_polynomial_parts(
    f: &dyn Fn(f64) -> Complex64,
    real: &PartZeros,
    imag: &PartZeros,
    combined: bool,
) -> Result<TrigPolynomial> {
    if real.origin % 2 != 0 {
        return Err(Error::InvalidMultiplicity {
            context: "even-part multiplicity at the origin must be even",
            value: real.origin,
        });
    }
    for &(x, _) in real.interior.iter().chain(&imag.interior) {
        if !(x > 0.0 && x < PI) {
            return Err(Error::RootOutsideDomain { x });
        }
    }
    let mut exclusions = Vec::new();
    if real.origin > 0 || imag.origin > 0 {
        exclusions.push(0.0);
    }
    exclusions.extend(real.interior.iter().map(|&(x, _)| x));
    exclusions.extend(imag.interior.iter().map(|&(x, _)| x));

    let mut base_even = CosineSeries::constant(1.0);
    let origin_factor = CosineSeries::from_coefficients(vec![2.0, -2.0]);
    for _ in 0..real.origin / 2 {
        base_even = base_even.mul_cos(&origin_factor);
    }
    for &(x, m1) in &real.interior {
        let factor = CosineSeries::from_coefficients(vec![x.cos(), -1.0]);
        for _ in 0..m1 {
            base_even = base_even.mul_cos(&factor);
        }
    }

    if !combined {
        let (s1, _) = choose_signs(f, &base_even, &SineSeries::zero(), &exclusions)?;
        return Ok(TrigPolynomial::from_real(base_even.scale(s1)));
    }

    if imag.origin == 0 {
        return Err(Error::InvalidMultiplicity {
            context: "a complex eliminating polynomial needs an odd-part zero at the origin",
            value: 0,
        });
    }
    if imag.origin % 2 == 0 {
        return Err(Error::InvalidMultiplicity {
            context: "odd-part multiplicity at the origin must be odd or zero",
            value: imag.origin,
        });
    }
    // sin^{m} = sin * (sin^2)^{(m-1)/2} with sin^2 = 1/2 - cos(2x)/2.
    let sin_squared = CosineSeries::from_coefficients(vec![0.5, 0.0, -0.5]);
    let mut even_acc = CosineSeries::constant(1.0);
    for _ in 0..(imag.origin - 1) / 2 {
        even_acc = even_acc.mul_cos(&sin_squared);
    }
    for &(x, m2) in &imag.interior {
        let factor = CosineSeries::from_coefficients(vec![x.cos(), -1.0]);
        for _ in 0..m2 {
            even_acc = even_acc.mul_cos(&factor);
        }
    }
    let base_odd = even_acc.mul_sin(&SineSeries::from_coefficients(vec![1.0]));
    let (s1, s2) = choose_signs(f, &base_even, &base_odd, &exclusions)?;
    Ok(TrigPolynomial::new(
        base_even.scale(s1),
        base_odd.scale(s2),
    ))
}

/// Picks the signs of the two parts of `g` so that `Re(f/g)` is positive
/// away from the eliminated zeros, preferring the sign pair with the largest
/// minimum (ties resolve to the earliest pair in a fixed order).
fn choose_signs(
    f: &dyn Fn(f64) -> Complex64,
    base_even: &CosineSeries,
    base_odd: &SineSeries,
    exclusions: &[f64],
) -> Result<(f64, f64)> {
    const GRID: usize = 2048;
    const RADIUS: f64 = 0.1;
    const PAIRS: [(f64, f64); 4] = [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)];
    let points: Vec<f64> = (0..GRID)
        .map(|j| -PI + TAU * (j as f64 + 0.5) / GRID as f64)
        .filter(|x| exclusions.iter().all(|r| (x.abs() - r).abs() >= RADIUS))
        .collect();
    let mut best: Option<((f64, f64), f64)> = None;
    for &(s1, s2) in &PAIRS {
        let mut worst = f64::INFINITY;
        for &x in &points {
            let fe = f(x);
            let ge = s1 * base_even.eval(x);
            let go = s2 * base_odd.eval(x);
            let denom = ge * ge + go * go;
            let re = (fe.re * ge + fe.im * go) / denom;
            if re < worst {
                worst = re;
            }
        }
        if best.map_or(true, |(_, b)| worst > b) {
            best = Some(((s1, s2), worst));
        }
    }
    match best {
        Some((pair, worst)) if worst > 0.0 => Ok(pair),
        _ => Err(Error::NoPositiveSignChoice),
    }
}

/// `f(x) conj(g(x)) / |g(x)|^2`, stepping `1e-7` to the right wherever `|g|`
/// nearly vanishes so the removable singularities at eliminated zeros
/// evaluate to (a close approximation of) their limits.
fn ratio_value(f: &dyn Fn(f64) -> Complex64, g: &TrigPolynomial, x: f64) -> Complex64 {
    let mut y = x;
    if g.eval(y).norm() < 1e-12 {
        y += 1e-7;
    }
    let gy = g.eval(y);
    f(y) * gy.conj() / gy.norm_sqr()
}

/// The eliminated ratio `f / g` as a piecewise symbol, sharing the pieces of
/// `f`.
fn ratio_symbol(f: &GeneratingSymbol, g: &TrigPolynomial) -> Result<GeneratingSymbol> {
    let pieces = f
        .pieces()
        .iter()
        .map(|p| {
            let inner = p.f.clone();
            let g = g.clone();
            Piece {
                a: p.a,
                b: p.b,
                f: Arc::new(move |x: f64| {
                    let mut y = x;
                    if g.eval(y).norm() < 1e-12 {
                        y += 1e-7;
                    }
                    let gy = g.eval(y);
                    inner(y) * gy.conj() / gy.norm_sqr()
                }) as PieceFn,
            }
        })
        .collect();
    GeneratingSymbol::from_pieces(pieces)
}

/// Number of Chebyshev fitting nodes per part.
const FIT_NODES: usize = 512;
/// Upper end of the odd fitting interval when the odd ratio jumps at `pi`.
fn truncated_upper() -> f64 {
    5.0 * PI / 7.0
}

/// Minimax correction `q = q_1 + i q_2` to the eliminated ratio `f / g`,
/// with its spectral clustering certificate.
///
/// `q_1` is fitted on `(0, pi)`. When the odd part of the ratio does not
/// vanish at `pi` it is discontinuous there as a periodic function, so `q_2`
/// is fitted on the truncated interval `(0, 5 pi / 7)` instead; the reported
/// `full_*` quantities re-measure the odd residual over the whole period.
/// The singular values of the preconditioned matrix cluster in
/// `[1 - M eps, 1 + M eps]` with `eps = sqrt(eps_1^2 + eps_2^2)` and
/// `M = max 1 / |q|`.
#[derive(Debug, Clone)]
pub struct CorrectionFit {
    /// Minimax fit of the even part of the ratio.
    pub even: MinimaxResult,
    /// Minimax fit of the odd part of the ratio.
    pub odd: MinimaxResult,
    /// Upper end of the odd fitting interval (`pi` or `5 pi / 7`).
    pub odd_domain: f64,
    /// `eps = sqrt(eps_1^2 + eps_2^2)` over the fitting intervals.
    pub error: f64,
    /// Largest odd residual over the whole period.
    pub full_odd_error: f64,
    /// `eps' = sqrt(eps_1^2 + (full odd residual)^2)`.
    pub full_error: f64,
    /// `M = max 1 / |q_1 + i q_2|` over the period.
    pub amplification: f64,
}

impl CorrectionFit {
    /// The correction as a trigonometric polynomial.
    pub fn correction(&self) -> TrigPolynomial {
        TrigPolynomial::new(
            CosineSeries::from_coefficients(self.even.approximant.coefficients().to_vec()),
            SineSeries::from_coefficients(self.odd.approximant.coefficients().to_vec()),
        )
    }

    /// Clustering interval `[1 - M eps, 1 + M eps]`.
    pub fn interval(&self) -> (f64, f64) {
        (
            1.0 - self.amplification * self.error,
            1.0 + self.amplification * self.error,
        )
    }

    /// Clustering interval from the whole-period odd residual.
    pub fn full_interval(&self) -> (f64, f64) {
        (
            1.0 - self.amplification * self.full_error,
            1.0 + self.amplification * self.full_error,
        )
    }
}

/// Fits the minimax correction `q` to the eliminated ratio `f / g`.
pub fn fit_correction(
    f: &dyn Fn(f64) -> Complex64,
    g: &TrigPolynomial,
    even_degree: usize,
    odd_degree: usize,
) -> Result<CorrectionFit> {
    let full_nodes = remez::chebyshev_nodes(FIT_NODES, PI);
    let full_values: Vec<Complex64> = full_nodes
        .iter()
        .map(|&x| ratio_value(f, g, x))
        .collect();
    let even_values: Vec<f64> = full_values.iter().map(|v| v.re).collect();
    let even = remez::remez(&even_values, &full_nodes, even_degree, Parity::Even)?;

    let odd_scale = full_values
        .iter()
        .fold(1.0f64, |acc, v| acc.max(v.im.abs()));
    let jump = ratio_value(f, g, PI).im.abs() > 1e-8 * odd_scale;
    let odd_domain = if jump { truncated_upper() } else { PI };
    let (odd, full_odd_error) = if jump {
        let odd_nodes = remez::chebyshev_nodes(FIT_NODES, odd_domain);
        let odd_values: Vec<f64> = odd_nodes.iter().map(|&x| ratio_value(f, g, x).im).collect();
        let fit = remez::remez(&odd_values, &odd_nodes, odd_degree, Parity::Odd)?;
        let full = full_nodes
            .iter()
            .zip(full_values.iter())
            .fold(0.0f64, |acc, (&x, v)| {
                acc.max((v.im - fit.approximant.eval(x)).abs())
            });
        (fit, full)
    } else {
        let odd_values: Vec<f64> = full_values.iter().map(|v| v.im).collect();
        let fit = remez::remez(&odd_values, &full_nodes, odd_degree, Parity::Odd)?;
        let full = fit.max_error;
        (fit, full)
    };

    let error = even.leveled_error.hypot(odd.leveled_error);
    let full_error = even.leveled_error.hypot(full_odd_error);

    const M_GRID: usize = 200_001;
    let mut amplification = 0.0f64;
    for i in 0..M_GRID {
        let x = 1e-12 + i as f64 * (PI - 1e-12) / (M_GRID - 1) as f64;
        let q = even
            .approximant
            .eval(x)
            .hypot(odd.approximant.eval(x));
        amplification = amplification.max(1.0 / q);
    }

    Ok(CorrectionFit {
        even,
        odd,
        odd_domain,
        error,
        full_odd_error,
        full_error,
        amplification,
    })
}

/// Band preconditioner `T_n(g q)` with `q` the minimax correction to
/// `f / g`. Returns the factored preconditioner and the fit certificate.
pub fn band_minimax(
    f: &dyn Fn(f64) -> Complex64,
    g: &TrigPolynomial,
    n: usize,
    even_degree: usize,
    odd_degree: usize,
) -> Result<(BandPreconditioner, CorrectionFit)> {
    let fit = fit_correction(f, g, even_degree, odd_degree)?;
    let p = g.mul(&fit.correction());
    Ok((BandPreconditioner::new(p, n)?, fit))
}

/// Band preconditioner `T_n(g q)` with `q` interpolating `f / g` at
/// Chebyshev collocation nodes (`even_degree + 1` nodes on `(0, pi)` for the
/// even part, `odd_degree` nodes on the odd interval).
pub fn band_interpolation(
    f: &dyn Fn(f64) -> Complex64,
    g: &TrigPolynomial,
    n: usize,
    even_degree: usize,
    odd_degree: usize,
) -> Result<(BandPreconditioner, TrigPolynomial)> {
    let even_nodes = remez::chebyshev_nodes(even_degree + 1, PI);
    let even_values: Vec<f64> = even_nodes
        .iter()
        .map(|&x| ratio_value(f, g, x).re)
        .collect();
    let q_even = remez::interpolate(&even_values, &even_nodes, even_degree, Parity::Even)?;

    let probe = remez::chebyshev_nodes(FIT_NODES, PI);
    let odd_scale = probe
        .iter()
        .fold(1.0f64, |acc, &x| acc.max(ratio_value(f, g, x).im.abs()));
    let jump = ratio_value(f, g, PI).im.abs() > 1e-8 * odd_scale;
    let odd_domain = if jump { truncated_upper() } else { PI };
    let odd_nodes = remez::chebyshev_nodes(odd_degree, odd_domain);
    let odd_values: Vec<f64> = odd_nodes
        .iter()
        .map(|&x| ratio_value(f, g, x).im)
        .collect();
    let q_odd = remez::interpolate(&odd_values, &odd_nodes, odd_degree, Parity::Odd)?;

    let q = TrigPolynomial::new(
        CosineSeries::from_coefficients(q_even.coefficients().to_vec()),
        SineSeries::from_coefficients(q_odd.coefficients().to_vec()),
    );
    let p = g.mul(&q);
    Ok((BandPreconditioner::new(p, n)?, q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use nalgebra::{DMatrix, DVector};
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn sampling_eigenvalues(column: &[f64]) -> Vec<Complex64> {
        let n = column.len();
        (0..n)
            .map(|j| {
                (0..n)
                    .map(|k| {
                        Complex64::new(0.0, TAU * (j * k) as f64 / n as f64).exp() * column[k]
                    })
                    .sum()
            })
            .collect()
    }

    fn dense_circulant(column: &[f64]) -> DMatrix<f64> {
        let n = column.len();
        DMatrix::from_fn(n, n, |i, j| column[(n + i - j) % n])
    }

    #[test]
    fn circulant_applications_match_dense_arithmetic() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let n = 12;
        let column: Vec<f64> = (0..n)
            .map(|k| rng.gen_range(-1.0..1.0) + if k == 0 { 5.0 } else { 0.0 })
            .collect();
        let c = CirculantPreconditioner::from_eigenvalues(sampling_eigenvalues(&column)).unwrap();
        let dense = dense_circulant(&column);
        let x: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let xv = DVector::from_column_slice(&x);

        let forward = c.apply(&x).unwrap();
        let expect = &dense * &xv;
        for i in 0..n {
            assert_relative_eq!(forward[i], expect[i], epsilon = 1e-10, max_relative = 1e-10);
        }

        let inv = c.apply_inverse(&x).unwrap();
        let expect = dense.clone().lu().solve(&xv).unwrap();
        for i in 0..n {
            assert_relative_eq!(inv[i], expect[i], epsilon = 1e-10, max_relative = 1e-10);
        }

        let invt = c.apply_inverse_transpose(&x).unwrap();
        let expect = dense.transpose().lu().solve(&xv).unwrap();
        for i in 0..n {
            assert_relative_eq!(invt[i], expect[i], epsilon = 1e-10, max_relative = 1e-10);
        }
    }

    #[test]
    fn strang_circulant_of_a_band_symbol_samples_the_symbol() {
        // The symbol must not vanish on the grid: Strang eigenvalues are its
        // samples, and a zero sample is rightly rejected.
        let g = TrigPolynomial::new(
            CosineSeries::from_coefficients(vec![2.5, -2.0]),
            SineSeries::from_coefficients(vec![1.0]),
        );
        let n = 16;
        let band = g.band_coefficients();
        let mut diags = vec![0.0; 2 * n - 1];
        for (i, &t) in band.iter().enumerate() {
            diags[n - 2 + i] = t;
        }
        let t = ToeplitzMatrix::from_diagonals(diags, n).unwrap();
        let s = CirculantPreconditioner::strang(&t).unwrap();
        for (j, l) in s.eigenvalues().iter().enumerate() {
            let expect = g.eval(TAU * j as f64 / n as f64);
            assert_relative_eq!(l.re, expect.re, epsilon = 1e-12, max_relative = 1e-12);
            assert_relative_eq!(l.im, expect.im, epsilon = 1e-12, max_relative = 1e-12);
        }
    }

    #[test]
    fn optimal_circulant_beats_strang_in_frobenius_norm() {
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        let n = 16;
        let diags: Vec<f64> = (0..2 * n - 1)
            .map(|k| rng.gen_range(-1.0..1.0) + if k == n - 1 { 6.0 } else { 0.0 })
            .collect();
        let t = ToeplitzMatrix::from_diagonals(diags, n).unwrap();
        let frob = |c: &CirculantPreconditioner| {
            let mut sum = 0.0;
            let dense_t = t.to_dense();
            for j in 0..n {
                let mut e = vec![0.0; n];
                e[j] = 1.0;
                let col = c.apply(&e).unwrap();
                for i in 0..n {
                    sum += (col[i] - dense_t[(i, j)]).powi(2);
                }
            }
            sum
        };
        let strang = CirculantPreconditioner::strang(&t).unwrap();
        let optimal = CirculantPreconditioner::optimal(&t).unwrap();
        assert!(frob(&optimal) <= frob(&strang) + 1e-12);
    }

    #[test]
    fn eigenvalue_symmetrization_yields_a_real_circulant() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let n = 9;
        let eig: Vec<Complex64> = (0..n)
            .map(|_| Complex64::new(rng.gen_range(1.0..2.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let c = CirculantPreconditioner::from_eigenvalues(eig).unwrap();
        for k in 0..n {
            let a = c.eigenvalues()[k];
            let b = c.eigenvalues()[(n - k) % n].conj();
            assert_relative_eq!(a.re, b.re, epsilon = 1e-14);
            assert_relative_eq!(a.im, b.im, epsilon = 1e-14);
        }
    }

    #[test]
    fn sampling_a_symbol_with_a_zero_is_rejected() {
        let err = CirculantPreconditioner::sampled(
            |x| Complex64::new(x * x, x * x * x),
            64,
        )
        .unwrap_err();
        assert!(matches!(err, Error::ZeroCirculantEigenvalue { index: 0 }));
    }

    fn corpus_f3() -> (GeneratingSymbol, RootSpec) {
        (
            GeneratingSymbol::smooth(|x| Complex64::new(x * x, x)),
            RootSpec {
                origin: (2, 1),
                interior: vec![],
            },
        )
    }

    #[test]
    fn elimination_reproduces_known_polynomials() {
        // x^2 + i x: complex g = 2 - 2cos x + i sin x.
        let (f3, spec3) = corpus_f3();
        let g = elimination_polynomial(&|x| f3.eval(x), &spec3).unwrap();
        assert_eq!(g.re.coefficients(), &[2.0, -2.0]);
        assert_eq!(g.im.coefficients(), &[1.0]);

        // x^2 + i x^3: real g = 2 - 2cos x.
        let spec2 = RootSpec {
            origin: (2, 3),
            interior: vec![],
        };
        let g = elimination_polynomial(&|x| Complex64::new(x * x, x * x * x), &spec2).unwrap();
        assert!(g.is_real());
        assert_eq!(g.re.coefficients(), &[2.0, -2.0]);

        // (x^2-1)^2 + i x (x^2-4): g = (cos 1 - cos x)^2 + i sin x (cos 2 - cos x).
        let spec5 = RootSpec {
            origin: (0, 1),
            interior: vec![(1.0, 2, 0), (2.0, 0, 1)],
        };
        let f5 = |x: f64| {
            Complex64::new((x * x - 1.0).powi(2), x * (x * x - 4.0))
        };
        let g = elimination_polynomial(&f5, &spec5).unwrap();
        let c1 = 1.0f64.cos();
        let c2 = 2.0f64.cos();
        assert_relative_eq!(g.re.coefficient(0), c1 * c1 + 0.5, epsilon = 1e-14);
        assert_relative_eq!(g.re.coefficient(1), -2.0 * c1, epsilon = 1e-14);
        assert_relative_eq!(g.re.coefficient(2), 0.5, epsilon = 1e-14);
        assert_relative_eq!(g.im.coefficient(1), c2, epsilon = 1e-14);
        assert_relative_eq!(g.im.coefficient(2), -0.5, epsilon = 1e-14);
    }

    #[test]
    fn sign_choice_flips_the_odd_part_when_needed() {
        // x^2 (x^2-1)^2 + i h(x) with h increasing through 0 at the origin
        // and vanishing at 1 and pi: the odd factor sin x (cos 1 - cos x)
        // must be negated to keep Re(f/g) positive.
        let h = |x: f64| {
            let a = 0.5;
            let s = 3.0 - TAU;
            if x.abs() <= a {
                x / (TAU - 3.0)
            } else if x > 0.0 {
                if x <= PI - a {
                    (x - 1.0) / s
                } else {
                    x - PI
                }
            } else if x >= -(PI - a) {
                (x + 1.0) / s
            } else {
                x + PI
            }
        };
        let f14 = move |x: f64| Complex64::new(x * x * (x * x - 1.0).powi(2), h(x));
        let spec = RootSpec {
            origin: (2, 1),
            interior: vec![(1.0, 2, 1)],
        };
        let g = elimination_polynomial(&f14, &spec).unwrap();
        let c1 = 1.0f64.cos();
        // Odd part sin x (cos x - cos 1) = -cos 1 sin x + sin x cos x.
        assert_relative_eq!(g.im.coefficient(1), -c1, epsilon = 1e-14);
        assert_relative_eq!(g.im.coefficient(2), 0.5, epsilon = 1e-14);
        // Even part keeps the positive sign.
        assert!(g.re.eval(PI) > 0.0);
    }

    #[test]
    fn no_sign_makes_a_mismatched_ratio_positive() {
        // f = i sin x has Re(f/g) = 0 for real g = 2 - 2 cos x.
        let spec = RootSpec {
            origin: (2, 3),
            interior: vec![],
        };
        let err =
            elimination_polynomial(&|x: f64| Complex64::new(0.0, x.sin()), &spec).unwrap_err();
        assert!(matches!(err, Error::NoPositiveSignChoice));
    }

    #[test]
    fn correction_fit_reproduces_reference_clustering_bounds() {
        // x^2 + i x^3 over g = 2 - 2 cos x, degrees (6, 6).
        let g = TrigPolynomial::from_real(CosineSeries::from_coefficients(vec![2.0, -2.0]));
        let f = |x: f64| Complex64::new(x * x, x * x * x);
        let fit = fit_correction(&f, &g, 6, 6).unwrap();
        assert_relative_eq!(fit.even.leveled_error, 0.072_098, max_relative = 2e-4);
        assert_relative_eq!(fit.odd.leveled_error, 0.007_968, max_relative = 2e-4);
        assert_relative_eq!(fit.error, 0.072_537, max_relative = 2e-4);
        assert_relative_eq!(fit.amplification, 0.9697, max_relative = 2e-3);
        let (lo, hi) = fit.interval();
        assert_relative_eq!(lo, 0.9297, epsilon = 2e-3);
        assert_relative_eq!(hi, 1.0703, epsilon = 2e-3);
        assert_relative_eq!(fit.odd_domain, truncated_upper());

        // x^2 + i x over g = 2 - 2 cos x + i sin x, degrees (4, 4).
        let (f3, _) = corpus_f3();
        let g3 = TrigPolynomial::new(
            CosineSeries::from_coefficients(vec![2.0, -2.0]),
            SineSeries::from_coefficients(vec![1.0]),
        );
        let fit = fit_correction(&|x| f3.eval(x), &g3, 4, 4).unwrap();
        assert_relative_eq!(fit.even.leveled_error, 0.093_502, max_relative = 2e-4);
        assert_relative_eq!(fit.odd.leveled_error, 0.005_559, max_relative = 2e-4);
        assert_relative_eq!(fit.amplification, 1.0232, max_relative = 2e-3);
        let (lo, hi) = fit.interval();
        assert_relative_eq!(lo, 0.9042, epsilon = 2e-3);
        assert_relative_eq!(hi, 1.0958, epsilon = 2e-3);
    }

    #[test]
    fn composite_inverse_matches_dense_factor_solves() {
        let (f3, spec3) = corpus_f3();
        let g = elimination_polynomial(&|x| f3.eval(x), &spec3).unwrap();
        let n = 32;
        let m = BandCirculantPreconditioner::with_sampled_circulant(&f3, &g, n).unwrap();

        // Dense M = T_n(g) * C.
        let band = g.band_coefficients();
        let mut diags = vec![0.0; 2 * n - 1];
        for (i, &t) in band.iter().enumerate() {
            diags[n - 2 + i] = t;
        }
        let tg = ToeplitzMatrix::from_diagonals(diags, n).unwrap().to_dense();
        let mut c = DMatrix::zeros(n, n);
        for j in 0..n {
            let mut e = vec![0.0; n];
            e[j] = 1.0;
            let col = m.circulant.apply(&e).unwrap();
            for i in 0..n {
                c[(i, j)] = col[i];
            }
        }
        let dense_m = &tg * &c;

        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let r: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let rv = DVector::from_column_slice(&r);

        let x = m.apply_inverse(&r).unwrap();
        let expect = dense_m.clone().lu().solve(&rv).unwrap();
        for i in 0..n {
            assert_relative_eq!(x[i], expect[i], epsilon = 1e-9, max_relative = 1e-8);
        }

        let xt = m.apply_inverse_transpose(&r).unwrap();
        let expect = dense_m.transpose().lu().solve(&rv).unwrap();
        for i in 0..n {
            assert_relative_eq!(xt[i], expect[i], epsilon = 1e-9, max_relative = 1e-8);
        }
    }

    #[test]
    fn interpolatory_correction_collocates_the_ratio() {
        let (f3, spec3) = corpus_f3();
        let g = elimination_polynomial(&|x| f3.eval(x), &spec3).unwrap();
        let fe = |x: f64| f3.eval(x);
        let (_, q) = band_interpolation(&fe, &g, 64, 4, 4).unwrap();
        let nodes = remez::chebyshev_nodes(5, PI);
        for &x in &nodes {
            let target = ratio_value(&fe, &g, x).re;
            assert_relative_eq!(q.re.eval(x), target, max_relative = 1e-9);
        }
    }
}
