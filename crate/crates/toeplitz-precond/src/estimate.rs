//! Automatic zero-structure estimation from matrix diagonals.
//!
//! When only the entries of `T_n(f)` are available, the generating symbol is
//! approximated by the partial Fourier sum
//! `F_{n-1}(x) = sum_{k=-(n-1)}^{n-1} t_k e^{ikx}`, evaluated on one of two
//! uniform grids:
//!
//! * the **band grid** `x_j = -pi + 2 pi j / (n + 1)`, `j = 1..n`, used when
//!   constructing banded preconditioners, and
//! * the **circulant grid** `x_j = 2 pi j / n`, `j = 0..n-1`, whose values
//!   are exactly the eigenvalues of the circulant that absorbs the full
//!   diagonal content of `T_n`.
//!
//! Zeros of the real part `F^1` and the imaginary part `F^2` are located as
//! deep local minima of `|F^l|` (the origin, which on the band grid falls
//! between nodes and where an odd part vanishes structurally, is probed
//! separately). Each zero's order is then estimated from the smallest
//! eigenvalues `lambda_k` of auxiliary symmetric Toeplitz sections at sizes
//! `k = 16, 32, 64`: for a zero of order `m` these decay like `k^{-m}`, so
//! `log2 ((lambda_16 - lambda_32) / (lambda_32 - lambda_64))` is close to
//! `m`. The sections are `T_k` of the symmetric part when `F^1` keeps one
//! sign, and `T_k(|F^l|)` with coefficients from composite Simpson
//! quadrature otherwise; the smallest eigenvalue is obtained by a few
//! inverse-power steps started from the Fourier mode of the zero's location.
//!
//! The estimated structure feeds the same elimination-polynomial machinery
//! as the known-symbol constructions, yielding a fully automatic banded
//! preconditioner (minimax fit of `F / g` on filtered grid nodes) and an
//! automatic circulant or band-times-circulant preconditioner.

use std::f64::consts::{PI, TAU};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::precond::{
    elimination_polynomial_parts, BandCirculantPreconditioner, BandPreconditioner,
    CirculantPreconditioner, PartZeros, Preconditioner,
};
use crate::remez::{self, MinimaxResult, Parity};
use crate::trig::{CosineSeries, SineSeries, TrigPolynomial};

/// Which estimation grid the expansion is sampled on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Grid {
    /// `x_j = -pi + 2 pi j / (n + 1)`, `j = 1..n`.
    Band,
    /// `x_j = 2 pi j / n`, `j = 0..n-1`.
    Circulant,
}

/// One of the two real parts of a symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymbolPart {
    /// The even (cosine) part `f_1`.
    Real,
    /// The odd (sine) part `f_2`.
    Imag,
}

/// The partial Fourier sum `F_{n-1}` sampled on an estimation grid.
#[derive(Debug, Clone)]
pub struct FourierExpansion {
    grid: Grid,
    n: usize,
    nodes: Vec<f64>,
    values: Vec<Complex64>,
    /// `F_{n-1}(pi) = F_{n-1}(-pi)` (a real number), needed when the grid
    /// itself excludes the period endpoints.
    endpoint: f64,
}

impl FourierExpansion {
    /// The grid variant.
    pub fn grid(&self) -> Grid {
        self.grid
    }

    /// The matrix dimension the diagonals came from.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Grid nodes.
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// `F_{n-1}` at the grid nodes.
    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// `F_{n-1}(pi)`.
    pub fn endpoint(&self) -> f64 {
        self.endpoint
    }

    /// Grid spacing.
    pub fn spacing(&self) -> f64 {
        match self.grid {
            Grid::Band => TAU / (self.n as f64 + 1.0),
            Grid::Circulant => TAU / self.n as f64,
        }
    }

    /// One part of the sampled values.
    pub fn part_values(&self, part: SymbolPart) -> Vec<f64> {
        self.values
            .iter()
            .map(|v| match part {
                SymbolPart::Real => v.re,
                SymbolPart::Imag => v.im,
            })
            .collect()
    }

    /// Distance from a node to the origin, folded into `[0, pi]`.
    fn fold(&self, x: f64) -> f64 {
        match self.grid {
            Grid::Band => x.abs(),
            Grid::Circulant => {
                if x > PI {
                    TAU - x
                } else {
                    x
                }
            }
        }
    }
}

fn diagonal_count(diagonals: &[f64]) -> Result<usize> {
    if diagonals.len() % 2 == 0 || diagonals.is_empty() {
        return Err(Error::InvalidDimension {
            n: diagonals.len(),
            reason: "a diagonal list must have odd length 2n - 1",
        });
    }
    Ok((diagonals.len() + 1) / 2)
}

/// Evaluates `F_{n-1}(x)` directly from the diagonals.
pub fn expansion_value(diagonals: &[f64], x: f64) -> Complex64 {
    let n = (diagonals.len() + 1) / 2;
    let mut acc = Complex64::new(diagonals[n - 1], 0.0);
    let rot = Complex64::from_polar(1.0, x);
    let mut phase = Complex64::new(1.0, 0.0);
    for k in 1..n {
        phase *= rot;
        let tp = diagonals[n - 1 + k];
        let tm = diagonals[n - 1 - k];
        // t_k e^{ikx} + t_{-k} e^{-ikx} = (t_k + t_{-k}) cos kx
        //                               + i (t_k - t_{-k}) sin kx.
        acc.re += (tp + tm) * phase.re;
        acc.im += (tp - tm) * phase.im;
    }
    acc
}

/// Samples `F_{n-1}` on an estimation grid with two FFTs.
///
/// On the band grid, `e^{ik x_j} = (-1)^k omega^{kj}` with
/// `omega = e^{2 pi i/(n+1)}`, so the sum splits into an inverse transform
/// of `u_k = (-1)^k t_k` and a forward transform of `v_k = (-1)^k t_{-k}`.
/// On the circulant grid `e^{i(r-n) x_j} = e^{i r x_j}`, so negative
/// diagonals fold onto positive ones and a single inverse transform of
/// `w_0 = t_0`, `w_r = t_r + t_{r-n}` evaluates the sum.
pub fn fourier_expansion(diagonals: &[f64], grid: Grid) -> Result<FourierExpansion> {
    let n = diagonal_count(diagonals)?;
    if n < 4 {
        return Err(Error::InvalidDimension {
            n,
            reason: "estimation grids need n >= 4",
        });
    }
    let t = |k: i64| diagonals[(n as i64 - 1 + k) as usize];
    let mut endpoint = t(0);
    for k in 1..n as i64 {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        endpoint += sign * (t(k) + t(-k));
    }

    let mut planner = FftPlanner::new();
    let (nodes, values) = match grid {
        Grid::Band => {
            let len = n + 1;
            let mut u = vec![Complex64::new(0.0, 0.0); len];
            let mut v = vec![Complex64::new(0.0, 0.0); len];
            for k in 0..n as i64 {
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                u[k as usize] = Complex64::new(sign * t(k), 0.0);
                if k > 0 {
                    v[k as usize] = Complex64::new(sign * t(-k), 0.0);
                }
            }
            planner.plan_fft_inverse(len).process(&mut u);
            planner.plan_fft_forward(len).process(&mut v);
            let nodes: Vec<f64> = (1..=n).map(|j| -PI + TAU * j as f64 / len as f64).collect();
            let values: Vec<Complex64> = (1..=n).map(|j| u[j] + v[j]).collect();
            (nodes, values)
        }
        Grid::Circulant => {
            let mut w = vec![Complex64::new(0.0, 0.0); n];
            w[0] = Complex64::new(t(0), 0.0);
            for r in 1..n as i64 {
                w[r as usize] = Complex64::new(t(r) + t(r - n as i64), 0.0);
            }
            planner.plan_fft_inverse(n).process(&mut w);
            let nodes: Vec<f64> = (0..n).map(|j| TAU * j as f64 / n as f64).collect();
            (nodes, w)
        }
    };

    Ok(FourierExpansion {
        grid,
        n,
        nodes,
        values,
        endpoint,
    })
}

/// Zeros of one part found by grid search.
#[derive(Debug, Clone, Default)]
pub struct PartDetection {
    /// Whether the part vanishes at the origin.
    pub origin: bool,
    /// Interior zero locations in `(0, pi)`, ascending.
    pub interior: Vec<f64>,
}

/// Locates the zeros of one part of the sampled expansion.
///
/// Interior zeros are strict local minima of `|F^l|` no larger than
/// `h * max |F^l|`; nearby minima (within `5h`) collapse to their midpoint
/// when their depths agree within a factor of two, otherwise to the deepest
/// one. Candidates within `3h` of `pi` are discarded — an odd part vanishes
/// there structurally, and the sine factor of an eliminating polynomial
/// covers `pi` on its own. The origin (between nodes on the band grid,
/// a structural zero of any odd part) is probed directly: it counts as a
/// zero when `|F^l| <= 2h max |F^l|` on every node within `2h`.
pub fn detect_part_roots(expansion: &FourierExpansion, part: SymbolPart) -> PartDetection {
    let raw = expansion.part_values(part);
    let vals: Vec<f64> = raw.iter().map(|v| v.abs()).collect();
    let maxv = vals.iter().fold(0.0f64, |a, &b| a.max(b));
    if maxv == 0.0 {
        return PartDetection::default();
    }
    let h = expansion.spacing();
    let tau = h * maxv;
    let len = vals.len();

    let mut candidates: Vec<usize> = Vec::new();
    match expansion.grid {
        Grid::Band => {
            for j in 1..len - 1 {
                if vals[j] < vals[j - 1] && vals[j] < vals[j + 1] && vals[j] <= tau {
                    candidates.push(j);
                }
            }
        }
        Grid::Circulant => {
            for j in 0..len {
                let prev = vals[(j + len - 1) % len];
                let next = vals[(j + 1) % len];
                if vals[j] < prev && vals[j] < next && vals[j] <= tau {
                    candidates.push(j);
                }
            }
        }
    }

    // Collapse clusters of minima (truncation noise splits a single zero).
    let mut representatives: Vec<f64> = Vec::new();
    let mut group: Vec<usize> = Vec::new();
    let flush = |group: &mut Vec<usize>, reps: &mut Vec<f64>| {
        if group.is_empty() {
            return;
        }
        let vmin = group.iter().map(|&j| vals[j]).fold(f64::INFINITY, f64::min);
        let vmax = group.iter().map(|&j| vals[j]).fold(0.0f64, f64::max);
        let x = if vmax <= 2.0 * vmin {
            let first = expansion.nodes[group[0]];
            let last = expansion.nodes[*group.last().unwrap()];
            0.5 * (first + last)
        } else {
            let best = group
                .iter()
                .copied()
                .min_by(|&a, &b| vals[a].total_cmp(&vals[b]))
                .unwrap();
            expansion.nodes[best]
        };
        reps.push(x);
        group.clear();
    };
    for &j in &candidates {
        if let Some(&prev) = group.last() {
            if j - prev > 5 {
                flush(&mut group, &mut representatives);
            }
        }
        group.push(j);
    }
    flush(&mut group, &mut representatives);

    // Fold, discard structural pi-neighborhood and origin-neighborhood
    // candidates, then merge mirror images.
    let mut folded: Vec<f64> = representatives
        .iter()
        .map(|&x| expansion.fold(x))
        .filter(|&x| x > 5.0 * h && x < PI - 3.0 * h)
        .collect();
    folded.sort_by(f64::total_cmp);
    let mut interior: Vec<f64> = Vec::new();
    let mut i = 0;
    while i < folded.len() {
        let mut j = i + 1;
        while j < folded.len() && folded[j] - folded[j - 1] <= 2.0 * h {
            j += 1;
        }
        let cluster = &folded[i..j];
        interior.push(cluster.iter().sum::<f64>() / cluster.len() as f64);
        i = j;
    }

    // Origin probe over the nodes within 2h (excluding an exact-zero node,
    // where an odd part vanishes by symmetry alone).
    let mut probe_max = 0.0f64;
    let mut probed = false;
    for (j, &x) in expansion.nodes.iter().enumerate() {
        let d = expansion.fold(x);
        if d > 0.0 && d <= 2.0 * h * (1.0 + 1e-12) {
            probe_max = probe_max.max(vals[j]);
            probed = true;
        }
    }
    let origin = probed && probe_max <= 2.0 * h * maxv;

    PartDetection { origin, interior }
}

/// Locations (folded into `[0, pi]`) where one part of the expansion jumps.
///
/// Cyclic forward differences exceeding `median * max(10, n/20)` mark a
/// discontinuity; adjacent flagged gaps merge and report their midpoint.
pub fn detect_discontinuities(expansion: &FourierExpansion, part: SymbolPart) -> Vec<f64> {
    let vals = expansion.part_values(part);
    let len = vals.len();
    let mut diffs: Vec<f64> = (0..len)
        .map(|j| (vals[(j + 1) % len] - vals[j]).abs())
        .collect();
    let mut sorted = diffs.clone();
    sorted.sort_by(f64::total_cmp);
    let mut median = sorted[len / 2];
    let maxd = sorted[len - 1];
    if median <= 0.0 {
        median = maxd * 1e-12 + f64::MIN_POSITIVE;
    }
    let threshold = median * (expansion.n as f64 * 0.05).max(10.0);

    let h = expansion.spacing();
    let mut centers: Vec<f64> = Vec::new();
    for (j, d) in diffs.iter_mut().enumerate() {
        if *d > threshold {
            // Midpoint of the flagged gap; the cyclic wrap spans the period
            // boundary, whose midpoint is pi on either grid.
            let center = if j + 1 < len {
                0.5 * (expansion.nodes[j] + expansion.nodes[j + 1])
            } else {
                PI
            };
            centers.push(expansion.fold(center));
        }
    }
    centers.sort_by(f64::total_cmp);
    let mut merged: Vec<f64> = Vec::new();
    let mut i = 0;
    while i < centers.len() {
        let mut j = i + 1;
        while j < centers.len() && centers[j] - centers[j - 1] <= 2.0 * h {
            j += 1;
        }
        let cluster = &centers[i..j];
        merged.push(cluster.iter().sum::<f64>() / cluster.len() as f64);
        i = j;
    }
    merged
}

/// Composite Simpson weights for `m` subintervals (`m + 1` nodes): the 1/3
/// rule, switching to the 3/8 rule on the last three subintervals when `m`
/// is odd.
fn simpson_weights(m: usize) -> Vec<f64> {
    let mut w = vec![0.0; m + 1];
    if m % 2 == 0 {
        w[0] = 1.0 / 3.0;
        w[m] = 1.0 / 3.0;
        for j in (1..m).step_by(2) {
            w[j] = 4.0 / 3.0;
        }
        for j in (2..m).step_by(2) {
            w[j] = 2.0 / 3.0;
        }
    } else {
        let m13 = m - 3;
        if m13 > 0 {
            w[0] += 1.0 / 3.0;
            w[m13] += 1.0 / 3.0;
            for j in (1..m13).step_by(2) {
                w[j] += 4.0 / 3.0;
            }
            for j in (2..m13).step_by(2) {
                w[j] += 2.0 / 3.0;
            }
        }
        w[m13] += 3.0 / 8.0;
        w[m13 + 1] += 9.0 / 8.0;
        w[m13 + 2] += 9.0 / 8.0;
        w[m] += 3.0 / 8.0;
    }
    w
}

/// `(1/2pi) int a(x) cos(mx) dx` for `m = 0..k_max-1` by composite Simpson
/// over the given nodes (the imaginary component of the transform vanishes
/// for the even integrands used here).
fn cosine_moments(values: &[f64], nodes: &[f64], k_max: usize) -> Vec<f64> {
    let m = nodes.len() - 1;
    let h = nodes[1] - nodes[0];
    let w = simpson_weights(m);
    (0..k_max)
        .map(|mm| {
            let mut acc = 0.0;
            for j in 0..=m {
                acc += w[j] * values[j] * (mm as f64 * nodes[j]).cos();
            }
            acc * h / TAU
        })
        .collect()
}

/// Result of estimating the vanishing order of one part at one zero.
#[derive(Debug, Clone, Copy)]
pub struct MultiplicityEstimate {
    /// Smallest eigenvalues of the auxiliary sections at `k = 16, 32, 64`.
    pub lambdas: [f64; 3],
    /// `log2` of the eigenvalue difference ratio.
    pub log2_ratio: f64,
    /// The rounded vanishing order.
    pub multiplicity: usize,
}

// The decay exponent must round unambiguously, so the gate sits just below
// one half. Legitimate structures do approach it: a third-order zero of
// `x^3` type estimated from a length-1024 diagonal list yields a ratio of
// 2.51 on the band grid.
const SECTION_SIZES: [usize; 3] = [16, 32, 64];
const ROUNDING_TOLERANCE: f64 = 0.49;

fn smallest_eigenvalue(section: &DMatrix<f64>, root: f64, iters: usize) -> Result<f64> {
    let k = section.nrows();
    let lu = section.clone().lu();
    let scale = 1.0 / (k as f64).sqrt();
    let mut re = DVector::from_fn(k, |r, _| scale * (root * r as f64).cos());
    let mut im = DVector::from_fn(k, |r, _| scale * (root * r as f64).sin());
    for _ in 0..iters {
        re = lu.solve(&re).ok_or(Error::NumericalFailure {
            context: "singular section in inverse power iteration",
        })?;
        im = lu.solve(&im).ok_or(Error::NumericalFailure {
            context: "singular section in inverse power iteration",
        })?;
        let norm = (re.norm_squared() + im.norm_squared()).sqrt();
        if !norm.is_finite() || norm == 0.0 {
            return Err(Error::NumericalFailure {
                context: "inverse power iteration collapsed",
            });
        }
        re /= norm;
        im /= norm;
    }
    let s_re = section * &re;
    let s_im = section * &im;
    // v^H S v with v = re + i im and S real symmetric.
    let quad_re = re.dot(&s_re) + im.dot(&s_im);
    let quad_im = re.dot(&s_im) - im.dot(&s_re);
    let denom = re.norm_squared() + im.norm_squared();
    Ok(quad_re.hypot(quad_im) / denom)
}

/// Estimates the vanishing order of one part of the symbol at `root`.
///
/// When the real part keeps one sign on the grid, the auxiliary sections
/// are leading sections of the symmetric part of `T_n` itself; otherwise
/// (and always for the odd part) they are `T_k(|F^l|)` with coefficients
/// from composite Simpson quadrature over the grid extended by the period
/// endpoints.
pub fn estimate_multiplicity(
    expansion: &FourierExpansion,
    diagonals: &[f64],
    part: SymbolPart,
    root: f64,
    power_iters: usize,
) -> Result<MultiplicityEstimate> {
    let n = diagonal_count(diagonals)?;
    let k_max = SECTION_SIZES[2];
    if n < k_max {
        return Err(Error::InvalidDimension {
            n,
            reason: "multiplicity estimation needs n >= 64",
        });
    }

    let vals = expansion.part_values(part);
    let maxabs = vals.iter().fold(0.0f64, |a, &b| a.max(b.abs()));
    if maxabs == 0.0 {
        return Err(Error::NumericalFailure {
            context: "cannot estimate a multiplicity for an identically zero part",
        });
    }
    let minv = vals.iter().fold(f64::INFINITY, |a, &b| a.min(b));
    let maxv = vals.iter().fold(f64::NEG_INFINITY, |a, &b| a.max(b));

    let entries: Vec<f64> = if part == SymbolPart::Real && minv >= -1e-5 * maxabs {
        (0..k_max)
            .map(|m| 0.5 * (diagonals[n - 1 + m] + diagonals[n - 1 - m]))
            .collect()
    } else if part == SymbolPart::Real && maxv <= 1e-5 * maxabs {
        (0..k_max)
            .map(|m| -0.5 * (diagonals[n - 1 + m] + diagonals[n - 1 - m]))
            .collect()
    } else {
        let mut nodes = Vec::with_capacity(expansion.nodes.len() + 2);
        let mut magnitudes = Vec::with_capacity(expansion.nodes.len() + 2);
        match expansion.grid {
            Grid::Band => {
                let end = match part {
                    SymbolPart::Real => expansion.endpoint.abs(),
                    SymbolPart::Imag => 0.0,
                };
                nodes.push(-PI);
                magnitudes.push(end);
                nodes.extend_from_slice(&expansion.nodes);
                magnitudes.extend(vals.iter().map(|v| v.abs()));
                nodes.push(PI);
                magnitudes.push(end);
            }
            Grid::Circulant => {
                nodes.extend_from_slice(&expansion.nodes);
                magnitudes.extend(vals.iter().map(|v| v.abs()));
                nodes.push(TAU);
                magnitudes.push(vals[0].abs());
            }
        }
        cosine_moments(&magnitudes, &nodes, k_max)
    };

    let mut lambdas = [0.0f64; 3];
    for (slot, &k) in SECTION_SIZES.iter().enumerate() {
        let section = DMatrix::from_fn(k, k, |i, j| entries[i.abs_diff(j)]);
        lambdas[slot] = smallest_eigenvalue(&section, root, power_iters)?;
    }

    if lambdas[1] <= lambdas[2] {
        return Err(Error::MultiplicityNotDecreasing);
    }
    let ratio = (lambdas[0] - lambdas[1]) / (lambdas[1] - lambdas[2]);
    if ratio <= 0.0 {
        return Err(Error::MultiplicityNotDecreasing);
    }
    let log2_ratio = ratio.log2();
    let rounded = log2_ratio.round();
    if (log2_ratio - rounded).abs() > ROUNDING_TOLERANCE || rounded < 0.0 {
        return Err(Error::NonIntegerMultiplicity {
            log2_ratio,
            tolerance: ROUNDING_TOLERANCE,
        });
    }
    Ok(MultiplicityEstimate {
        lambdas,
        log2_ratio,
        multiplicity: rounded as usize,
    })
}

/// One part's contribution to an estimated zero.
#[derive(Debug, Clone, Copy)]
pub struct PartRootEstimate {
    /// Where this part locates the zero (`0` for the origin).
    pub location: f64,
    /// The estimated vanishing order.
    pub estimate: MultiplicityEstimate,
}

/// A zero of the symbol assembled from per-part detections.
#[derive(Debug, Clone)]
pub struct EstimatedRoot {
    /// Representative location (per-part locations averaged).
    pub location: f64,
    /// The real part's zero here, if it has one.
    pub real: Option<PartRootEstimate>,
    /// The imaginary part's zero here, if it has one.
    pub imag: Option<PartRootEstimate>,
}

impl EstimatedRoot {
    fn order(&self, part: SymbolPart) -> usize {
        let slot = match part {
            SymbolPart::Real => &self.real,
            SymbolPart::Imag => &self.imag,
        };
        slot.as_ref().map_or(0, |p| p.estimate.multiplicity)
    }
}

/// The full estimated zero structure of a symbol known only by diagonals.
#[derive(Debug, Clone)]
pub struct ZeroStructureEstimate {
    /// Which grid the estimates came from.
    pub grid: Grid,
    /// The matrix dimension.
    pub n: usize,
    /// Estimated zeros, the origin first when present.
    pub roots: Vec<EstimatedRoot>,
    /// Jump locations of the real part, folded into `[0, pi]`.
    pub real_discontinuities: Vec<f64>,
    /// Jump locations of the imaginary part.
    pub imag_discontinuities: Vec<f64>,
}

impl ZeroStructureEstimate {
    /// Whether any zero was found.
    pub fn has_roots(&self) -> bool {
        !self.roots.is_empty()
    }

    /// Whether some zero is shared by both parts.
    pub fn has_common_root(&self) -> bool {
        self.roots.iter().any(|r| r.real.is_some() && r.imag.is_some())
    }

    /// Whether a real eliminating polynomial suffices (every zero of the
    /// real part matched by the imaginary part to at least the same order).
    pub fn real_feasible(&self) -> bool {
        self.roots.iter().all(|r| {
            let m1 = r.order(SymbolPart::Real);
            m1 == 0 || m1 <= r.order(SymbolPart::Imag)
        })
    }

    /// Zero structure of one part, at that part's own locations.
    pub fn part_zeros(&self, part: SymbolPart) -> PartZeros {
        let mut zeros = PartZeros::default();
        for root in &self.roots {
            let slot = match part {
                SymbolPart::Real => &root.real,
                SymbolPart::Imag => &root.imag,
            };
            if let Some(est) = slot {
                if est.estimate.multiplicity == 0 {
                    continue;
                }
                if root.location == 0.0 {
                    zeros.origin = est.estimate.multiplicity;
                } else {
                    zeros.interior.push((est.location, est.estimate.multiplicity));
                }
            }
        }
        zeros
    }

    /// Representative zero locations (for filtering fit nodes).
    pub fn locations(&self) -> Vec<f64> {
        self.roots.iter().map(|r| r.location).collect()
    }
}

fn estimate_structure_from(
    expansion: &FourierExpansion,
    diagonals: &[f64],
    power_iters: usize,
) -> Result<ZeroStructureEstimate> {
    let det1 = detect_part_roots(expansion, SymbolPart::Real);
    let det2 = detect_part_roots(expansion, SymbolPart::Imag);
    let h = expansion.spacing();

    let estimate = |part: SymbolPart, location: f64| -> Result<Option<PartRootEstimate>> {
        let est = estimate_multiplicity(expansion, diagonals, part, location, power_iters)?;
        if est.multiplicity == 0 {
            return Ok(None);
        }
        Ok(Some(PartRootEstimate {
            location,
            estimate: est,
        }))
    };

    let mut roots: Vec<EstimatedRoot> = Vec::new();
    if det1.origin || det2.origin {
        let real = if det1.origin {
            estimate(SymbolPart::Real, 0.0)?
        } else {
            None
        };
        let imag = if det2.origin {
            estimate(SymbolPart::Imag, 0.0)?
        } else {
            None
        };
        if real.is_some() || imag.is_some() {
            roots.push(EstimatedRoot {
                location: 0.0,
                real,
                imag,
            });
        }
    }

    // Pair the parts' interior zeros when they agree within 2h.
    let mut imag_used = vec![false; det2.interior.len()];
    for &x1 in &det1.interior {
        let mut partner: Option<usize> = None;
        for (j, &x2) in det2.interior.iter().enumerate() {
            if imag_used[j] || (x2 - x1).abs() > 2.0 * h {
                continue;
            }
            if partner.map_or(true, |p| (det2.interior[p] - x1).abs() > (x2 - x1).abs()) {
                partner = Some(j);
            }
        }
        let real = estimate(SymbolPart::Real, x1)?;
        let imag = match partner {
            Some(j) => {
                imag_used[j] = true;
                estimate(SymbolPart::Imag, det2.interior[j])?
            }
            None => None,
        };
        let location = match (&real, &imag) {
            (Some(r), Some(i)) => 0.5 * (r.location + i.location),
            _ => x1,
        };
        if real.is_some() || imag.is_some() {
            roots.push(EstimatedRoot {
                location,
                real,
                imag,
            });
        }
    }
    for (j, &x2) in det2.interior.iter().enumerate() {
        if imag_used[j] {
            continue;
        }
        if let Some(imag) = estimate(SymbolPart::Imag, x2)? {
            roots.push(EstimatedRoot {
                location: x2,
                real: None,
                imag: Some(imag),
            });
        }
    }
    roots.sort_by(|a, b| a.location.total_cmp(&b.location));

    Ok(ZeroStructureEstimate {
        grid: expansion.grid,
        n: expansion.n,
        roots,
        real_discontinuities: detect_discontinuities(expansion, SymbolPart::Real),
        imag_discontinuities: detect_discontinuities(expansion, SymbolPart::Imag),
    })
}

/// Estimates the zero structure of the symbol generating the given
/// diagonals.
pub fn estimate_zero_structure(
    diagonals: &[f64],
    grid: Grid,
    power_iters: usize,
) -> Result<ZeroStructureEstimate> {
    let expansion = fourier_expansion(diagonals, grid)?;
    estimate_structure_from(&expansion, diagonals, power_iters)
}

fn estimated_elimination(
    diagonals: &[f64],
    structure: &ZeroStructureEstimate,
) -> Result<TrigPolynomial> {
    let diags = diagonals.to_vec();
    let f = move |x: f64| expansion_value(&diags, x);
    elimination_polynomial_parts(
        &f,
        &structure.part_zeros(SymbolPart::Real),
        &structure.part_zeros(SymbolPart::Imag),
        !structure.real_feasible(),
    )
}

/// Default number of inverse power iterations per section.
pub const DEFAULT_POWER_ITERS: usize = 4;

/// A banded preconditioner constructed without knowing the symbol.
#[derive(Debug)]
pub struct AutoBandPreconditioner {
    /// The factored band `T_n(g q)`.
    pub preconditioner: BandPreconditioner,
    /// What the construction believed about the symbol's zeros.
    pub structure: ZeroStructureEstimate,
    /// The eliminating polynomial `g` (constant one when no zeros exist).
    pub elimination: TrigPolynomial,
    /// The fitted correction `q ~ F_{n-1} / g`.
    pub correction: TrigPolynomial,
    /// Minimax fit of the even part of `F / g`.
    pub even_fit: MinimaxResult,
    /// Minimax fit of the odd part of `F / g`.
    pub odd_fit: MinimaxResult,
}

impl Preconditioner for AutoBandPreconditioner {
    fn dim(&self) -> usize {
        self.preconditioner.dim()
    }
    fn apply_inverse(&self, r: &[f64]) -> Result<Vec<f64>> {
        self.preconditioner.apply_inverse(r)
    }
    fn apply_inverse_transpose(&self, r: &[f64]) -> Result<Vec<f64>> {
        self.preconditioner.apply_inverse_transpose(r)
    }
}

/// Target size of the fitting node set.
const FIT_TARGET: usize = 512;
/// Fit nodes closer than this to an estimated zero are discarded.
const ROOT_RADIUS: f64 = 0.1;
/// Fit nodes within this distance of an estimated jump are discarded.
const DISCONTINUITY_RADIUS: f64 = TAU / 7.0;
/// Fit values this many times above the median magnitude are discarded.
const SPIKE_FACTOR: f64 = 20.0;

/// Builds a banded preconditioner `T_n(g q)` from diagonals alone:
/// estimate the zero structure on the band grid, eliminate the zeros with
/// `g`, and fit trigonometric polynomials of degrees `(even_degree,
/// odd_degree)` to `F_{n-1} / g` on the positive grid nodes away from
/// zeros, jumps, and outlier values.
pub fn auto_band(
    diagonals: &[f64],
    even_degree: usize,
    odd_degree: usize,
    power_iters: usize,
) -> Result<AutoBandPreconditioner> {
    let expansion = fourier_expansion(diagonals, Grid::Band)?;
    let n = expansion.n;
    let structure = estimate_structure_from(&expansion, diagonals, power_iters)?;
    let elimination = if structure.has_roots() {
        estimated_elimination(diagonals, &structure)?
    } else {
        TrigPolynomial::constant(1.0)
    };

    let positive: Vec<usize> = (0..n).filter(|&j| expansion.nodes[j] > 0.0).collect();
    let stride = (positive.len() / FIT_TARGET).max(1);
    let roots = structure.locations();

    let mut nodes: Vec<f64> = Vec::new();
    let mut values: Vec<Complex64> = Vec::new();
    for &j in positive.iter().step_by(stride) {
        let x = expansion.nodes[j];
        if roots.iter().any(|&r| (x - r).abs() < ROOT_RADIUS) {
            continue;
        }
        let g = elimination.eval(x);
        nodes.push(x);
        values.push(expansion.values[j] * g.conj() / g.norm_sqr());
    }
    let mut magnitudes: Vec<f64> = values.iter().map(|v| v.norm()).collect();
    magnitudes.sort_by(f64::total_cmp);
    let median = magnitudes.get(magnitudes.len() / 2).copied().unwrap_or(0.0);

    // Each part is fitted only away from its own jumps: a jump in the odd
    // part truncates the odd fit (as in the known-symbol construction)
    // while the even fit must stay constrained there, and vice versa.
    let part_fit = |jumps: &[f64], pick: &dyn Fn(&Complex64) -> f64| -> (Vec<f64>, Vec<f64>) {
        let mut kept = Vec::new();
        let mut vals = Vec::new();
        for (x, v) in nodes.iter().zip(&values) {
            if jumps.iter().any(|&c| (x - c).abs() < DISCONTINUITY_RADIUS) {
                continue;
            }
            if median > 0.0 && v.norm() > SPIKE_FACTOR * median {
                continue;
            }
            kept.push(*x);
            vals.push(pick(v));
        }
        (kept, vals)
    };
    let (even_nodes, re_vals) = part_fit(&structure.real_discontinuities, &|v| v.re);
    let (odd_nodes, im_vals) = part_fit(&structure.imag_discontinuities, &|v| v.im);

    let even_fit = remez::remez(&re_vals, &even_nodes, even_degree, Parity::Even)?;
    let odd_fit = remez::remez(&im_vals, &odd_nodes, odd_degree, Parity::Odd)?;
    let correction = TrigPolynomial::new(
        CosineSeries::from_coefficients(even_fit.approximant.coefficients().to_vec()),
        SineSeries::from_coefficients(odd_fit.approximant.coefficients().to_vec()),
    );
    let symbol = elimination.mul(&correction);
    let preconditioner = BandPreconditioner::new(symbol, n)?;

    Ok(AutoBandPreconditioner {
        preconditioner,
        structure,
        elimination,
        correction,
        even_fit,
        odd_fit,
    })
}

/// The circulant-based preconditioner chosen by the automatic construction.
#[derive(Debug)]
pub enum AutoCirculantKind {
    /// A plain circulant whose eigenvalues are `F_{n-1}` on the grid.
    Plain(CirculantPreconditioner),
    /// `T_n(g) C_n(F/g)` when both parts share an estimated zero.
    Composite(BandCirculantPreconditioner),
}

/// A circulant (or band-times-circulant) preconditioner constructed from
/// diagonals alone.
#[derive(Debug)]
pub struct AutoCirculantPreconditioner {
    /// What the construction believed about the symbol's zeros.
    pub structure: ZeroStructureEstimate,
    /// The eliminating polynomial, when the composite route was taken.
    pub elimination: Option<TrigPolynomial>,
    /// The constructed preconditioner.
    pub kind: AutoCirculantKind,
}

impl Preconditioner for AutoCirculantPreconditioner {
    fn dim(&self) -> usize {
        match &self.kind {
            AutoCirculantKind::Plain(c) => c.dim(),
            AutoCirculantKind::Composite(m) => m.dim(),
        }
    }
    fn apply_inverse(&self, r: &[f64]) -> Result<Vec<f64>> {
        match &self.kind {
            AutoCirculantKind::Plain(c) => c.apply_inverse(r),
            AutoCirculantKind::Composite(m) => m.apply_inverse(r),
        }
    }
    fn apply_inverse_transpose(&self, r: &[f64]) -> Result<Vec<f64>> {
        match &self.kind {
            AutoCirculantKind::Plain(c) => c.apply_inverse_transpose(r),
            AutoCirculantKind::Composite(m) => m.apply_inverse_transpose(r),
        }
    }
}

/// Replaces each cyclic run of flagged values with the mean of the two
/// neighboring unflagged values.
fn shift_pole_values(values: &mut [Complex64], pole: &[bool]) -> Result<()> {
    let n = values.len();
    if pole.iter().all(|&p| p) {
        return Err(Error::NumericalFailure {
            context: "every circulant eigenvalue was filtered as a pole",
        });
    }
    let mut j = 0;
    while j < n {
        if !pole[j] {
            j += 1;
            continue;
        }
        // Walk left from the run start and right from the run end to the
        // nearest good values (cyclically).
        let mut end = j;
        while end + 1 < n && pole[end + 1] {
            end += 1;
        }
        let mut left = (j + n - 1) % n;
        while pole[left] {
            left = (left + n - 1) % n;
        }
        let mut right = (end + 1) % n;
        while pole[right] {
            right = (right + 1) % n;
        }
        let fill = 0.5 * (values[left] + values[right]);
        for v in values.iter_mut().take(end + 1).skip(j) {
            *v = fill;
        }
        j = end + 1;
    }
    Ok(())
}

/// Builds a circulant-based preconditioner from diagonals alone: the plain
/// circulant with eigenvalues `F_{n-1}(x_j)` unless both parts share an
/// estimated zero, in which case the zeros are eliminated by `g` and the
/// composite `T_n(g) C_n(F/g)` is built, patching the eigenvalue samples
/// that sit on poles of the ratio.
pub fn auto_circulant(
    diagonals: &[f64],
    power_iters: usize,
) -> Result<AutoCirculantPreconditioner> {
    let expansion = fourier_expansion(diagonals, Grid::Circulant)?;
    let n = expansion.n;
    let structure = estimate_structure_from(&expansion, diagonals, power_iters)?;

    let real_has_roots = structure.roots.iter().any(|r| r.real.is_some());
    if !real_has_roots || !structure.has_common_root() {
        let circulant = CirculantPreconditioner::from_eigenvalues(expansion.values.clone())?;
        return Ok(AutoCirculantPreconditioner {
            structure,
            elimination: None,
            kind: AutoCirculantKind::Plain(circulant),
        });
    }

    let elimination = estimated_elimination(diagonals, &structure)?;
    let g_values: Vec<Complex64> = expansion.nodes.iter().map(|&x| elimination.eval(x)).collect();
    let g_max = g_values.iter().fold(0.0f64, |a, v| a.max(v.norm()));
    let mut eigenvalues: Vec<Complex64> = Vec::with_capacity(n);
    let mut pole = vec![false; n];
    for j in 0..n {
        let v = expansion.values[j] * g_values[j].conj() / g_values[j].norm_sqr();
        if g_values[j].norm() <= 1e-4 * g_max || !v.re.is_finite() || !v.im.is_finite() {
            pole[j] = true;
        }
        eigenvalues.push(v);
    }
    let mut finite: Vec<f64> = eigenvalues
        .iter()
        .zip(&pole)
        .filter(|(v, &p)| !p && v.re.is_finite() && v.im.is_finite())
        .map(|(v, _)| v.norm())
        .collect();
    finite.sort_by(f64::total_cmp);
    if let Some(&median) = finite.get(finite.len() / 2) {
        if median > 0.0 {
            for j in 0..n {
                if eigenvalues[j].norm() > 1e6 * median {
                    pole[j] = true;
                }
            }
        }
    }
    shift_pole_values(&mut eigenvalues, &pole)?;

    let circulant = CirculantPreconditioner::from_eigenvalues(eigenvalues)?;
    let band = BandPreconditioner::new(elimination.clone(), n)?;
    let composite = BandCirculantPreconditioner::new(band, circulant)?;
    Ok(AutoCirculantPreconditioner {
        structure,
        elimination: Some(elimination),
        kind: AutoCirculantKind::Composite(composite),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::krylov::{pgmres, SolveOptions};
    use crate::precond::IdentityPreconditioner;
    use crate::toeplitz::ToeplitzMatrix;
    use approx::assert_relative_eq;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    /// `t_k` of `x^2 + i x^3`.
    fn tk_f2(k: i64) -> f64 {
        if k == 0 {
            return PI * PI / 3.0;
        }
        let s = if k > 0 { 1.0 } else { -1.0 };
        let a = k.unsigned_abs() as f64;
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        2.0 * sign / (a * a) + s * (-sign) * (PI * PI / a - 6.0 / (a * a * a))
    }

    /// `t_k` of `(x^2-1)^2 + i x (x^2 - 1)`.
    fn tk_f9(k: i64) -> f64 {
        if k == 0 {
            return PI.powi(4) / 5.0 - 2.0 * PI * PI / 3.0 + 1.0;
        }
        let s = if k > 0 { 1.0 } else { -1.0 };
        let a = k.unsigned_abs() as f64;
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let quartic = sign * (4.0 * PI * PI / (a * a) - 24.0 / a.powi(4));
        let real = quartic - 4.0 * sign / (a * a);
        let odd = s * (-sign) * (PI * PI / a - 6.0 / (a * a * a)) + s * sign / a;
        real + odd
    }

    /// `t_k` of `x^2 + 1 + i x`.
    fn tk_f13(k: i64) -> f64 {
        if k == 0 {
            return PI * PI / 3.0 + 1.0;
        }
        let s = if k > 0 { 1.0 } else { -1.0 };
        let a = k.unsigned_abs() as f64;
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        2.0 * sign / (a * a) - s * sign / a
    }

    fn diagonals_from(tk: impl Fn(i64) -> f64, n: usize) -> Vec<f64> {
        (-(n as i64 - 1)..n as i64).map(tk).collect()
    }

    fn pad_band(band: &[f64], n: usize) -> Vec<f64> {
        let d = (band.len() - 1) / 2;
        let mut diags = vec![0.0; 2 * n - 1];
        for (i, &b) in band.iter().enumerate() {
            diags[n - 1 - d + i] = b;
        }
        diags
    }

    #[test]
    fn expansion_matches_direct_summation() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let n = 33;
        let diags: Vec<f64> = (0..2 * n - 1).map(|_| rng.gen_range(-1.0..1.0)).collect();
        for grid in [Grid::Band, Grid::Circulant] {
            let exp = fourier_expansion(&diags, grid).unwrap();
            assert_eq!(exp.values().len(), n);
            for (j, &x) in exp.nodes().iter().enumerate() {
                let direct = expansion_value(&diags, x);
                assert_relative_eq!(exp.values()[j].re, direct.re, epsilon = 1e-9);
                assert_relative_eq!(exp.values()[j].im, direct.im, epsilon = 1e-9);
            }
        }
        let exp = fourier_expansion(&diags, Grid::Band).unwrap();
        let direct = expansion_value(&diags, PI);
        assert_relative_eq!(exp.endpoint(), direct.re, epsilon = 1e-9);
    }

    #[test]
    fn expansion_reproduces_a_trigonometric_polynomial_exactly() {
        // 1 + cos 2x + cos 3x + i(-2 sin x - sin 2x - sin 3x).
        let symbol = TrigPolynomial::new(
            CosineSeries::from_coefficients(vec![1.0, 0.0, 1.0, 1.0]),
            SineSeries::from_coefficients(vec![-2.0, -1.0, -1.0]),
        );
        let n = 64;
        let diags = pad_band(&symbol.band_coefficients(), n);
        for grid in [Grid::Band, Grid::Circulant] {
            let exp = fourier_expansion(&diags, grid).unwrap();
            for (j, &x) in exp.nodes().iter().enumerate() {
                let expect = symbol.eval(x);
                assert_relative_eq!(exp.values()[j].re, expect.re, epsilon = 1e-9);
                assert_relative_eq!(exp.values()[j].im, expect.im, epsilon = 1e-9);
            }
        }
    }

    #[test]
    fn detects_the_origin_zeros_of_both_parts() {
        let diags = diagonals_from(tk_f2, 1024);
        let exp = fourier_expansion(&diags, Grid::Band).unwrap();
        let real = detect_part_roots(&exp, SymbolPart::Real);
        assert!(real.origin);
        assert!(real.interior.is_empty());
        let imag = detect_part_roots(&exp, SymbolPart::Imag);
        assert!(imag.origin);
        assert!(imag.interior.is_empty());
    }

    #[test]
    fn detects_interior_and_origin_zeros_of_a_quartic_symbol() {
        let n = 2048;
        let diags = diagonals_from(tk_f9, n);
        for grid in [Grid::Band, Grid::Circulant] {
            let exp = fourier_expansion(&diags, grid).unwrap();
            let h = exp.spacing();
            let real = detect_part_roots(&exp, SymbolPart::Real);
            assert!(!real.origin, "{grid:?}: (x^2-1)^2 = 1 at the origin");
            assert_eq!(real.interior.len(), 1, "{grid:?}: {:?}", real.interior);
            assert!((real.interior[0] - 1.0).abs() <= 5.0 * h);
            let imag = detect_part_roots(&exp, SymbolPart::Imag);
            assert!(imag.origin, "{grid:?}: x(x^2-1) vanishes at 0");
            assert_eq!(imag.interior.len(), 1, "{grid:?}: {:?}", imag.interior);
            assert!((imag.interior[0] - 1.0).abs() <= 5.0 * h);
        }
    }

    #[test]
    fn reports_the_jump_of_an_odd_cubic_at_pi() {
        let diags = diagonals_from(tk_f2, 512);
        let exp = fourier_expansion(&diags, Grid::Band).unwrap();
        let h = exp.spacing();
        let real_jumps = detect_discontinuities(&exp, SymbolPart::Real);
        assert!(real_jumps.is_empty(), "{real_jumps:?}");
        let imag_jumps = detect_discontinuities(&exp, SymbolPart::Imag);
        assert_eq!(imag_jumps.len(), 1, "{imag_jumps:?}");
        assert!((imag_jumps[0] - PI).abs() <= 2.0 * h);
    }

    #[test]
    fn multiplicity_triples_match_the_reference_tables() {
        let n = 2048;
        let diags = diagonals_from(tk_f2, n);

        // Real part (one-signed): sections of the symmetric part itself,
        // grid-independent.
        let band = fourier_expansion(&diags, Grid::Band).unwrap();
        let real = estimate_multiplicity(&band, &diags, SymbolPart::Real, 0.0, 4).unwrap();
        assert!((real.lambdas[0] - 0.0351).abs() < 5e-4, "{:?}", real.lambdas);
        assert!((real.lambdas[1] - 0.0092).abs() < 5e-4, "{:?}", real.lambdas);
        assert!((real.lambdas[2] - 0.0024).abs() < 5e-4, "{:?}", real.lambdas);
        assert!((real.log2_ratio - 1.9224).abs() < 0.02, "{}", real.log2_ratio);
        assert_eq!(real.multiplicity, 2);

        // Odd part via Simpson sections: the two grids give slightly
        // different quadratures and ratios.
        let imag_band = estimate_multiplicity(&band, &diags, SymbolPart::Imag, 0.0, 4).unwrap();
        assert!((imag_band.log2_ratio - 2.6634).abs() < 0.02, "{}", imag_band.log2_ratio);
        assert_eq!(imag_band.multiplicity, 3);

        let circ = fourier_expansion(&diags, Grid::Circulant).unwrap();
        let imag_circ = estimate_multiplicity(&circ, &diags, SymbolPart::Imag, 0.0, 4).unwrap();
        assert!((imag_circ.log2_ratio - 2.9337).abs() < 0.02, "{}", imag_circ.log2_ratio);
        assert_eq!(imag_circ.multiplicity, 3);
    }

    #[test]
    fn quartic_symbol_multiplicities_match_the_reference_tables() {
        let n = 2048;
        let diags = diagonals_from(tk_f9, n);
        let circ = fourier_expansion(&diags, Grid::Circulant).unwrap();
        let st = estimate_structure_from(&circ, &diags, 4).unwrap();
        assert_eq!(st.roots.len(), 2, "{:?}", st.roots);

        // The published table lists 0.1307/0.0689/0.0355, 0.1128/0.0338/
        // 0.0091 and 0.1836/0.1083/0.0678 for these triples; the interior
        // ones were evaluated at the author's own root estimate, so only
        // the leading digits and the rounded orders are reproducible. The
        // values pinned here come from an independent implementation of
        // the same sections and iteration at the grid-detected root.
        let origin = &st.roots[0];
        assert_eq!(origin.location, 0.0);
        assert!(origin.real.is_none());
        let imag0 = origin.imag.as_ref().unwrap();
        assert_eq!(imag0.estimate.multiplicity, 1);
        for (got, expect) in imag0.estimate.lambdas.iter().zip([0.1308, 0.0690, 0.0355]) {
            assert!((got - expect).abs() < 5e-4, "{:?}", imag0.estimate.lambdas);
        }
        assert!((imag0.estimate.log2_ratio - 0.8830).abs() < 0.02);

        let interior = &st.roots[1];
        let h = circ.spacing();
        assert!((interior.location - 1.0).abs() <= 5.0 * h);
        let real1 = interior.real.as_ref().unwrap();
        assert_eq!(real1.estimate.multiplicity, 2);
        for (got, expect) in real1.estimate.lambdas.iter().zip([0.1120, 0.0337, 0.0091]) {
            assert!((got - expect).abs() < 5e-4, "{:?}", real1.estimate.lambdas);
        }
        assert!((real1.estimate.log2_ratio - 1.6716).abs() < 0.02);
        let imag1 = interior.imag.as_ref().unwrap();
        assert_eq!(imag1.estimate.multiplicity, 1);
        for (got, expect) in imag1.estimate.lambdas.iter().zip([0.1684, 0.0976, 0.0658]) {
            assert!((got - expect).abs() < 5e-4, "{:?}", imag1.estimate.lambdas);
        }

        assert!(!st.real_feasible());
    }

    #[test]
    fn auto_band_recovers_the_eliminating_polynomial_of_a_cubic_symbol() {
        let n = 1024;
        let diags = diagonals_from(tk_f2, n);
        let auto = auto_band(&diags, 4, 4, DEFAULT_POWER_ITERS).unwrap();

        // x^2 + i x^3 vanishes to orders (2, 3) at the origin, so a real
        // g = 2 - 2 cos x suffices.
        assert!(auto.elimination.im.is_zero());
        let coeffs = auto.elimination.re.coefficients();
        assert_relative_eq!(coeffs[0], 2.0, epsilon = 1e-9);
        assert_relative_eq!(coeffs[1], -2.0, epsilon = 1e-9);

        let t = ToeplitzMatrix::from_diagonals(diags, n).unwrap();
        let b = t.matvec(&vec![1.0; n]).unwrap();
        let got = pgmres(&t, &auto, &b, &SolveOptions::default()).unwrap();
        assert!(got.converged);
        assert!(
            (22..=36).contains(&got.iterations),
            "iterations = {}",
            got.iterations
        );
    }

    #[test]
    fn auto_circulant_stays_plain_without_a_common_zero() {
        let n = 512;
        let diags = diagonals_from(tk_f13, n);
        let auto = auto_circulant(&diags, DEFAULT_POWER_ITERS).unwrap();
        assert!(matches!(auto.kind, AutoCirculantKind::Plain(_)));
        assert!(auto.elimination.is_none());

        let t = ToeplitzMatrix::from_diagonals(diags, n).unwrap();
        let b = t.matvec(&vec![1.0; n]).unwrap();
        let got = pgmres(&t, &auto, &b, &SolveOptions::default()).unwrap();
        assert!(got.converged);
        assert!(got.iterations <= 10, "iterations = {}", got.iterations);

        let unpre = pgmres(
            &t,
            &IdentityPreconditioner::new(n),
            &b,
            &SolveOptions::default(),
        )
        .unwrap();
        assert!(got.iterations < unpre.iterations);
    }

    #[test]
    fn auto_circulant_composes_band_and_circulant_on_a_shared_zero() {
        let n = 1024;
        let diags = diagonals_from(tk_f2, n);
        let auto = auto_circulant(&diags, DEFAULT_POWER_ITERS).unwrap();
        assert!(matches!(auto.kind, AutoCirculantKind::Composite(_)));
        let g = auto.elimination.as_ref().unwrap();
        assert!(g.im.is_zero());

        let t = ToeplitzMatrix::from_diagonals(diags, n).unwrap();
        let b = t.matvec(&vec![1.0; n]).unwrap();
        let got = pgmres(&t, &auto, &b, &SolveOptions::default()).unwrap();
        assert!(got.converged);
        assert!(
            (8..=16).contains(&got.iterations),
            "iterations = {}",
            got.iterations
        );
    }

    #[test]
    fn pole_shifting_fills_cyclic_runs_from_their_neighbors() {
        let mut values: Vec<Complex64> = (0..6)
            .map(|j| Complex64::new(j as f64, -(j as f64)))
            .collect();
        let pole = vec![true, false, false, true, true, false];
        shift_pole_values(&mut values, &pole).unwrap();
        // Run {3, 4} takes the mean of indices 2 and 5; run {0} wraps and
        // takes the mean of indices 5 and 1.
        let fill34 = 0.5 * (Complex64::new(2.0, -2.0) + Complex64::new(5.0, -5.0));
        assert_eq!(values[3], fill34);
        assert_eq!(values[4], fill34);
        let fill0 = 0.5 * (Complex64::new(5.0, -5.0) + Complex64::new(1.0, -1.0));
        assert_eq!(values[0], fill0);

        let all = vec![true; 6];
        assert!(shift_pole_values(&mut values, &all).is_err());
    }

    #[test]
    fn simpson_weights_integrate_cubics_exactly() {
        // Even subinterval count: plain 1/3 rule.
        for m in [4usize, 7, 10, 11] {
            let h = 1.0 / m as f64;
            let w = simpson_weights(m);
            let integral: f64 = (0..=m)
                .map(|j| {
                    let x = j as f64 * h;
                    w[j] * h * (x * x * x - 2.0 * x + 1.0)
                })
                .sum();
            assert_relative_eq!(integral, 0.25, epsilon = 1e-12);
        }
    }
}
