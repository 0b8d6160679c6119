//! Discrete minimax (Remez exchange) fitting of trigonometric polynomials.
//!
//! The band preconditioners split a symbol into `f ~ g * q` where `g`
//! carries the zeros and `q = q_1 + i q_2` is a trigonometric rational
//! correction. Each part of `q` solves a real Chebyshev problem on a node
//! set: minimize `max_j |q(x_j) - v_j|` over even (`sum a_k cos kx`) or odd
//! (`sum b_k sin kx`) polynomials of fixed degree. This module implements
//! the classical multi-point exchange on a discrete grid: solve the leveled
//! reference system, locate one extremum of the residual per sign run, trim
//! the candidate set back to `m + 1` alternation points, and iterate until
//! the residual levels off.
//!
//! The same basis evaluation also supports plain interpolation (square
//! collocation solve), which trades the equioscillation guarantee for a
//! cheaper construction.

use crate::error::{Error, Result};
use nalgebra::{DMatrix, DVector};

/// Parity of the target function on `[0, pi]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    /// Even: basis `cos(kx)`, `k = 0..=degree` (dimension `degree + 1`).
    Even,
    /// Odd: basis `sin(kx)`, `k = 1..=degree` (dimension `degree`).
    Odd,
}

impl Parity {
    /// Number of basis functions for a given degree.
    pub fn basis_dim(self, degree: usize) -> usize {
        match self {
            Parity::Even => degree + 1,
            Parity::Odd => degree,
        }
    }
}

/// A fitted even or odd trigonometric polynomial.
#[derive(Debug, Clone)]
pub struct TrigApproximant {
    parity: Parity,
    coefficients: Vec<f64>,
}

impl TrigApproximant {
    /// Wraps raw basis coefficients.
    pub fn new(parity: Parity, coefficients: Vec<f64>) -> Self {
        Self {
            parity,
            coefficients,
        }
    }

    /// The parity of the basis.
    pub fn parity(&self) -> Parity {
        self.parity
    }

    /// Basis coefficients (`cos(kx)` from `k = 0`, or `sin(kx)` from `k = 1`).
    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    /// Polynomial degree (highest harmonic).
    pub fn degree(&self) -> usize {
        match self.parity {
            Parity::Even => self.coefficients.len().saturating_sub(1),
            Parity::Odd => self.coefficients.len(),
        }
    }

    /// Evaluates the polynomial at `x`.
    pub fn eval(&self, x: f64) -> f64 {
        match self.parity {
            Parity::Even => self
                .coefficients
                .iter()
                .enumerate()
                .map(|(k, &a)| a * (k as f64 * x).cos())
                .sum(),
            Parity::Odd => self
                .coefficients
                .iter()
                .enumerate()
                .map(|(k, &b)| b * ((k + 1) as f64 * x).sin())
                .sum(),
        }
    }
}

/// Outcome of a Remez exchange.
#[derive(Debug, Clone)]
pub struct MinimaxResult {
    /// The best-approximation polynomial.
    pub approximant: TrigApproximant,
    /// `|E|`: the leveled reference error (the minimax error on the grid).
    pub leveled_error: f64,
    /// Largest residual over the whole grid at convergence.
    pub max_error: f64,
    /// Exchange iterations used.
    pub iterations: usize,
    /// Residual values at the final reference points (alternating signs).
    pub reference_residuals: Vec<f64>,
}

/// `count` Chebyshev nodes mapped to `(0, upper)`, ascending.
pub fn chebyshev_nodes(count: usize, upper: f64) -> Vec<f64> {
    let k = count as f64;
    (0..count)
        .map(|j| {
            let angle = (2.0 * (k - j as f64) - 1.0) * std::f64::consts::PI / (2.0 * k);
            0.5 * upper * (angle.cos() + 1.0)
        })
        .collect()
}

fn basis_matrix(parity: Parity, degree: usize, nodes: &[f64]) -> DMatrix<f64> {
    let m = parity.basis_dim(degree);
    DMatrix::from_fn(nodes.len(), m, |i, j| match parity {
        Parity::Even => (j as f64 * nodes[i]).cos(),
        Parity::Odd => ((j + 1) as f64 * nodes[i]).sin(),
    })
}

/// Best discrete minimax fit of `values` on `nodes` by an even or odd
/// trigonometric polynomial of the given degree.
pub fn remez(
    values: &[f64],
    nodes: &[f64],
    degree: usize,
    parity: Parity,
) -> Result<MinimaxResult> {
    const MAX_EXCHANGES: usize = 100;
    if values.len() != nodes.len() {
        return Err(Error::LengthMismatch {
            expected: nodes.len(),
            actual: values.len(),
        });
    }
    let m = parity.basis_dim(degree);
    if m == 0 {
        return Err(Error::InvalidDimension {
            n: degree,
            reason: "odd minimax fit needs degree >= 1",
        });
    }
    let big_k = nodes.len();
    if big_k < m + 1 {
        return Err(Error::InsufficientNodes {
            needed: m + 1,
            available: big_k,
        });
    }
    let a_full = basis_matrix(parity, degree, nodes);
    // Initial reference: m + 1 roughly equispaced grid indices.
    let mut reference: Vec<usize> = (0..=m)
        .map(|i| ((i as f64) * (big_k - 1) as f64 / m as f64).round() as usize)
        .collect();

    for it in 1..=MAX_EXCHANGES {
        // Leveled system: q(x_ref_i) + (-1)^i E = v_ref_i.
        let mut sys = DMatrix::zeros(m + 1, m + 1);
        let mut rhs = DVector::zeros(m + 1);
        for (i, &idx) in reference.iter().enumerate() {
            for j in 0..m {
                sys[(i, j)] = a_full[(idx, j)];
            }
            sys[(i, m)] = if i % 2 == 0 { 1.0 } else { -1.0 };
            rhs[i] = values[idx];
        }
        let sol = sys.lu().solve(&rhs).ok_or(Error::NumericalFailure {
            context: "minimax reference system is singular",
        })?;
        let coef: Vec<f64> = sol.as_slice()[..m].to_vec();
        let leveled = sol[m];

        let residual: Vec<f64> = (0..big_k)
            .map(|i| {
                let mut q = 0.0;
                for j in 0..m {
                    q += a_full[(i, j)] * coef[j];
                }
                values[i] - q
            })
            .collect();
        let sign = |v: f64| if v >= 0.0 { 1.0 } else { -1.0 };

        // One extremum per maximal sign run.
        let mut candidates: Vec<usize> = Vec::new();
        let mut i = 0;
        while i < big_k {
            let s = sign(residual[i]);
            let mut j = i;
            while j + 1 < big_k && sign(residual[j + 1]) == s {
                j += 1;
            }
            let best = (i..=j)
                .max_by(|&a, &b| {
                    residual[a]
                        .abs()
                        .partial_cmp(&residual[b].abs())
                        .unwrap_or(std::cmp::Ordering::Equal)
                })
                .unwrap();
            candidates.push(best);
            i = j + 1;
        }
        // Trim to m + 1 while keeping alternation: drop the weaker endpoint
        // when the excess is odd, otherwise the weakest adjacent pair.
        while candidates.len() > m + 1 {
            if (candidates.len() - (m + 1)) % 2 == 1 {
                let first = residual[candidates[0]].abs();
                let last = residual[*candidates.last().unwrap()].abs();
                if first <= last {
                    candidates.remove(0);
                } else {
                    candidates.pop();
                }
            } else {
                let mut best_t = 0;
                let mut best_v = f64::INFINITY;
                for t in 0..candidates.len() - 1 {
                    let v = residual[candidates[t]]
                        .abs()
                        .max(residual[candidates[t + 1]].abs());
                    if v < best_v {
                        best_v = v;
                        best_t = t;
                    }
                }
                candidates.drain(best_t..best_t + 2);
            }
        }

        let max_error = residual.iter().fold(0.0f64, |acc, r| acc.max(r.abs()));
        let leveled_abs = leveled.abs();
        let converged = max_error <= leveled_abs * (1.0 + 1e-10) + 1e-12;
        let degenerate = candidates.len() < m + 1;
        let stalled = candidates == reference;
        if converged || degenerate || stalled {
            let reference_residuals = reference.iter().map(|&idx| residual[idx]).collect();
            return Ok(MinimaxResult {
                approximant: TrigApproximant::new(parity, coef),
                leveled_error: leveled_abs,
                max_error,
                iterations: it,
                reference_residuals,
            });
        }
        reference = candidates;
    }
    Err(Error::NoMinimaxConvergence {
        iterations: MAX_EXCHANGES,
    })
}

/// Interpolates `values` at exactly `basis_dim` collocation `nodes` by an
/// even or odd trigonometric polynomial (square solve, no equioscillation).
pub fn interpolate(
    values: &[f64],
    nodes: &[f64],
    degree: usize,
    parity: Parity,
) -> Result<TrigApproximant> {
    let m = parity.basis_dim(degree);
    if m == 0 {
        return Err(Error::InvalidDimension {
            n: degree,
            reason: "odd interpolation needs degree >= 1",
        });
    }
    if nodes.len() != m || values.len() != m {
        return Err(Error::LengthMismatch {
            expected: m,
            actual: nodes.len().min(values.len()),
        });
    }
    let a = basis_matrix(parity, degree, nodes);
    let rhs = DVector::from_column_slice(values);
    let sol = a.lu().solve(&rhs).ok_or(Error::NumericalFailure {
        context: "interpolation collocation system is singular",
    })?;
    Ok(TrigApproximant::new(parity, sol.as_slice().to_vec()))
}
