//! Preconditioned Krylov solvers: GMRES and CGN.
//!
//! Both solvers apply the preconditioner from the left and start from
//! `x_0 = 0`, so the system actually iterated on is `M^{-1} A x = M^{-1} b`
//! and convergence is measured on the residual of that system — the
//! quantity each method itself drives down:
//!
//! * **PGMRES** runs Arnoldi with modified Gram-Schmidt on `M^{-1} A` and
//!   reduces the Hessenberg matrix with Givens rotations; the rotated
//!   right-hand side yields the preconditioned residual norm
//!   `||M^{-1}(b - A x_k)||` at every step without forming the iterate,
//!   which is assembled once at termination. The stopping test is
//!   `||M^{-1}(b - A x_k)|| / ||M^{-1} b|| <= tol`. No restarting:
//!   iteration counts are those of full GMRES.
//! * **PCGN** is CG on the normal equations of the preconditioned system
//!   (CGNR applied to `M^{-1} A x = M^{-1} b`), requiring products with
//!   `A^T` and `M^{-T}`. As in any CG loop, the residual of the system CG
//!   actually solves — the normal-equations residual
//!   `z_k = (M^{-1} A)^T M^{-1} (b - A x_k)` — is what the recurrence
//!   tracks, and the stopping test is `||z_k|| / ||z_0|| <= tol`.
//!
//! A solver that exhausts `max_iters` returns normally with
//! `converged = false`; hard failures (stagnation through an invariant
//! subspace without convergence, NaN arithmetic) are errors. The quality of
//! the final iterate itself is judged separately by [`solve_experiment`],
//! which measures `||x - 1||_inf` against the known solution.

use crate::error::{Error, Result};
use crate::precond::Preconditioner;
use crate::toeplitz::ToeplitzMatrix;

/// Stopping controls shared by the solvers.
#[derive(Debug, Clone, Copy)]
pub struct SolveOptions {
    /// Relative residual target, measured on the preconditioned system:
    /// `||M^{-1}(b - A x)|| / ||M^{-1} b||` for GMRES, and the
    /// normal-equations residual ratio `||z_k|| / ||z_0||` for CGN.
    pub tol: f64,
    /// Iteration cap; reaching it is reported, not an error.
    pub max_iters: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            tol: 1e-6,
            max_iters: 500,
        }
    }
}

/// Result of a solver run.
#[derive(Debug, Clone)]
pub struct SolveOutcome {
    /// Final iterate.
    pub x: Vec<f64>,
    /// Iterations performed.
    pub iterations: usize,
    /// Whether the residual target was met within `max_iters`.
    pub converged: bool,
    /// Preconditioned relative residual after each iteration.
    pub residual_history: Vec<f64>,
}

/// Which Krylov solver to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KrylovMethod {
    /// Full preconditioned GMRES.
    Gmres,
    /// CG on the preconditioned normal equations.
    Cgn,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn axpy(y: &mut [f64], alpha: f64, x: &[f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

/// Solves the triangular least-squares system accumulated by the Givens
/// rotations and combines the Arnoldi basis into the iterate.
fn form_iterate(r_columns: &[Vec<f64>], rhs: &[f64], basis: &[Vec<f64>], n: usize) -> Vec<f64> {
    let k = r_columns.len();
    let mut y = vec![0.0; k];
    for i in (0..k).rev() {
        let mut acc = rhs[i];
        for (l, yl) in y.iter().enumerate().take(k).skip(i + 1) {
            acc -= r_columns[l][i] * yl;
        }
        y[i] = acc / r_columns[i][i];
    }
    let mut x = vec![0.0; n];
    for (i, &yi) in y.iter().enumerate() {
        axpy(&mut x, yi, &basis[i]);
    }
    x
}

/// Left-preconditioned full GMRES for `A x = b`.
pub fn pgmres(
    a: &ToeplitzMatrix,
    m: &dyn Preconditioner,
    b: &[f64],
    opts: &SolveOptions,
) -> Result<SolveOutcome> {
    let n = a.dim();
    if b.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            actual: b.len(),
        });
    }
    let b_norm = norm(b);
    if b_norm == 0.0 {
        return Ok(SolveOutcome {
            x: vec![0.0; n],
            iterations: 0,
            converged: true,
            residual_history: Vec::new(),
        });
    }

    let z0 = m.apply_inverse(b)?;
    let beta = norm(&z0);
    if !beta.is_finite() {
        return Err(Error::NumericalFailure {
            context: "preconditioned right-hand side is not finite",
        });
    }
    let mut basis: Vec<Vec<f64>> = vec![z0.iter().map(|v| v / beta).collect()];
    let mut r_columns: Vec<Vec<f64>> = Vec::new();
    let mut givens: Vec<(f64, f64)> = Vec::new();
    let mut rhs = vec![beta];
    let mut history = Vec::new();

    for j in 0..opts.max_iters {
        let mut w = m.apply_inverse(&a.matvec(&basis[j])?)?;
        let mut column = Vec::with_capacity(j + 2);
        for v in basis.iter() {
            let h = dot(&w, v);
            column.push(h);
            axpy(&mut w, -h, v);
        }
        let h_next = norm(&w);
        if !h_next.is_finite() || column.iter().any(|h| !h.is_finite()) {
            return Err(Error::NumericalFailure {
                context: "gmres produced a non-finite Hessenberg entry",
            });
        }

        for (i, &(c, s)) in givens.iter().enumerate() {
            let t = c * column[i] + s * column[i + 1];
            column[i + 1] = -s * column[i] + c * column[i + 1];
            column[i] = t;
        }
        let scale = column
            .iter()
            .fold(0.0f64, |acc, h| acc.max(h.abs()))
            .max(h_next);
        let happy = h_next <= 1e-13 * scale;

        let rho = column[j].hypot(h_next);
        if rho == 0.0 {
            // The new direction contributed nothing and the projected system
            // is singular: the residual cannot decrease any further.
            return Err(Error::Breakdown {
                method: "gmres",
                iteration: j + 1,
            });
        }
        let (c, s) = (column[j] / rho, h_next / rho);
        column[j] = rho;
        givens.push((c, s));
        rhs.push(-s * rhs[j]);
        rhs[j] *= c;
        r_columns.push(column);

        // The rotated right-hand side tail is the preconditioned residual
        // norm of the k-th least-squares iterate.
        let k = j + 1;
        let relative = rhs[k].abs() / beta;
        if !relative.is_finite() {
            return Err(Error::NumericalFailure {
                context: "gmres residual is not finite",
            });
        }
        history.push(relative);
        if relative <= opts.tol {
            return Ok(SolveOutcome {
                x: form_iterate(&r_columns, &rhs, &basis, n),
                iterations: k,
                converged: true,
                residual_history: history,
            });
        }
        if happy {
            // The Krylov space became invariant without reaching the target.
            return Err(Error::Breakdown {
                method: "gmres",
                iteration: k,
            });
        }
        basis.push(w.iter().map(|v| v / h_next).collect());
    }

    // Out of iterations: return the last iterate anyway.
    Ok(SolveOutcome {
        x: form_iterate(&r_columns, &rhs, &basis, n),
        iterations: opts.max_iters,
        converged: false,
        residual_history: history,
    })
}

/// CG on the normal equations of the left-preconditioned system.
pub fn pcgn(
    a: &ToeplitzMatrix,
    m: &dyn Preconditioner,
    b: &[f64],
    opts: &SolveOptions,
) -> Result<SolveOutcome> {
    let n = a.dim();
    if b.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            actual: b.len(),
        });
    }
    let b_norm = norm(b);
    if b_norm == 0.0 {
        return Ok(SolveOutcome {
            x: vec![0.0; n],
            iterations: 0,
            converged: true,
            residual_history: Vec::new(),
        });
    }

    let mut x = vec![0.0; n];
    let mut r = m.apply_inverse(b)?;
    let mut z = a.matvec_transpose(&m.apply_inverse_transpose(&r)?)?;
    let mut gamma = dot(&z, &z);
    let gamma0 = gamma;
    if !gamma0.is_finite() {
        return Err(Error::NumericalFailure {
            context: "preconditioned normal-equations residual is not finite",
        });
    }
    let mut p = z.clone();
    let mut history = Vec::new();

    for k in 1..=opts.max_iters {
        let ap = a.matvec(&p)?;
        let w = m.apply_inverse(&ap)?;
        let curvature = dot(&w, &w);
        if !curvature.is_finite() {
            return Err(Error::NumericalFailure {
                context: "cgn curvature is not finite",
            });
        }
        if curvature == 0.0 {
            return Err(Error::Breakdown {
                method: "cgn",
                iteration: k,
            });
        }
        let alpha = gamma / curvature;
        axpy(&mut x, alpha, &p);
        axpy(&mut r, -alpha, &w);
        z = a.matvec_transpose(&m.apply_inverse_transpose(&r)?)?;
        let gamma_next = dot(&z, &z);
        let rel = (gamma_next / gamma0).sqrt();
        if !rel.is_finite() {
            return Err(Error::NumericalFailure {
                context: "cgn residual is not finite",
            });
        }
        history.push(rel);
        if rel <= opts.tol {
            return Ok(SolveOutcome {
                x,
                iterations: k,
                converged: true,
                residual_history: history,
            });
        }
        let beta = gamma_next / gamma;
        gamma = gamma_next;
        for i in 0..n {
            p[i] = z[i] + beta * p[i];
        }
    }

    Ok(SolveOutcome {
        x,
        iterations: opts.max_iters,
        converged: false,
        residual_history: history,
    })
}

/// Right-hand side of a reproduction run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RightHandSide {
    /// `b = T 1`, so the exact solution is the all-ones vector.
    ToeplitzTimesOnes,
    /// `b = 1` (exact solution unknown).
    Ones,
}

/// A solver run under the reproduction protocol.
#[derive(Debug, Clone)]
pub struct ExperimentOutcome {
    /// The raw solver outcome.
    pub outcome: SolveOutcome,
    /// `||x - 1||_inf` when the exact solution is the all-ones vector.
    pub error_inf: Option<f64>,
}

/// Runs one solver experiment: build the right-hand side, solve from zero,
/// and measure the error against the known solution when there is one.
pub fn solve_experiment(
    a: &ToeplitzMatrix,
    m: &dyn Preconditioner,
    method: KrylovMethod,
    rhs: RightHandSide,
    opts: &SolveOptions,
) -> Result<ExperimentOutcome> {
    let ones = vec![1.0; a.dim()];
    let b = match rhs {
        RightHandSide::ToeplitzTimesOnes => a.matvec(&ones)?,
        RightHandSide::Ones => ones,
    };
    let outcome = match method {
        KrylovMethod::Gmres => pgmres(a, m, &b, opts)?,
        KrylovMethod::Cgn => pcgn(a, m, &b, opts)?,
    };
    let error_inf = match rhs {
        RightHandSide::ToeplitzTimesOnes => Some(
            outcome
                .x
                .iter()
                .fold(0.0f64, |acc, &v| acc.max((v - 1.0).abs())),
        ),
        RightHandSide::Ones => None,
    };
    Ok(ExperimentOutcome { outcome, error_inf })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::precond::{BandPreconditioner, IdentityPreconditioner};
    use crate::trig::{CosineSeries, SineSeries, TrigPolynomial};
    use approx::assert_relative_eq;
    use nalgebra::DVector;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn band_toeplitz(band: &[f64], n: usize) -> ToeplitzMatrix {
        let d = (band.len() - 1) / 2;
        let mut diags = vec![0.0; 2 * n - 1];
        for (i, &t) in band.iter().enumerate() {
            diags[n - 1 - d + i] = t;
        }
        ToeplitzMatrix::from_diagonals(diags, n).unwrap()
    }

    #[test]
    fn gmres_matches_a_dense_solve() {
        let n = 24;
        let a = band_toeplitz(&[-1.5, 0.3, 4.0, -0.2, 0.7], n);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let b: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let opts = SolveOptions {
            tol: 1e-12,
            max_iters: 200,
        };
        let id = IdentityPreconditioner::new(n);
        let got = pgmres(&a, &id, &b, &opts).unwrap();
        assert!(got.converged);
        let expect = a
            .to_dense()
            .lu()
            .solve(&DVector::from_column_slice(&b))
            .unwrap();
        for i in 0..n {
            assert_relative_eq!(got.x[i], expect[i], epsilon = 1e-9, max_relative = 1e-8);
        }
    }

    #[test]
    fn cgn_matches_a_dense_solve() {
        let n = 24;
        let a = band_toeplitz(&[0.5, -1.0, 5.0, 1.2, -0.4], n);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let b: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let opts = SolveOptions {
            tol: 1e-12,
            max_iters: 500,
        };
        let id = IdentityPreconditioner::new(n);
        let got = pcgn(&a, &id, &b, &opts).unwrap();
        assert!(got.converged);
        let expect = a
            .to_dense()
            .lu()
            .solve(&DVector::from_column_slice(&b))
            .unwrap();
        for i in 0..n {
            assert_relative_eq!(got.x[i], expect[i], epsilon = 1e-8, max_relative = 1e-7);
        }
    }

    #[test]
    fn exact_preconditioner_converges_in_one_iteration() {
        let g = TrigPolynomial::new(
            CosineSeries::from_coefficients(vec![2.5, -2.0]),
            SineSeries::from_coefficients(vec![1.0]),
        );
        let n = 50;
        let a = band_toeplitz(&g.band_coefficients(), n);
        let m = BandPreconditioner::new(g, n).unwrap();
        let opts = SolveOptions::default();

        let run = solve_experiment(
            &a,
            &m,
            KrylovMethod::Gmres,
            RightHandSide::ToeplitzTimesOnes,
            &opts,
        )
        .unwrap();
        assert!(run.outcome.converged);
        assert_eq!(run.outcome.iterations, 1);
        assert!(run.error_inf.unwrap() < 1e-9);

        let run = solve_experiment(
            &a,
            &m,
            KrylovMethod::Cgn,
            RightHandSide::ToeplitzTimesOnes,
            &opts,
        )
        .unwrap();
        assert!(run.outcome.converged);
        assert_eq!(run.outcome.iterations, 1);
        assert!(run.error_inf.unwrap() < 1e-9);
    }

    #[test]
    fn singular_operator_reports_breakdown() {
        let n = 8;
        let a = ToeplitzMatrix::from_diagonals(vec![0.0; 2 * n - 1], n).unwrap();
        let id = IdentityPreconditioner::new(n);
        let b = vec![1.0; n];
        let err = pgmres(&a, &id, &b, &SolveOptions::default()).unwrap_err();
        assert!(matches!(err, Error::Breakdown { method: "gmres", .. }));
        let err = pcgn(&a, &id, &b, &SolveOptions::default()).unwrap_err();
        assert!(matches!(err, Error::Breakdown { method: "cgn", .. }));
    }

    #[test]
    fn iteration_cap_is_reported_not_fatal() {
        let n = 48;
        // An indefinite, badly scaled band matrix that full GMRES cannot
        // solve in two steps.
        let a = band_toeplitz(&[3.0, -1.0, 0.02, 1.0, 2.0], n);
        let id = IdentityPreconditioner::new(n);
        let b: Vec<f64> = (0..n).map(|i| (i as f64 * 0.7).sin()).collect();
        let opts = SolveOptions {
            tol: 1e-14,
            max_iters: 2,
        };
        let got = pgmres(&a, &id, &b, &opts).unwrap();
        assert!(!got.converged);
        assert_eq!(got.iterations, 2);
        assert_eq!(got.residual_history.len(), 2);
    }

    #[test]
    fn zero_right_hand_side_returns_zero() {
        let n = 6;
        let a = band_toeplitz(&[1.0, 2.0, 1.0], n);
        let id = IdentityPreconditioner::new(n);
        let got = pgmres(&a, &id, &vec![0.0; n], &SolveOptions::default()).unwrap();
        assert!(got.converged);
        assert_eq!(got.iterations, 0);
        assert!(got.x.iter().all(|&v| v == 0.0));
    }
}
