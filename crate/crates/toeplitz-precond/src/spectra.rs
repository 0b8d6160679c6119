//! Dense spectra of preconditioned Toeplitz matrices.
//!
//! The clustering theory behind banded and circulant preconditioners makes
//! quantitative predictions: for a banded preconditioner built from a
//! degree-`d` minimax correction with leveled error `epsilon`, all but
//! `O(d)` eigenvalues of `B^{-1} T_n` lie in the disk `|z - 1| <= epsilon`
//! and all but a few singular values in the interval
//! `[1 - epsilon - O(epsilon^2), 1 + epsilon + O(epsilon^2)]`; circulant
//! preconditioners cluster the spectrum at `1` with `o(n)` outliers. This
//! module materializes `M^{-1} T_n` densely (for moderate `n`), computes
//! its eigenvalues and singular values with dense factorizations, and
//! counts how many fall outside a prescribed cluster.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::precond::Preconditioner;
use crate::toeplitz::ToeplitzMatrix;

/// Largest dimension for which dense spectra are computed.
pub const MAX_DENSE_DIM: usize = 1024;

/// Materializes `M^{-1} T_n` column by column.
pub fn preconditioned_matrix(
    t: &ToeplitzMatrix,
    m: &dyn Preconditioner,
) -> Result<DMatrix<f64>> {
    let n = t.dim();
    if m.dim() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            actual: m.dim(),
        });
    }
    if n > MAX_DENSE_DIM {
        return Err(Error::InvalidDimension {
            n,
            reason: "dense spectra are limited to n <= 1024",
        });
    }
    let mut dense = DMatrix::zeros(n, n);
    for j in 0..n {
        let column = m.apply_inverse(&t.column(j))?;
        for (i, v) in column.iter().enumerate() {
            dense[(i, j)] = *v;
        }
    }
    Ok(dense)
}

/// Eigenvalues of a real matrix, sorted by real part then imaginary part.
pub fn eigenvalues(matrix: &DMatrix<f64>) -> Vec<Complex64> {
    let eigs = matrix.clone().complex_eigenvalues();
    let mut out: Vec<Complex64> = eigs.iter().map(|e| Complex64::new(e.re, e.im)).collect();
    out.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    out
}

/// Singular values of a real matrix in descending order.
pub fn singular_values(matrix: &DMatrix<f64>) -> Result<Vec<f64>> {
    let svd = matrix
        .clone()
        .try_svd(false, false, 1e-13, 10_000)
        .ok_or(Error::NumericalFailure {
            context: "singular value iteration did not converge",
        })?;
    let mut out: Vec<f64> = svd.singular_values.iter().copied().collect();
    out.sort_by(|a, b| b.total_cmp(a));
    Ok(out)
}

/// How much of a spectrum falls inside a prescribed cluster.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClusterStats {
    /// Number of spectrum points examined.
    pub total: usize,
    /// Points inside the cluster (boundary inclusive).
    pub inside: usize,
    /// Points outside the cluster.
    pub outliers: usize,
}

/// Counts eigenvalues inside the closed disk `|z - center| <= radius`.
pub fn eigenvalue_cluster(
    eigenvalues: &[Complex64],
    center: Complex64,
    radius: f64,
) -> ClusterStats {
    let inside = eigenvalues
        .iter()
        .filter(|z| (*z - center).norm() <= radius)
        .count();
    ClusterStats {
        total: eigenvalues.len(),
        inside,
        outliers: eigenvalues.len() - inside,
    }
}

/// Counts singular values inside the closed interval `[lo, hi]`.
pub fn singular_value_cluster(singular_values: &[f64], lo: f64, hi: f64) -> ClusterStats {
    let inside = singular_values
        .iter()
        .filter(|&&s| s >= lo && s <= hi)
        .count();
    ClusterStats {
        total: singular_values.len(),
        inside,
        outliers: singular_values.len() - inside,
    }
}

/// Renders eigenvalues as CSV with header `re,im`, using the shortest
/// representation that round-trips each value.
pub fn eigenvalues_csv(eigenvalues: &[Complex64]) -> String {
    let mut out = String::from("re,im\n");
    for z in eigenvalues {
        out.push_str(&format!("{},{}\n", z.re, z.im));
    }
    out
}

/// Renders singular values as CSV with header `sigma`.
pub fn singular_values_csv(singular_values: &[f64]) -> String {
    let mut out = String::from("sigma\n");
    for s in singular_values {
        out.push_str(&format!("{}\n", s));
    }
    out
}
