//! LU factorization of banded matrices with partial pivoting.
//!
//! A band matrix with `m1` subdiagonals and `m2` superdiagonals is stored
//! compactly: row `i` of the storage holds the band entries of matrix row
//! `i`, so `storage[i][j]` is `A[i, i - m1 + j]` for `j = 0..m1 + m2`.
//! Partial pivoting can widen the upper bandwidth to `m1 + m2`, which the
//! compact layout already accommodates. Factorization costs `O(n m1 (m1 +
//! m2))` and each solve `O(n (m1 + m2))`, so a banded Toeplitz
//! preconditioner `T_n(g)` of fixed bandwidth is applied in `O(n)`.

use crate::error::{Error, Result};

/// LU factorization of a band matrix, ready for repeated solves.
#[derive(Debug, Clone)]
pub struct BandedLu {
    n: usize,
    m1: usize,
    width: usize,
    /// Row-major `n x (m1 + m2 + 1)` upper factor (post-pivot band rows).
    upper: Vec<f64>,
    /// Row-major `n x m1` multipliers.
    lower: Vec<f64>,
    /// Row swapped with row `k` at elimination step `k`.
    pivots: Vec<usize>,
}

impl BandedLu {
    /// Factors the band matrix whose compact rows are supplied by `entry`:
    /// `entry(i, k)` must return `A[i, i + k]` for `-m1 <= k <= m2` (zero
    /// outside the matrix).
    pub fn factor(
        n: usize,
        m1: usize,
        m2: usize,
        entry: impl Fn(usize, i64) -> f64,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidDimension {
                n,
                reason: "matrix dimension must be positive",
            });
        }
        let width = m1 + m2 + 1;
        let mut upper = vec![0.0f64; n * width];
        for i in 0..n {
            for j in 0..width {
                let col = i as i64 - m1 as i64 + j as i64;
                if col >= 0 && (col as usize) < n {
                    upper[i * width + j] = entry(i, col - i as i64);
                }
            }
        }
        // Shift the leading rows left so every stored row starts at its
        // first potentially nonzero entry.
        for i in 0..m1.min(n) {
            let l = m1 - i;
            for j in l..width {
                upper[i * width + j - l] = upper[i * width + j];
            }
            for j in width - l..width {
                upper[i * width + j] = 0.0;
            }
        }

        let mut lower = vec![0.0f64; n * m1];
        let mut pivots = vec![0usize; n];
        for k in 0..n {
            let reach = (k + m1 + 1).min(n);
            let mut piv = k;
            let mut piv_abs = upper[k * width].abs();
            for i in k + 1..reach {
                let a = upper[i * width].abs();
                if a > piv_abs {
                    piv_abs = a;
                    piv = i;
                }
            }
            pivots[k] = piv;
            if piv_abs == 0.0 {
                return Err(Error::ZeroPivot { index: k });
            }
            if piv != k {
                for j in 0..width {
                    upper.swap(k * width + j, piv * width + j);
                }
            }
            let pivot = upper[k * width];
            for i in k + 1..reach {
                let mult = upper[i * width] / pivot;
                lower[k * m1 + (i - k - 1)] = mult;
                for j in 1..width {
                    upper[i * width + j - 1] = upper[i * width + j] - mult * upper[k * width + j];
                }
                upper[i * width + width - 1] = 0.0;
            }
        }
        Ok(Self {
            n,
            m1,
            width,
            upper,
            lower,
            pivots,
        })
    }

    /// Factors the banded Toeplitz matrix `T_n(g)` given the band
    /// coefficients `[t_{-d}, ..., t_d]` of `g`. Requires `n > 2d` so the
    /// band structure is meaningful.
    pub fn factor_toeplitz_band(band: &[f64], n: usize) -> Result<Self> {
        if band.is_empty() || band.len() % 2 == 0 {
            return Err(Error::LengthMismatch {
                expected: band.len() | 1,
                actual: band.len(),
            });
        }
        let d = (band.len() - 1) / 2;
        if n <= 2 * d {
            return Err(Error::BandTooWide { bandwidth: d, n });
        }
        // Entry (i, i + k) of T_n equals t_{-k}.
        Self::factor(n, d, d, |_i, k| band[(d as i64 - k) as usize])
    }

    /// Matrix dimension.
    pub fn dim(&self) -> usize {
        self.n
    }

    /// Solves `A x = b` in place.
    pub fn solve_in_place(&self, b: &mut [f64]) -> Result<()> {
        if b.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                actual: b.len(),
            });
        }
        let (n, m1, width) = (self.n, self.m1, self.width);
        for k in 0..n {
            let piv = self.pivots[k];
            if piv != k {
                b.swap(k, piv);
            }
            let reach = (k + m1 + 1).min(n);
            for i in k + 1..reach {
                b[i] -= self.lower[k * m1 + (i - k - 1)] * b[k];
            }
        }
        for i in (0..n).rev() {
            let mut acc = b[i];
            let reach = width.min(n - i);
            for j in 1..reach {
                acc -= self.upper[i * width + j] * b[i + j];
            }
            b[i] = acc / self.upper[i * width];
        }
        Ok(())
    }

    /// Solves `A x = b`, returning the solution.
    pub fn solve(&self, b: &[f64]) -> Result<Vec<f64>> {
        let mut x = b.to_vec();
        self.solve_in_place(&mut x)?;
        Ok(x)
    }
}
