//! Real Toeplitz matrices with FFT-based products.
//!
//! `T_n(f) = [t_{j-q}]_{j,q=1..n}` is stored by its `2n - 1` diagonals
//! `t_{-(n-1)}, ..., t_{n-1}` (positive index = subdiagonal). Products use
//! the standard circulant embedding: `T_n` sits in the leading block of the
//! circulant of order `L = nextpow2(2n)` whose first column is
//!
//! ```text
//! [t_0, t_1, ..., t_{n-1}, 0, ..., 0, t_{-(n-1)}, ..., t_{-1}],
//! ```
//!
//! so `T x` and `T^T x` cost two length-`L` FFTs each; the transpose product
//! multiplies by the conjugate spectrum (the embedding column is real).

use crate::error::{Error, Result};
use crate::symbol::GeneratingSymbol;
use nalgebra::DMatrix;
use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use std::sync::Arc;

/// Real Toeplitz matrix stored by diagonals, with cached FFT plans for fast
/// products.
#[derive(Clone)]
pub struct ToeplitzMatrix {
    n: usize,
    diagonals: Vec<f64>,
    spectrum: Vec<Complex64>,
    fft_len: usize,
    fwd: Arc<dyn Fft<f64>>,
    inv: Arc<dyn Fft<f64>>,
}

impl std::fmt::Debug for ToeplitzMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ToeplitzMatrix")
            .field("n", &self.n)
            .field("fft_len", &self.fft_len)
            .finish()
    }
}

impl ToeplitzMatrix {
    /// Builds `T_n(f)` from the `2n - 1` diagonals
    /// `[t_{-(n-1)}, ..., t_0, ..., t_{n-1}]`.
    pub fn from_diagonals(diagonals: Vec<f64>, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidDimension {
                n,
                reason: "matrix dimension must be positive",
            });
        }
        if diagonals.len() != 2 * n - 1 {
            return Err(Error::LengthMismatch {
                expected: 2 * n - 1,
                actual: diagonals.len(),
            });
        }
        let fft_len = (2 * n).next_power_of_two();
        let mut col = vec![Complex64::new(0.0, 0.0); fft_len];
        for k in 0..n {
            col[k] = Complex64::new(diagonals[n - 1 + k], 0.0);
        }
        for k in 1..n {
            col[fft_len - k] = Complex64::new(diagonals[n - 1 - k], 0.0);
        }
        let mut planner = FftPlanner::new();
        let fwd = planner.plan_fft_forward(fft_len);
        let inv = planner.plan_fft_inverse(fft_len);
        fwd.process(&mut col);
        Ok(Self {
            n,
            diagonals,
            spectrum: col,
            fft_len,
            fwd,
            inv,
        })
    }

    /// Builds `T_n(f)` from a generating function by quadrature.
    pub fn from_symbol(symbol: &GeneratingSymbol, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidDimension {
                n,
                reason: "matrix dimension must be positive",
            });
        }
        let diags = symbol.fourier_coefficients(n - 1)?;
        Self::from_diagonals(diags, n)
    }

    /// Matrix dimension.
    pub fn dim(&self) -> usize {
        self.n
    }

    /// The diagonals `[t_{-(n-1)}, ..., t_{n-1}]`.
    pub fn diagonals(&self) -> &[f64] {
        &self.diagonals
    }

    /// Diagonal `t_k` (zero outside the stored range).
    pub fn diagonal(&self, k: i64) -> f64 {
        let idx = self.n as i64 - 1 + k;
        if idx < 0 || idx >= self.diagonals.len() as i64 {
            0.0
        } else {
            self.diagonals[idx as usize]
        }
    }

    fn embedded_product(&self, x: &[f64], conjugate: bool) -> Result<Vec<f64>> {
        if x.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                actual: x.len(),
            });
        }
        let mut buf = vec![Complex64::new(0.0, 0.0); self.fft_len];
        for (b, &v) in buf.iter_mut().zip(x.iter()) {
            *b = Complex64::new(v, 0.0);
        }
        self.fwd.process(&mut buf);
        if conjugate {
            for (b, s) in buf.iter_mut().zip(self.spectrum.iter()) {
                *b *= s.conj();
            }
        } else {
            for (b, s) in buf.iter_mut().zip(self.spectrum.iter()) {
                *b *= s;
            }
        }
        self.inv.process(&mut buf);
        let scale = 1.0 / self.fft_len as f64;
        Ok(buf[..self.n].iter().map(|c| c.re * scale).collect())
    }

    /// `T x` in `O(n log n)`.
    pub fn matvec(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.embedded_product(x, false)
    }

    /// `T^T x` in `O(n log n)`.
    pub fn matvec_transpose(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.embedded_product(x, true)
    }

    /// Column `j` of `T` (reads straight from the diagonals).
    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.n)
            .map(|i| self.diagonals[self.n - 1 + i - j])
            .collect()
    }

    /// Dense copy of the matrix.
    pub fn to_dense(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.n, self.n, |i, j| self.diagonals[self.n - 1 + i - j])
    }
}
