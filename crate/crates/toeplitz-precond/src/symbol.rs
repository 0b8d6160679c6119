//! Generating functions of Toeplitz matrices.
//!
//! A generating function is a `2pi`-periodic complex-valued function on
//! `(-pi, pi]` whose Fourier coefficients
//!
//! ```text
//! t_k = (1/2pi) int_{-pi}^{pi} f(x) e^{-ikx} dx
//! ```
//!
//! fill the diagonals of `T_n(f) = [t_{j-q}]`. Every symbol in scope has an
//! even real part and an odd imaginary part, which makes all `t_k` real and
//! `T_n(f)` a real matrix whose symmetric part is generated by `Re f`.
//!
//! A symbol is stored as an ordered list of smooth pieces covering the
//! period, so that piecewise definitions (triangular and sawtooth-like
//! imaginary parts) integrate piece by piece with correct one-sided limits at
//! the breakpoints.

use crate::error::{Error, Result};
use crate::quadrature::piece_fourier_integrals;
use num_complex::Complex64;
use std::f64::consts::PI;
use std::sync::Arc;

/// Closure type of one smooth piece.
pub type PieceFn = Arc<dyn Fn(f64) -> Complex64 + Send + Sync>;

/// One smooth piece of a generating function on the closed interval
/// `[a, b]`; evaluating the closure at `a` or `b` must return the one-sided
/// limit from inside the interval.
#[derive(Clone)]
pub struct Piece {
    /// Left endpoint.
    pub a: f64,
    /// Right endpoint.
    pub b: f64,
    /// Smooth extension of the function to `[a, b]`.
    pub f: PieceFn,
}

impl std::fmt::Debug for Piece {
    fn fmt(&self, fm: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        fm.debug_struct("Piece")
            .field("a", &self.a)
            .field("b", &self.b)
            .finish()
    }
}

/// A piecewise-smooth generating function on `(-pi, pi]`.
#[derive(Debug, Clone)]
pub struct GeneratingSymbol {
    pieces: Vec<Piece>,
}

impl GeneratingSymbol {
    /// A symbol that is smooth on the whole period.
    pub fn smooth(f: impl Fn(f64) -> Complex64 + Send + Sync + 'static) -> Self {
        Self {
            pieces: vec![Piece {
                a: -PI,
                b: PI,
                f: Arc::new(f),
            }],
        }
    }

    /// Builds a symbol from explicit pieces. The pieces must be ordered,
    /// contiguous and cover exactly `[-pi, pi]`.
    pub fn from_pieces(pieces: Vec<Piece>) -> Result<Self> {
        if pieces.is_empty() {
            return Err(Error::BadPieces {
                reason: "no pieces",
            });
        }
        let eps = 1e-12;
        if (pieces[0].a + PI).abs() > eps {
            return Err(Error::BadPieces {
                reason: "first piece must start at -pi",
            });
        }
        if (pieces[pieces.len() - 1].b - PI).abs() > eps {
            return Err(Error::BadPieces {
                reason: "last piece must end at pi",
            });
        }
        for w in pieces.windows(2) {
            if (w[0].b - w[1].a).abs() > eps {
                return Err(Error::BadPieces {
                    reason: "pieces must be contiguous",
                });
            }
        }
        for p in &pieces {
            if !(p.b > p.a) {
                return Err(Error::BadPieces {
                    reason: "pieces must have positive length",
                });
            }
        }
        Ok(Self { pieces })
    }

    /// The smooth pieces.
    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    /// Interior breakpoints (piece boundaries strictly inside the period).
    pub fn breakpoints(&self) -> Vec<f64> {
        self.pieces[..self.pieces.len() - 1]
            .iter()
            .map(|p| p.b)
            .collect()
    }

    /// Evaluates the symbol at `x` (folded into `(-pi, pi]`). At an interior
    /// breakpoint the left piece wins, matching half-open piecewise
    /// definitions of the form `(a, b]`.
    pub fn eval(&self, x: f64) -> Complex64 {
        let mut y = (x + PI).rem_euclid(2.0 * PI) - PI;
        if y == -PI {
            y = PI;
        }
        for p in &self.pieces {
            if y <= p.b + 1e-15 {
                return (p.f)(y);
            }
        }
        let last = &self.pieces[self.pieces.len() - 1];
        (last.f)(y)
    }

    /// Fourier coefficients `t_{-k_max}, ..., t_{k_max}` computed by
    /// piecewise Filon-Simpson quadrature with at least
    /// `max(2^16, 64 (k_max + 1))` samples per smooth piece. The imaginary
    /// residue (which must vanish for an even-real/odd-imaginary symbol) is
    /// checked and dropped.
    pub fn fourier_coefficients(&self, k_max: usize) -> Result<Vec<f64>> {
        let samples = 65_536usize.max(64 * (k_max + 1));
        let mut acc = vec![Complex64::new(0.0, 0.0); 2 * k_max + 1];
        for p in &self.pieces {
            let part = piece_fourier_integrals(p.f.as_ref(), p.a, p.b, k_max, samples);
            for (t, v) in acc.iter_mut().zip(part) {
                *t += v;
            }
        }
        let scale = 1.0 / (2.0 * PI);
        let mut out = Vec::with_capacity(acc.len());
        let mut max_re: f64 = 1.0;
        let mut max_im: f64 = 0.0;
        for t in &acc {
            max_re = max_re.max(t.re.abs() * scale);
            max_im = max_im.max(t.im.abs() * scale);
        }
        if max_im > 1e-8 * max_re {
            return Err(Error::NumericalFailure {
                context: "Fourier coefficients have a non-vanishing imaginary part \
                          (symbol is not even-real/odd-imaginary)",
            });
        }
        for t in acc {
            out.push(t.re * scale);
        }
        Ok(out)
    }
}
