//! Real trigonometric polynomials split by parity, and the complex
//! combination used for generating functions of band Toeplitz matrices.
//!
//! A cosine series `a_0 + sum_k a_k cos(kx)` is an even function, a sine
//! series `sum_k b_k sin(kx)` is odd. The symbols handled by this crate have
//! an even real part and an odd imaginary part, so a band symbol is the pair
//! `p(x) = p_1(x) + i p_2(x)` with `p_1` a [`CosineSeries`] and `p_2` a
//! [`SineSeries`]. Products reduce to the same shapes through the
//! product-to-sum identities
//!
//! ```text
//! cos(ix) cos(jx) = (cos((i-j)x) + cos((i+j)x)) / 2
//! sin(ix) sin(jx) = (cos((i-j)x) - cos((i+j)x)) / 2
//! cos(ix) sin(jx) = (sin((j+i)x) + sin((j-i)x)) / 2
//! ```
//!
//! Writing `p` in the exponential basis `p(x) = sum_k t_k e^{ikx}` gives the
//! diagonals of the band Toeplitz matrix `T_n(p)`: `t_0 = a_0`,
//! `t_k = (a_k + b_k)/2` and `t_{-k} = (a_k - b_k)/2` for `k >= 1`, all real.

use num_complex::Complex64;

/// Even real trigonometric polynomial `a_0 + sum_{k>=1} a_k cos(kx)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CosineSeries {
    coeffs: Vec<f64>,
}

impl CosineSeries {
    /// The constant polynomial `c`.
    pub fn constant(c: f64) -> Self {
        Self { coeffs: vec![c] }
    }

    /// Builds the series from `[a_0, a_1, ..., a_d]`.
    pub fn from_coefficients(coeffs: Vec<f64>) -> Self {
        let mut s = Self { coeffs };
        if s.coeffs.is_empty() {
            s.coeffs.push(0.0);
        }
        s.trim();
        s
    }

    /// Coefficient of `cos(kx)` (zero beyond the stored degree).
    pub fn coefficient(&self, k: usize) -> f64 {
        self.coeffs.get(k).copied().unwrap_or(0.0)
    }

    /// Highest stored harmonic.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// All coefficients `[a_0, ..., a_d]`.
    pub fn coefficients(&self) -> &[f64] {
        &self.coeffs
    }

    /// Evaluates the series at `x`.
    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, a)| a * (k as f64 * x).cos())
            .sum()
    }

    /// Product with another cosine series (even times even is even).
    pub fn mul_cos(&self, other: &CosineSeries) -> CosineSeries {
        let mut out = vec![0.0; self.degree() + other.degree() + 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                let half = 0.5 * a * b;
                out[i.abs_diff(j)] += half;
                out[i + j] += half;
            }
        }
        CosineSeries::from_coefficients(out)
    }

    /// Product with a sine series (even times odd is odd).
    pub fn mul_sin(&self, other: &SineSeries) -> SineSeries {
        if other.is_zero() {
            return SineSeries::zero();
        }
        let mut out = vec![0.0; self.degree() + other.degree() + 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (jm1, &b) in other.coeffs.iter().enumerate() {
                let j = jm1 + 1;
                let half = 0.5 * a * b;
                out[i + j - 1] += half;
                if j > i {
                    out[j - i - 1] += half;
                } else if i > j {
                    out[i - j - 1] -= half;
                }
            }
        }
        SineSeries::from_coefficients(out)
    }

    /// Multiplies every coefficient by `s`.
    pub fn scale(&self, s: f64) -> CosineSeries {
        CosineSeries::from_coefficients(self.coeffs.iter().map(|a| a * s).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.len() > 1 && self.coeffs.last() == Some(&0.0) {
            self.coeffs.pop();
        }
    }
}

/// Odd real trigonometric polynomial `sum_{k>=1} b_k sin(kx)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SineSeries {
    /// `coeffs[k-1]` multiplies `sin(kx)`.
    coeffs: Vec<f64>,
}

impl SineSeries {
    /// The zero polynomial.
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    /// Builds the series from `[b_1, ..., b_d]`.
    pub fn from_coefficients(coeffs: Vec<f64>) -> Self {
        let mut s = Self { coeffs };
        s.trim();
        s
    }

    /// Coefficient of `sin(kx)` for `k >= 1`.
    pub fn coefficient(&self, k: usize) -> f64 {
        if k == 0 {
            return 0.0;
        }
        self.coeffs.get(k - 1).copied().unwrap_or(0.0)
    }

    /// Highest stored harmonic (zero for the zero polynomial).
    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    /// All coefficients `[b_1, ..., b_d]`.
    pub fn coefficients(&self) -> &[f64] {
        &self.coeffs
    }

    /// Whether this is the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Evaluates the series at `x`.
    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(jm1, b)| b * ((jm1 + 1) as f64 * x).sin())
            .sum()
    }

    /// Product with another sine series (odd times odd is even).
    pub fn mul_sin(&self, other: &SineSeries) -> CosineSeries {
        if self.is_zero() || other.is_zero() {
            return CosineSeries::constant(0.0);
        }
        let mut out = vec![0.0; self.degree() + other.degree() + 1];
        for (im1, &a) in self.coeffs.iter().enumerate() {
            for (jm1, &b) in other.coeffs.iter().enumerate() {
                let (i, j) = (im1 + 1, jm1 + 1);
                let half = 0.5 * a * b;
                out[i.abs_diff(j)] += half;
                out[i + j] -= half;
            }
        }
        CosineSeries::from_coefficients(out)
    }

    /// Multiplies every coefficient by `s`.
    pub fn scale(&self, s: f64) -> SineSeries {
        SineSeries::from_coefficients(self.coeffs.iter().map(|b| b * s).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0.0) {
            self.coeffs.pop();
        }
    }
}

/// Complex trigonometric polynomial `p_1 + i p_2` with even real part and odd
/// imaginary part — the generating function of a real band Toeplitz matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigPolynomial {
    /// Even (cosine) part `p_1`.
    pub re: CosineSeries,
    /// Odd (sine) part `p_2`.
    pub im: SineSeries,
}

impl TrigPolynomial {
    /// The constant polynomial `c` (real).
    pub fn constant(c: f64) -> Self {
        Self {
            re: CosineSeries::constant(c),
            im: SineSeries::zero(),
        }
    }

    /// A purely real polynomial.
    pub fn from_real(re: CosineSeries) -> Self {
        Self {
            re,
            im: SineSeries::zero(),
        }
    }

    /// Combines an even real part and an odd imaginary part.
    pub fn new(re: CosineSeries, im: SineSeries) -> Self {
        Self { re, im }
    }

    /// Highest harmonic appearing in either part.
    pub fn degree(&self) -> usize {
        self.re.degree().max(self.im.degree())
    }

    /// Whether the imaginary part vanishes identically.
    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Evaluates `p_1(x) + i p_2(x)`.
    pub fn eval(&self, x: f64) -> Complex64 {
        Complex64::new(self.re.eval(x), self.im.eval(x))
    }

    /// Complex product `(p_1 + i p_2)(q_1 + i q_2)`.
    pub fn mul(&self, other: &TrigPolynomial) -> TrigPolynomial {
        let mut re = self.re.mul_cos(&other.re);
        let cross = self.im.mul_sin(&other.im);
        re = CosineSeries::from_coefficients(
            (0..=re.degree().max(cross.degree()))
                .map(|k| re.coefficient(k) - cross.coefficient(k))
                .collect(),
        );
        let im1 = self.re.mul_sin(&other.im);
        let im2 = other.re.mul_sin(&self.im);
        let d = im1.degree().max(im2.degree());
        let im = SineSeries::from_coefficients(
            (1..=d).map(|k| im1.coefficient(k) + im2.coefficient(k)).collect(),
        );
        TrigPolynomial { re, im }
    }

    /// Diagonals `t_{-d}, ..., t_0, ..., t_d` of the band Toeplitz matrix
    /// generated by this polynomial: `p(x) = sum_k t_k e^{ikx}` with
    /// `t_k = (a_k + b_k)/2` and `t_{-k} = (a_k - b_k)/2`.
    pub fn band_coefficients(&self) -> Vec<f64> {
        let d = self.degree();
        let mut t = vec![0.0; 2 * d + 1];
        t[d] = self.re.coefficient(0);
        for k in 1..=d {
            let a = self.re.coefficient(k);
            let b = self.im.coefficient(k);
            t[d + k] = 0.5 * (a + b);
            t[d - k] = 0.5 * (a - b);
        }
        t
    }
}
