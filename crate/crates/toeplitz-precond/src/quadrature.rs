//! Oscillatory quadrature for Fourier coefficients of piecewise-smooth
//! functions.
//!
//! The coefficients `t_k = (1/2pi) \int_{-pi}^{pi} f(x) e^{-ikx} dx` are
//! needed for `|k|` up to the matrix dimension, where plain composite rules
//! lose all accuracy (their error grows like `(kh)^4`). Each smooth piece is
//! integrated with the composite Filon-Simpson rule instead: on a panel
//! `[c-h, c+h]` the quadratic through the three samples is integrated against
//! the kernel exactly,
//!
//! ```text
//! int_{c-h}^{c+h} f(x) e^{-ikx} dx ~ h e^{-ikc} (w_-(th) f(c-h) + w_0(th) f(c) + w_+(th) f(c+h))
//! ```
//!
//! with `th = kh` and weights
//!
//! ```text
//! w_-+(th) = E(th) +- i O(th),      w_0(th) = 4 (sin th - th cos th) / th^3,
//! E(th) = (th^2 sin th + 2 th cos th - 2 sin th) / th^3,
//! O(th) = (sin th - th cos th) / th^2,
//! ```
//!
//! which reduce to Simpson's 1/3, 4/3, 1/3 as `th -> 0` (a Taylor expansion
//! is used for small `th` where the closed forms cancel catastrophically).
//! The resulting error is `O(h^3)` uniformly in `k`.
//!
//! The two sample sums the composite rule needs for every `k` are
//! exponential sums on arithmetic node progressions; they are evaluated for
//! all `k` at once with the chirp-z transform (Bluestein's algorithm), so a
//! piece with `N` samples costs `O((N + K) log (N + K))` for the whole range
//! `|k| <= K`.

use num_complex::Complex64;
use rustfft::FftPlanner;

/// Even Taylor coefficients of `E(th)` (powers `th^0, th^2, ...`).
const E_SERIES: [f64; 6] = [
    1.0 / 3.0,
    -1.0 / 10.0,
    1.0 / 168.0,
    -1.0 / 6480.0,
    1.0 / 443_520.0,
    -1.0 / 47_174_400.0,
];

/// Odd-part Taylor coefficients of `O(th)/th` (powers `th^0, th^2, ...`).
const O_SERIES: [f64; 6] = [
    1.0 / 3.0,
    -1.0 / 30.0,
    1.0 / 840.0,
    -1.0 / 45_360.0,
    1.0 / 3_991_680.0,
    -1.0 / 518_918_400.0,
];

/// Even Taylor coefficients of `w_0(th)`.
const W0_SERIES: [f64; 6] = [
    4.0 / 3.0,
    -2.0 / 15.0,
    1.0 / 210.0,
    -1.0 / 11_340.0,
    1.0 / 997_920.0,
    -1.0 / 129_729_600.0,
];

fn eval_even_series(coeffs: &[f64], theta: f64) -> f64 {
    let t2 = theta * theta;
    coeffs.iter().rev().fold(0.0, |acc, c| acc * t2 + c)
}

/// Filon panel weights `(w_-, w_0, w_+)` for signed `theta = k h`.
pub(crate) fn filon_weights(theta: f64) -> (Complex64, f64, Complex64) {
    let (even, odd, mid) = if theta.abs() < 0.25 {
        (
            eval_even_series(&E_SERIES, theta),
            theta * eval_even_series(&O_SERIES, theta),
            eval_even_series(&W0_SERIES, theta),
        )
    } else {
        let (s, c) = theta.sin_cos();
        let t3 = theta * theta * theta;
        (
            (theta * theta * s + 2.0 * theta * c - 2.0 * s) / t3,
            (s - theta * c) / (theta * theta),
            4.0 * (s - theta * c) / t3,
        )
    };
    (
        Complex64::new(even, odd),
        mid,
        Complex64::new(even, -odd),
    )
}

/// Chirp-z transform: `X_k = sum_j x_j e^{-i phi j k}` for `k = 0..m-1`,
/// with arbitrary real step `phi`, via Bluestein's identity
/// `jk = (j^2 + k^2 - (k - j)^2) / 2`.
pub(crate) fn chirp_z(x: &[Complex64], phi: f64, m: usize) -> Vec<Complex64> {
    let n = x.len();
    if n == 0 || m == 0 {
        return vec![Complex64::new(0.0, 0.0); m];
    }
    let len = (n + m - 1).next_power_of_two();
    let chirp = |j: usize| -> f64 {
        let jf = j as f64;
        0.5 * phi * jf * jf
    };
    let mut u = vec![Complex64::new(0.0, 0.0); len];
    for (j, &xj) in x.iter().enumerate() {
        u[j] = xj * Complex64::from_polar(1.0, -chirp(j));
    }
    let mut v = vec![Complex64::new(0.0, 0.0); len];
    for k in 0..m {
        v[k] = Complex64::from_polar(1.0, chirp(k));
    }
    for j in 1..n {
        v[len - j] = Complex64::from_polar(1.0, chirp(j));
    }
    let mut planner = FftPlanner::new();
    let fwd = planner.plan_fft_forward(len);
    let inv = planner.plan_fft_inverse(len);
    fwd.process(&mut u);
    fwd.process(&mut v);
    for (uj, vj) in u.iter_mut().zip(v.iter()) {
        *uj *= vj;
    }
    inv.process(&mut u);
    let scale = 1.0 / len as f64;
    (0..m)
        .map(|k| u[k] * scale * Complex64::from_polar(1.0, -chirp(k)))
        .collect()
}

/// `int_a^b f(x) e^{-ikx} dx` for every `k = -k_max ..= k_max`, by the
/// composite Filon-Simpson rule with at least `min_samples` samples.
///
/// `f` must be smooth on the closed interval `[a, b]`; evaluating it at the
/// endpoints must give the appropriate one-sided limits.
pub(crate) fn piece_fourier_integrals(
    f: &dyn Fn(f64) -> Complex64,
    a: f64,
    b: f64,
    k_max: usize,
    min_samples: usize,
) -> Vec<Complex64> {
    let panels = (min_samples.max(3) - 1).div_ceil(2).max(1);
    let h = (b - a) / (2.0 * panels as f64);
    let samples: Vec<Complex64> = (0..=2 * panels)
        .map(|j| f(a + h * j as f64))
        .collect();
    let m = 2 * k_max + 1;

    // Exponential sums over the even / odd sample subgrids (stride 2h):
    //   A_k = sum_{p=0..panels} f_{2p} e^{-ik x_{2p}}
    //   B_k = sum_{p=0..panels-1} f_{2p+1} e^{-ik x_{2p+1}}
    // Shift k to 0..m-1 by pre-twisting with e^{+i 2h k_max p}.
    let phi = 2.0 * h;
    // e^{i phi k_max p} = e^{i (phi k_max mod 2pi) p}: reducing the step first
    // keeps the argument of sin/cos small.
    let step = (phi * k_max as f64).rem_euclid(std::f64::consts::TAU);
    let twist = |vals: &mut Vec<Complex64>| {
        for (p, v) in vals.iter_mut().enumerate() {
            *v *= Complex64::from_polar(1.0, step * p as f64);
        }
    };
    let mut even: Vec<Complex64> = samples.iter().step_by(2).copied().collect();
    let mut odd: Vec<Complex64> = samples.iter().skip(1).step_by(2).copied().collect();
    twist(&mut even);
    twist(&mut odd);
    let a_sum = chirp_z(&even, phi, m);
    let b_sum = chirp_z(&odd, phi, m);

    let first = samples[0];
    let last = samples[2 * panels];
    (0..m)
        .map(|idx| {
            let k = idx as f64 - k_max as f64;
            let theta = k * h;
            let (wm, w0, wp) = filon_weights(theta);
            let base_a = Complex64::from_polar(1.0, -k * a);
            let base_b = Complex64::from_polar(1.0, -k * (a + h));
            let a_k = base_a * a_sum[idx];
            let b_k = base_b * b_sum[idx];
            let e_first = first * base_a;
            let e_last = last * Complex64::from_polar(1.0, -k * b);
            let rot = Complex64::from_polar(1.0, theta);
            h * (wm * rot.conj() * (a_k - e_last) + w0 * b_k + wp * rot * (a_k - e_first))
        })
        .collect()
}
