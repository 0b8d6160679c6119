//! A corpus of generating functions used as benchmark symbols.
//!
//! Each symbol is non-symmetric (an even real part plus an odd imaginary
//! part), and most vanish somewhere on the period, which is exactly the
//! regime where plain circulant preconditioning degrades and eliminating
//! band factors pay off. The piecewise-linear imaginary parts `h_1, h_2,
//! h_3` are continuous zig-zags chosen so that the symbol's smoothness, not
//! just its zeros, stresses the constructions.
//!
//! Alongside each symbol the corpus records its zero structure (locations
//! and per-part vanishing orders) when it has zeros expressible by a
//! [`RootSpec`]: the origin with orders `(m^1, m^2)` and interior points
//! `x_i` with orders `(m_i^1, m_i^2)`. Symbols without usable structure
//! (nowhere-zero real part, or no zeros at all) carry an empty spec.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::precond::RootSpec;
use crate::symbol::{GeneratingSymbol, Piece};

/// Identifiers of all corpus symbols.
pub const IDS: [&str; 14] = [
    "f1", "f2", "f3", "f4", "f5", "f7", "f8", "f9", "f10", "f11", "f12", "f13", "f14", "gcar",
];

fn canonical(id: &str) -> Result<&'static str> {
    let lower = id.to_ascii_lowercase();
    match lower.as_str() {
        "f1" => Ok("f1"),
        "f2" => Ok("f2"),
        "f3" => Ok("f3"),
        "f4" => Ok("f4"),
        "f5" => Ok("f5"),
        "f7" => Ok("f7"),
        "f8" | "gcar" => Ok("gcar"),
        "f9" => Ok("f9"),
        "f10" => Ok("f10"),
        "f11" => Ok("f11"),
        "f12" => Ok("f12"),
        "f13" => Ok("f13"),
        "f14" => Ok("f14"),
        _ => Err(Error::UnknownSymbol { id: id.to_string() }),
    }
}

fn piecewise(real: impl Fn(f64) -> f64 + Copy + Send + Sync + 'static, imag_pieces: &[(f64, f64, fn(f64) -> f64)]) -> GeneratingSymbol {
    let pieces = imag_pieces
        .iter()
        .map(|&(a, b, h)| Piece {
            a,
            b,
            f: Arc::new(move |x| Complex64::new(real(x), h(x))) as _,
        })
        .collect();
    GeneratingSymbol::from_pieces(pieces).expect("corpus pieces cover the period")
}

/// Hat function: `-pi - x`, `x`, `pi - x` with corners at `-pi/2, pi/2`.
fn h1_pieces() -> &'static [(f64, f64, fn(f64) -> f64)] {
    const HALF: f64 = PI / 2.0;
    &[
        (-PI, -HALF, |x| -PI - x),
        (-HALF, HALF, |x| x),
        (HALF, PI, |x| PI - x),
    ]
}

/// Hat function with corners at `-1/2, 1/2`.
fn h2_pieces() -> &'static [(f64, f64, fn(f64) -> f64)] {
    &[
        (-PI, -0.5, |x| -1.0 - x),
        (-0.5, 0.5, |x| x),
        (0.5, PI, |x| 1.0 - x),
    ]
}

/// Five-piece zig-zag vanishing at `0, +-1, +-pi`.
fn h3_pieces() -> &'static [(f64, f64, fn(f64) -> f64)] {
    &[
        (-PI, 0.5 - PI, |x| x + PI),
        (0.5 - PI, -0.5, |x| (x + 1.0) / (3.0 - 2.0 * PI)),
        (-0.5, 0.5, |x| x / (2.0 * PI - 3.0)),
        (0.5, PI - 0.5, |x| (x - 1.0) / (3.0 - 2.0 * PI)),
        (PI - 0.5, PI, |x| x - PI),
    ]
}

/// Builds a corpus symbol by identifier (case-insensitive; `f8` and `gcar`
/// are the same symbol, and `f12` repeats `f1`).
pub fn symbol(id: &str) -> Result<GeneratingSymbol> {
    Ok(match canonical(id)? {
        "f1" | "f12" => piecewise(|x| x * x + 1.0, h1_pieces()),
        "f2" => GeneratingSymbol::smooth(|x| Complex64::new(x * x, x * x * x)),
        "f3" => GeneratingSymbol::smooth(|x| Complex64::new(x * x, x)),
        "f4" => piecewise(|x| x * x - 1.0, h2_pieces()),
        "f5" => GeneratingSymbol::smooth(|x| {
            let r = x * x - 1.0;
            Complex64::new(r * r, x * (x * x - 4.0))
        }),
        "f7" => GeneratingSymbol::smooth(|x| Complex64::new(x * x - 1.0, x * x * x)),
        "gcar" => GeneratingSymbol::smooth(|x| {
            Complex64::new(
                1.0 + (2.0 * x).cos() + (3.0 * x).cos(),
                -2.0 * x.sin() - (2.0 * x).sin() - (3.0 * x).sin(),
            )
        }),
        "f9" => GeneratingSymbol::smooth(|x| {
            let r = x * x - 1.0;
            Complex64::new(r * r, x * r)
        }),
        "f10" => piecewise(|x| x * x - 1.0, h3_pieces()),
        "f11" => GeneratingSymbol::smooth(|x| {
            let s = x.sin();
            Complex64::new(x * x * s * s + 1.0, x * x * s)
        }),
        "f13" => GeneratingSymbol::smooth(|x| Complex64::new(x * x + 1.0, x)),
        "f14" => piecewise(
            |x| {
                let r = x * x - 1.0;
                x * x * r * r
            },
            h3_pieces(),
        ),
        _ => unreachable!(),
    })
}

/// The known zero structure of a corpus symbol (empty when the symbol has
/// no zeros or none expressible by a [`RootSpec`]).
pub fn root_spec(id: &str) -> Result<RootSpec> {
    Ok(match canonical(id)? {
        "f2" => RootSpec {
            origin: (2, 3),
            interior: vec![],
        },
        "f3" => RootSpec {
            origin: (2, 1),
            interior: vec![],
        },
        "f4" => RootSpec {
            origin: (0, 1),
            interior: vec![(1.0, 1, 1)],
        },
        "f5" => RootSpec {
            origin: (0, 1),
            interior: vec![(1.0, 2, 0), (2.0, 0, 1)],
        },
        "f9" => RootSpec {
            origin: (0, 1),
            interior: vec![(1.0, 2, 1)],
        },
        "f10" => RootSpec {
            origin: (0, 1),
            interior: vec![(1.0, 1, 1)],
        },
        "f14" => RootSpec {
            origin: (2, 1),
            interior: vec![(1.0, 2, 1)],
        },
        _ => RootSpec::none(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

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

    #[test]
    fn quadrature_matches_closed_form_coefficients() {
        let k_max = 8;
        let f2 = symbol("f2").unwrap().fourier_coefficients(k_max).unwrap();
        let f13 = symbol("f13").unwrap().fourier_coefficients(k_max).unwrap();
        for k in -(k_max as i64)..=k_max as i64 {
            let idx = (k + k_max as i64) as usize;
            assert_relative_eq!(f2[idx], tk_f2(k), epsilon = 1e-9, max_relative = 1e-9);
            assert_relative_eq!(f13[idx], tk_f13(k), epsilon = 1e-9, max_relative = 1e-9);
        }
    }

    #[test]
    fn the_gcar_symbol_has_one_sided_diagonals() {
        let coeffs = symbol("gcar").unwrap().fourier_coefficients(4).unwrap();
        // t_{-4}..t_4 of 1 + cos 2x + cos 3x + i(-2 sin x - sin 2x - sin 3x).
        let expect = [0.0, 1.0, 1.0, 1.0, 1.0, -1.0, 0.0, 0.0, 0.0];
        for (got, want) in coeffs.iter().zip(expect) {
            assert_relative_eq!(*got, want, epsilon = 1e-10);
        }
    }

    #[test]
    fn piecewise_symbols_evaluate_their_corner_values() {
        let f1 = symbol("f1").unwrap();
        assert_relative_eq!(f1.eval(PI / 2.0).im, PI / 2.0, epsilon = 1e-12);
        assert_relative_eq!(f1.eval(3.0).im, PI - 3.0, epsilon = 1e-12);
        assert_relative_eq!(f1.eval(-3.0).im, -PI + 3.0, epsilon = 1e-12);
        assert_relative_eq!(f1.eval(0.25).re, 0.0625 + 1.0, epsilon = 1e-12);

        let f10 = symbol("f10").unwrap();
        for x in [0.0, 1.0, -1.0, PI] {
            assert_relative_eq!(f10.eval(x).im, 0.0, epsilon = 1e-12);
        }
        assert_relative_eq!(
            f10.eval(0.25).im,
            0.25 / (2.0 * PI - 3.0),
            epsilon = 1e-12
        );
        // Continuity across the corners.
        for x in [0.5 - PI, -0.5, 0.5, PI - 0.5] {
            let left = f10.eval(x - 1e-9).im;
            let right = f10.eval(x + 1e-9).im;
            assert_relative_eq!(left, right, epsilon = 1e-6);
        }
    }

    #[test]
    fn aliases_resolve_and_unknown_ids_fail() {
        for id in IDS {
            assert!(symbol(id).is_ok(), "{id}");
            assert!(root_spec(id).is_ok(), "{id}");
        }
        assert!(symbol("F3").is_ok());
        let f8 = symbol("f8").unwrap();
        let gcar = symbol("gcar").unwrap();
        assert_eq!(f8.eval(0.7), gcar.eval(0.7));
        assert!(matches!(
            symbol("f6"),
            Err(Error::UnknownSymbol { .. })
        ));
    }

    #[test]
    fn root_specs_validate_and_match_feasibility() {
        for id in IDS {
            let spec = root_spec(id).unwrap();
            if !spec.is_empty() {
                spec.validate().unwrap();
            }
        }
        assert!(root_spec("f2").unwrap().real_feasible());
        assert!(!root_spec("f3").unwrap().real_feasible());
        assert!(!root_spec("f9").unwrap().real_feasible());
        assert!(!root_spec("f14").unwrap().real_feasible());
        assert!(root_spec("f4").unwrap().real_feasible());
    }
}
