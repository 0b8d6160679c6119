//! Published iteration-count tables for the reproduction harness.
//!
//! Each [`TableSpec`] mirrors one table from the study of band and
//! circulant preconditioners for non-symmetric Toeplitz systems: the
//! generating symbol, the dimensions, the stopping tolerance, the
//! right-hand-side convention, and one [`ColumnSpec`] per published
//! column. A column records the solver, the preconditioner, and the
//! published values — iteration counts, `>500` markers for runs that hit
//! the cap, and `-` for cells the study left blank. Singular-value
//! columns (`svout`) count how many singular values of the
//! preconditioned matrix fall outside the analytic clustering interval
//! `[1 - M eps, 1 + M eps]`.

use toeplitz_precond::estimate::DEFAULT_POWER_ITERS;
use toeplitz_precond::{KrylovMethod, RightHandSide};

use crate::experiment::{BandApprox, PrecondSpec};

/// One published cell value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PaperValue {
    /// A reported iteration (or outlier) count.
    It(u32),
    /// The run exceeded the 500-iteration cap.
    Gt500,
    /// The cell was left blank.
    Absent,
}

impl std::fmt::Display for PaperValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PaperValue::It(k) => write!(f, "{k}"),
            PaperValue::Gt500 => write!(f, ">500"),
            PaperValue::Absent => write!(f, "-"),
        }
    }
}

/// What a table column measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunMethod {
    /// Preconditioned GMRES iteration count.
    Gmres,
    /// Preconditioned CGN iteration count.
    Cgn,
    /// Singular values outside the clustering interval.
    SingularValueCount,
}

impl RunMethod {
    /// Label used in the `method` CSV column.
    pub fn label(self) -> &'static str {
        match self {
            RunMethod::Gmres => "gmres",
            RunMethod::Cgn => "cgn",
            RunMethod::SingularValueCount => "sv",
        }
    }

    /// The Krylov method, for solver columns.
    pub fn krylov(self) -> Option<KrylovMethod> {
        match self {
            RunMethod::Gmres => Some(KrylovMethod::Gmres),
            RunMethod::Cgn => Some(KrylovMethod::Cgn),
            RunMethod::SingularValueCount => None,
        }
    }
}

/// Compact preconditioner code used by the table catalog.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrecondCode {
    /// Identity.
    None,
    /// Plain `T_n(g)`.
    BandPlain,
    /// `T_n(g rho)` with minimax correction of the given degrees.
    BandMinimax(usize, usize),
    /// `T_n(g rho)` with interpolated correction of the given degrees.
    BandInterp(usize, usize),
    /// Circulant sampled from the known symbol.
    Sampled,
    /// Frobenius-optimal circulant.
    Optimal,
    /// `T_n(g) C_n(f/g)` with the sampled circulant factor.
    BandSampled,
    /// `T_n(g) C_n` with the Frobenius-optimal circulant of `T_n(f/g)`.
    BandOptimal,
    /// Automatic band preconditioner (matrix entries only).
    AutoBand(usize, usize),
    /// Automatic circulant preconditioner (matrix entries only).
    AutoCirc,
}

impl PrecondCode {
    /// Expands the code into a runnable [`PrecondSpec`].
    pub fn to_spec(self) -> PrecondSpec {
        match self {
            PrecondCode::None => PrecondSpec::None,
            PrecondCode::BandPlain => PrecondSpec::Band {
                approx: BandApprox::Plain,
                d1: 0,
                d2: 0,
            },
            PrecondCode::BandMinimax(d1, d2) => PrecondSpec::Band {
                approx: BandApprox::Minimax,
                d1,
                d2,
            },
            PrecondCode::BandInterp(d1, d2) => PrecondSpec::Band {
                approx: BandApprox::Interpolation,
                d1,
                d2,
            },
            PrecondCode::Sampled => PrecondSpec::Sampled,
            PrecondCode::Optimal => PrecondSpec::Optimal,
            PrecondCode::BandSampled => PrecondSpec::BandSampled,
            PrecondCode::BandOptimal => PrecondSpec::BandOptimal,
            PrecondCode::AutoBand(d1, d2) => PrecondSpec::AutoBand {
                d1,
                d2,
                power_iters: DEFAULT_POWER_ITERS,
            },
            PrecondCode::AutoCirc => PrecondSpec::AutoCirc {
                power_iters: DEFAULT_POWER_ITERS,
            },
        }
    }
}

/// One published column: label, measurement, preconditioner, and the
/// values reported for each dimension in the owning table's `dims`.
#[derive(Debug, Clone, Copy)]
pub struct ColumnSpec {
    /// Column label in the CSV output.
    pub label: &'static str,
    /// What the column measures.
    pub method: RunMethod,
    /// Preconditioner under test.
    pub precond: PrecondCode,
    /// Published values, aligned with the table's `dims`.
    pub published: &'static [PaperValue],
}

/// One published table.
#[derive(Debug, Clone, Copy)]
pub struct TableSpec {
    /// Table identifier (e.g. `2.3`).
    pub id: &'static str,
    /// Corpus symbol the table is about.
    pub symbol: &'static str,
    /// Dimensions reported in the table.
    pub dims: &'static [usize],
    /// Relative-residual stopping tolerance used by the study.
    pub tol: f64,
    /// Right-hand-side convention used by the study.
    pub rhs: RightHandSide,
    /// Published columns in display order.
    pub columns: &'static [ColumnSpec],
}

/// Looks a table up by identifier.
pub fn find(id: &str) -> Option<&'static TableSpec> {
    TABLES.iter().find(|t| t.id == id)
}

use PaperValue::{Absent, Gt500, It};

const DIMS4: &[usize] = &[256, 512, 1024, 2048];
const DIMS_GCAR: &[usize] = &[128, 256, 512, 1024];
const DIMS2: &[usize] = &[1024, 2048];

const fn col(
    label: &'static str,
    method: RunMethod,
    precond: PrecondCode,
    published: &'static [PaperValue],
) -> ColumnSpec {
    ColumnSpec {
        label,
        method,
        precond,
        published,
    }
}

/// Every table the harness reproduces.
pub const TABLES: &[TableSpec] = &[
    TableSpec {
        id: "2.1",
        symbol: "f1",
        dims: DIMS4,
        tol: 1e-6,
        rhs: RightHandSide::ToeplitzTimesOnes,
        columns: &[
            col("I", RunMethod::Gmres, PrecondCode::None, &[It(31), It(30), It(29), It(29)]),
            col("R44", RunMethod::Gmres, PrecondCode::BandMinimax(4, 4), &[It(8), It(8), It(8), It(8)]),
            col("R66", RunMethod::Gmres, PrecondCode::BandMinimax(6, 6), &[It(7), It(7), It(7), It(6)]),
            col("R86", RunMethod::Gmres, PrecondCode::BandMinimax(8, 6), &[It(6), It(6), It(6), It(6)]),
            col("I", RunMethod::Cgn, PrecondCode::None, &[It(72), It(74), It(73), It(72)]),
            col("R44", RunMethod::Cgn, PrecondCode::BandMinimax(4, 4), &[It(37), It(31), It(30), It(30)]),
            col("R66", RunMethod::Cgn, PrecondCode::BandMinimax(6, 6), &[It(34), It(30), It(30), It(29)]),
            col("R86", RunMethod::Cgn, PrecondCode::BandMinimax(8, 6), &[It(38), It(31), It(29), It(30)]),
        ],
    },
    TableSpec {
        id: "2.2",
        symbol: "f2",
        dims: DIMS4,
        tol: 1e-6,
        rhs: RightHandSide::ToeplitzTimesOnes,
        columns: &[
            col("I", RunMethod::Gmres, PrecondCode::None, &[It(256), Gt500, Gt500, Gt500]),
            col("B", RunMethod::Gmres, PrecondCode::BandPlain, &[It(67), It(70), It(69), It(68)]),
            col("R44", RunMethod::Gmres, PrecondCode::BandMinimax(4, 4), &[It(24), It(27), It(28), It(28)]),
            col("R66", RunMethod::Gmres, PrecondCode::BandMinimax(6, 6), &[It(22), It(26), It(27), It(27)]),
            col("I", RunMethod::Cgn, PrecondCode::None, &[Absent, Absent, Absent, Absent]),
            col("B", RunMethod::Cgn, PrecondCode::BandPlain, &[It(80), It(93), It(104), It(115)]),
            col("R44", RunMethod::Cgn, PrecondCode::BandMinimax(4, 4), &[It(37), It(43), It(47), It(52)]),
            col("R66", RunMethod::Cgn, PrecondCode::BandMinimax(6, 6), &[It(35), It(41), It(44), It(48)]),
            col("svout", RunMethod::SingularValueCount, PrecondCode::BandMinimax(6, 6), &[It(58), It(114), It(226), It(450)]),
        ],
    },
    TableSpec {
        id: "2.3",
        symbol: "f3",
        dims: DIMS4,
        tol: 1e-6,
        rhs: RightHandSide::ToeplitzTimesOnes,
        columns: &[
            col("I", RunMethod::Gmres, PrecondCode::None, &[It(256), Gt500, Gt500, Gt500]),
            col("B", RunMethod::Gmres, PrecondCode::BandPlain, &[It(11), It(11), It(10), It(10)]),
            col("R44", RunMethod::Gmres, PrecondCode::BandMinimax(4, 4), &[It(6), It(6), It(6), It(6)]),
            col("In44", RunMethod::Gmres, PrecondCode::BandInterp(4, 4), &[It(6), It(6), It(6), It(5)]),
            col("R1010", RunMethod::Gmres, PrecondCode::BandMinimax(10, 10), &[It(6), It(6), It(5), It(5)]),
            col("In1010", RunMethod::Gmres, PrecondCode::BandInterp(10, 10), &[It(12), It(12), It(12), It(11)]),
            col("svout", RunMethod::SingularValueCount, PrecondCode::BandMinimax(4, 4), &[It(2), It(2), It(2), It(2)]),
        ],
    },
    TableSpec {
        id: "2.4",
        symbol: "f4",
        dims: DIMS4,
        tol: 1e-6,
        rhs: RightHandSide::ToeplitzTimesOnes,
        columns: &[
            col("I", RunMethod::Gmres, PrecondCode::None, &[It(256), Gt500, Gt500, Gt500]),
            col("B", RunMethod::Gmres, PrecondCode::BandPlain, &[It(15), It(15), It(16), It(15)]),
            col("R44", RunMethod::Gmres, PrecondCode::BandMinimax(4, 4), &[It(6), It(6), It(6), It(6)]),
            col("svout", RunMethod::SingularValueCount, PrecondCode::BandMinimax(4, 4), &[It(4), It(4), It(4), It(4)]),
        ],
    },
    TableSpec {
        id: "2.5",
        symbol: "f5",
        dims: DIMS4,
        tol: 1e-6,
        rhs: RightHandSide::ToeplitzTimesOnes,
        columns: &[
            col("I", RunMethod::Gmres, PrecondCode::None, &[It(151), It(197), It(223), It(229)]),
            col("B", RunMethod::Gmres, PrecondCode::BandPlain, &[It(25), It(25), It(25), It(24)]),
            col("R86", RunMethod::Gmres, PrecondCode::BandMinimax(8, 6), &[It(12), It(11), It(11), It(11)]),
        ],
    },
    TableSpec {
        id: "3.1",
        symbol: "f1",
        dims: DIMS4,
        tol: 1e-6,
        rhs: RightHandSide::ToeplitzTimesOnes,
        columns: &[
            col("I", RunMethod::Gmres, PrecondCode::None, &[It(31), It(30), It(29), It(29)]),
            col("C", RunMethod::Gmres, PrecondCode::Sampled, &[It(5), It(5), It(5), It(4)]),
            col("T", RunMethod::Gmres, PrecondCode::Optimal, &[It(5), It(5), It(5), It(4)]),
            col("I", RunMethod::Cgn, PrecondCode::None, &[It(72), It(74), It(73), It(72)]),
            col("C", RunMethod::Cgn, PrecondCode::Sampled, &[It(6), It(6), It(6), It(6)]),
            col("T", RunMethod::Cgn, PrecondCode::Optimal, &[It(6), It(6), It(6), It(6)]),
        ],
    },
    TableSpec {
        id: "3.2",
        symbol: "f2",
        dims: DIMS4,
        tol: 1e-6,
        rhs: RightHandSide::ToeplitzTimesOnes,
        columns: &[
            col("I", RunMethod::Gmres, PrecondCode::None, &[It(256), Gt500, Gt500, Gt500]),
            col("T", RunMethod::Gmres, PrecondCode::Optimal, &[It(22), It(28), It(36), It(39)]),
            col("BC", RunMethod::Gmres, PrecondCode::BandSampled, &[It(7), It(7), It(7), It(7)]),
            col("BT", RunMethod::Gmres, PrecondCode::BandOptimal, &[It(7), It(7), It(7), It(8)]),
            col("I", RunMethod::Cgn, PrecondCode::None, &[Absent, Absent, Absent, Absent]),
            col("T", RunMethod::Cgn, PrecondCode::Optimal, &[It(61), It(90), It(140), It(273)]),
            col("BC", RunMethod::Cgn, PrecondCode::BandSampled, &[It(13), It(14), It(15), It(16)]),
            col("BT", RunMethod::Cgn, PrecondCode::BandOptimal, &[It(14), It(17), It(17), It(19)]),
        ],
    },
    TableSpec {
        id: "3.3",
        symbol: "f3",
        dims: DIMS4,
        tol: 1e-6,
        rhs: RightHandSide::ToeplitzTimesOnes,
        columns: &[
            col("I", RunMethod::Gmres, PrecondCode::None, &[It(256), Gt500, Gt500, Gt500]),
            col("T", RunMethod::Gmres, PrecondCode::Optimal, &[It(9), It(9), It(9), It(9)]),
            col("BC", RunMethod::Gmres, PrecondCode::BandSampled, &[It(5), It(5), It(5), It(5)]),
            col("BT", RunMethod::Gmres, PrecondCode::BandOptimal, &[It(5), It(5), It(5), It(5)]),
            col("I", RunMethod::Cgn, PrecondCode::None, &[Absent, Absent, Absent, Absent]),
            col("T", RunMethod::Cgn, PrecondCode::Optimal, &[It(10), It(11), It(11), It(11)]),
            col("BC", RunMethod::Cgn, PrecondCode::BandSampled, &[It(7), It(7), It(8), It(8)]),
            col("BT", RunMethod::Cgn, PrecondCode::BandOptimal, &[It(7), It(7), It(7), It(8)]),
        ],
    },
    TableSpec {
        id: "3.4",
        symbol: "f7",
        dims: DIMS4,
        tol: 1e-6,
        rhs: RightHandSide::ToeplitzTimesOnes,
        columns: &[
            col("I", RunMethod::Gmres, PrecondCode::None, &[It(160), It(248), It(326), It(370)]),
            col("C", RunMethod::Gmres, PrecondCode::Sampled, &[It(9), It(9), It(9), It(9)]),
            col("T", RunMethod::Gmres, PrecondCode::Optimal, &[It(9), It(9), It(9), It(10)]),
            col("I", RunMethod::Cgn, PrecondCode::None, &[Absent, It(362), It(397), It(415)]),
            col("C", RunMethod::Cgn, PrecondCode::Sampled, &[It(11), It(12), It(12), It(12)]),
            col("T", RunMethod::Cgn, PrecondCode::Optimal, &[It(13), It(13), It(13), It(13)]),
        ],
    },
    TableSpec {
        id: "3.5",
        symbol: "gcar",
        dims: DIMS_GCAR,
        tol: 1e-7,
        rhs: RightHandSide::Ones,
        columns: &[
            col("I", RunMethod::Gmres, PrecondCode::None, &[It(94), It(158), It(218), It(213)]),
            col("C", RunMethod::Gmres, PrecondCode::Sampled, &[It(4), It(4), It(4), It(4)]),
            col("T", RunMethod::Gmres, PrecondCode::Optimal, &[It(6), It(6), It(6), It(5)]),
        ],
    },
    TableSpec {
        id: "4.2",
        symbol: "f2",
        dims: DIMS2,
        tol: 1e-6,
        rhs: RightHandSide::ToeplitzTimesOnes,
        columns: &[
            col("I", RunMethod::Gmres, PrecondCode::None, &[Gt500, Gt500]),
            col("Rhat44", RunMethod::Gmres, PrecondCode::AutoBand(4, 4), &[It(28), It(28)]),
            col("I", RunMethod::Cgn, PrecondCode::None, &[Absent, Absent]),
            col("Rhat44", RunMethod::Cgn, PrecondCode::AutoBand(4, 4), &[It(45), It(49)]),
        ],
    },
    TableSpec {
        id: "4.9",
        symbol: "f13",
        dims: DIMS2,
        tol: 1e-6,
        rhs: RightHandSide::ToeplitzTimesOnes,
        columns: &[
            col("I", RunMethod::Gmres, PrecondCode::None, &[It(35), It(34)]),
            col("Cf", RunMethod::Gmres, PrecondCode::Sampled, &[It(6), It(6)]),
            col("Chat", RunMethod::Gmres, PrecondCode::AutoCirc, &[It(6), It(6)]),
            col("Rhat44", RunMethod::Gmres, PrecondCode::AutoBand(4, 4), &[It(7), It(7)]),
        ],
    },
    TableSpec {
        id: "4.11",
        symbol: "f2",
        dims: DIMS2,
        tol: 1e-6,
        rhs: RightHandSide::ToeplitzTimesOnes,
        columns: &[
            col("I", RunMethod::Gmres, PrecondCode::None, &[Gt500, Gt500]),
            col("BCf", RunMethod::Gmres, PrecondCode::BandSampled, &[It(7), It(7)]),
            col("BChat", RunMethod::Gmres, PrecondCode::AutoCirc, &[It(11), It(11)]),
            col("Rhat44", RunMethod::Gmres, PrecondCode::AutoBand(4, 4), &[It(28), It(28)]),
        ],
    },
    TableSpec {
        id: "4.12",
        symbol: "f2",
        dims: DIMS2,
        tol: 1e-6,
        rhs: RightHandSide::ToeplitzTimesOnes,
        columns: &[
            col("I", RunMethod::Cgn, PrecondCode::None, &[Absent, Absent]),
            col("BCf", RunMethod::Cgn, PrecondCode::BandSampled, &[It(15), It(16)]),
            col("BChat", RunMethod::Cgn, PrecondCode::AutoCirc, &[It(19), It(22)]),
            col("Rhat44", RunMethod::Cgn, PrecondCode::AutoBand(4, 4), &[It(45), It(49)]),
        ],
    },
    TableSpec {
        id: "4.15",
        symbol: "f9",
        dims: DIMS2,
        tol: 1e-7,
        rhs: RightHandSide::ToeplitzTimesOnes,
        columns: &[
            col("I", RunMethod::Gmres, PrecondCode::None, &[Gt500, Gt500]),
            col("BCf", RunMethod::Gmres, PrecondCode::BandSampled, &[It(7), It(6)]),
            col("BChat", RunMethod::Gmres, PrecondCode::AutoCirc, &[It(11), It(11)]),
            col("Rhat44", RunMethod::Gmres, PrecondCode::AutoBand(4, 4), &[It(21), It(22)]),
        ],
    },
    TableSpec {
        id: "4.16",
        symbol: "f9",
        dims: DIMS2,
        tol: 1e-7,
        rhs: RightHandSide::ToeplitzTimesOnes,
        columns: &[
            col("I", RunMethod::Cgn, PrecondCode::None, &[Absent, Absent]),
            col("BCf", RunMethod::Cgn, PrecondCode::BandSampled, &[It(11), It(11)]),
            col("BChat", RunMethod::Cgn, PrecondCode::AutoCirc, &[It(19), It(20)]),
            col("Rhat44", RunMethod::Cgn, PrecondCode::AutoBand(4, 4), &[It(45), It(49)]),
        ],
    },
    TableSpec {
        id: "4.19",
        symbol: "f14",
        dims: DIMS2,
        tol: 1e-7,
        rhs: RightHandSide::ToeplitzTimesOnes,
        columns: &[
            col("I", RunMethod::Gmres, PrecondCode::None, &[Gt500, Gt500]),
            col("BCf", RunMethod::Gmres, PrecondCode::BandSampled, &[It(7), It(7)]),
            col("BChat", RunMethod::Gmres, PrecondCode::AutoCirc, &[It(9), It(8)]),
        ],
    },
];

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn every_column_covers_every_dimension() {
        for table in TABLES {
            for column in table.columns {
                assert_eq!(
                    column.published.len(),
                    table.dims.len(),
                    "table {} column {} has a ragged value list",
                    table.id,
                    column.label
                );
            }
        }
    }

    #[test]
    fn table_ids_are_unique_and_findable() {
        let mut seen = HashSet::new();
        for table in TABLES {
            assert!(seen.insert(table.id), "duplicate table id {}", table.id);
            assert!(find(table.id).is_some());
        }
        assert!(find("9.9").is_none());
        assert_eq!(TABLES.len(), 17);
    }

    #[test]
    fn symbols_are_all_in_the_corpus() {
        for table in TABLES {
            assert!(
                toeplitz_precond::corpus::symbol(table.symbol).is_ok(),
                "table {} names unknown symbol {}",
                table.id,
                table.symbol
            );
        }
    }

    #[test]
    fn singular_value_columns_ride_on_minimax_bands() {
        for table in TABLES {
            for column in table.columns {
                if column.method == RunMethod::SingularValueCount {
                    assert!(matches!(column.precond, PrecondCode::BandMinimax(_, _)));
                }
            }
        }
    }
}
