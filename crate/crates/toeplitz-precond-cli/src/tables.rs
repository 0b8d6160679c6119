//! Runs every cell of a published table and lines the measurements up
//! against the reported values.
//!
//! Cells are independent solver runs (or dense singular-value counts), so
//! they are fanned out across a rayon thread pool; the
//! `TOEPLITZ_PRECOND_WORKERS` environment variable caps the pool size.
//! Rows come back in a fixed order — dimensions ascending, columns in
//! published order — and every numeric entry is an integer, so repeated
//! invocations produce byte-identical CSV output.

use rayon::prelude::*;

use toeplitz_precond::precond::{band_minimax, elimination_polynomial};
use toeplitz_precond::{corpus, spectra};

use crate::experiment::{self, CliError, Experiment, SymbolSource};
use crate::reference::{PaperValue, PrecondCode, RunMethod, TableSpec};

/// Header of the table CSV.
pub const TABLE_CSV_HEADER: &str =
    "table,symbol,n,column,method,iterations,converged,paper_value,delta";

/// Environment variable that caps the worker pool.
pub const WORKERS_ENV: &str = "TOEPLITZ_PRECOND_WORKERS";

/// One measured cell.
#[derive(Debug, Clone)]
pub struct TableRow {
    /// Table identifier.
    pub table: &'static str,
    /// Symbol the table is about.
    pub symbol: &'static str,
    /// Dimension of this cell.
    pub n: usize,
    /// Column label.
    pub column: &'static str,
    /// `gmres`, `cgn`, or `sv`.
    pub method: &'static str,
    /// Measured count (iterations, or singular values outside the
    /// cluster); `None` when the cell is not computable at desk scale.
    pub measured: Option<u32>,
    /// Convergence flag for solver cells.
    pub converged: Option<bool>,
    /// The published value.
    pub paper: PaperValue,
}

impl TableRow {
    /// `measured - published` when both sides are numeric.
    pub fn delta(&self) -> Option<i64> {
        match (self.measured, self.paper) {
            (Some(m), PaperValue::It(p)) => Some(i64::from(m) - i64::from(p)),
            _ => None,
        }
    }

    /// The CSV row (no trailing newline).
    pub fn csv_row(&self) -> String {
        let measured = self
            .measured
            .map_or_else(|| "-".to_string(), |m| m.to_string());
        let converged = self
            .converged
            .map_or_else(|| "-".to_string(), |c| c.to_string());
        let delta = self
            .delta()
            .map_or_else(|| "-".to_string(), |d| d.to_string());
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.table,
            self.symbol,
            self.n,
            self.column,
            self.method,
            measured,
            converged,
            self.paper,
            delta
        )
    }
}

/// Renders rows as a complete CSV document.
pub fn table_csv(rows: &[TableRow]) -> String {
    let mut out = String::from(TABLE_CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&row.csv_row());
        out.push('\n');
    }
    out
}

/// Reads the worker cap from the environment.
///
/// Unset means "let rayon decide"; a set value must parse as a positive
/// integer.
pub fn worker_count_from_env() -> Result<Option<usize>, CliError> {
    match std::env::var(WORKERS_ENV) {
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(CliError::Usage(format!("{WORKERS_ENV} is not unicode: {e}"))),
        Ok(raw) => match raw.trim().parse::<usize>() {
            Ok(0) | Err(_) => Err(CliError::Usage(format!(
                "{WORKERS_ENV} must be a positive integer, got `{raw}`"
            ))),
            Ok(w) => Ok(Some(w)),
        },
    }
}

fn solver_cell(
    spec: &TableSpec,
    code: PrecondCode,
    method: RunMethod,
    n: usize,
) -> Result<(Option<u32>, Option<bool>), CliError> {
    let record = experiment::run(&Experiment {
        source: SymbolSource::Corpus(spec.symbol.to_string()),
        n,
        precond: code.to_spec(),
        method: method.krylov().expect("solver cell"),
        tol: spec.tol,
        max_iters: 500,
        rhs: spec.rhs,
    })?;
    Ok((Some(record.iterations as u32), Some(record.converged)))
}

fn singular_value_cell(
    spec: &TableSpec,
    code: PrecondCode,
    n: usize,
) -> Result<(Option<u32>, Option<bool>), CliError> {
    if n > spectra::MAX_DENSE_DIM {
        return Ok((None, None));
    }
    let PrecondCode::BandMinimax(d1, d2) = code else {
        return Err(CliError::Usage(
            "singular-value columns are defined for minimax band preconditioners".to_string(),
        ));
    };
    let symbol = corpus::symbol(spec.symbol)?;
    let roots = corpus::root_spec(spec.symbol)?;
    let f = |x: f64| symbol.eval(x);
    let g = elimination_polynomial(&f, &roots)?;
    let (m, fit) = band_minimax(&f, &g, n, d1, d2)?;
    let source = SymbolSource::Corpus(spec.symbol.to_string());
    let t = experiment::build_toeplitz(&source, n)?;
    let preconditioned = spectra::preconditioned_matrix(&t, &m)?;
    let singular = spectra::singular_values(&preconditioned)?;
    let (lo, hi) = fit.interval();
    let stats = spectra::singular_value_cluster(&singular, lo, hi);
    Ok((Some(stats.outliers as u32), None))
}

/// Runs every cell of `spec`, fanning the work across a rayon pool.
///
/// `workers` caps the pool size (`None` lets rayon use its default). Rows
/// are ordered by dimension, then by published column order.
pub fn run_table(
    spec: &'static TableSpec,
    workers: Option<usize>,
) -> Result<Vec<TableRow>, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(w) = workers {
        builder = builder.num_threads(w);
    }
    let pool = builder
        .build()
        .map_err(|e| CliError::Usage(format!("could not build the worker pool: {e}")))?;

    let mut jobs = Vec::new();
    for (di, &n) in spec.dims.iter().enumerate() {
        for column in spec.columns {
            jobs.push((n, column, column.published[di]));
        }
    }

    pool.install(|| {
        jobs.par_iter()
            .map(|&(n, column, paper)| {
                let (measured, converged) = match column.method {
                    RunMethod::SingularValueCount => {
                        singular_value_cell(spec, column.precond, n)?
                    }
                    _ => solver_cell(spec, column.precond, column.method, n)?,
                };
                Ok(TableRow {
                    table: spec.id,
                    symbol: spec.symbol,
                    n,
                    column: column.label,
                    method: column.method.label(),
                    measured,
                    converged,
                    paper,
                })
            })
            .collect()
    })
}
