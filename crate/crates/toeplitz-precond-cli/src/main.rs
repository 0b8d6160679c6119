//! Command-line driver for band and circulant Toeplitz preconditioners.
//!
//! Four subcommands cover the reproduction workflow:
//!
//! * `solve` — run one preconditioned GMRES or CGN solve and print a CSV
//!   row with the iteration count, convergence flag, true relative
//!   residual, and wall time;
//! * `table` — rerun every cell of a published iteration-count table and
//!   emit `measured` vs `paper_value` CSV rows;
//! * `spectrum` — materialize the preconditioned matrix (dense, so
//!   `n <= 1024`) and dump its eigenvalues or singular values;
//! * `estimate` — report the zero locations, vanishing orders, and jump
//!   points inferred from the matrix diagonals alone.
//!
//! Exit codes: `0` on success (including honest non-convergence within
//! the iteration cap), `1` for numeric failures, `2` for usage errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use toeplitz_precond::estimate::{
    estimate_zero_structure, expansion_value, Grid, DEFAULT_POWER_ITERS,
};
use toeplitz_precond::{spectra, KrylovMethod, RightHandSide};
use toeplitz_precond_cli::experiment::{
    self, BandApprox, CliError, Experiment, PrecondSpec, SymbolSource, CSV_HEADER,
    CSV_HEADER_WALL,
};
use toeplitz_precond_cli::{matfile, reference, tables};

#[derive(Parser)]
#[command(
    name = "toeplitz-precond",
    version,
    about = "Band and circulant preconditioners for non-symmetric Toeplitz systems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve T_n(f) x = b with preconditioned GMRES or CGN.
    Solve(SolveArgs),
    /// Rerun a published iteration-count table and compare cell by cell.
    Table(TableArgs),
    /// Dump eigenvalues or singular values of the preconditioned matrix.
    Spectrum(SpectrumArgs),
    /// Estimate zeros, vanishing orders, and jumps from diagonals alone.
    Estimate(EstimateArgs),
}

/// Where the system comes from: a corpus symbol or a matrix file.
#[derive(Args)]
struct SourceArgs {
    /// Corpus symbol (f1..f14, gcar).
    #[arg(long, value_name = "ID")]
    symbol: Option<String>,

    /// Matrix file: first line n, then the 2n-1 diagonals.
    #[arg(long, value_name = "PATH", conflicts_with = "symbol")]
    matrix_file: Option<PathBuf>,

    /// Matrix dimension (required with --symbol, inferred from the file
    /// otherwise).
    #[arg(long, value_name = "N")]
    n: Option<usize>,
}

impl SourceArgs {
    fn resolve(&self) -> Result<(SymbolSource, usize), CliError> {
        match (&self.symbol, &self.matrix_file) {
            (Some(id), None) => {
                let n = self.n.ok_or_else(|| {
                    CliError::Usage("--n is required with --symbol".to_string())
                })?;
                Ok((SymbolSource::Corpus(id.clone()), n))
            }
            (None, Some(path)) => {
                let source = matfile::load(path)?;
                let file_n = source
                    .fixed_dim()
                    .expect("matrix files always carry a dimension");
                Ok((source, self.n.unwrap_or(file_n)))
            }
            (None, None) => Err(CliError::Usage(
                "one of --symbol or --matrix-file is required".to_string(),
            )),
            (Some(_), Some(_)) => unreachable!("clap rejects the combination"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PrecondArg {
    /// Identity (no preconditioning).
    None,
    /// Banded Toeplitz T_n(g), optionally corrected (see --approx).
    Band,
    /// Strang circulant.
    Strang,
    /// Frobenius-optimal circulant.
    Optimal,
    /// Circulant sampled from the known symbol.
    Circ,
    /// Band times sampled circulant.
    BandCirc,
    /// Automatic band preconditioner (entries only).
    AutoBand,
    /// Automatic circulant preconditioner (entries only).
    AutoCirc,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ApproxArg {
    /// No correction: plain T_n(g).
    None,
    /// Minimax (Remez) correction of degrees --deg.
    Remez,
    /// Chebyshev interpolation correction of degrees --deg.
    Interp,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    /// Restart-free GMRES.
    Gmres,
    /// CG on the normal equations.
    Cgn,
}

impl MethodArg {
    fn krylov(self) -> KrylovMethod {
        match self {
            MethodArg::Gmres => KrylovMethod::Gmres,
            MethodArg::Cgn => KrylovMethod::Cgn,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum RhsArg {
    /// b = T * ones, so the exact solution is the all-ones vector.
    Product,
    /// b = ones.
    Ones,
}

impl RhsArg {
    fn rhs(self) -> RightHandSide {
        match self {
            RhsArg::Product => RightHandSide::ToeplitzTimesOnes,
            RhsArg::Ones => RightHandSide::Ones,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum WhatArg {
    /// Eigenvalues (columns re,im).
    Eig,
    /// Singular values (column sigma).
    Sv,
}

#[derive(Clone, Copy, ValueEnum)]
enum GridArg {
    /// x_j = -pi + 2 pi j / (n + 1), j = 1..n.
    Band,
    /// x_j = 2 pi j / n, j = 0..n-1.
    Circ,
}

impl GridArg {
    fn grid(self) -> Grid {
        match self {
            GridArg::Band => Grid::Band,
            GridArg::Circ => Grid::Circulant,
        }
    }
}

fn parse_degrees(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| "expected two comma-separated degrees, e.g. 4,4".to_string())?;
    let d1 = a
        .trim()
        .parse()
        .map_err(|_| format!("bad even degree `{a}`"))?;
    let d2 = b
        .trim()
        .parse()
        .map_err(|_| format!("bad odd degree `{b}`"))?;
    Ok((d1, d2))
}

fn precond_spec(
    precond: PrecondArg,
    approx: ApproxArg,
    (d1, d2): (usize, usize),
    power_iters: usize,
) -> PrecondSpec {
    match precond {
        PrecondArg::None => PrecondSpec::None,
        PrecondArg::Band => PrecondSpec::Band {
            approx: match approx {
                ApproxArg::None => BandApprox::Plain,
                ApproxArg::Remez => BandApprox::Minimax,
                ApproxArg::Interp => BandApprox::Interpolation,
            },
            d1,
            d2,
        },
        PrecondArg::Strang => PrecondSpec::Strang,
        PrecondArg::Optimal => PrecondSpec::Optimal,
        PrecondArg::Circ => PrecondSpec::Sampled,
        PrecondArg::BandCirc => PrecondSpec::BandSampled,
        PrecondArg::AutoBand => PrecondSpec::AutoBand {
            d1,
            d2,
            power_iters,
        },
        PrecondArg::AutoCirc => PrecondSpec::AutoCirc { power_iters },
    }
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    source: SourceArgs,

    /// Preconditioner family.
    #[arg(long, value_enum, default_value_t = PrecondArg::None)]
    precond: PrecondArg,

    /// Band correction strategy (used with --precond band).
    #[arg(long, value_enum, default_value_t = ApproxArg::None)]
    approx: ApproxArg,

    /// Correction degrees (even, odd).
    #[arg(long, value_parser = parse_degrees, default_value = "4,4", value_name = "D1,D2")]
    deg: (usize, usize),

    /// Krylov method.
    #[arg(long, value_enum, default_value_t = MethodArg::Gmres)]
    method: MethodArg,

    /// Relative-residual stopping tolerance.
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,

    /// Iteration cap.
    #[arg(long, default_value_t = 500)]
    max_iters: usize,

    /// Right-hand side convention.
    #[arg(long, value_enum, default_value_t = RhsArg::Product)]
    rhs: RhsArg,

    /// Inverse power iterations for the automatic preconditioners.
    #[arg(long, default_value_t = DEFAULT_POWER_ITERS, value_name = "K")]
    power_iters: usize,

    /// Also write the run record to this CSV file (no wall-time column,
    /// so repeated runs are byte-identical).
    #[arg(long, value_name = "PATH")]
    csv: Option<PathBuf>,

    /// Write the system's diagonals to a matrix file before solving.
    #[arg(long, value_name = "PATH")]
    dump_matrix: Option<PathBuf>,
}

#[derive(Args)]
struct TableArgs {
    /// Table identifier (2.1-2.5, 3.1-3.5, 4.2, 4.9, 4.11, 4.12, 4.15,
    /// 4.16, 4.19).
    #[arg(long, value_name = "ID")]
    table: String,

    /// Output CSV path (stdout when omitted).
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SpectrumArgs {
    #[command(flatten)]
    source: SourceArgs,

    /// Preconditioner family.
    #[arg(long, value_enum, default_value_t = PrecondArg::None)]
    precond: PrecondArg,

    /// Band correction strategy (used with --precond band).
    #[arg(long, value_enum, default_value_t = ApproxArg::None)]
    approx: ApproxArg,

    /// Correction degrees (even, odd).
    #[arg(long, value_parser = parse_degrees, default_value = "4,4", value_name = "D1,D2")]
    deg: (usize, usize),

    /// Inverse power iterations for the automatic preconditioners.
    #[arg(long, default_value_t = DEFAULT_POWER_ITERS, value_name = "K")]
    power_iters: usize,

    /// Which spectrum to compute.
    #[arg(long, value_enum)]
    what: WhatArg,

    /// Output CSV path (stdout when omitted).
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EstimateArgs {
    #[command(flatten)]
    source: SourceArgs,

    /// Estimation grid.
    #[arg(long, value_enum, default_value_t = GridArg::Circ)]
    grid: GridArg,

    /// Inverse power iterations per auxiliary section.
    #[arg(long, default_value_t = DEFAULT_POWER_ITERS, value_name = "K")]
    power_iters: usize,
}

fn write_output(path: &std::path::Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text)
        .map_err(|e| CliError::Io(format!("could not write {}: {e}", path.display())))
}

fn cmd_solve(args: &SolveArgs) -> Result<(), CliError> {
    let (source, n) = args.source.resolve()?;
    if let Some(path) = &args.dump_matrix {
        matfile::save(path, &source.diagonals(n)?)?;
    }
    let record = experiment::run(&Experiment {
        source,
        n,
        precond: precond_spec(args.precond, args.approx, args.deg, args.power_iters),
        method: args.method.krylov(),
        tol: args.tol,
        max_iters: args.max_iters,
        rhs: args.rhs.rhs(),
    })?;
    println!("{CSV_HEADER_WALL}");
    println!("{}", record.csv_row_with_wall());
    if let Some(path) = &args.csv {
        write_output(path, &format!("{CSV_HEADER}\n{}\n", record.csv_row()))?;
    }
    Ok(())
}

fn cmd_table(args: &TableArgs) -> Result<(), CliError> {
    let spec = reference::find(&args.table).ok_or_else(|| {
        let known: Vec<&str> = reference::TABLES.iter().map(|t| t.id).collect();
        CliError::Usage(format!(
            "unknown table `{}`; available: {}",
            args.table,
            known.join(", ")
        ))
    })?;
    let workers = tables::worker_count_from_env()?;
    let rows = tables::run_table(spec, workers)?;
    let csv = tables::table_csv(&rows);
    match &args.out {
        Some(path) => {
            write_output(path, &csv)?;
            eprintln!("wrote table {} ({} rows) to {}", spec.id, rows.len(), path.display());
        }
        None => print!("{csv}"),
    }
    Ok(())
}

fn cmd_spectrum(args: &SpectrumArgs) -> Result<(), CliError> {
    let (source, n) = args.source.resolve()?;
    let diagonals = source.diagonals(n)?;
    let t = experiment::build_toeplitz(&source, n)?;
    let spec = precond_spec(args.precond, args.approx, args.deg, args.power_iters);
    let m = experiment::build_preconditioner(&spec, &source, &t, &diagonals)?;
    let matrix = spectra::preconditioned_matrix(&t, m.as_ref())?;
    let csv = match args.what {
        WhatArg::Eig => spectra::eigenvalues_csv(&spectra::eigenvalues(&matrix)),
        WhatArg::Sv => spectra::singular_values_csv(&spectra::singular_values(&matrix)?),
    };
    match &args.out {
        Some(path) => write_output(path, &csv)?,
        None => print!("{csv}"),
    }
    Ok(())
}

fn format_part(
    label: &str,
    part: &Option<toeplitz_precond::estimate::PartRootEstimate>,
) -> Option<String> {
    part.as_ref().map(|p| {
        let e = &p.estimate;
        format!(
            "  {label} part: location = {:.6}, lambda = ({:.4e}, {:.4e}, {:.4e}), \
             log2 ratio = {:.4}, multiplicity {}",
            p.location, e.lambdas[0], e.lambdas[1], e.lambdas[2], e.log2_ratio, e.multiplicity
        )
    })
}

fn format_jumps(values: &[f64]) -> String {
    if values.is_empty() {
        return "none".to_string();
    }
    values
        .iter()
        .map(|x| format!("{x:.6}"))
        .collect::<Vec<_>>()
        .join(", ")
}

fn cmd_estimate(args: &EstimateArgs) -> Result<(), CliError> {
    let (source, n) = args.source.resolve()?;
    let diagonals = source.diagonals(n)?;
    let grid = args.grid.grid();
    let structure = estimate_zero_structure(&diagonals, grid, args.power_iters)?;

    let grid_name = match grid {
        Grid::Band => "band",
        Grid::Circulant => "circulant",
    };
    println!(
        "{}: n = {}, {} grid, {} inverse power iterations",
        source.name(),
        n,
        grid_name,
        args.power_iters,
    );
    if structure.roots.is_empty() {
        println!("no roots detected");
    }
    for root in &structure.roots {
        let value = expansion_value(&diagonals, root.location);
        println!(
            "root at x = {:.6} (F(x) = {:.4e} + {:.4e}i)",
            root.location, value.re, value.im
        );
        if let Some(line) = format_part("real", &root.real) {
            println!("{line}");
        }
        if let Some(line) = format_part("imag", &root.imag) {
            println!("{line}");
        }
    }
    println!(
        "discontinuities (real part): {}",
        format_jumps(&structure.real_discontinuities)
    );
    println!(
        "discontinuities (imag part): {}",
        format_jumps(&structure.imag_discontinuities)
    );
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Solve(args) => cmd_solve(args),
        Command::Table(args) => cmd_table(args),
        Command::Spectrum(args) => cmd_spectrum(args),
        Command::Estimate(args) => cmd_estimate(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
