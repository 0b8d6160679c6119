//! Plain-text matrix files holding the diagonals of a Toeplitz matrix.
//!
//! The format is one number per line: the dimension `n` first, then the
//! `2n - 1` diagonals `t_{-(n-1)}, …, t_{-1}, t_0, t_1, …, t_{n-1}`.
//! Values are written with Rust's shortest round-trip formatting, so a
//! save followed by a load reproduces every diagonal bit for bit.

use std::path::Path;

use crate::experiment::{CliError, SymbolSource};

/// Writes `diagonals` (length `2n - 1`) to `path`.
pub fn save(path: &Path, diagonals: &[f64]) -> Result<(), CliError> {
    if diagonals.len() % 2 == 0 || diagonals.is_empty() {
        return Err(CliError::Usage(format!(
            "a Toeplitz matrix has an odd number of diagonals, got {}",
            diagonals.len()
        )));
    }
    let n = (diagonals.len() + 1) / 2;
    let mut out = String::with_capacity(24 * diagonals.len());
    out.push_str(&n.to_string());
    out.push('\n');
    for &d in diagonals {
        out.push_str(&d.to_string());
        out.push('\n');
    }
    std::fs::write(path, out)
        .map_err(|e| CliError::Io(format!("could not write {}: {e}", path.display())))
}

/// Reads a matrix file back as a [`SymbolSource`] named after the file.
pub fn load(path: &Path) -> Result<SymbolSource, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("could not read {}: {e}", path.display())))?;
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());

    let n: usize = lines
        .next()
        .ok_or_else(|| CliError::Usage(format!("{} is empty", path.display())))?
        .parse()
        .map_err(|_| {
            CliError::Usage(format!(
                "first line of {} must be the dimension n",
                path.display()
            ))
        })?;
    if n == 0 {
        return Err(CliError::Usage(format!(
            "{} declares an empty matrix",
            path.display()
        )));
    }

    let mut diagonals = Vec::with_capacity(2 * n - 1);
    for line in lines {
        let value: f64 = line.parse().map_err(|_| {
            CliError::Usage(format!(
                "bad diagonal value `{line}` in {}",
                path.display()
            ))
        })?;
        if !value.is_finite() {
            return Err(CliError::Usage(format!(
                "non-finite diagonal value `{line}` in {}",
                path.display()
            )));
        }
        diagonals.push(value);
    }
    if diagonals.len() != 2 * n - 1 {
        return Err(CliError::Usage(format!(
            "{} declares n = {n} but holds {} diagonals (expected {})",
            path.display(),
            diagonals.len(),
            2 * n - 1
        )));
    }

    let name = path
        .file_stem()
        .map_or_else(|| "matrix".to_string(), |s| s.to_string_lossy().into_owned());
    Ok(SymbolSource::Diagonals { name, diagonals })
}
