use std::path::Path;

use cubelab_cubes::{parse_frac, Frac};
use cubelab_matrix::IntMatrix;
use num_bigint::BigInt;

use crate::error::CliError;

/// A matrix argument: a path to a file in the matrix text format, or an
/// inline string with comma-separated entries and semicolon-separated rows,
/// e.g. "1,0,1,1;0,1,1,2".
pub fn matrix_arg(spec: &str) -> Result<IntMatrix, CliError> {
    let path = Path::new(spec);
    if path.is_file() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?;
        return IntMatrix::from_text(&text)
            .map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())));
    }
    let rows: Vec<Vec<i64>> = spec
        .split(';')
        .map(|row| int_list(row))
        .collect::<Result<_, _>>()?;
    if rows.is_empty() || rows[0].is_empty() {
        return Err(CliError::Invalid(format!("empty matrix spec {spec:?}")));
    }
    let cols = rows[0].len();
    if rows.iter().any(|r| r.len() != cols) {
        return Err(CliError::Invalid(format!("ragged rows in matrix spec {spec:?}")));
    }
    Ok(IntMatrix::from_rows(&rows))
}

pub fn int_list(spec: &str) -> Result<Vec<i64>, CliError> {
    spec.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<i64>()
                .map_err(|_| CliError::Invalid(format!("bad integer {:?}", tok.trim())))
        })
        .collect()
}

pub fn u64_list(spec: &str) -> Result<Vec<u64>, CliError> {
    spec.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<u64>()
                .map_err(|_| CliError::Invalid(format!("bad count {:?}", tok.trim())))
        })
        .collect()
}

pub fn bigint_list(spec: &str) -> Result<Vec<BigInt>, CliError> {
    spec.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<BigInt>()
                .map_err(|_| CliError::Invalid(format!("bad integer {:?}", tok.trim())))
        })
        .collect()
}

/// "n,r,t,omega" shape parameters.
pub fn shape_arg(spec: &str) -> Result<(usize, usize, usize, usize), CliError> {
    let parts: Vec<usize> = spec
        .split(',')
        .map(|tok| {
            tok.trim()
                .parse::<usize>()
                .map_err(|_| CliError::Invalid(format!("bad shape component {:?}", tok.trim())))
        })
        .collect::<Result<_, _>>()?;
    if parts.len() != 4 {
        return Err(CliError::Invalid(format!(
            "shape needs n,r,t,omega, got {} components",
            parts.len()
        )));
    }
    Ok((parts[0], parts[1], parts[2], parts[3]))
}

pub fn frac_arg(spec: &str, name: &str) -> Result<Frac, CliError> {
    parse_frac(spec).map_err(|_| CliError::Invalid(format!("bad {name} fraction {spec:?}")))
}

pub fn f64_list(spec: &str) -> Result<Vec<f64>, CliError> {
    spec.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Invalid(format!("bad coordinate {:?}", tok.trim())))
        })
        .collect()
}
