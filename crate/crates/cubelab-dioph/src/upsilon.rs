//! Unweighted correlation count: tuples of representable numbers (each a sum
//! of three positive cubes) in [1, N]^s lying in the kernel of C.

use std::sync::Arc;

use cubelab_cubes::{representable_set, RhoTable, RhoVariant};
use cubelab_matrix::IntMatrix;

use crate::cone::form_columns;
use crate::error::CountError;
use crate::report::CountReport;
use crate::system::{count_forms, ColumnKind, ColumnSpec, EngineOptions, LinearFormSystem};

pub fn count_upsilon(
    c: &IntMatrix,
    n: u64,
    opts: &EngineOptions,
) -> Result<CountReport, CountError> {
    if c.cols() < c.rows() {
        return Err(CountError::BadInstance("need at least as many columns as rows".into()));
    }
    if !c.is_highly_nonsingular()? {
        return Err(CountError::BadInstance("matrix is not highly non-singular".into()));
    }
    let cols = form_columns(c)?;
    let table = RhoTable::build(n, RhoVariant::Plain)?;
    let values: Arc<Vec<i64>> =
        Arc::new(representable_set(&table, n).into_iter().map(|v| v as i64).collect());
    let columns = cols
        .into_iter()
        .map(|coeffs| ColumnSpec { coeffs, kind: ColumnKind::Values(values.clone()) })
        .collect();
    let sys =
        LinearFormSystem { rows: c.rows(), target: vec![0; c.rows()], columns, scale: n };
    count_forms(&sys, opts)
}
