//! Mean-value counts attached to an auxiliary matrix D (R x S): solutions of
//! D u = 0 where the first R compound variables are cube differences
//! x1^3 - x2^3 and the remaining S - R are x1^3 + x2^3 - x3^3 - x4^3,
//! every cube variable running over [1, P].

use cubelab_matrix::AuxiliaryMatrix;

use crate::cone::form_columns;
use crate::error::CountError;
use crate::report::CountReport;
use crate::system::{count_forms, ColumnKind, ColumnSpec, EngineOptions, LinearFormSystem, Pool};

pub fn count_i_omega(
    aux: &AuxiliaryMatrix,
    p: u64,
    opts: &EngineOptions,
) -> Result<CountReport, CountError> {
    if p == 0 {
        return Err(CountError::BadInstance("count_i_omega needs P >= 1".into()));
    }
    let d = aux.matrix();
    let r = d.rows();
    let cols = form_columns(d)?;
    let pool = Pool::Range { lo: 1, hi: p };
    let columns: Vec<ColumnSpec> = cols
        .into_iter()
        .enumerate()
        .map(|(j, coeffs)| {
            let signs: Vec<i8> = if j < r { vec![1, -1] } else { vec![1, 1, -1, -1] };
            let pools = vec![pool.clone(); signs.len()];
            ColumnSpec { coeffs, kind: ColumnKind::Cubes { signs, pools } }
        })
        .collect();
    let sys = LinearFormSystem { rows: r, target: vec![0; r], columns, scale: p };
    count_forms(&sys, opts)
}
