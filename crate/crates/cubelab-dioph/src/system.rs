//! Systems of linear equations over signed combinations of cubes, counted
//! exactly. Each column of the coefficient matrix acts on one "compound"
//! variable: a signed sum of cubes drawn from per-variable pools, or a bare
//! value list. Columns reduce to (value, multiplicity) tables; the tables
//! are then joined either directly or by meet-in-the-middle hashing.

use std::sync::Arc;

use cubelab_cubes::{pow_frac_floor, Frac, SmoothSet};
use cubelab_matrix::IntMatrix;

use crate::cone::form_columns;
use crate::error::CountError;
use crate::mitm::{balanced_split, join_count, product_size};
use crate::report::CountReport;

/// Admissible values for one cube variable.
#[derive(Clone, Debug)]
pub enum Pool {
    Range { lo: u64, hi: u64 },
    Set(Arc<Vec<u64>>),
}

impl Pool {
    pub fn len(&self) -> usize {
        match self {
            Pool::Range { lo, hi } => {
                if hi < lo {
                    0
                } else {
                    (hi - lo + 1) as usize
                }
            }
            Pool::Set(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn for_each(&self, f: &mut dyn FnMut(u64)) {
        match self {
            Pool::Range { lo, hi } => {
                for x in *lo..=*hi {
                    f(x);
                }
            }
            Pool::Set(v) => {
                for &x in v.iter() {
                    f(x);
                }
            }
        }
    }
}

/// One column: its coefficient vector and what the compound variable is.
#[derive(Clone, Debug)]
pub enum ColumnKind {
    /// Signed cube combination: sum of sign_k * x_k^3 with x_k in pools[k].
    Cubes { signs: Vec<i8>, pools: Vec<Pool> },
    /// Explicit value list, each value with multiplicity 1.
    Values(Arc<Vec<i64>>),
}

#[derive(Clone, Debug)]
pub struct ColumnSpec {
    pub coeffs: Vec<i64>,
    pub kind: ColumnKind,
}

#[derive(Clone, Debug)]
pub struct LinearFormSystem {
    pub rows: usize,
    pub target: Vec<i64>,
    pub columns: Vec<ColumnSpec>,
    /// P or N, whichever drives the instance; echoed in reports.
    pub scale: u64,
}

/// Per-column (value, multiplicity) table, ascending in value.
pub type ValueTable = Vec<(i64, u64)>;

fn cube_i64(x: u64) -> Result<i64, CountError> {
    let big = (x as i128).pow(3);
    i64::try_from(big).map_err(|_| CountError::BadInstance(format!("{x}^3 exceeds i64")))
}

pub fn column_table(kind: &ColumnKind) -> Result<ValueTable, CountError> {
    match kind {
        ColumnKind::Values(vals) => {
            let mut map = std::collections::BTreeMap::new();
            for &v in vals.iter() {
                *map.entry(v).or_insert(0u64) += 1;
            }
            Ok(map.into_iter().collect())
        }
        ColumnKind::Cubes { signs, pools } => {
            if signs.len() != pools.len() {
                return Err(CountError::BadInstance("signs/pools length mismatch".into()));
            }
            let mut table: std::collections::BTreeMap<i64, u64> =
                std::collections::BTreeMap::new();
            table.insert(0, 1);
            for (&s, pool) in signs.iter().zip(pools) {
                if s != 1 && s != -1 {
                    return Err(CountError::BadInstance(format!("sign {s} is not +1/-1")));
                }
                let mut next: std::collections::BTreeMap<i64, u64> =
                    std::collections::BTreeMap::new();
                let mut err = None;
                for (&v, &m) in &table {
                    pool.for_each(&mut |x| {
                        if err.is_some() {
                            return;
                        }
                        match cube_i64(x).map(|c| v.checked_add(s as i64 * c)) {
                            Ok(Some(v2)) => *next.entry(v2).or_insert(0) += m,
                            Ok(None) => err = Some("column value overflow".to_string()),
                            Err(e) => err = Some(e.to_string()),
                        }
                    });
                }
                if let Some(msg) = err {
                    return Err(CountError::BadInstance(msg));
                }
                table = next;
            }
            Ok(table.into_iter().collect())
        }
    }
}

/// Worst-case size of a column's table, before value collisions.
fn column_cost(kind: &ColumnKind) -> f64 {
    match kind {
        ColumnKind::Values(v) => v.len() as f64,
        ColumnKind::Cubes { pools, .. } => pools.iter().map(|p| p.len() as f64).product(),
    }
}

#[derive(Clone, Debug)]
pub struct EngineOptions {
    /// Refuse runs whose estimated operation count exceeds this.
    pub budget: f64,
    /// Work partitions for the probe-side loop; never changes the count.
    pub partitions: usize,
    /// Explicit left half (column indices) for the meet-in-the-middle join.
    pub split: Option<Vec<usize>>,
    /// Join everything against an empty left half: plain product scan.
    pub force_direct: bool,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions {
            budget: 1e10,
            partitions: rayon::current_num_threads().max(1),
            split: None,
            force_direct: false,
        }
    }
}

pub fn count_forms(sys: &LinearFormSystem, opts: &EngineOptions) -> Result<CountReport, CountError> {
    if sys.columns.is_empty() {
        return Err(CountError::BadInstance("system has no columns".into()));
    }
    if sys.target.len() != sys.rows {
        return Err(CountError::BadInstance("target length differs from row count".into()));
    }
    for (j, col) in sys.columns.iter().enumerate() {
        if col.coeffs.len() != sys.rows {
            return Err(CountError::BadInstance(format!(
                "column {j} has {} coefficients for {} rows",
                col.coeffs.len(),
                sys.rows
            )));
        }
    }
    let build_cost: f64 = sys.columns.iter().map(|c| column_cost(&c.kind)).sum();
    if build_cost > opts.budget {
        return Err(CountError::Budget { estimated: build_cost, budget: opts.budget });
    }
    let tables: Vec<ValueTable> =
        sys.columns.iter().map(|c| column_table(&c.kind)).collect::<Result<_, _>>()?;
    let coeffs: Vec<Vec<i64>> = sys.columns.iter().map(|c| c.coeffs.clone()).collect();

    let left: Vec<usize> = if opts.force_direct {
        Vec::new()
    } else if let Some(split) = &opts.split {
        split.clone()
    } else {
        balanced_split(&tables)
    };
    for &j in &left {
        if j >= tables.len() {
            return Err(CountError::BadInstance(format!("split column {j} out of range")));
        }
    }
    let join_cost = {
        let right: Vec<usize> =
            (0..tables.len()).filter(|j| !left.contains(j)).collect();
        product_size(&tables, &left) + product_size(&tables, &right)
    };
    if build_cost + join_cost > opts.budget {
        return Err(CountError::Budget { estimated: build_cost + join_cost, budget: opts.budget });
    }

    let partitions = opts.partitions.max(1);
    let count = join_count(&coeffs, &tables, &sys.target, &left, partitions)?;
    let strategy = if left.is_empty() {
        "direct".to_string()
    } else {
        format!("mitm(left={})", left.len())
    };
    Ok(CountReport::new(count, sys.scale, strategy, partitions))
}

/// Constraint flavors for the standard three-cube system columns.
#[derive(Clone, Debug, PartialEq)]
pub enum SystemVariant {
    /// x, y, z in [1, P].
    Plain,
    /// x in [1, P]; y, z restricted to P^eta-smooth numbers in [1, P].
    Smooth { eta: Frac },
    /// All of x, y, z in (sigma*P, P]; y, z P^eta-smooth.
    Window { sigma: Frac, eta: Frac },
}

/// Number of assignments with sum_j c_ij (x_j^3 + y_j^3 + z_j^3) = h_i
/// for every row i, under the variant's constraints.
pub fn count_system(
    c: &IntMatrix,
    h: &[i64],
    p: u64,
    variant: &SystemVariant,
    opts: &EngineOptions,
) -> Result<CountReport, CountError> {
    if p == 0 {
        return Err(CountError::BadInstance("count_system needs P >= 1".into()));
    }
    let cols = form_columns(c)?;
    let (x_pool, yz_pool) = variant_pools(p, variant)?;
    let columns = cols
        .into_iter()
        .map(|coeffs| ColumnSpec {
            coeffs,
            kind: ColumnKind::Cubes {
                signs: vec![1, 1, 1],
                pools: vec![x_pool.clone(), yz_pool.clone(), yz_pool.clone()],
            },
        })
        .collect();
    let sys = LinearFormSystem { rows: c.rows(), target: h.to_vec(), columns, scale: p };
    count_forms(&sys, opts)
}

fn variant_pools(p: u64, variant: &SystemVariant) -> Result<(Pool, Pool), CountError> {
    match variant {
        SystemVariant::Plain => {
            Ok((Pool::Range { lo: 1, hi: p }, Pool::Range { lo: 1, hi: p }))
        }
        SystemVariant::Smooth { eta } => {
            let z = pow_frac_floor(p, *eta);
            let smooth = SmoothSet::build(p, z)?;
            Ok((Pool::Range { lo: 1, hi: p }, Pool::Set(Arc::new(smooth.members()))))
        }
        SystemVariant::Window { sigma, eta } => {
            if *sigma >= Frac::from_integer(1) {
                return Err(CountError::BadInstance("window needs sigma < 1".into()));
            }
            let xmin = (*sigma.numer() as u128 * p as u128 / *sigma.denom() as u128) as u64 + 1;
            let z = pow_frac_floor(p, *eta);
            let smooth = SmoothSet::build(p, z)?;
            Ok((
                Pool::Range { lo: xmin, hi: p },
                Pool::Set(Arc::new(smooth.members_in(xmin - 1, p))),
            ))
        }
    }
}
