//! Even-moment counts of the cubic exponential sum have closed forms for
//! small P: the second moment is the diagonal alone, and the fourth moment
//! is diagonal-only until the first taxicab number enters at P = 12.

use cubelab_dioph::{
    count_forms, ColumnKind, ColumnSpec, EngineOptions, LinearFormSystem, Pool,
};
use num_bigint::BigUint;

/// #{x_1..x_k, y_1..y_k in [1,P] : sum x_i^3 = sum y_i^3}.
fn power_moment(k: usize, p: u64, opts: &EngineOptions) -> BigUint {
    let pool = Pool::Range { lo: 1, hi: p };
    let side = |coeff: i64| ColumnSpec {
        coeffs: vec![coeff],
        kind: ColumnKind::Cubes { signs: vec![1; k], pools: vec![pool.clone(); k] },
    };
    let sys = LinearFormSystem {
        rows: 1,
        target: vec![0],
        columns: vec![side(1), side(-1)],
        scale: p,
    };
    count_forms(&sys, opts).unwrap().value()
}

#[test]
fn second_moment_is_exactly_p() {
    let opts = EngineOptions::default();
    for p in 1..=50u64 {
        assert_eq!(power_moment(1, p, &opts), BigUint::from(p), "P = {p}");
    }
}

#[test]
fn fourth_moment_is_diagonal_until_the_taxicab() {
    let opts = EngineOptions::default();
    for p in 1..=11u64 {
        assert_eq!(power_moment(2, p, &opts), BigUint::from(2 * p * p - p), "P = {p}");
    }
    // 1729 = 1^3 + 12^3 = 9^3 + 10^3 contributes 8 off-diagonal solutions.
    assert_eq!(power_moment(2, 12, &opts), BigUint::from(2u64 * 144 - 12 + 8));
    assert_eq!(power_moment(2, 13, &opts), BigUint::from(2u64 * 169 - 13 + 8));
}

#[test]
fn moments_are_strategy_independent() {
    for p in [5u64, 9] {
        let direct = power_moment(2, p, &EngineOptions { force_direct: true, ..Default::default() });
        let split0 = power_moment(2, p, &EngineOptions { split: Some(vec![0]), ..Default::default() });
        let split1 = power_moment(2, p, &EngineOptions { split: Some(vec![1]), ..Default::default() });
        assert_eq!(direct, split0);
        assert_eq!(split0, split1);
    }
}
