//! The correlation sum is dominated by the solution count of its reduced
//! system: each cone point contributing rho-products injects into variable
//! assignments of the kernel form system, because the kernel matrix kills
//! the forms and the box bound caps every cube variable by P.

use cubelab_dioph::{
    count_system, count_xi, EngineOptions, SystemVariant, XiOptions,
};
use cubelab_cubes::{Frac, RhoVariant};
use cubelab_matrix::{cone_coefficient_bound, section4_reduction, IntMatrix};
use num_traits::ToPrimitive;

fn reduced_instance(a: &IntMatrix, h: &[i64]) -> (IntMatrix, Vec<i64>) {
    let h_big: Vec<num_bigint::BigInt> = h.iter().map(|&x| x.into()).collect();
    let red = section4_reduction(a, &h_big).unwrap();
    let h_out = red.h_out.iter().map(|x| x.to_i64().unwrap()).collect();
    (red.b, h_out)
}

fn box_side(a: &IntMatrix, h: &[i64], n: u64) -> u64 {
    let c_a = cone_coefficient_bound(a).to_u64().unwrap();
    let hmax = h.iter().copied().max().unwrap_or(0).max(0) as u64;
    let bound = c_a * n + hmax;
    let mut p = (bound as f64).cbrt().floor() as u64;
    while p * p * p < bound {
        p += 1;
    }
    p
}

fn check_instance(a: &IntMatrix, h: &[i64], n: u64, rho: RhoVariant, sys: SystemVariant) {
    let xi = count_xi(a, h, n, rho.clone(), &XiOptions::default()).unwrap().value();
    let (b, h_out) = reduced_instance(a, h);
    let p = box_side(a, h, n);
    let system = count_system(&b, &h_out, p, &sys, &EngineOptions::default())
        .unwrap()
        .value();
    assert!(
        xi <= system,
        "correlation {xi} exceeds system count {system} at N = {n}, P = {p}, {rho:?}"
    );
}

#[test]
fn diagonal_pair_instance() {
    let a = IntMatrix::from_rows(&[vec![1, 1]]);
    for n in [3u64, 10, 30] {
        for h in [vec![0i64, 0], vec![0, 1], vec![2, 5]] {
            check_instance(&a, &h, n, RhoVariant::Plain, SystemVariant::Plain);
        }
    }
}

#[test]
fn two_row_instance_plain() {
    let a = IntMatrix::from_rows(&[vec![1, 0, 1, 1], vec![0, 1, 1, 2]]);
    for n in [8u64, 16] {
        for h in [vec![0i64; 4], vec![1, 2, 0, 3]] {
            check_instance(&a, &h, n, RhoVariant::Plain, SystemVariant::Plain);
        }
    }
}

#[test]
fn two_row_instance_smooth() {
    let a = IntMatrix::from_rows(&[vec![1, 0, 1, 1], vec![0, 1, 1, 2]]);
    let eta = Frac::new(1, 2);
    for n in [8u64, 16] {
        check_instance(
            &a,
            &[0; 4],
            n,
            RhoVariant::Smooth { eta },
            SystemVariant::Smooth { eta },
        );
    }
}

#[test]
fn reduction_rejects_non_hns_input() {
    let a = IntMatrix::from_rows(&[vec![1, 0, 1, 0], vec![0, 1, 0, 1]]);
    let h: Vec<num_bigint::BigInt> = vec![0.into(); 4];
    assert!(section4_reduction(&a, &h).is_err());
}
