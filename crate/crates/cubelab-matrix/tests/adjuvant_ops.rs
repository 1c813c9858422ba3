use cubelab_matrix::adjuvant::{adjuvant_from_hns, AdjuvantMatrix};
use cubelab_matrix::random::{random_all_minors, random_hns};
use cubelab_matrix::{cone_coefficient_bound, section4_reduction, AdjError, IntMatrix};
use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn generator_block() -> IntMatrix {
    IntMatrix::from_rows(&[
        vec![7, 5, 6, 3],
        vec![7, 1, 4, 8],
        vec![9, 4, 5, 7],
        vec![6, 3, 3, 8],
    ])
}

#[test]
fn base_type_1_4_validates() {
    let adj = AdjuvantMatrix::base(&BigInt::from(8), &generator_block()).unwrap();
    assert_eq!(adj.n(), 1);
    assert_eq!(adj.r(), 4);
    assert_eq!(adj.matrix().format(), (4, 8));
    adj.validate().unwrap();
    adj.check_normalised().unwrap();
}

#[test]
fn base_rejects_bad_generators() {
    let singular_minor = IntMatrix::from_rows(&[vec![1, 0], vec![1, 2]]);
    assert!(AdjuvantMatrix::base(&BigInt::from(1), &singular_minor).is_err());
    assert!(AdjuvantMatrix::base(&BigInt::zero(), &generator_block()).is_err());
}

#[test]
fn doubling_squares_the_type_and_keeps_columns() {
    let adj = AdjuvantMatrix::base(&BigInt::from(3), &generator_block()).unwrap();
    let doubled = adj.complify().unwrap();
    assert_eq!(doubled.n(), 2);
    assert_eq!(doubled.r(), 4);
    let rr = adj.half_rank();
    assert_eq!(doubled.matrix().format(), (2 * rr + 1, 4 * rr + 2));
    // Column 0 is the old column 0 extended by zeros.
    for i in 0..=rr {
        assert_eq!(doubled.matrix().at(i, 0), adj.matrix().at(i, 0));
    }
    for i in rr + 1..2 * rr + 1 {
        assert!(doubled.matrix().at(i, 0).is_zero());
    }
    let redoubled = doubled.complify().unwrap();
    assert_eq!(redoubled.n(), 4);
    redoubled.validate().unwrap();
}

#[test]
fn hns_input_produces_the_expected_3x6() {
    let c = IntMatrix::from_rows(&[vec![1, 0, 1, 1], vec![0, 1, 1, 2]]);
    let adj = adjuvant_from_hns(&c).unwrap();
    assert_eq!(adj.n(), 2);
    assert_eq!(adj.r(), 2);
    let expected = IntMatrix::from_rows(&[
        vec![1, 1, 0, 0, 1, 0],
        vec![0, 1, 1, 0, 2, 2],
        vec![0, 0, 1, 1, 0, 1],
    ]);
    assert_eq!(adj.matrix(), &expected);
    adj.check_normalised().unwrap();
    let doubled = adj.complify().unwrap();
    assert_eq!(doubled.n(), 4);
    assert_eq!(doubled.matrix().format(), (5, 10));
}

#[test]
fn hns_input_r3_gives_type_2_3() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let c = random_hns(3, 6, -4, 4, 2000, &mut rng).unwrap();
    let adj = adjuvant_from_hns(&c).unwrap();
    assert_eq!((adj.n(), adj.r()), (2, 3));
    assert_eq!(adj.matrix().format(), (5, 10));
    adj.complify().unwrap();
}

#[test]
fn non_hns_input_is_rejected() {
    let c = IntMatrix::from_rows(&[vec![1, 0, 1, 0], vec![0, 1, 0, 1]]);
    assert!(matches!(
        adjuvant_from_hns(&c),
        Err(AdjError::BadType(_))
    ));
}

#[test]
fn witness_search_agrees_with_construction() {
    // Narrow enough for exhaustive search: a type (1,2) and a type (2,2).
    let m2 = IntMatrix::from_rows(&[vec![1, 2], vec![1, 3]]);
    let base = AdjuvantMatrix::base(&BigInt::from(2), &m2).unwrap();
    let found = AdjuvantMatrix::search(base.matrix(), 1, 2).unwrap();
    found.validate().unwrap();

    let c = IntMatrix::from_rows(&[vec![1, 0, 1, 1], vec![0, 1, 1, 2]]);
    let built = adjuvant_from_hns(&c).unwrap();
    let found = AdjuvantMatrix::search(built.matrix(), 2, 2).unwrap();
    found.validate().unwrap();
}

#[test]
fn witness_search_rejects_wide_and_degenerate_inputs() {
    let adj = AdjuvantMatrix::base(&BigInt::from(3), &generator_block()).unwrap();
    let doubled = adj.complify().unwrap();
    assert!(matches!(
        AdjuvantMatrix::search(doubled.matrix(), 2, 4),
        Err(AdjError::NonConstructive { .. })
    ));

    let zeros = IntMatrix::zero(2, 4);
    assert!(matches!(
        AdjuvantMatrix::search(&zeros, 1, 2),
        Err(AdjError::NoAssignment)
    ));
}

#[test]
fn tampered_witness_fails_validation() {
    let adj = AdjuvantMatrix::base(&BigInt::from(8), &generator_block()).unwrap();
    let mut fwd = adj.forward_witness().to_vec();
    fwd.swap(0, 1);
    let err = AdjuvantMatrix::from_parts(
        adj.n(),
        adj.r(),
        adj.matrix().clone(),
        fwd,
        adj.flipped_witness().to_vec(),
    );
    assert!(err.is_err());
}

#[test]
fn reduction_kernel_annihilates_the_original_forms() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let a = IntMatrix::from_rows(&[vec![1, 0, 1, 1], vec![0, 1, 1, 2]]);
    let h: Vec<BigInt> = vec![0, 1, 2, 3].into_iter().map(BigInt::from).collect();
    let red = section4_reduction(&a, &h).unwrap();
    assert_eq!(red.lambda, BigInt::from(1));
    assert!(red.b.is_highly_nonsingular().unwrap());
    for _ in 0..50 {
        let n: Vec<BigInt> = (0..2)
            .map(|_| BigInt::from(rng.gen_range(-20i64..=20)))
            .collect();
        let x = a.transpose().mul_vec(&n).unwrap();
        let bx = red.b.mul_vec(&x).unwrap();
        assert!(bx.iter().all(|v| v.is_zero()));
    }
}

#[test]
fn reduction_scales_away_denominators_minimally() {
    let a = IntMatrix::from_rows(&[vec![2, 0, 1, 1], vec![0, 1, 1, 2]]);
    let h: Vec<BigInt> = vec![BigInt::zero(); 4];
    let red = section4_reduction(&a, &h).unwrap();
    assert_eq!(red.lambda, BigInt::from(2));
    assert_eq!(
        red.b,
        IntMatrix::from_rows(&[vec![1, 0, -4, 2], vec![0, 2, 2, -2]])
    );
    assert_eq!(cone_coefficient_bound(&a), BigInt::from(3));

    let not_hns = IntMatrix::from_rows(&[vec![1, 0, 1, 0], vec![0, 1, 0, 1]]);
    assert!(section4_reduction(&not_hns, &h).is_err());
}

#[test]
fn random_bases_double_cleanly() {
    let mut rng = ChaCha8Rng::seed_from_u64(20260815);
    for r in 2..=4usize {
        for trial in 0..10 {
            let m = random_all_minors(r, r, -6, 6, 500, &mut rng)
                .unwrap_or_else(|| panic!("no generator for r={r} trial={trial}"));
            let lambda = BigInt::from(rng.gen_range(1i64..=9) * if trial % 2 == 0 { 1 } else { -1 });
            let adj = AdjuvantMatrix::base(&lambda, &m).unwrap();
            let doubled = adj.complify().unwrap();
            doubled.validate().unwrap();
            doubled.check_normalised().unwrap();
        }
    }
}
