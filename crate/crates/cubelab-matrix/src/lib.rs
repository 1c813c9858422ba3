//! Exact linear algebra for block-structured integer matrices.
//!
//! Everything here computes over arbitrary-precision integers or rationals;
//! no floating point enters any predicate.  The centrepiece is the family of
//! block constructions used by the cube-correlation machinery: linked block
//! matrices, auxiliary matrices of type (n, r, t)_omega, and adjuvant
//! matrices with their doubling construction.

pub mod adjuvant;
pub mod auxiliary;
pub mod error;
pub mod hns;
pub mod int_matrix;
pub mod linked;
pub mod random;
pub mod rational_matrix;
pub mod reduction;

pub use adjuvant::{adjuvant_from_hns, AdjuvantMatrix, SEARCH_COLUMN_LIMIT};
pub use auxiliary::{aux_deletion, build_auxiliary, validate_auxiliary, AuxShape, AuxiliaryMatrix};
pub use error::{AdjError, AuxError, MatrixError};
pub use hns::hns_block_equivalence;
pub use int_matrix::IntMatrix;
pub use linked::{build_linked_block, identity_plus, identity_star};
pub use rational_matrix::RationalMatrix;
pub use reduction::{cone_coefficient_bound, section4_reduction, Section4Reduction};

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn determinant_small_cases() {
        let m = IntMatrix::from_rows(&[vec![1, 1], vec![1, 2]]);
        assert_eq!(m.determinant().unwrap(), BigInt::from(1));
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(m.determinant().unwrap(), BigInt::from(6));
        let singular = IntMatrix::from_rows(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(singular.determinant().unwrap(), BigInt::from(0));
        let m = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(m.determinant().unwrap(), BigInt::from(-1));
    }

    #[test]
    fn minors_of_ones_and_twos() {
        let m = IntMatrix::from_rows(&[vec![1, 1], vec![1, 2]]);
        assert!(m.all_square_minors_nonsingular());
        let m = IntMatrix::from_rows(&[vec![1, 1], vec![1, 1]]);
        assert!(!m.all_square_minors_nonsingular());
        let with_zero = IntMatrix::from_rows(&[vec![1, 0], vec![1, 2]]);
        assert!(!with_zero.all_square_minors_nonsingular());
    }

    #[test]
    fn linked_block_two_vectors() {
        let b0 = IntMatrix::from_rows(&[vec![1], vec![2]]);
        let b1 = IntMatrix::from_rows(&[vec![3], vec![4]]);
        let linked = build_linked_block(&[b0, b1]).unwrap();
        let expected = IntMatrix::from_rows(&[vec![1, 0], vec![2, 3], vec![0, 4]]);
        assert_eq!(linked, expected);
    }

    #[test]
    fn flips_are_involutions() {
        let m = IntMatrix::from_rows(&[vec![1, 2, 3], vec![4, 5, 6]]);
        assert_eq!(m.flip_columns().flip_columns(), m);
        assert_eq!(m.rotate180().rotate180(), m);
        assert_eq!(m.flip_columns().rotate180(), {
            // rot180 after row reversal leaves only the column reversal.
            let mut cols_rev = IntMatrix::zero(2, 3);
            for r in 0..2 {
                for c in 0..3 {
                    cols_rev.set(r, c, m.at(r, 2 - c).clone());
                }
            }
            cols_rev
        });
    }

    #[test]
    fn identity_blocks_have_documented_formats() {
        assert_eq!(identity_star(2).format(), (3, 2));
        assert_eq!(identity_plus(2).format(), (4, 2));
        assert_eq!(identity_plus(0).format(), (2, 0));
        let i_star = identity_star(2);
        assert_eq!(i_star.at(0, 0), &BigInt::from(1));
        assert_eq!(i_star.at(2, 0), &BigInt::from(0));
        let rot = IntMatrix::identity(3).rotate180();
        assert_eq!(rot, IntMatrix::identity(3));
    }

    #[test]
    fn text_round_trip() {
        let m = IntMatrix::from_rows(&[vec![1, -2, 3], vec![0, 5, -6]]);
        let text = m.to_text();
        assert_eq!(text.lines().next(), Some("2 3"));
        assert_eq!(IntMatrix::from_text(&text).unwrap(), m);
        assert!(IntMatrix::from_text("2 2\n1 2\n3").is_err());
        assert!(IntMatrix::from_text("").is_err());
    }
}
