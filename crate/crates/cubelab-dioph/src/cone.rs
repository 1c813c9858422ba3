//! The strict positive cone of a form system: points n in [1, N]^r with
//! every linear form Lambda_j(n) = sum_i a_ij n_i strictly positive.

use cubelab_matrix::IntMatrix;
use num_traits::ToPrimitive;

use crate::error::CountError;

/// Coefficients of A as i64 columns; forms are column functionals.
pub(crate) fn form_columns(a: &IntMatrix) -> Result<Vec<Vec<i64>>, CountError> {
    let mut cols = Vec::with_capacity(a.cols());
    for j in 0..a.cols() {
        let mut col = Vec::with_capacity(a.rows());
        for i in 0..a.rows() {
            col.push(a.at(i, j).to_i64().ok_or_else(|| {
                CountError::BadInstance(format!("coefficient at ({i}, {j}) exceeds i64"))
            })?);
        }
        cols.push(col);
    }
    Ok(cols)
}

pub fn form_value(col: &[i64], point: &[i64]) -> i64 {
    col.iter().zip(point).map(|(&c, &x)| c * x).sum()
}

/// Visits every cone point in lexicographic order.
pub fn enumerate_cone(
    a: &IntMatrix,
    n: u64,
    visit: &mut dyn FnMut(&[i64]),
) -> Result<(), CountError> {
    if a.rows() == 0 || a.cols() == 0 {
        return Err(CountError::BadInstance("empty form system".into()));
    }
    let cols = form_columns(a)?;
    let r = a.rows();
    let mut point = vec![1i64; r];
    if n == 0 {
        return Ok(());
    }
    let n = n as i64;
    loop {
        if cols.iter().all(|c| form_value(c, &point) > 0) {
            visit(&point);
        }
        // Odometer step.
        let mut k = r;
        loop {
            if k == 0 {
                return Ok(());
            }
            k -= 1;
            if point[k] < n {
                point[k] += 1;
                break;
            }
            point[k] = 1;
        }
    }
}

pub fn cone_points(a: &IntMatrix, n: u64) -> Result<Vec<Vec<i64>>, CountError> {
    let mut out = Vec::new();
    enumerate_cone(a, n, &mut |p| out.push(p.to_vec()))?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_dimensional_cone_is_the_interval() {
        let a = IntMatrix::from_rows(&[vec![1, 1]]);
        let pts = cone_points(&a, 3).unwrap();
        assert_eq!(pts, vec![vec![1], vec![2], vec![3]]);
    }

    #[test]
    fn negated_form_empties_the_cone() {
        let a = IntMatrix::from_rows(&[vec![1, -1]]);
        assert!(cone_points(&a, 10).unwrap().is_empty());
    }

    #[test]
    fn half_space_cuts_the_box_in_half() {
        // Forms n1, n2, n1 - n2: cone is the strict lower triangle.
        let a = IntMatrix::from_rows(&[vec![1, 0, 1], vec![0, 1, -1]]);
        let pts = cone_points(&a, 5).unwrap();
        assert_eq!(pts.len(), 10);
        assert!(pts.iter().all(|p| p[0] > p[1]));
    }

    #[test]
    fn nonempty_cones_have_positive_density() {
        // Full-column systems keep a fixed fraction of the box.
        let a = IntMatrix::from_rows(&[vec![1, 0, 1, 1], vec![0, 1, 1, 2]]);
        for n in [10u64, 20, 40] {
            let pts = cone_points(&a, n).unwrap();
            // All forms have nonnegative coefficients here, so the cone is the box.
            assert_eq!(pts.len() as u64, n * n);
        }
        let b = IntMatrix::from_rows(&[vec![1, 0, 1, 1], vec![0, 1, -1, 2]]);
        for n in [10u64, 20, 40] {
            let count = cone_points(&b, n).unwrap().len() as u64;
            assert!(count * 3 >= n * n, "density collapsed at N = {n}: {count}");
        }
    }

    #[test]
    fn zero_box_is_empty() {
        let a = IntMatrix::from_rows(&[vec![1, 1]]);
        assert!(cone_points(&a, 0).unwrap().is_empty());
    }
}
