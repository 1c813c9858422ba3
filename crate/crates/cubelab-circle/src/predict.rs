use cubelab_cubes::{frac_to_f64, Frac};
use cubelab_matrix::IntMatrix;

use crate::arcs::loglog_floor;
use crate::error::CircleError;
use crate::estimate::CircleEstimate;
use crate::integral::singular_integral;
use crate::series::singular_series;
use crate::weyl::WeylSumSpec;

/// Which count the prediction models: all three cube variables free, or
/// two of the three restricted to smooth numbers.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PredictVariant {
    Unsmoothed,
    Smooth { eta: Frac },
}

/// Major-arc prediction C * S(Q) * J(Q) for the count of solutions of the
/// cube system with coefficient matrix C and P-sized variables, with
/// Q = (log log P)^(10 r) floored at 2. The unsmoothed constant is 1; the
/// smooth variant calibrates the per-variable density c-hat as the ratio
/// of the smooth count to the window length, entering once per smooth
/// variable, i.e. to the power 2s.
pub fn major_arc_prediction(
    c: &IntMatrix,
    p: u64,
    sigma: Frac,
    variant: PredictVariant,
    budget: f64,
) -> Result<CircleEstimate, CircleError> {
    if p == 0 {
        return Err(CircleError::BadParameter("prediction needs P >= 1".into()));
    }
    let r = c.rows();
    let s = c.cols();
    if r == 0 || s == 0 {
        return Err(CircleError::BadParameter("coefficient matrix is empty".into()));
    }
    if s < 2 * r + 1 {
        return Err(CircleError::BadParameter(format!(
            "need s >= 2r + 1 columns, got r = {r}, s = {s}"
        )));
    }
    match c.is_highly_nonsingular() {
        Ok(true) => {}
        Ok(false) => {
            return Err(CircleError::BadParameter(
                "coefficient matrix is not highly non-singular".into(),
            ))
        }
        Err(e) => return Err(CircleError::BadParameter(format!("bad matrix: {e}"))),
    }

    let l = loglog_floor(p);
    let q_cut = l.powi(10 * r as i32).max(2.0);
    if q_cut > 1e18 {
        return Err(CircleError::Budget { estimated: q_cut, budget: 1e18 });
    }
    let q_cut = q_cut.floor() as u64;

    let window = (1.0 - frac_to_f64(sigma)) * p as f64;
    let c_hat = match variant {
        PredictVariant::Unsmoothed => 1.0,
        PredictVariant::Smooth { eta } => {
            let members = WeylSumSpec::new(p, sigma, Some(eta), 1)?.members()?;
            members.len() as f64 / window
        }
    };
    let constant = c_hat.powi(2 * s as i32);

    let series = singular_series(q_cut, c, budget)?;
    let integral = singular_integral(q_cut as f64, c, p, sigma)?;
    let value = constant * series.value * integral.value;
    let err = constant
        * (series.err_est * integral.value.abs() + series.value.abs() * integral.err_est);

    Ok(CircleEstimate::quadrature(value, 0, err)
        .with_param("P", p)
        .with_param("Q", q_cut)
        .with_param("L", l)
        .with_param("c_hat", c_hat)
        .with_param("series", series.value)
        .with_param("integral", integral.value)
        .with_param("sigma", sigma))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positive_series_gives_positive_prediction() {
        let c = IntMatrix::from_rows(&[vec![1, 1, -2]]);
        let series = singular_series(64, &c, 1e10).unwrap();
        assert!(series.value > 0.0);
        let pred =
            major_arc_prediction(&c, 8, Frac::new(0, 1), PredictVariant::Unsmoothed, 1e10)
                .unwrap();
        assert!(pred.value > 0.0, "prediction {}", pred.value);
    }

    #[test]
    fn smoothing_shrinks_the_constant() {
        let c = IntMatrix::from_rows(&[vec![1, 1, -2]]);
        let plain =
            major_arc_prediction(&c, 8, Frac::new(0, 1), PredictVariant::Unsmoothed, 1e10)
                .unwrap();
        let smooth = major_arc_prediction(
            &c,
            8,
            Frac::new(0, 1),
            PredictVariant::Smooth { eta: Frac::new(1, 2) },
            1e10,
        )
        .unwrap();
        assert!(smooth.value < plain.value);
        assert!(smooth.value > 0.0);
        let c_hat: f64 = smooth.params["c_hat"].parse().unwrap();
        assert!(c_hat > 0.0 && c_hat < 1.0);
    }

    #[test]
    fn rejects_thin_systems() {
        let c = IntMatrix::from_rows(&[vec![1, 1]]);
        assert!(matches!(
            major_arc_prediction(&c, 8, Frac::new(0, 1), PredictVariant::Unsmoothed, 1e10),
            Err(CircleError::BadParameter(_))
        ));
    }

    #[test]
    fn two_row_systems_exceed_desk_budget() {
        // Q = 2^20 drives the q-sum cost far beyond any desk budget; the
        // guard has to fire rather than stall.
        let c = IntMatrix::from_rows(&[vec![1, 0, 1, 1, 1], vec![0, 1, 1, 2, 3]]);
        assert!(matches!(
            major_arc_prediction(&c, 10, Frac::new(0, 1), PredictVariant::Unsmoothed, 1e10),
            Err(CircleError::Budget { .. })
        ));
    }
}
