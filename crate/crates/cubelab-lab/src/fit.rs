use crate::error::LabError;

/// Least-squares line through (log x, log value).
#[derive(Clone, Debug)]
pub struct ExponentFit {
    pub points: Vec<(f64, f64)>,
    pub slope: f64,
    pub intercept: f64,
    /// Largest |log value - (slope log x + intercept)| over the points.
    pub max_residual: f64,
}

pub fn fit_exponent(points: &[(f64, f64)]) -> Result<ExponentFit, LabError> {
    if points.len() < 3 {
        return Err(LabError::BadSpec(format!(
            "exponent fit needs at least 3 points, got {}",
            points.len()
        )));
    }
    for &(x, v) in points {
        if !(x > 0.0 && v > 0.0 && x.is_finite() && v.is_finite()) {
            return Err(LabError::BadSpec(format!("nonpositive sweep point ({x}, {v})")));
        }
    }
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, v)| (x.ln(), v.ln())).collect();
    let n = logs.len() as f64;
    let mean_x = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mean_x) * (p.0 - mean_x)).sum();
    if sxx == 0.0 {
        return Err(LabError::BadSpec("all sweep abscissas coincide".into()));
    }
    let sxy: f64 = logs.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let max_residual = logs
        .iter()
        .map(|p| (p.1 - slope * p.0 - intercept).abs())
        .fold(0.0, f64::max);
    Ok(ExponentFit { points: points.to_vec(), slope, intercept, max_residual })
}
