//! Least-squares scaling fits on a window of `r`.

use std::fmt;
use std::str::FromStr;

use crate::CorrError;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FitModel {
    /// `y = A r^p` (fitted on `ln y` vs `ln r`; parameter `p`).
    Power,
    /// `y = a + b ln r` (parameter `b`).
    Log,
    /// `y = A e^{−α r}` (fitted on `ln y` vs `r`; parameter `α`).
    Exponential,
}

impl fmt::Display for FitModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FitModel::Power => "power",
            FitModel::Log => "log",
            FitModel::Exponential => "exponential",
        })
    }
}

impl FromStr for FitModel {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "power" => Ok(FitModel::Power),
            "log" => Ok(FitModel::Log),
            "exponential" | "exp" => Ok(FitModel::Exponential),
            other => Err(format!("unknown fit model {other:?}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScalingFit {
    pub model: FitModel,
    /// Exponent `p`, log slope `b` or decay rate `α`.
    pub param: f64,
    pub intercept: f64,
    /// Root-mean-square residual in the fitted coordinates (`ln y` for power
    /// and exponential, so those two are comparable).
    pub residual: f64,
    pub points: usize,
}

/// Ordinary least squares over the points with `r` in `window` (inclusive);
/// points the transform cannot take (`r ≤ 0`, `y ≤ 0`) are skipped.
pub fn fit_scaling(r: &[f64], y: &[f64], window: (f64, f64), model: FitModel) -> Result<ScalingFit, CorrError> {
    let pts: Vec<(f64, f64)> = r
        .iter()
        .zip(y)
        .filter(|(x, _)| **x >= window.0 && **x <= window.1)
        .filter_map(|(&x, &v)| match model {
            FitModel::Power => (x > 0.0 && v > 0.0).then(|| (x.ln(), v.ln())),
            FitModel::Log => (x > 0.0).then(|| (x.ln(), v)),
            FitModel::Exponential => (v > 0.0).then(|| (x, v.ln())),
        })
        .collect();
    if pts.len() < 2 {
        return Err(CorrError::FewPoints(pts.len()));
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(CorrError::FewPoints(1));
    }
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rss: f64 = pts.iter().map(|p| (p.1 - intercept - slope * p.0).powi(2)).sum();
    let param = if model == FitModel::Exponential { -slope } else { slope };
    Ok(ScalingFit { model, param, intercept, residual: (rss / n).sqrt(), points: pts.len() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_exact_laws() {
        let r: Vec<f64> = (1..=10).map(f64::from).collect();
        let pw: Vec<f64> = r.iter().map(|x| 3.0 * x.powf(0.5)).collect();
        let f = fit_scaling(&r, &pw, (1.0, 10.0), FitModel::Power).unwrap();
        assert!((f.param - 0.5).abs() < 1e-12 && f.residual < 1e-12);
        let ex: Vec<f64> = r.iter().map(|x| 2.0 * (-0.7 * x).exp()).collect();
        let f = fit_scaling(&r, &ex, (2.0, 8.0), FitModel::Exponential).unwrap();
        assert!((f.param - 0.7).abs() < 1e-12 && f.points == 7);
        let lg: Vec<f64> = r.iter().map(|x| 1.0 + 2.0 * x.ln()).collect();
        let f = fit_scaling(&r, &lg, (1.0, 10.0), FitModel::Log).unwrap();
        assert!((f.param - 2.0).abs() < 1e-12);
    }

    #[test]
    fn too_few_points() {
        assert!(fit_scaling(&[1.0, 2.0], &[1.0, 0.0], (0.0, 5.0), FitModel::Power).is_err());
    }
}
