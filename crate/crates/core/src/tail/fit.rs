//! Log-linear decay fits of tail curves against `Φ(n)` and against `n`.

use serde::Serialize;

use super::model::PhiModel;
use crate::curve::TailCurve;
use crate::error::{Error, Result};
use crate::stats::fit_line;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Predictor {
    Phi,
    N,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PredictorSource {
    ExactProfile,
    FittedAsymptote,
    Identity,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecayFit {
    pub predictor: Predictor,
    pub source: PredictorSource,
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    /// Grid points with a positive estimate, the only ones fitted.
    pub points: usize,
    /// Smallest `C` with `estimate ≥ e^{-C x}` on every fitted point.
    pub envelope: f64,
}

fn fit(xs: &[f64], ys: &[f64], predictor: Predictor, source: PredictorSource) -> Result<DecayFit> {
    let line = fit_line(xs, ys).ok_or_else(|| Error::invalid("degenerate predictor values"))?;
    let envelope = xs
        .iter()
        .zip(ys)
        .filter(|(&x, _)| x > 0.0)
        .map(|(&x, &y)| -y / x)
        .fold(0.0, f64::max);
    Ok(DecayFit {
        predictor,
        source,
        slope: line.slope,
        intercept: line.intercept,
        r_squared: line.r_squared,
        points: xs.len(),
        envelope,
    })
}

/// `(fit of log estimate against Φ(n), fit against n)`; needs four positive estimates.
pub fn fit_decay(curve: &TailCurve, phi: &PhiModel) -> Result<(DecayFit, DecayFit)> {
    let pts: Vec<(f64, f64)> = curve
        .points
        .iter()
        .filter(|pt| pt.estimate > 0.0)
        .map(|pt| (pt.n as f64, pt.estimate.ln()))
        .collect();
    if pts.len() < 4 {
        return Err(Error::invalid(format!("decay fit needs at least 4 positive estimates, got {}", pts.len())));
    }
    let ns: Vec<f64> = pts.iter().map(|p| p.0).collect();
    let ys: Vec<f64> = pts.iter().map(|p| p.1).collect();
    let phis: Vec<f64> = ns.iter().map(|&n| phi.eval(n)).collect();
    let source = match phi.exact_limit() {
        Some(lim) if ns.iter().all(|&n| n <= lim as f64) => PredictorSource::ExactProfile,
        _ => PredictorSource::FittedAsymptote,
    };
    Ok((fit(&phis, &ys, Predictor::Phi, source)?, fit(&ns, &ys, Predictor::N, PredictorSource::Identity)?))
}
