use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use super::AsymError;
use crate::towers::TowerReport;

/// Least-squares power law `count ~ C x^a (log x)^(b - 1)` on log-log data.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SlopeFit {
    pub samples: Vec<(f64, f64)>,
    pub exponent: f64,
    pub intercept: f64,
    /// `b` of the log-mode fit, when requested.
    pub log_power: Option<f64>,
    /// Root mean square residual in `log count`.
    pub residual: f64,
}

fn validate(samples: &[(f64, f64)], min: usize) -> Result<(), AsymError> {
    if samples.len() < min {
        return Err(AsymError::InsufficientSamples(format!(
            "{} samples, need at least {min}",
            samples.len()
        )));
    }
    if let Some(&(x, c)) = samples.iter().find(|&&(x, c)| !(x > 1.0 && c > 0.0)) {
        return Err(AsymError::InsufficientSamples(format!(
            "sample ({x}, {c}) is not positive"
        )));
    }
    let lo = samples.iter().map(|s| s.0).fold(f64::INFINITY, f64::min);
    let hi = samples.iter().map(|s| s.0).fold(0.0, f64::max);
    if hi / lo < 100.0 * (1.0 - 1e-12) {
        return Err(AsymError::InsufficientSamples(format!(
            "samples span {:.2} decades, need 2",
            (hi / lo).log10()
        )));
    }
    Ok(())
}

fn least_squares(samples: &[(f64, f64)], with_log: bool) -> (DVector<f64>, f64) {
    let cols = if with_log { 3 } else { 2 };
    let a = DMatrix::from_fn(samples.len(), cols, |i, j| {
        let x = samples[i].0;
        match j {
            0 => 1.0,
            1 => x.ln(),
            _ => x.ln().ln(),
        }
    });
    let y = DVector::from_iterator(samples.len(), samples.iter().map(|s| s.1.ln()));
    let coef = a
        .clone()
        .svd(true, true)
        .solve(&y, 1e-14)
        .expect("SVD with both factors computed");
    let r = &a * &coef - &y;
    let rms = (r.norm_squared() / samples.len() as f64).sqrt();
    (coef, rms)
}

/// Fits `log count = c + a log x`. Needs at least four positive samples
/// spanning two decades.
pub fn slope_fit(samples: &[(f64, f64)]) -> Result<SlopeFit, AsymError> {
    validate(samples, 4)?;
    let (coef, residual) = least_squares(samples, false);
    Ok(SlopeFit {
        samples: samples.to_vec(),
        exponent: coef[1],
        intercept: coef[0],
        log_power: None,
        residual,
    })
}

/// Fits `log count = c + a log x + (b - 1) log log x`.
pub fn slope_fit_log(samples: &[(f64, f64)]) -> Result<SlopeFit, AsymError> {
    validate(samples, 4)?;
    let (coef, residual) = least_squares(samples, true);
    Ok(SlopeFit {
        samples: samples.to_vec(),
        exponent: coef[1],
        intercept: coef[0],
        log_power: Some(coef[2] + 1.0),
        residual,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct YExponentCheck {
    pub z_d4: SlopeFit,
    pub y: SlopeFit,
    pub pass: bool,
}

pub const Z_D4_WINDOW: (f64, f64) = (0.9, 1.1);
pub const Y_EXPONENT_MAX: f64 = 0.85;

/// Fitted exponents of `Z_D4` and `Y` over the samples of a tower count:
/// passes if the first lies in `[0.9, 1.1]` and the second is at most
/// `0.85`.
pub fn y_exponent_check(report: &TowerReport) -> Result<YExponentCheck, AsymError> {
    let pts = |f: fn(&crate::towers::TowerCount) -> u64| -> Vec<(f64, f64)> {
        report
            .samples
            .iter()
            .map(|c| (c.x as f64, f(c) as f64))
            .collect()
    };
    let z_d4 = slope_fit(&pts(|c| c.z_d4))?;
    let y = slope_fit(&pts(|c| c.y))?;
    let pass =
        (Z_D4_WINDOW.0..=Z_D4_WINDOW.1).contains(&z_d4.exponent) && y.exponent <= Y_EXPONENT_MAX;
    Ok(YExponentCheck { z_d4, y, pass })
}
