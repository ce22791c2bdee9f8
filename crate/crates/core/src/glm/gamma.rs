use super::logistic::GlmControl;
use crate::error::{Error, Result};
use crate::numerics::{least_squares, Matrix};

/// Gamma-response GLM with log link.
#[derive(Clone, Debug, PartialEq)]
pub struct GammaFit {
    pub coefficients: Vec<f64>,
    /// Moment estimate: Pearson statistic over residual degrees of freedom.
    pub dispersion: f64,
    pub deviance: f64,
    pub null_deviance: f64,
    /// `1 - deviance / null_deviance`; 1 when the null deviance is zero.
    pub deviance_explained: f64,
    pub fitted: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
}

/// Fits `log E(y) = X b` by IRLS.
///
/// With the log link and variance proportional to the squared mean the working
/// weights are all one, so each step is an ordinary least squares fit of the
/// working response `eta + (y - mu) / mu`.
pub fn fit_gamma_log(x: &Matrix, y: &[f64], control: &GlmControl) -> Result<GammaFit> {
    if y.len() != x.rows() {
        return Err(Error::LengthMismatch {
            left: x.rows(),
            right: y.len(),
        });
    }
    if let Some(i) = y.iter().position(|v| !(*v > 0.0) || !v.is_finite()) {
        return Err(Error::NonPositiveResponse { index: i, value: y[i] });
    }
    let n = y.len();
    let rank = x.cols();
    if n <= rank {
        return Err(Error::InvalidInput(format!(
            "{n} observations cannot support {rank} coefficients"
        )));
    }

    let log_y: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let mut beta = least_squares(x, &log_y)?;
    let mut iterations = 0;
    let mut converged = false;
    while iterations < control.max_iter {
        iterations += 1;
        let eta = x.mul_vec(&beta);
        let z: Vec<f64> = eta
            .iter()
            .zip(y)
            .map(|(&e, &yi)| e + (yi - e.exp()) / e.exp())
            .collect();
        let next = least_squares(x, &z)?;
        let change = next
            .iter()
            .zip(&beta)
            .fold(0.0_f64, |m, (a, b)| m.max((a - b).abs()));
        beta = next;
        if change < control.tol {
            converged = true;
            break;
        }
    }

    let fitted: Vec<f64> = x.mul_vec(&beta).iter().map(|e| e.exp()).collect();
    let deviance = gamma_deviance(y, &fitted);
    let mean = y.iter().sum::<f64>() / n as f64;
    let null_deviance = gamma_deviance(y, &vec![mean; n]);
    let pearson: f64 = y
        .iter()
        .zip(&fitted)
        .map(|(yi, mi)| ((yi - mi) / mi).powi(2))
        .sum();
    let deviance_explained = if null_deviance > 1e-14 * n as f64 {
        1.0 - deviance / null_deviance
    } else {
        1.0
    };
    Ok(GammaFit {
        coefficients: beta,
        dispersion: pearson / (n - rank) as f64,
        deviance,
        null_deviance,
        deviance_explained,
        fitted,
        iterations,
        converged,
    })
}

fn gamma_deviance(y: &[f64], mu: &[f64]) -> f64 {
    2.0 * y
        .iter()
        .zip(mu)
        .map(|(yi, mi)| -(yi / mi).ln() + (yi - mi) / mi)
        .sum::<f64>()
}
