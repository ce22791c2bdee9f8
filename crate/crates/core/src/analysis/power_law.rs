use serde::{Deserialize, Serialize};

use super::RescaleCoefficients;
use crate::error::{Error, Result};
use crate::glm::{fit_gamma_log, GammaFit, GlmControl};
use crate::numerics::{least_squares, Matrix};

/// One training design point: mean slope `delta1` observed at `(kappa, gamma, gamma0)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PowerLawPoint {
    pub kappa: f64,
    pub gamma: f64,
    pub gamma0: f64,
    pub delta1: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PowerLawFit {
    /// Gamma-GLM estimates of `log E(delta1) = b0 + b1 log kappa + b2 log gamma + b3 log gamma0`.
    pub coefficients: RescaleCoefficients,
    pub deviance_explained: f64,
    /// `(b0, b1, b2, b3)` from least squares of `log delta1` on the same design.
    pub log_linear: [f64; 4],
    pub gamma_fit: GammaFit,
}

fn design(points: &[PowerLawPoint]) -> Result<Matrix> {
    for p in points {
        if !(p.kappa > 0.0 && p.gamma > 0.0 && p.gamma0 > 0.0) {
            return Err(Error::NonPositiveInput(format!(
                "design point ({}, {}, {})",
                p.kappa, p.gamma, p.gamma0
            )));
        }
    }
    Ok(Matrix::from_fn(points.len(), 4, |i, j| match j {
        0 => 1.0,
        1 => points[i].kappa.ln(),
        2 => points[i].gamma.ln(),
        _ => points[i].gamma0.ln(),
    }))
}

/// Fits the power law to training points where the MLE does not exist.
pub fn fit_power_law(points: &[PowerLawPoint], control: &GlmControl) -> Result<PowerLawFit> {
    if points.len() < 5 {
        return Err(Error::InvalidInput(format!(
            "power-law fit needs at least 5 points, got {}",
            points.len()
        )));
    }
    let x = design(points)?;
    let y: Vec<f64> = points.iter().map(|p| p.delta1).collect();
    let fit = fit_gamma_log(&x, &y, control)?;
    let log_y: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let ols = least_squares(&x, &log_y)?;
    let c = &fit.coefficients;
    Ok(PowerLawFit {
        coefficients: RescaleCoefficients {
            b0: c[0],
            b1: c[1],
            b2: c[2],
            b3: c[3],
            phi: fit.dispersion,
        },
        deviance_explained: fit.deviance_explained,
        log_linear: [ols[0], ols[1], ols[2], ols[3]],
        gamma_fit: fit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use rand_distr::{Distribution, Gamma};

    fn grid(mut delta: impl FnMut(f64, f64, f64) -> f64) -> Vec<PowerLawPoint> {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        (0..40)
            .map(|_| {
                let kappa = rng.random_range(0.05..0.6);
                let gamma = rng.random_range(1.0..20.0);
                let gamma0 = gamma * rng.random_range(0.55..1.0);
                PowerLawPoint { kappa, gamma, gamma0, delta1: delta(kappa, gamma, gamma0) }
            })
            .collect()
    }

    #[test]
    fn noiseless_power_law_is_recovered() {
        let pts = grid(|k, g, g0| g0 / (k * g * g));
        let fit = fit_power_law(&pts, &GlmControl { tol: 1e-12, ..Default::default() }).unwrap();
        let c = fit.coefficients;
        for (got, want) in [(c.b0, 0.0), (c.b1, -1.0), (c.b2, -2.0), (c.b3, 1.0)] {
            assert!((got - want).abs() < 1e-8, "{got} vs {want}");
        }
        assert!((fit.deviance_explained - 1.0).abs() < 1e-10);
        assert!(fit.coefficients.phi < 1e-16);
    }

    #[test]
    fn gamma_and_log_linear_fits_nearly_agree() {
        // Gamma noise with mean one and dispersion 0.004
        let noise = Gamma::new(250.0, 1.0 / 250.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let b = RescaleCoefficients::default();
        let pts = grid(|k, g, g0| {
            (b.b0 + b.b1 * k.ln() + b.b2 * g.ln() + b.b3 * g0.ln()).exp() * noise.sample(&mut rng)
        });
        let fit = fit_power_law(&pts, &GlmControl::default()).unwrap();
        let c = fit.coefficients;
        for (g, o) in [c.b0, c.b1, c.b2, c.b3].iter().zip(fit.log_linear) {
            assert!((g - o).abs() < 0.05, "{g} vs {o}");
        }
        assert!((c.phi - 0.004).abs() < 0.003, "phi {}", c.phi);
    }

    #[test]
    fn too_few_points() {
        let pts = grid(|_, _, _| 1.0);
        assert!(fit_power_law(&pts[..4], &GlmControl::default()).is_err());
    }
}
