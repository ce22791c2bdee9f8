use rand::Rng;
use rand_distr::StandardNormal;

use super::{make_beta_star, replicate_rng, BetaStarConfig, CovariateFamily, SimConfig};
use crate::error::Result;
use crate::glm::LogisticData;
use crate::numerics::Matrix;

#[derive(Clone, Debug, PartialEq)]
pub struct GeneratedSample {
    pub data: LogisticData,
    /// Covariate coefficients after rescaling.
    pub beta_true: Vec<f64>,
    pub beta0_true: f64,
    /// Variance of `x^T beta` under the covariate distribution.
    pub realized_signal: f64,
}

/// `L^T v` where `L` is the Cholesky factor of the AR(1) correlation matrix
/// with entries `psi^|j - k|`.
///
/// The factor is `L[j][k] = psi^(j - k) c_k` for `k <= j`, with `c_0 = 1` and
/// `c_k = sqrt(1 - psi^2)` otherwise, so the product is a backward recursion.
pub fn ar1_factor_transpose_mul(psi: f64, v: &[f64]) -> Vec<f64> {
    let c = (1.0 - psi * psi).sqrt();
    let mut out = vec![0.0; v.len()];
    let mut acc = 0.0;
    for k in (0..v.len()).rev() {
        acc = v[k] + psi * acc;
        out[k] = if k == 0 { acc } else { c * acc };
    }
    out
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn expit(eta: f64) -> f64 {
    if eta >= 0.0 {
        1.0 / (1.0 + (-eta).exp())
    } else {
        let e = eta.exp();
        e / (1.0 + e)
    }
}

/// Draws one dataset.
///
/// Per row the stream yields the covariates in column order (normal draws by
/// the ziggurat method, or uniforms for Bernoulli covariates) followed by one
/// uniform for the response.
pub fn generate_dataset(cfg: &SimConfig) -> Result<GeneratedSample> {
    cfg.validate()?;
    let (n, p) = (cfg.n, cfg.p());
    let beta_star = make_beta_star(cfg.beta_star, p)?;
    let gamma0 = cfg.gamma0();
    let beta0 = cfg.beta0();
    // Bernoulli columns are independent, so psi plays no part in their scale
    let denom = match cfg.family {
        CovariateFamily::NormalAr1 => norm(&ar1_factor_transpose_mul(cfg.psi, &beta_star)),
        CovariateFamily::Bernoulli { lambda } => (lambda * (1.0 - lambda)).sqrt() * norm(&beta_star),
    };
    let beta: Vec<f64> = if denom > 0.0 {
        beta_star.iter().map(|b| gamma0 * b / denom).collect()
    } else {
        vec![0.0; p]
    };
    let realized_signal = match cfg.family {
        CovariateFamily::NormalAr1 => norm(&ar1_factor_transpose_mul(cfg.psi, &beta)).powi(2),
        CovariateFamily::Bernoulli { lambda } => lambda * (1.0 - lambda) * norm(&beta).powi(2),
    };

    let mut rng = replicate_rng(cfg.seed, cfg.point_id, cfg.replicate);
    let innovation = (1.0 - cfg.psi * cfg.psi).sqrt();
    let mut design = Matrix::zeros(n, p + 1);
    let mut y = Vec::with_capacity(n);
    for i in 0..n {
        let row = design.row_mut(i);
        row[0] = 1.0;
        let x = &mut row[1..];
        match cfg.family {
            CovariateFamily::NormalAr1 => {
                let mut prev = 0.0;
                for (j, v) in x.iter_mut().enumerate() {
                    let z: f64 = rng.sample(StandardNormal);
                    prev = if j == 0 { z } else { cfg.psi * prev + innovation * z };
                    *v = prev;
                }
            }
            CovariateFamily::Bernoulli { lambda } => {
                for v in x.iter_mut() {
                    *v = if rng.random::<f64>() < lambda { 1.0 } else { 0.0 };
                }
            }
        }
        let eta = beta0 + x.iter().zip(&beta).map(|(a, b)| a * b).sum::<f64>();
        y.push(if rng.random::<f64>() < expit(eta) { 1.0 } else { 0.0 });
    }
    Ok(GeneratedSample {
        data: LogisticData::from_design(y, design, true)?,
        beta_true: beta,
        beta0_true: beta0,
        realized_signal,
    })
}

/// Draws a dataset without intercept: `x_ij ~ N(0, 1/p)` independently and
/// `beta` a rescaled s1 configuration with `||beta||^2 / p = gamma^2`.
pub fn generate_isotropic_sample(n: usize, p: usize, gamma: f64, seed: u64, point_id: u64, replicate: u64) -> Result<GeneratedSample> {
    let beta_star = make_beta_star(BetaStarConfig::S1, p)?;
    let target = gamma * (p as f64).sqrt();
    let s = norm(&beta_star);
    let beta: Vec<f64> = beta_star.iter().map(|b| if s > 0.0 { b * target / s } else { 0.0 }).collect();
    let sd = 1.0 / (p as f64).sqrt();
    let mut rng = replicate_rng(seed, point_id, replicate);
    let mut x = Matrix::zeros(n, p);
    let mut y = Vec::with_capacity(n);
    for i in 0..n {
        let row = x.row_mut(i);
        for v in row.iter_mut() {
            *v = sd * rng.sample::<f64, _>(StandardNormal);
        }
        let eta: f64 = row.iter().zip(&beta).map(|(a, b)| a * b).sum();
        y.push(if rng.random::<f64>() < expit(eta) { 1.0 } else { 0.0 });
    }
    let realized_signal = norm(&beta).powi(2) / p as f64;
    Ok(GeneratedSample {
        data: LogisticData::from_design(y, x, false)?,
        beta_true: beta,
        beta0_true: 0.0,
        realized_signal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::cholesky;

    fn cfg(psi: f64) -> SimConfig {
        SimConfig {
            n: 200,
            kappa: 0.05,
            gamma: 3.0,
            rho2: 0.25,
            psi,
            beta_star: BetaStarConfig::S1,
            family: CovariateFamily::NormalAr1,
            seed: 42,
            point_id: 3,
            replicate: 1,
        }
    }

    #[test]
    fn recursion_matches_cholesky_factor() {
        let psi: f64 = 0.6;
        let p = 7;
        let sigma = Matrix::from_fn(p, p, |i, j| psi.powi((i as i32 - j as i32).abs()));
        let l = cholesky(&sigma).unwrap();
        let v: Vec<f64> = (0..p).map(|i| (i as f64 - 2.5) * 0.7).collect();
        let want = l.tr_mul_vec(&v);
        let got = ar1_factor_transpose_mul(psi, &v);
        for (a, b) in got.iter().zip(&want) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn independent_covariates_scale_by_norm() {
        let s = generate_dataset(&cfg(0.0)).unwrap();
        let star = make_beta_star(BetaStarConfig::S1, 10).unwrap();
        let k = s.beta_true[0] / star[0];
        for (b, t) in s.beta_true.iter().zip(&star) {
            assert!((b - k * t).abs() < 1e-12);
        }
        assert!((k - cfg(0.0).gamma0() / norm(&star)).abs() < 1e-12);
    }

    #[test]
    fn signal_is_controlled() {
        for psi in [0.0, 0.3, 0.9, -0.5] {
            let s = generate_dataset(&cfg(psi)).unwrap();
            let g0 = cfg(psi).gamma0();
            assert!((s.realized_signal - g0 * g0).abs() < 1e-9);
        }
    }

    #[test]
    fn empirical_signal_variance() {
        // 1e5 rows, p = 10: sample variance of x^T beta against gamma0^2
        let mut c = cfg(0.5);
        c.n = 100_000;
        c.kappa = 1e-4;
        let s = generate_dataset(&c).unwrap();
        let lin: Vec<f64> = (0..c.n)
            .map(|i| s.data.design().row(i)[1..].iter().zip(&s.beta_true).map(|(a, b)| a * b).sum())
            .collect();
        let mean = lin.iter().sum::<f64>() / c.n as f64;
        let var = lin.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (c.n - 1) as f64;
        let target = c.gamma0().powi(2);
        let se = target * (2.0 / c.n as f64).sqrt();
        assert!((var - target).abs() < 3.0 * se, "{var} vs {target}");
    }

    #[test]
    fn same_stream_same_data() {
        let a = generate_dataset(&cfg(0.3)).unwrap();
        let b = generate_dataset(&cfg(0.3)).unwrap();
        assert_eq!(a, b);
        let mut other = cfg(0.3);
        other.replicate = 2;
        assert_ne!(generate_dataset(&other).unwrap().data, a.data);
    }

    #[test]
    fn dimensions_and_intercept() {
        let s = generate_dataset(&cfg(0.0)).unwrap();
        assert_eq!(s.data.n(), 200);
        assert_eq!(s.data.p(), 10);
        assert!(s.data.has_intercept());
        assert!((s.beta0_true - 1.5).abs() < 1e-12);
    }

    #[test]
    fn bernoulli_rows_are_binary() {
        let mut c = cfg(0.0);
        c.family = CovariateFamily::Bernoulli { lambda: 0.1 };
        let s = generate_dataset(&c).unwrap();
        let ones = (0..s.data.n())
            .flat_map(|i| (0..s.data.p()).map(move |j| (i, j)))
            .filter(|&(i, j)| s.data.covariate(i, j) == 1.0)
            .count();
        assert!((ones as f64 / 2000.0 - 0.1).abs() < 0.03);
        assert!((s.realized_signal - c.gamma0().powi(2)).abs() < 1e-9);
    }

    #[test]
    fn bernoulli_signal_ignores_psi() {
        let mut c = cfg(0.6);
        c.family = CovariateFamily::Bernoulli { lambda: 0.3 };
        let s = generate_dataset(&c).unwrap();
        assert!((s.realized_signal - c.gamma0().powi(2)).abs() < 1e-9);
    }

    #[test]
    fn isotropic_signal_strength() {
        let s = generate_isotropic_sample(50, 8, 2.5, 1, 0, 0).unwrap();
        assert!(!s.data.has_intercept());
        assert_eq!(s.data.dim(), 8);
        let sq: f64 = s.beta_true.iter().map(|b| b * b).sum();
        assert!((sq / 8.0 - 6.25).abs() < 1e-12);
    }
}
