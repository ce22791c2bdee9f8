//! Computes the shrinkage factor at a point beyond the existence boundary and
//! rescales a penalized fit with it.
//!
//! cargo run --release --example rescale

use mjpl::analysis::{aggregate_bias, q_factor, rescale_estimates, RescaleCoefficients};
use mjpl::glm::{fit_mjpl, GlmControl};
use mjpl::phase::{mle_exists_asymptotically, ExistenceMethod, PhasePoint};
use mjpl::sim::{generate_dataset, BetaStarConfig, CovariateFamily, SimConfig};

fn main() -> mjpl::Result<()> {
    let cfg = SimConfig {
        n: 1000,
        kappa: 0.3,
        gamma: 8.0,
        rho2: 0.1,
        psi: 0.0,
        beta_star: BetaStarConfig::S1,
        family: CovariateFamily::NormalAr1,
        seed: 3,
        point_id: 0,
        replicate: 0,
    };
    let point = PhasePoint::from_signal(cfg.kappa, cfg.gamma, cfg.rho2)?;
    let exists = mle_exists_asymptotically(&point, ExistenceMethod::default())?.exists_asymptotically;
    let b = RescaleCoefficients::default();
    let q = q_factor(cfg.kappa, cfg.gamma, point.gamma0, &b, exists)?;

    let sample = generate_dataset(&cfg)?;
    let fit = fit_mjpl(&sample.data, &GlmControl::default())?;
    let slopes = fit.slopes(&sample.data);
    let rescaled = rescale_estimates(slopes, q)?;
    println!("MLE exists: {exists}, q = {q:.4}");
    println!("aggregate bias before {:.4}", aggregate_bias(slopes, &sample.beta_true)?);
    println!("aggregate bias after  {:.4}", aggregate_bias(&rescaled, &sample.beta_true)?);
    Ok(())
}
