//! Draws reproducible samples under each coefficient configuration and
//! covariate family and reports the realized signal.
//!
//! cargo run --example simulate

use mjpl::separation::detect_separation;
use mjpl::sim::{generate_dataset, BetaStarConfig, CovariateFamily, SimConfig};

fn main() -> mjpl::Result<()> {
    for family in [CovariateFamily::NormalAr1, CovariateFamily::Bernoulli { lambda: 0.3 }] {
        for config in BetaStarConfig::ALL {
            let cfg = SimConfig {
                n: 400,
                kappa: 0.2,
                gamma: 3.0,
                rho2: 0.1,
                psi: 0.5,
                beta_star: config,
                family,
                seed: 4,
                point_id: 0,
                replicate: 0,
            };
            let sample = generate_dataset(&cfg)?;
            let ones = sample.data.y().iter().sum::<f64>();
            println!(
                "{family:<15} {config:<10} p {:>3}  beta0 {:>6.3}  signal var {:>7.3}  ones {ones:>3}  separated {}",
                sample.data.p(),
                sample.beta0_true,
                sample.realized_signal,
                detect_separation(&sample.data).separated
            );
        }
    }
    Ok(())
}
