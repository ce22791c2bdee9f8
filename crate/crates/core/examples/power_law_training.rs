//! Runs a small training experiment beyond the existence boundary, fits the
//! power law for the slope shrinkage and attaches BCa intervals.
//!
//! cargo run --release --example power_law_training

use mjpl::analysis::{bootstrap_bca, fit_power_law, PowerLawPoint};
use mjpl::glm::GlmControl;
use mjpl::phase::{ExistenceMethod, DEFAULT_PANELS};
use mjpl::sim::{
    run_training_experiment, training_design, BetaStarConfig, CovariateFamily, MjplEstimator, RunOptions,
    TrainingSettings,
};

fn main() -> mjpl::Result<()> {
    let design = training_design(12, 1, 0.7, true, DEFAULT_PANELS)?;
    let settings = TrainingSettings {
        n: 300,
        reps: 4,
        psi: 0.0,
        beta_star: BetaStarConfig::TrainGrid,
        family: CovariateFamily::NormalAr1,
        seed: 1,
        existence: ExistenceMethod::default(),
    };
    let (_, summary) = run_training_experiment(&design, &settings, &MjplEstimator::default(), &RunOptions::default())?;
    let points: Vec<PowerLawPoint> = summary
        .iter()
        .filter(|s| !s.exists)
        .filter_map(|s| {
            Some(PowerLawPoint {
                kappa: s.kappa,
                gamma: s.gamma,
                gamma0: s.gamma0,
                delta1: s.mean_delta1.filter(|d| *d > 0.0)?,
            })
        })
        .collect();
    println!("{} training points beyond the boundary", points.len());

    let control = GlmControl { tol: 1e-10, ..GlmControl::default() };
    let fit = fit_power_law(&points, &control)?;
    let c = fit.coefficients;
    println!("b0 {:.3}  b1 {:.3}  b2 {:.3}  b3 {:.3}  dispersion {:.4}", c.b0, c.b1, c.b2, c.b3, c.phi);
    println!("deviance explained {:.3}", fit.deviance_explained);

    let intervals = bootstrap_bca(
        &points,
        |pts| {
            let f = fit_power_law(pts, &control)?.coefficients;
            Ok(vec![f.b0, f.b1, f.b2, f.b3])
        },
        999,
        0.95,
        7,
    )?;
    for (name, iv) in ["b0", "b1", "b2", "b3"].iter().zip(&intervals) {
        println!("{name}: {:.3} ({:.3}, {:.3})", iv.estimate, iv.lower, iv.upper);
    }
    Ok(())
}
