//! Aggregate mean squared error of the rescaled penalized estimator on a
//! small (kappa, gamma) grid.
//!
//! cargo run --release --example amse

use mjpl::analysis::RescaleCoefficients;
use mjpl::phase::DEFAULT_PANELS;
use mjpl::sim::{run_amse_experiment, AmseSettings, MjplEstimator, RunOptions};

fn main() -> mjpl::Result<()> {
    let settings = AmseSettings {
        kappas: vec![0.1, 0.3],
        gammas: vec![1.0, 4.0, 8.0],
        n: 400,
        reps: 5,
        seed: 2,
        coefficients: RescaleCoefficients::default(),
        panels: DEFAULT_PANELS,
    };
    let cells = run_amse_experiment(&settings, &MjplEstimator::default(), &RunOptions::default())?;
    println!("{:>5} {:>5} {:>6} {:>6} {:>8} {:>8}", "kappa", "gamma", "exists", "q", "aMSE", "se");
    for c in cells {
        let show = |v: Option<f64>| v.map_or("NA".to_string(), |x| format!("{x:.4}"));
        println!(
            "{:>5} {:>5} {:>6} {:>6.3} {:>8} {:>8}",
            c.kappa, c.gamma, c.exists, c.q, show(c.mean_amse), show(c.se_amse)
        );
    }
    Ok(())
}
