//! Simulates an out-of-sample grid and scores the published power law by
//! R^2 on the log scale.
//!
//! cargo run --release --example test_r2

use mjpl::analysis::RescaleCoefficients;
use mjpl::phase::ExistenceMethod;
use mjpl::sim::{r2_by_group, run_test_experiment, BetaStarConfig, CovariateFamily, MjplEstimator, RunOptions, TestGrid};

fn main() -> mjpl::Result<()> {
    let grid = TestGrid {
        ns: vec![400],
        psis: vec![0.0],
        rho2s: vec![0.0],
        configs: vec![BetaStarConfig::S1, BetaStarConfig::U2],
        points: vec![(0.2, 6.0), (0.25, 8.0), (0.3, 10.0), (0.35, 5.0), (0.4, 12.0)],
        family: CovariateFamily::NormalAr1,
    };
    let records = run_test_experiment(&grid, 5, ExistenceMethod::default(), &MjplEstimator::default(), &RunOptions::default())?;
    for r in &records {
        println!(
            "{:<4} kappa {:.2} gamma {:>4} exists {:<5} delta1 {}",
            r.config,
            r.kappa,
            r.gamma,
            r.exists,
            r.delta1.map_or("NA".into(), |d| format!("{d:.4}"))
        );
    }
    for row in r2_by_group(&records, &RescaleCoefficients::default()) {
        let r2 = row.r2.map_or("NA".into(), |v| format!("{v:.3}"));
        println!("{} over {} points: R^2 {r2}", row.config, row.points);
    }
    Ok(())
}
