//! Fits a simulated high-dimensional sample by penalized and plain maximum
//! likelihood and compares both against the true coefficients.
//!
//! cargo run --release --example penalized_fit

use mjpl::glm::{fit_mjpl, fit_ml, GlmControl};
use mjpl::sim::{generate_dataset, BetaStarConfig, CovariateFamily, SimConfig};

fn main() -> mjpl::Result<()> {
    let cfg = SimConfig {
        n: 1000,
        kappa: 0.1,
        gamma: 2.0,
        rho2: 0.2,
        psi: 0.0,
        beta_star: BetaStarConfig::S1,
        family: CovariateFamily::NormalAr1,
        seed: 11,
        point_id: 0,
        replicate: 0,
    };
    let sample = generate_dataset(&cfg)?;
    let control = GlmControl::default();
    let pen = fit_mjpl(&sample.data, &control)?;
    let ml = fit_ml(&sample.data, &control)?;

    println!("n = {}, p = {}", sample.data.n(), sample.data.p());
    println!("penalized: {} after {} iterations, score norm {:.2e}", pen.status, pen.iterations, pen.score_norm);
    println!("ML:        {} after {} iterations", ml.status, ml.iterations);
    println!("{:>5} {:>9} {:>9} {:>9}", "term", "true", "penalized", "ML");
    println!("{:>5} {:>9.3} {:>9.3} {:>9.3}", "int", sample.beta0_true, pen.theta[0], ml.theta[0]);
    for j in (0..sample.data.p()).step_by(20) {
        println!("{:>5} {:>9.3} {:>9.3} {:>9.3}", format!("x{}", j + 1), sample.beta_true[j], pen.theta[j + 1], ml.theta[j + 1]);
    }
    Ok(())
}
