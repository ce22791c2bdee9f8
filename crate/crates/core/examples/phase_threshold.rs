//! Evaluates the asymptotic existence threshold along the signal strength and
//! checks one point against the simulated separation frequency.
//!
//! cargo run --release --example phase_threshold

use mjpl::phase::{h_mle, mc_phase_boundary, mle_exists_asymptotically, ExistenceMethod, PhasePoint, DEFAULT_PANELS};

fn main() -> mjpl::Result<()> {
    println!("{:>7} {:>8} {:>8}", "gamma0", "beta0=0", "beta0=1");
    for gamma0 in [0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0] {
        println!(
            "{gamma0:>7} {:>8.4} {:>8.4}",
            h_mle(0.0, gamma0, DEFAULT_PANELS)?,
            h_mle(1.0, gamma0, DEFAULT_PANELS)?
        );
    }

    let point = PhasePoint::from_signal(0.3, 5.0, 0.0)?;
    let verdict = mle_exists_asymptotically(&point, ExistenceMethod::default())?;
    println!(
        "kappa 0.3, gamma 5: threshold {:.4}, MLE exists = {}",
        verdict.h_value, verdict.exists_asymptotically
    );

    let simulated = mc_phase_boundary(0.0, 5.0, 500, 20, 1)?;
    println!("simulated threshold at n = 500: {simulated:.4}");
    Ok(())
}
