//! Checks two small datasets for complete or quasi-complete separation and
//! shows that the penalized estimate stays finite where ML runs off.
//!
//! cargo run --example separation

use mjpl::glm::{fit_mjpl, fit_ml, GlmControl, LogisticData};
use mjpl::numerics::Matrix;
use mjpl::separation::detect_separation;

fn show(name: &str, y: Vec<f64>, x: &[f64]) -> mjpl::Result<()> {
    let design = Matrix::from_fn(x.len(), 1, |i, _| x[i]);
    let data = LogisticData::new(y, &design, true)?;
    let verdict = detect_separation(&data);
    println!("{name}: separated = {}", verdict.separated);
    if let Some(b) = &verdict.certificate {
        println!("  separating direction (intercept, x1) = ({:.3}, {:.3})", b[0], b[1]);
    }
    let pen = fit_mjpl(&data, &GlmControl::default())?;
    let ml = fit_ml(&data, &GlmControl::default())?;
    println!("  penalized slope {:.4} ({})", pen.theta[1], pen.status);
    println!("  ML slope        {:.4} ({})", ml.theta[1], ml.status);
    Ok(())
}

fn main() -> mjpl::Result<()> {
    show("split at 2.5", vec![0.0, 0.0, 1.0, 1.0], &[1.0, 2.0, 3.0, 4.0])?;
    show("overlapping", vec![0.0, 1.0, 0.0, 1.0], &[1.0, 2.0, 3.0, 4.0])?;
    Ok(())
}
