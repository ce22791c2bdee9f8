//! CSV output. Files start with `#` comment lines describing the run, then a
//! header row. Missing values are written as `NA`.

use std::io::Write;

use super::{ReplicationRecord, TrainingSummary};
use crate::error::Result;

pub const RECORD_HEADER: [&str; 18] = [
    "point_id", "kappa", "gamma", "rho2", "psi", "n", "p", "config", "seed", "replicate", "exists",
    "separated", "delta0", "delta1", "agg_bias", "agg_mse", "iterations", "seconds",
];

const SUMMARY_HEADER: [&str; 11] = [
    "point_id", "kappa", "gamma", "gamma0", "rho2", "exists", "h_mle", "mean_delta0", "mean_delta1",
    "sd_delta1", "replicates",
];

/// Shortest round-trip text for `x`, in exponent form when the plain form
/// would be long.
pub fn num(x: f64) -> String {
    let a = x.abs();
    if a == 0.0 || !a.is_finite() || (1e-5..1e15).contains(&a) {
        x.to_string()
    } else {
        format!("{x:e}")
    }
}

/// Serializes a missing number as `NA`.
pub(crate) fn na<S: serde::Serializer>(v: &Option<f64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(x) => s.serialize_f64(*x),
        None => s.serialize_str("NA"),
    }
}

pub fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "NA".to_string(), |x| x.to_string())
}

pub fn write_comments<W: Write>(out: &mut W, comments: &[String]) -> Result<()> {
    for c in comments {
        for line in c.lines() {
            writeln!(out, "# {line}")?;
        }
    }
    Ok(())
}

pub fn write_records_csv<W: Write>(mut out: W, comments: &[String], records: &[ReplicationRecord]) -> Result<()> {
    write_comments(&mut out, comments)?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(RECORD_HEADER)?;
    for r in records {
        w.write_record([
            r.point_id.to_string(),
            num(r.kappa),
            num(r.gamma),
            num(r.rho2),
            num(r.psi),
            r.n.to_string(),
            r.p.to_string(),
            r.config.to_string(),
            r.seed.to_string(),
            r.replicate.to_string(),
            r.exists.to_string(),
            opt(r.separated),
            opt(r.delta0.map(num)),
            opt(r.delta1.map(num)),
            opt(r.agg_bias.map(num)),
            opt(r.agg_mse.map(num)),
            opt(r.iterations),
            opt(r.seconds.map(num)),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_summaries_csv<W: Write>(mut out: W, comments: &[String], summaries: &[TrainingSummary]) -> Result<()> {
    write_comments(&mut out, comments)?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SUMMARY_HEADER)?;
    for s in summaries {
        w.write_record([
            s.point_id.to_string(),
            num(s.kappa),
            num(s.gamma),
            num(s.gamma0),
            num(s.rho2),
            s.exists.to_string(),
            num(s.h_value),
            opt(s.mean_delta0.map(num)),
            opt(s.mean_delta1.map(num)),
            opt(s.sd_delta1.map(num)),
            s.replicates.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
