use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{Error, Result};

/// Bias-corrected and accelerated bootstrap interval for one component of a
/// statistic.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BcaInterval {
    pub estimate: f64,
    pub lower: f64,
    pub upper: f64,
    pub level: f64,
    /// Resamples whose statistic could be evaluated.
    pub resamples: usize,
    pub bias_correction: f64,
    pub acceleration: f64,
}

fn std_normal() -> Normal {
    Normal::standard()
}

/// Linear-interpolation quantile of sorted values.
pub fn percentile(sorted: &[f64], prob: f64) -> f64 {
    let n = sorted.len();
    if n == 1 {
        return sorted[0];
    }
    let h = prob.clamp(0.0, 1.0) * (n - 1) as f64;
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(n - 1);
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

/// Interval endpoints from sorted bootstrap values given the bias correction
/// `z0` and acceleration `a`.
pub(crate) fn adjusted_interval(sorted: &[f64], z0: f64, a: f64, level: f64) -> (f64, f64) {
    let normal = std_normal();
    let alpha = (1.0 - level) / 2.0;
    let adjust = |p: f64| {
        let z = normal.inverse_cdf(p);
        normal.cdf(z0 + (z0 + z) / (1.0 - a * (z0 + z)))
    };
    (
        percentile(sorted, adjust(alpha)),
        percentile(sorted, adjust(1.0 - alpha)),
    )
}

/// Case-resampling BCa intervals for every component of `statistic`.
///
/// Resamples are drawn sequentially from a ChaCha8 stream seeded with `seed`
/// and evaluated in parallel; resamples whose statistic fails are dropped.
/// The acceleration comes from the jackknife.
pub fn bootstrap_bca<T, F>(
    points: &[T],
    statistic: F,
    resamples: usize,
    level: f64,
    seed: u64,
) -> Result<Vec<BcaInterval>>
where
    T: Clone + Sync,
    F: Fn(&[T]) -> Result<Vec<f64>> + Sync,
{
    if resamples < 999 {
        return Err(Error::InvalidInput(format!("need at least 999 resamples, got {resamples}")));
    }
    if !(level > 0.0 && level < 1.0) {
        return Err(Error::InvalidInput(format!("confidence level {level} outside (0, 1)")));
    }
    let n = points.len();
    if n < 2 {
        return Err(Error::InvalidInput("bootstrap needs at least two cases".into()));
    }
    let estimate = statistic(points)?;
    let k = estimate.len();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draws: Vec<Vec<usize>> = (0..resamples)
        .map(|_| (0..n).map(|_| rng.random_range(0..n)).collect())
        .collect();
    let boot: Vec<Vec<f64>> = draws
        .par_iter()
        .map(|idx| {
            let sample: Vec<T> = idx.iter().map(|&i| points[i].clone()).collect();
            statistic(&sample).ok().filter(|s| s.len() == k && s.iter().all(|v| v.is_finite()))
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    if boot.is_empty() {
        return Err(Error::DegenerateBootstrap);
    }

    let jack: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|drop| {
            let sample: Vec<T> = points
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != drop)
                .map(|(_, p)| p.clone())
                .collect();
            statistic(&sample).ok().filter(|s| s.len() == k)
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();

    let normal = std_normal();
    let b = boot.len();
    (0..k)
        .map(|c| {
            let mut values: Vec<f64> = boot.iter().map(|s| s[c]).collect();
            values.sort_by(f64::total_cmp);
            if values[0] == values[b - 1] {
                return Err(Error::DegenerateBootstrap);
            }
            let below = values.iter().filter(|&&v| v < estimate[c]).count() as f64;
            let frac = (below / b as f64).clamp(0.5 / b as f64, 1.0 - 0.5 / b as f64);
            let z0 = normal.inverse_cdf(frac);

            let acceleration = if jack.len() >= 2 {
                let mean = jack.iter().map(|s| s[c]).sum::<f64>() / jack.len() as f64;
                let (num, den) = jack.iter().fold((0.0, 0.0), |(n3, d2), s| {
                    let d = mean - s[c];
                    (n3 + d * d * d, d2 + d * d)
                });
                if den > 0.0 {
                    num / (6.0 * den.powf(1.5))
                } else {
                    0.0
                }
            } else {
                0.0
            };
            let (lower, upper) = adjusted_interval(&values, z0, acceleration, level);
            Ok(BcaInterval {
                estimate: estimate[c],
                lower,
                upper,
                level,
                resamples: b,
                bias_correction: z0,
                acceleration,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand_distr::StandardNormal;

    fn mean(xs: &[f64]) -> Result<Vec<f64>> {
        Ok(vec![xs.iter().sum::<f64>() / xs.len() as f64])
    }

    fn symmetric_sample(n: usize) -> Vec<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let half: Vec<f64> = (0..n / 2).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
        half.iter().copied().chain(half.iter().map(|v| -v)).collect()
    }

    #[test]
    fn percentile_interpolates() {
        let v = [1.0, 2.0, 3.0, 4.0, 5.0];
        assert_eq!(percentile(&v, 0.0), 1.0);
        assert_eq!(percentile(&v, 0.5), 3.0);
        assert_eq!(percentile(&v, 0.625), 3.5);
        assert_eq!(percentile(&v, 1.0), 5.0);
    }

    #[test]
    fn no_correction_reduces_to_percentile_interval() {
        let sorted: Vec<f64> = (0..1000).map(|i| (i as f64).sqrt()).collect();
        let (lo, hi) = adjusted_interval(&sorted, 0.0, 0.0, 0.9);
        // equal up to the round trip through the normal cdf and its inverse
        assert!((lo - percentile(&sorted, 0.05)).abs() < 1e-8);
        assert!((hi - percentile(&sorted, 0.95)).abs() < 1e-8);
    }

    #[test]
    fn mean_of_symmetric_data_gives_symmetric_interval() {
        let data = symmetric_sample(200);
        let iv = &bootstrap_bca(&data, |x| mean(x), 4999, 0.95, 3).unwrap()[0];
        let m = iv.estimate;
        assert!(m.abs() < 1e-12);
        let (left, right) = (m - iv.lower, iv.upper - m);
        assert!(left > 0.0 && right > 0.0);
        assert!((left - right).abs() / (left + right) < 0.1, "{left} {right}");
    }

    #[test]
    fn fixed_seed_is_deterministic() {
        let data = symmetric_sample(50);
        let a = bootstrap_bca(&data, |x| mean(x), 1999, 0.95, 8).unwrap();
        let b = bootstrap_bca(&data, |x| mean(x), 1999, 0.95, 8).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn constant_statistic_is_degenerate() {
        let data = vec![1.0; 10];
        assert_eq!(bootstrap_bca(&data, |x| mean(x), 999, 0.95, 1), Err(Error::DegenerateBootstrap));
    }

    #[test]
    fn interval_contains_estimate_for_skewed_data() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..5 {
            let data: Vec<f64> = (0..40).map(|_| rng.sample::<f64, _>(StandardNormal).exp()).collect();
            let iv = &bootstrap_bca(&data, |x| mean(x), 999, 0.8, rng.random()).unwrap()[0];
            assert!(iv.lower <= iv.estimate && iv.estimate <= iv.upper, "{iv:?}");
        }
    }

    #[test]
    fn rejects_small_resample_counts() {
        assert!(bootstrap_bca(&[1.0, 2.0], |x| mean(x), 100, 0.95, 1).is_err());
    }
}
