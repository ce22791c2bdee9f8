use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::phase::{mle_exists_asymptotically, ExistenceMethod, PhasePoint};

/// A `(kappa, gamma, rho2)` location in the experiment space.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DesignPoint {
    pub kappa: f64,
    pub gamma: f64,
    pub rho2: f64,
}

/// The 30 `(kappa, gamma)` pairs of the test phase.
pub const TEST_POINTS: [(f64, f64); 30] = [
    (0.01, 1.0),
    (0.01, 8.0),
    (0.01, 15.0),
    (0.05, 4.5),
    (0.05, 11.5),
    (0.05, 18.5),
    (0.15, 1.0),
    (0.15, 8.0),
    (0.15, 15.0),
    (0.22, 8.0),
    (0.22, 15.0),
    (0.25, 4.5),
    (0.25, 11.5),
    (0.25, 18.5),
    (0.30, 8.0),
    (0.30, 15.0),
    (0.35, 1.0),
    (0.35, 4.5),
    (0.35, 11.5),
    (0.35, 18.5),
    (0.40, 8.0),
    (0.40, 15.0),
    (0.45, 4.5),
    (0.45, 11.5),
    (0.45, 18.5),
    (0.50, 8.0),
    (0.50, 15.0),
    (0.55, 4.5),
    (0.55, 11.5),
    (0.55, 18.5),
];

fn radical_inverse(mut i: u64, base: u64) -> f64 {
    let inv = 1.0 / base as f64;
    let mut f = inv;
    let mut out = 0.0;
    while i > 0 {
        out += f * (i % base) as f64;
        i /= base;
        f *= inv;
    }
    out
}

/// `count` points over `(0, 0.6) x (0, 20) x (0, 1)` from the Halton
/// sequence in bases 2, 3, 5 (starting at index 1), shifted modulo one by a
/// uniform vector drawn from `seed` (Cranley-Patterson rotation).
pub fn space_filling_design(count: usize, seed: u64) -> Vec<DesignPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shift: [f64; 3] = [rng.random(), rng.random(), rng.random()];
    let unit = |v: f64, s: f64| {
        let u = (v + s).fract();
        // keep the open box open
        u.clamp(1e-9, 1.0 - 1e-9)
    };
    (1..=count as u64)
        .map(|i| DesignPoint {
            kappa: 0.6 * unit(radical_inverse(i, 2), shift[0]),
            gamma: 20.0 * unit(radical_inverse(i, 3), shift[1]),
            rho2: unit(radical_inverse(i, 5), shift[2]),
        })
        .collect()
}

/// First `count` points of the rotated Halton sequence with `rho2 <= rho2_max`,
/// optionally keeping only points where the MLE does not exist
/// asymptotically (analytic threshold with `panels` panels).
pub fn training_design(count: usize, seed: u64, rho2_max: f64, non_existence_only: bool, panels: usize) -> Result<Vec<DesignPoint>> {
    if !(0.0..1.0).contains(&rho2_max) {
        return Err(Error::InvalidInput(format!("rho2_max = {rho2_max} outside [0, 1)")));
    }
    let mut chosen = Vec::with_capacity(count);
    let mut pool = 4 * count.max(1);
    while chosen.len() < count {
        if pool > 1000 * count.max(1) {
            return Err(Error::InvalidInput(format!("could not find {count} admissible design points")));
        }
        chosen.clear();
        for d in space_filling_design(pool, seed) {
            if chosen.len() == count {
                break;
            }
            if d.rho2 > rho2_max {
                continue;
            }
            if non_existence_only {
                let point = PhasePoint::from_signal(d.kappa, d.gamma, d.rho2)?;
                if mle_exists_asymptotically(&point, ExistenceMethod::Analytic { panels })?.exists_asymptotically {
                    continue;
                }
            }
            chosen.push(d);
        }
        pool *= 4;
    }
    Ok(chosen)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radical_inverse_base_two() {
        let v: Vec<f64> = (1..=4).map(|i| radical_inverse(i, 2)).collect();
        assert_eq!(v, vec![0.5, 0.25, 0.75, 0.125]);
        assert!((radical_inverse(5, 3) - 7.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn design_stays_in_box_and_is_seeded() {
        let d = space_filling_design(100, 7);
        assert_eq!(d.len(), 100);
        for p in &d {
            assert!(p.kappa > 0.0 && p.kappa < 0.6);
            assert!(p.gamma > 0.0 && p.gamma < 20.0);
            assert!(p.rho2 > 0.0 && p.rho2 < 1.0);
        }
        assert_eq!(d, space_filling_design(100, 7));
        assert_ne!(d, space_filling_design(100, 8));
    }

    #[test]
    fn design_fills_each_margin() {
        // every tenth of every margin is visited by 100 points
        let d = space_filling_design(100, 1);
        for bins in [
            d.iter().map(|p| p.kappa / 0.6).collect::<Vec<_>>(),
            d.iter().map(|p| p.gamma / 20.0).collect(),
            d.iter().map(|p| p.rho2).collect(),
        ] {
            let mut counts = [0; 10];
            for u in bins {
                counts[(u * 10.0) as usize] += 1;
            }
            assert!(counts.iter().all(|&c| c >= 7 && c <= 13), "{counts:?}");
        }
    }

    #[test]
    fn test_points_are_sorted_by_kappa() {
        assert!(TEST_POINTS.windows(2).all(|w| w[0].0 <= w[1].0));
    }

    #[test]
    fn training_design_filters() {
        let d = training_design(8, 3, 0.5, true, 40).unwrap();
        assert_eq!(d.len(), 8);
        for p in &d {
            assert!(p.rho2 <= 0.5);
            let pt = PhasePoint::from_signal(p.kappa, p.gamma, p.rho2).unwrap();
            assert!(!mle_exists_asymptotically(&pt, ExistenceMethod::Analytic { panels: 40 }).unwrap().exists_asymptotically);
        }
        // the filter keeps Halton order
        let all = space_filling_design(200, 3);
        let first = all.iter().position(|p| *p == d[0]).unwrap();
        assert!(all[..first].iter().all(|p| p.rho2 > 0.5 || {
            let pt = PhasePoint::from_signal(p.kappa, p.gamma, p.rho2).unwrap();
            mle_exists_asymptotically(&pt, ExistenceMethod::Analytic { panels: 40 }).unwrap().exists_asymptotically
        }));
        assert!(training_design(3, 1, 1.5, false, 40).is_err());
    }
}
