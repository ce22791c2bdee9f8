#![allow(dead_code)]

use mjpl::glm::LogisticData;
use mjpl::numerics::Matrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// Basis of the null space of `rows` (each of length `d`) by row reduction.
pub fn null_space(rows: &[Vec<f64>], d: usize) -> Vec<Vec<f64>> {
    let mut m: Vec<Vec<f64>> = rows.to_vec();
    let scale = m.iter().flatten().fold(1.0_f64, |s, v| s.max(v.abs()));
    let tol = 1e-10 * scale;
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..d {
        if r == m.len() {
            break;
        }
        let (best, val) = (r..m.len())
            .map(|i| (i, m[i][c].abs()))
            .fold((r, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if val <= tol {
            continue;
        }
        m.swap(r, best);
        let piv = m[r][c];
        m[r].iter_mut().for_each(|v| *v /= piv);
        for i in 0..m.len() {
            if i != r {
                let f = m[i][c];
                if f != 0.0 {
                    for k in 0..d {
                        m[i][k] -= f * m[r][k];
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..d).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0.0; d];
            v[f] = 1.0;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[row][f];
            }
            v
        })
        .collect()
}

fn signed_rows(data: &LogisticData) -> Vec<Vec<f64>> {
    (0..data.n())
        .map(|i| {
            let s = 2.0 * data.y()[i] - 1.0;
            data.design().row(i).iter().map(|v| s * v).collect()
        })
        .collect()
}

fn separates(rows: &[Vec<f64>], b: &[f64]) -> bool {
    let norm = b.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm == 0.0 {
        return false;
    }
    let margins: Vec<f64> = rows
        .iter()
        .map(|r| r.iter().zip(b).map(|(x, b)| x * b).sum::<f64>() / norm)
        .collect();
    margins.iter().all(|&m| m >= -1e-9) && margins.iter().any(|&m| m > 1e-6)
}

fn subsets(n: usize, k: usize, start: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if current.len() == k {
        out.push(current.clone());
        return;
    }
    for i in start..n {
        current.push(i);
        subsets(n, k, i + 1, current, out);
        current.pop();
    }
}

/// Exhaustive separation check for small problems.
///
/// A separating direction, if any exists, can be taken on an extreme ray of
/// the cone `{b : s_i x_i^T b >= 0}` modulo its lineality space, so it is the
/// one-dimensional null space of some set of at most `d - 1` active rows
/// together with the lineality directions. Every such set is tried, followed
/// by a grid over the sphere.
pub fn oracle_separated(data: &LogisticData) -> bool {
    let rows = signed_rows(data);
    let d = data.dim();
    let lineality = null_space(&rows, d);
    // candidates must be orthogonal to the lineality space
    let mut candidates = Vec::new();
    for k in 0..d {
        let mut sets = Vec::new();
        subsets(rows.len(), k, 0, &mut Vec::new(), &mut sets);
        for set in sets {
            let mut sys: Vec<Vec<f64>> = set.iter().map(|&i| rows[i].clone()).collect();
            sys.extend(lineality.iter().cloned());
            let ns = null_space(&sys, d);
            if ns.len() == 1 {
                candidates.push(ns[0].clone());
            }
        }
    }
    for v in &candidates {
        let neg: Vec<f64> = v.iter().map(|x| -x).collect();
        if separates(&rows, v) || separates(&rows, &neg) {
            return true;
        }
    }
    sphere_grid_search(&rows, d, 13)
}

fn sphere_grid_search(rows: &[Vec<f64>], d: usize, k: usize) -> bool {
    let grid: Vec<f64> = (0..k).map(|i| -1.0 + 2.0 * i as f64 / (k - 1) as f64).collect();
    let total = k.pow(d as u32);
    let mut b = vec![0.0; d];
    for idx in 0..total {
        let mut r = idx;
        for v in b.iter_mut() {
            *v = grid[r % k];
            r /= k;
        }
        if separates(rows, &b) {
            return true;
        }
    }
    false
}

/// Small random instances with a mix of overlapping and separated responses,
/// including some with tied covariate values.
pub fn random_small_instances(count: usize, seed: u64) -> Vec<LogisticData> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let p = rng.random_range(1..=3);
        let n = rng.random_range(2..=12);
        let discrete = rng.random_bool(0.25);
        let x = Matrix::from_fn(n, p, |_, _| {
            if discrete {
                rng.random_range(-2..=2) as f64
            } else {
                rng.sample::<f64, _>(StandardNormal)
            }
        });
        let beta: Vec<f64> = (0..=p).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
        let noise = [0.0, 0.5, 2.0, 10.0][rng.random_range(0..4)];
        let y: Vec<f64> = (0..n)
            .map(|i| {
                let eta = beta[0]
                    + x.row(i).iter().zip(&beta[1..]).map(|(a, b)| a * b).sum::<f64>()
                    + noise * rng.sample::<f64, _>(StandardNormal);
                if eta > 0.0 { 1.0 } else { 0.0 }
            })
            .collect();
        out.push(LogisticData::new(y, &x, true).unwrap());
    }
    out
}
