use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct Minimum {
    pub argmin: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
}

/// Derivative-free Nelder–Mead simplex minimisation.
///
/// Stops once every vertex lies within `tol` (max-norm) of the best vertex,
/// or after `max_iter` iterations. Ties keep the earlier vertex, so a
/// constant objective returns `x0`.
pub fn nelder_mead<F>(mut f: F, x0: &[f64], tol: f64, max_iter: usize) -> Result<Minimum>
where
    F: FnMut(&[f64]) -> f64,
{
    const REFLECT: f64 = 1.0;
    const EXPAND: f64 = 2.0;
    const CONTRACT: f64 = 0.5;
    const SHRINK: f64 = 0.5;

    let d = x0.len();
    let f0 = f(x0);
    if !f0.is_finite() {
        return Err(Error::NonFiniteObjective(0));
    }
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(d + 1);
    simplex.push((x0.to_vec(), f0));
    for j in 0..d {
        let mut v = x0.to_vec();
        v[j] += if v[j] != 0.0 { 0.05 * v[j] } else { 0.1 };
        let fv = f(&v);
        if !fv.is_finite() {
            return Err(Error::NonFiniteObjective(0));
        }
        simplex.push((v, fv));
    }

    let mut iterations = 0;
    loop {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let diameter = simplex[1..]
            .iter()
            .flat_map(|(v, _)| v.iter().zip(&simplex[0].0).map(|(a, b)| (a - b).abs()))
            .fold(0.0_f64, f64::max);
        if diameter < tol || iterations >= max_iter {
            break;
        }
        iterations += 1;

        let mut centroid = vec![0.0; d];
        for (v, _) in &simplex[..d] {
            for (c, x) in centroid.iter_mut().zip(v) {
                *c += x / d as f64;
            }
        }
        let worst = simplex[d].clone();
        let along = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&worst.0)
                .map(|(c, w)| c + t * (c - w))
                .collect()
        };
        let mut eval = |x: &[f64]| -> Result<f64> {
            let v = f(x);
            if v.is_finite() {
                Ok(v)
            } else {
                Err(Error::NonFiniteObjective(iterations))
            }
        };

        let xr = along(REFLECT);
        let fr = eval(&xr)?;
        if fr < simplex[0].1 {
            let xe = along(EXPAND);
            let fe = eval(&xe)?;
            simplex[d] = if fe < fr { (xe, fe) } else { (xr, fr) };
            continue;
        }
        if fr < simplex[d - 1].1 {
            simplex[d] = (xr, fr);
            continue;
        }
        let (xc, fc) = if fr < worst.1 {
            let xc = along(CONTRACT);
            let fc = eval(&xc)?;
            (xc, fc)
        } else {
            let xc = along(-CONTRACT);
            let fc = eval(&xc)?;
            (xc, fc)
        };
        if fc < fr.min(worst.1) {
            simplex[d] = (xc, fc);
            continue;
        }
        let best = simplex[0].0.clone();
        for vertex in simplex.iter_mut().skip(1) {
            let v: Vec<f64> = best
                .iter()
                .zip(&vertex.0)
                .map(|(b, x)| b + SHRINK * (x - b))
                .collect();
            let fv = eval(&v)?;
            *vertex = (v, fv);
        }
    }
    let (argmin, value) = simplex.swap_remove(0);
    Ok(Minimum {
        argmin,
        value,
        iterations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_bowl() {
        let m = nelder_mead(|x| x[0] * x[0] + x[1] * x[1], &[1.0, 1.0], 1e-9, 10_000).unwrap();
        assert!(m.argmin.iter().all(|v| v.abs() < 1e-6), "{:?}", m.argmin);
    }

    #[test]
    fn rosenbrock() {
        let rosen = |x: &[f64]| (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2);
        let m = nelder_mead(rosen, &[-1.2, 1.0], 1e-10, 20_000).unwrap();
        assert!((m.argmin[0] - 1.0).abs() < 1e-4 && (m.argmin[1] - 1.0).abs() < 1e-4, "{:?}", m);
    }

    #[test]
    fn constant_returns_start() {
        let m = nelder_mead(|_| 3.0, &[0.4, -2.0], 1e-8, 1000).unwrap();
        assert_eq!(m.argmin, vec![0.4, -2.0]);
        assert_eq!(m.value, 3.0);
    }

    #[test]
    fn non_finite_objective() {
        let r = nelder_mead(|x| if x[0] > 0.5 { f64::NAN } else { -x[0] }, &[0.0], 1e-8, 100);
        assert!(matches!(r, Err(Error::NonFiniteObjective(_))));
        assert!(matches!(
            nelder_mead(|_| f64::INFINITY, &[0.0], 1e-8, 100),
            Err(Error::NonFiniteObjective(0))
        ));
    }
}
