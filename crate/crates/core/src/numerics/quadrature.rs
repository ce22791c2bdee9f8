use std::f64::consts::PI;

/// Gauss–Hermite rule for the weight `exp(-x^2)` on the real line.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussHermite {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussHermite {
    /// `E[f(Z)]` for `Z ~ N(0, 1)` using the rescaled rule.
    pub fn expect_normal(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        let s: f64 = self
            .nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(std::f64::consts::SQRT_2 * x))
            .sum();
        s / PI.sqrt()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// Eigenvalues of the symmetric tridiagonal matrix with diagonal `d` and
/// off-diagonal `e` (`e[i]` couples `i` and `i + 1`), by implicit QL.
fn tridiagonal_eigenvalues(mut d: Vec<f64>, off: &[f64]) -> Vec<f64> {
    let n = d.len();
    let mut e = off.to_vec();
    e.push(0.0);
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            assert!(iter <= 60, "tridiagonal QL failed to converge");
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut underflow = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    d
}

/// Nodes and weights of the `m`-point Gauss–Hermite rule, nodes ascending.
///
/// Nodes start as eigenvalues of the Jacobi matrix of the Hermite
/// recurrence and are polished by Newton steps on the orthonormal Hermite
/// polynomial, whose derivative also gives the weights.
pub fn gauss_hermite(m: usize) -> GaussHermite {
    assert!(m >= 1, "gauss_hermite needs at least one node");
    const PIM4: f64 = 0.751_125_544_464_942_5; // pi^(-1/4)
    let n = m as f64;
    let off: Vec<f64> = (1..m).map(|k| (k as f64 / 2.0).sqrt()).collect();
    let mut x = tridiagonal_eigenvalues(vec![0.0; m], &off);
    x.sort_by(f64::total_cmp);
    let mut w = vec![0.0; m];
    for (xi, wi) in x.iter_mut().zip(w.iter_mut()) {
        let mut z = *xi;
        let mut pp = 0.0;
        for _ in 0..3 {
            let (mut p1, mut p2) = (PIM4, 0.0);
            for j in 1..=m {
                let p3 = p2;
                p2 = p1;
                let jf = j as f64;
                p1 = z * (2.0 / jf).sqrt() * p2 - ((jf - 1.0) / jf).sqrt() * p3;
            }
            pp = (2.0 * n).sqrt() * p2;
            let step = p1 / pp;
            z -= step;
            if step.abs() <= 1e-15 * (1.0 + z.abs()) {
                break;
            }
        }
        *xi = z;
        *wi = 2.0 / (pp * pp);
    }
    // enforce exact symmetry
    for i in 0..m / 2 {
        let (a, b) = (x[m - 1 - i], w[m - 1 - i]);
        x[i] = -a;
        w[i] = b;
    }
    if m % 2 == 1 {
        x[m / 2] = 0.0;
    }
    GaussHermite {
        nodes: x,
        weights: w,
    }
}

/// Nodes and weights of the `m`-point Gauss–Legendre rule on `[-1, 1]`,
/// nodes ascending.
pub fn gauss_legendre(m: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(m >= 1, "gauss_legendre needs at least one node");
    let off: Vec<f64> = (1..m)
        .map(|k| {
            let k = k as f64;
            k / (4.0 * k * k - 1.0).sqrt()
        })
        .collect();
    let mut x = tridiagonal_eigenvalues(vec![0.0; m], &off);
    x.sort_by(f64::total_cmp);
    let mut w = vec![0.0; m];
    for (xi, wi) in x.iter_mut().zip(w.iter_mut()) {
        let mut z = *xi;
        let mut dp = 1.0;
        for _ in 0..3 {
            let (mut p0, mut p1) = (1.0, z);
            for j in 2..=m {
                let jf = j as f64;
                let p2 = ((2.0 * jf - 1.0) * z * p1 - (jf - 1.0) * p0) / jf;
                p0 = p1;
                p1 = p2;
            }
            let (p, prev) = if m == 1 { (z, 1.0) } else { (p1, p0) };
            dp = m as f64 * (z * p - prev) / (z * z - 1.0);
            let step = p / dp;
            z -= step;
            if step.abs() <= 1e-16 {
                break;
            }
        }
        *xi = z;
        *wi = 2.0 / ((1.0 - z * z) * dp * dp);
    }
    (x, w)
}
