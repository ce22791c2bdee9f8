//! Detection of complete and quasi-complete separation in binary-response data.

mod simplex;

pub use simplex::{simplex_solve, LinearProgram, LpOutcome};

use crate::glm::LogisticData;
use crate::numerics::Matrix;

/// Optimum values at or below this are treated as zero (overlap).
pub const SEPARATION_TOL: f64 = 1e-7;

#[derive(Clone, Debug, PartialEq)]
pub struct SeparationVerdict {
    pub separated: bool,
    /// Direction `b` with `(2y_i - 1) x_i^T b >= 0` for every row, strict for some.
    pub certificate: Option<Vec<f64>>,
    /// Optimum of the detection program.
    pub objective: f64,
}

/// Signed design rows `(2y_i - 1) x_i` (intercept column included).
fn signed_rows(data: &LogisticData) -> Matrix {
    let design = data.design();
    let mut rows = design.clone();
    for (i, &y) in data.y().iter().enumerate() {
        if y == 0.0 {
            rows.row_mut(i).iter_mut().for_each(|v| *v = -*v);
        }
    }
    rows
}

/// Decides whether the responses are separated by a hyperplane through the
/// design rows.
///
/// The detection program is `max sum_i s_i x_i^T b` subject to
/// `s_i x_i^T b >= 0` and `|b_j| <= 1`, with `s_i = 2y_i - 1`. Its optimum is
/// zero exactly when the data overlap. The program is highly degenerate at
/// `b = 0`, so it is solved through its dual
///
/// ```text
/// min || A^T u + c ||_1  over  u >= 0,      A = signed rows, c = A^T 1,
/// ```
///
/// which has one row per coefficient instead of one per observation. The
/// optimal multipliers of the dual rows are the direction `b`.
pub fn detect_separation(data: &LogisticData) -> SeparationVerdict {
    detect_separation_with_tol(data, SEPARATION_TOL)
}

pub fn detect_separation_with_tol(data: &LogisticData, tol: f64) -> SeparationVerdict {
    let signed = signed_rows(data);
    let (n, d) = (signed.rows(), signed.cols());

    let mut c = vec![0.0; d];
    for i in 0..n {
        for (s, v) in c.iter_mut().zip(signed.row(i)) {
            *s += v;
        }
    }

    // columns: u (n), e+ (d), e- (d); row j: sum_i A_ij u_i + e+_j - e-_j = -c_j
    let ncols = n + 2 * d;
    let mut t = vec![0.0; d * ncols];
    let mut xb = vec![0.0; d];
    let mut basis = vec![0; d];
    for j in 0..d {
        // scale the row so the starting basic column is +e_j
        let sign = if -c[j] >= 0.0 { 1.0 } else { -1.0 };
        let row = &mut t[j * ncols..(j + 1) * ncols];
        for i in 0..n {
            row[i] = sign * signed.get(i, j);
        }
        row[n + j] = sign;
        row[n + d + j] = -sign;
        xb[j] = sign * -c[j];
        basis[j] = if sign > 0.0 { n + j } else { n + d + j };
    }
    let mut cost = vec![0.0; ncols];
    cost[n..].iter_mut().for_each(|v| *v = -1.0);
    let upper = vec![f64::INFINITY; ncols];

    let solution = simplex::solve_canonical(t, d, xb, basis, cost, upper)
        .expect("the dual program is bounded below by zero");
    let value = -solution.objective;
    if value <= tol {
        return SeparationVerdict {
            separated: false,
            certificate: None,
            objective: value.max(0.0),
        };
    }
    // y_j = cost(e+_j) - reduced(e+_j); optimality keeps it in [-1, 1]
    let certificate: Vec<f64> = (0..d)
        .map(|j| (-1.0 - solution.reduced[n + j]).clamp(-1.0, 1.0))
        .collect();
    SeparationVerdict {
        separated: true,
        certificate: Some(certificate),
        objective: value,
    }
}
