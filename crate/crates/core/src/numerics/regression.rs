use super::matrix::{cholesky_jittered, weighted_xtwx, Matrix};
use crate::error::{Error, Result};

/// Ordinary least squares fit of `y = a + b x`; returns `(a, b)`.
pub fn simple_linreg(x: &[f64], y: &[f64]) -> Result<(f64, f64)> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    let n = x.len();
    if n < 2 {
        return Err(Error::DegenerateDesign);
    }
    let nf = n as f64;
    let mx = x.iter().sum::<f64>() / nf;
    let my = y.iter().sum::<f64>() / nf;
    let (mut sxx, mut sxy) = (0.0, 0.0);
    for (&xi, &yi) in x.iter().zip(y) {
        let dx = xi - mx;
        sxx += dx * dx;
        sxy += dx * (yi - my);
    }
    if !(sxx > 0.0) || sxx <= 1e-14 * x.iter().map(|v| v * v).sum::<f64>() {
        return Err(Error::DegenerateDesign);
    }
    let slope = sxy / sxx;
    Ok((my - slope * mx, slope))
}

/// Least squares coefficients for a small full-rank design, via the normal equations.
pub fn least_squares(x: &Matrix, y: &[f64]) -> Result<Vec<f64>> {
    if y.len() != x.rows() {
        return Err(Error::LengthMismatch {
            left: x.rows(),
            right: y.len(),
        });
    }
    let xtx = weighted_xtwx(x, &vec![1.0; x.rows()])?;
    let l = cholesky_jittered(&xtx).map_err(|_| Error::SingularInformation)?;
    Ok(l.solve(&x.tr_mul_vec(y)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn identity_line() {
        let x = [1.0, 2.0, 5.0];
        let (a, b) = simple_linreg(&x, &x).unwrap();
        assert_abs_diff_eq!(a, 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(b, 1.0, epsilon = 1e-14);
    }

    #[test]
    fn constant_response() {
        let (a, b) = simple_linreg(&[1.0, 2.0, 3.0, 4.0], &[2.5; 4]).unwrap();
        assert_abs_diff_eq!(a, 2.5, epsilon = 1e-14);
        assert_abs_diff_eq!(b, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn hand_case() {
        let (a, b) = simple_linreg(&[1.0, 2.0, 3.0], &[2.0, 4.0, 7.0]).unwrap();
        assert_abs_diff_eq!(b, 2.5, epsilon = 1e-14);
        assert_abs_diff_eq!(a, -2.0 / 3.0, epsilon = 1e-14);
    }

    #[test]
    fn degenerate() {
        assert_eq!(simple_linreg(&[2.0; 4], &[1.0, 2.0, 3.0, 4.0]), Err(Error::DegenerateDesign));
        assert_eq!(simple_linreg(&[2.0], &[1.0]), Err(Error::DegenerateDesign));
    }

    #[test]
    fn least_squares_exact() {
        let x = Matrix::from_rows(&[[1.0, 0.0], [1.0, 1.0], [1.0, 2.0]]).unwrap();
        let b = least_squares(&x, &[1.0, 3.0, 5.0]).unwrap();
        assert_abs_diff_eq!(b[0], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(b[1], 2.0, epsilon = 1e-12);
    }

    proptest! {
        #[test]
        fn residuals_orthogonal(pts in prop::collection::vec((-50.0f64..50.0, -50.0f64..50.0), 3..40)) {
            let x: Vec<f64> = pts.iter().map(|p| p.0).collect();
            let y: Vec<f64> = pts.iter().map(|p| p.1).collect();
            prop_assume!(x.iter().any(|v| (v - x[0]).abs() > 1e-3));
            let (a, b) = simple_linreg(&x, &y).unwrap();
            let r: Vec<f64> = x.iter().zip(&y).map(|(xi, yi)| yi - a - b * xi).collect();
            let scale = 1.0 + y.iter().map(|v| v.abs()).sum::<f64>();
            prop_assert!(r.iter().sum::<f64>().abs() < 1e-9 * scale * 50.0);
            let rx: f64 = r.iter().zip(&x).map(|(ri, xi)| ri * xi).sum();
            prop_assert!(rx.abs() < 1e-9 * scale * 2500.0);
        }
    }
}
