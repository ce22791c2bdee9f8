use std::fmt;

use crate::error::{Error, Result};

/// Dense row-major matrix of finite `f64` entries.
#[derive(Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::DimensionMismatch(format!(
                "matrix must be at least 1x1, got {rows}x{cols}"
            )));
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        if let Some(pos) = data.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "non-finite matrix entry at ({}, {})",
                pos / cols,
                pos % cols
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix must be at least 1x1");
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m.data[i * dim + i] = 1.0;
        }
        m
    }

    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        let p = rows.first().map(|r| r.as_ref().len()).unwrap_or(0);
        let mut data = Vec::with_capacity(n * p);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != p {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {p}",
                    r.len()
                )));
            }
            data.extend_from_slice(r);
        }
        Self::new(n, p, data)
    }

    /// Builds a matrix from a function of (row, column).
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.data[i * cols + j] = f(i, j);
            }
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [f64] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.cols, "mul_vec dimension mismatch");
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    /// Returns `self^T v`.
    pub fn tr_mul_vec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.rows, "tr_mul_vec dimension mismatch");
        let mut out = vec![0.0; self.cols];
        for (i, &vi) in v.iter().enumerate() {
            if vi != 0.0 {
                axpy(vi, self.row(i), &mut out);
            }
        }
        out
    }

    pub fn matmul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matmul dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a != 0.0 {
                    axpy(a, other.row(k), dst);
                }
            }
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn trace(&self) -> f64 {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    /// Prepends a column of ones.
    pub fn with_intercept(&self) -> Matrix {
        let c = self.cols + 1;
        let mut data = Vec::with_capacity(self.rows * c);
        for i in 0..self.rows {
            data.push(1.0);
            data.extend_from_slice(self.row(i));
        }
        Matrix {
            rows: self.rows,
            cols: c,
            data,
        }
    }

    /// Multiplies column `j` by `c`.
    pub fn scale_column(&mut self, j: usize, c: f64) {
        for i in 0..self.rows {
            self.data[i * self.cols + j] *= c;
        }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows.min(8) {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        if self.rows > 8 {
            writeln!(f, "  ...")?;
        }
        write!(f, "]")
    }
}

/// Lower-triangular factor with strictly positive diagonal.
#[derive(Clone, Debug, PartialEq)]
pub struct LowerTriangular {
    dim: usize,
    // full dim x dim row-major storage; entries above the diagonal are zero
    data: Vec<f64>,
}

impl LowerTriangular {
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        if j > i {
            0.0
        } else {
            self.data[i * self.dim + j]
        }
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dim).map(|i| self.data[i * self.dim + i]).collect()
    }

    /// log |L L^T|.
    pub fn log_det_product(&self) -> f64 {
        2.0 * self.diagonal().iter().map(|d| d.ln()).sum::<f64>()
    }

    /// Solves `L x = b`.
    pub fn solve_lower(&self, b: &[f64]) -> Vec<f64> {
        assert_eq!(b.len(), self.dim);
        let mut x = b.to_vec();
        for i in 0..self.dim {
            let row = &self.data[i * self.dim..i * self.dim + i];
            let s = x[i] - dot(row, &x[..i]);
            x[i] = s / self.data[i * self.dim + i];
        }
        x
    }

    /// Solves `L^T x = b`.
    pub fn solve_upper(&self, b: &[f64]) -> Vec<f64> {
        assert_eq!(b.len(), self.dim);
        let d = self.dim;
        let mut x = b.to_vec();
        for i in (0..d).rev() {
            x[i] /= self.data[i * d + i];
            let xi = x[i];
            // subtract column i of L^T, i.e. row i of L, from earlier entries
            let row = &self.data[i * d..i * d + i];
            for (xk, &l) in x[..i].iter_mut().zip(row) {
                *xk -= l * xi;
            }
        }
        x
    }

    /// Solves `L L^T x = b`.
    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        self.solve_upper(&self.solve_lower(b))
    }

    /// Returns `L^T v`.
    pub fn tr_mul_vec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.dim);
        let d = self.dim;
        let mut out = vec![0.0; d];
        for i in 0..d {
            let row = &self.data[i * d..i * d + i + 1];
            axpy(v[i], row, &mut out[..=i]);
        }
        out
    }

    /// Returns `L v`.
    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.dim);
        let d = self.dim;
        (0..d)
            .map(|i| dot(&self.data[i * d..i * d + i + 1], &v[..=i]))
            .collect()
    }

    /// Returns `L L^T` as a dense matrix.
    pub fn reconstruct(&self) -> Matrix {
        let d = self.dim;
        Matrix::from_fn(d, d, |i, j| {
            let k = i.min(j) + 1;
            dot(&self.data[i * d..i * d + k], &self.data[j * d..j * d + k])
        })
    }

    pub fn to_matrix(&self) -> Matrix {
        Matrix {
            rows: self.dim,
            cols: self.dim,
            data: self.data.clone(),
        }
    }
}

const SYMMETRY_TOL: f64 = 1e-10;

/// Cholesky factorisation `A = L L^T` without pivoting.
pub fn cholesky(a: &Matrix) -> Result<LowerTriangular> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "cholesky needs a square matrix, got {}x{}",
            a.rows, a.cols
        )));
    }
    let d = a.rows;
    let scale = 1.0 + a.max_abs();
    for i in 0..d {
        for j in 0..i {
            if (a.get(i, j) - a.get(j, i)).abs() > SYMMETRY_TOL * scale {
                return Err(Error::InvalidInput(format!(
                    "matrix is not symmetric at ({i}, {j})"
                )));
            }
        }
    }
    factor_lower(a.as_slice(), d)
}

fn factor_lower(a: &[f64], d: usize) -> Result<LowerTriangular> {
    let mut l = vec![0.0; d * d];
    for i in 0..d {
        for j in 0..=i {
            let s = a[i * d + j] - dot(&l[i * d..i * d + j], &l[j * d..j * d + j]);
            if j == i {
                if s <= 0.0 || !s.is_finite() {
                    return Err(Error::NotPositiveDefinite { pivot: i, value: s });
                }
                l[i * d + i] = s.sqrt();
            } else {
                l[i * d + j] = s / l[j * d + j];
            }
        }
    }
    Ok(LowerTriangular { dim: d, data: l })
}

/// Cholesky with one retry after adding `1e-10 * trace / dim` to the diagonal.
pub fn cholesky_jittered(a: &Matrix) -> Result<LowerTriangular> {
    match cholesky(a) {
        Ok(l) => Ok(l),
        Err(err @ Error::NotPositiveDefinite { .. }) => {
            let d = a.rows;
            let trace = a.trace();
            if !(trace > 0.0) {
                return Err(err);
            }
            let jitter = 1e-10 * trace / d as f64;
            let mut b = a.clone();
            for i in 0..d {
                b.data[i * d + i] += jitter;
            }
            factor_lower(b.as_slice(), d)
        }
        Err(e) => Err(e),
    }
}

/// `sum_i w_i x_i x_i^T` over the rows `x_i` of `x`.
pub fn weighted_xtwx(x: &Matrix, w: &[f64]) -> Result<Matrix> {
    if w.len() != x.rows {
        return Err(Error::DimensionMismatch(format!(
            "{} weights for {} rows",
            w.len(),
            x.rows
        )));
    }
    let z = scaled_transpose(x, w);
    Ok(gram(&z, x.rows, x.cols))
}

// Column-major copy of x with row i scaled by sqrt(w_i); returns d x n row-major.
fn scaled_transpose(x: &Matrix, w: &[f64]) -> Vec<f64> {
    let (n, d) = (x.rows, x.cols);
    let mut z = vec![0.0; d * n];
    for i in 0..n {
        let s = w[i].max(0.0).sqrt();
        let row = x.row(i);
        for j in 0..d {
            z[j * n + i] = s * row[j];
        }
    }
    z
}

// Z Z^T for Z stored as d rows of length n.
fn gram(z: &[f64], n: usize, d: usize) -> Matrix {
    let mut g = Matrix::zeros(d, d);
    let zr = |j: usize| &z[j * n..(j + 1) * n];
    let mut j = 0;
    while j + 4 <= d {
        let (a0, a1, a2, a3) = (zr(j), zr(j + 1), zr(j + 2), zr(j + 3));
        for k in 0..j + 4 {
            let b = zr(k);
            let mut s = [0.0f64; 4];
            for i in 0..n {
                let bi = b[i];
                s[0] += a0[i] * bi;
                s[1] += a1[i] * bi;
                s[2] += a2[i] * bi;
                s[3] += a3[i] * bi;
            }
            for (r, v) in s.iter().enumerate() {
                if k <= j + r {
                    g.data[(j + r) * d + k] = *v;
                    g.data[k * d + j + r] = *v;
                }
            }
        }
        j += 4;
    }
    for jj in j..d {
        for k in 0..=jj {
            let v = dot(zr(jj), zr(k));
            g.data[jj * d + k] = v;
            g.data[k * d + jj] = v;
        }
    }
    g
}

/// Diagonal of the weighted hat matrix `W^{1/2} X (X^T W X)^{-1} X^T W^{1/2}`.
pub fn hat_diagonals(x: &Matrix, w: &[f64]) -> Result<Vec<f64>> {
    let info = weighted_xtwx(x, w)?;
    let l = cholesky_jittered(&info).map_err(|_| Error::SingularInformation)?;
    Ok(hat_diagonals_with_factor(x, w, &l))
}

/// Hat diagonals given a Cholesky factor of `X^T W X`.
pub fn hat_diagonals_with_factor(x: &Matrix, w: &[f64], l: &LowerTriangular) -> Vec<f64> {
    let (n, d) = (x.rows, x.cols);
    // Solve L M = Z^T row by row of L, with M stored as d rows of length n.
    let mut m = scaled_transpose(x, w);
    for j in 0..d {
        let (done, rest) = m.split_at_mut(j * n);
        let mj = &mut rest[..n];
        let lrow = &l.data[j * d..j * d + j];
        for (k, &ljk) in lrow.iter().enumerate() {
            if ljk != 0.0 {
                axpy(-ljk, &done[k * n..(k + 1) * n], mj);
            }
        }
        let inv = 1.0 / l.data[j * d + j];
        mj.iter_mut().for_each(|v| *v *= inv);
    }
    let mut h = vec![0.0; n];
    for j in 0..d {
        for (hi, &v) in h.iter_mut().zip(&m[j * n..(j + 1) * n]) {
            *hi += v * v;
        }
    }
    h
}

#[inline]
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    let mut s = [0.0f64; 4];
    let chunks = a.len() / 4;
    for c in 0..chunks {
        let i = 4 * c;
        s[0] += a[i] * b[i];
        s[1] += a[i + 1] * b[i + 1];
        s[2] += a[i + 2] * b[i + 2];
        s[3] += a[i + 3] * b[i + 3];
    }
    let mut t = (s[0] + s[1]) + (s[2] + s[3]);
    for i in 4 * chunks..a.len() {
        t += a[i] * b[i];
    }
    t
}

#[inline]
pub fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    debug_assert_eq!(x.len(), y.len());
    for (yi, &xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}
