use crate::error::{Error, Result};
use crate::numerics::Matrix;

/// Binary responses with their design.
///
/// The design stored here is the one the fitters use: when the model has an
/// intercept a leading column of ones is prepended to the covariates.
#[derive(Clone, Debug, PartialEq)]
pub struct LogisticData {
    y: Vec<f64>,
    design: Matrix,
    has_intercept: bool,
}

impl LogisticData {
    /// Builds data from responses in {0, 1} and an `n x p` covariate matrix.
    pub fn new(y: Vec<f64>, x: &Matrix, has_intercept: bool) -> Result<Self> {
        if y.len() != x.rows() {
            return Err(Error::LengthMismatch {
                left: y.len(),
                right: x.rows(),
            });
        }
        check_binary(&y)?;
        let design = if has_intercept { x.with_intercept() } else { x.clone() };
        Ok(Self {
            y,
            design,
            has_intercept,
        })
    }

    /// Intercept-only model.
    pub fn intercept_only(y: Vec<f64>) -> Result<Self> {
        if y.is_empty() {
            return Err(Error::InvalidInput("no observations".into()));
        }
        check_binary(&y)?;
        let design = Matrix::new(y.len(), 1, vec![1.0; y.len()])?;
        Ok(Self {
            y,
            design,
            has_intercept: true,
        })
    }

    /// Builds data directly from a design that already holds any intercept column.
    pub fn from_design(y: Vec<f64>, design: Matrix, has_intercept: bool) -> Result<Self> {
        if y.len() != design.rows() {
            return Err(Error::LengthMismatch {
                left: y.len(),
                right: design.rows(),
            });
        }
        check_binary(&y)?;
        if has_intercept && (0..design.rows()).any(|i| design.get(i, 0) != 1.0) {
            return Err(Error::InvalidInput(
                "first design column must be ones when has_intercept is set".into(),
            ));
        }
        Ok(Self {
            y,
            design,
            has_intercept,
        })
    }

    pub fn y(&self) -> &[f64] {
        &self.y
    }

    pub fn design(&self) -> &Matrix {
        &self.design
    }

    pub fn has_intercept(&self) -> bool {
        self.has_intercept
    }

    pub fn n(&self) -> usize {
        self.y.len()
    }

    /// Number of covariates, excluding the intercept.
    pub fn p(&self) -> usize {
        self.design.cols() - usize::from(self.has_intercept)
    }

    /// Number of design columns, including the intercept.
    pub fn dim(&self) -> usize {
        self.design.cols()
    }

    /// Covariate `j` (0-based, excluding the intercept) of observation `i`.
    pub fn covariate(&self, i: usize, j: usize) -> f64 {
        self.design.get(i, j + usize::from(self.has_intercept))
    }

    /// Same data with responses flipped to `1 - y`.
    pub fn flipped(&self) -> Self {
        Self {
            y: self.y.iter().map(|v| 1.0 - v).collect(),
            design: self.design.clone(),
            has_intercept: self.has_intercept,
        }
    }

    /// Same data with the design column `col` (intercept included in the count) scaled by `c`.
    pub fn with_scaled_column(&self, col: usize, c: f64) -> Self {
        let mut design = self.design.clone();
        design.scale_column(col, c);
        Self {
            y: self.y.clone(),
            design,
            has_intercept: self.has_intercept,
        }
    }
}

fn check_binary(y: &[f64]) -> Result<()> {
    match y.iter().position(|&v| v != 0.0 && v != 1.0) {
        Some(i) => Err(Error::InvalidInput(format!(
            "response {i} is {} but must be 0 or 1",
            y[i]
        ))),
        None => Ok(()),
    }
}
