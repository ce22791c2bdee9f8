//! Dense linear algebra, quadrature, optimisation and regression primitives.
//!
//! Everything here is a pure function of its inputs and works in `f64`.

mod matrix;
mod optimize;
mod quadrature;
mod regression;

pub use matrix::{
    axpy, cholesky, cholesky_jittered, dot, hat_diagonals, hat_diagonals_with_factor,
    weighted_xtwx, LowerTriangular, Matrix,
};
pub use optimize::{nelder_mead, Minimum};
pub use quadrature::{gauss_hermite, gauss_legendre, GaussHermite};
pub use regression::{least_squares, simple_linreg};
