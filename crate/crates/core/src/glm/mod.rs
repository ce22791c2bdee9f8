//! Logistic log-likelihood, Jeffreys penalty and the fitters built on them:
//! maximum likelihood, maximum Jeffreys'-prior penalized likelihood (mJPL),
//! and a Gamma-response GLM with log link.

mod data;
mod gamma;
mod logistic;

pub use data::LogisticData;
pub use gamma::{fit_gamma_log, GammaFit};
pub use logistic::{
    fit_ml, fit_ml_from, fit_mjpl, fit_mjpl_from, jeffreys_penalty, jeffreys_penalty_with,
    log_likelihood, penalized_score, FitResult, FitStatus, GlmControl,
};
