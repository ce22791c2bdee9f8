use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::data::LogisticData;
use crate::error::{Error, Result};
use crate::numerics::{cholesky, cholesky_jittered, hat_diagonals_with_factor, weighted_xtwx, LowerTriangular, Matrix};

/// Iteration controls shared by the logistic fitters.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GlmControl {
    /// Convergence threshold on the max-norm of the coefficient change.
    pub tol: f64,
    pub max_iter: usize,
    /// Fitted probabilities are clamped to `[clamp_eps, 1 - clamp_eps]` before forming weights.
    pub clamp_eps: f64,
    pub max_step_halvings: usize,
    /// ML fits stop with [`FitStatus::Diverging`] once `|theta|_inf` exceeds this.
    pub divergence_guard: f64,
}

impl Default for GlmControl {
    fn default() -> Self {
        Self {
            tol: 1e-3,
            max_iter: 300,
            clamp_eps: 1e-10,
            max_step_halvings: 10,
            divergence_guard: 1e4,
        }
    }
}

impl GlmControl {
    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0) {
            return Err(Error::InvalidInput(format!("tol must be > 0, got {}", self.tol)));
        }
        if self.max_iter < 1 {
            return Err(Error::InvalidInput("max_iter must be >= 1".into()));
        }
        if !(self.clamp_eps > 0.0 && self.clamp_eps < 0.5) {
            return Err(Error::InvalidInput(format!(
                "clamp_eps must lie in (0, 0.5), got {}",
                self.clamp_eps
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FitStatus {
    Converged,
    MaxIterations,
    Diverging,
}

impl std::fmt::Display for FitStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            FitStatus::Converged => "converged",
            FitStatus::MaxIterations => "max-iterations",
            FitStatus::Diverging => "diverging",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FitResult {
    /// Intercept first (when present), then slopes.
    pub theta: Vec<f64>,
    pub converged: bool,
    pub status: FitStatus,
    pub iterations: usize,
    /// Max-norm of the (adjusted, for mJPL) score at `theta`.
    pub score_norm: f64,
    /// Log-likelihood, or penalized log-likelihood for mJPL, at `theta`.
    pub objective: f64,
    pub elapsed: f64,
}

impl FitResult {
    /// Slope coefficients, i.e. `theta` without the intercept.
    pub fn slopes<'a>(&'a self, data: &LogisticData) -> &'a [f64] {
        &self.theta[usize::from(data.has_intercept())..]
    }
}

#[inline]
fn log1p_exp(eta: f64) -> f64 {
    if eta > 0.0 {
        eta + (-eta).exp().ln_1p()
    } else {
        eta.exp().ln_1p()
    }
}

#[inline]
fn expit(eta: f64) -> f64 {
    if eta >= 0.0 {
        1.0 / (1.0 + (-eta).exp())
    } else {
        let e = eta.exp();
        e / (1.0 + e)
    }
}

fn check_theta(theta: &[f64], data: &LogisticData) -> Result<()> {
    if theta.len() != data.dim() {
        return Err(Error::DimensionMismatch(format!(
            "theta has {} entries, design has {} columns",
            theta.len(),
            data.dim()
        )));
    }
    Ok(())
}

/// `sum_i y_i eta_i - log(1 + exp(eta_i))`.
pub fn log_likelihood(theta: &[f64], data: &LogisticData) -> Result<f64> {
    check_theta(theta, data)?;
    let eta = data.design().mul_vec(theta);
    Ok(loglik_from_eta(&eta, data.y()))
}

fn loglik_from_eta(eta: &[f64], y: &[f64]) -> f64 {
    eta.iter().zip(y).map(|(&e, &yi)| yi * e - log1p_exp(e)).sum()
}

/// Half the log-determinant of the Fisher information `X^T W(theta) X`.
pub fn jeffreys_penalty(theta: &[f64], data: &LogisticData) -> Result<f64> {
    jeffreys_penalty_with(theta, data, GlmControl::default().clamp_eps)
}

pub fn jeffreys_penalty_with(theta: &[f64], data: &LogisticData, clamp_eps: f64) -> Result<f64> {
    check_theta(theta, data)?;
    let eta = data.design().mul_vec(theta);
    let (_, w) = mean_and_weights(&eta, clamp_eps);
    let l = factor_information(data, &w)?;
    Ok(0.5 * l.log_det_product())
}

/// Gradient of the Jeffreys-penalized log-likelihood:
/// component `j` is `sum_i {y_i - mu_i + h_i (1/2 - mu_i)} x_ij`.
pub fn penalized_score(theta: &[f64], data: &LogisticData) -> Result<Vec<f64>> {
    check_theta(theta, data)?;
    let state = State::evaluate(theta.to_vec(), data, Objective::Penalized, GlmControl::default().clamp_eps)?;
    Ok(state.score(data))
}

fn mean_and_weights(eta: &[f64], clamp_eps: f64) -> (Vec<f64>, Vec<f64>) {
    let mu: Vec<f64> = eta
        .iter()
        .map(|&e| expit(e).clamp(clamp_eps, 1.0 - clamp_eps))
        .collect();
    let w = mu.iter().map(|m| m * (1.0 - m)).collect();
    (mu, w)
}

/// Rejects designs without full column rank: every pivot of the Cholesky
/// factor of the column-normalised Gram matrix must exceed `1e-6`.
fn check_full_rank(data: &LogisticData) -> Result<()> {
    if data.n() < data.dim() {
        return Err(Error::SingularInformation);
    }
    let gram = weighted_xtwx(data.design(), &vec![1.0; data.n()])?;
    let d = gram.rows();
    let norms: Vec<f64> = (0..d).map(|j| gram.get(j, j).sqrt()).collect();
    if norms.iter().any(|v| !(*v > 0.0)) {
        return Err(Error::SingularInformation);
    }
    let corr = Matrix::from_fn(d, d, |i, j| gram.get(i, j) / (norms[i] * norms[j]));
    match cholesky(&corr) {
        Ok(l) if l.diagonal().iter().all(|v| *v > 1e-6) => Ok(()),
        _ => Err(Error::SingularInformation),
    }
}

fn factor_information(data: &LogisticData, w: &[f64]) -> Result<LowerTriangular> {
    let info = weighted_xtwx(data.design(), w)?;
    cholesky_jittered(&info).map_err(|_| Error::SingularInformation)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Objective {
    Likelihood,
    Penalized,
}

struct State {
    theta: Vec<f64>,
    mu: Vec<f64>,
    w: Vec<f64>,
    factor: LowerTriangular,
    objective: f64,
    kind: Objective,
}

impl State {
    fn evaluate(theta: Vec<f64>, data: &LogisticData, kind: Objective, clamp_eps: f64) -> Result<Self> {
        let eta = data.design().mul_vec(&theta);
        let (mu, w) = mean_and_weights(&eta, clamp_eps);
        let factor = factor_information(data, &w)?;
        let mut objective = loglik_from_eta(&eta, data.y());
        if kind == Objective::Penalized {
            objective += 0.5 * factor.log_det_product();
        }
        Ok(Self {
            theta,
            mu,
            w,
            factor,
            objective,
            kind,
        })
    }

    fn score(&self, data: &LogisticData) -> Vec<f64> {
        let resid: Vec<f64> = match self.kind {
            Objective::Likelihood => data.y().iter().zip(&self.mu).map(|(y, m)| y - m).collect(),
            Objective::Penalized => {
                let h = hat_diagonals_with_factor(data.design(), &self.w, &self.factor);
                data.y()
                    .iter()
                    .zip(&self.mu)
                    .zip(&h)
                    .map(|((y, m), hi)| y - m + hi * (0.5 - m))
                    .collect()
            }
        };
        data.design().tr_mul_vec(&resid)
    }
}

fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0_f64, |m, x| m.max(x.abs()))
}

/// Maximum Jeffreys'-prior penalized likelihood fit by quasi-Fisher scoring,
/// started at zero.
pub fn fit_mjpl(data: &LogisticData, control: &GlmControl) -> Result<FitResult> {
    fit_mjpl_from(data, control, &vec![0.0; data.dim()])
}

pub fn fit_mjpl_from(data: &LogisticData, control: &GlmControl, start: &[f64]) -> Result<FitResult> {
    fit(data, control, start, Objective::Penalized)
}

/// Maximum likelihood fit by Fisher scoring (IRLS), started at zero.
pub fn fit_ml(data: &LogisticData, control: &GlmControl) -> Result<FitResult> {
    fit_ml_from(data, control, &vec![0.0; data.dim()])
}

pub fn fit_ml_from(data: &LogisticData, control: &GlmControl, start: &[f64]) -> Result<FitResult> {
    fit(data, control, start, Objective::Likelihood)
}

/// Some linear predictor beyond the point where `expit` rounds to 0 or 1.
fn saturated(theta: &[f64], data: &LogisticData) -> bool {
    let x = data.design();
    (0..data.n()).any(|i| x.row(i).iter().zip(theta).map(|(a, b)| a * b).sum::<f64>().abs() > 37.0)
}

/// Sufficient-increase fraction for the step-halving test.
const ARMIJO: f64 = 1e-4;

fn fit(data: &LogisticData, control: &GlmControl, start: &[f64], kind: Objective) -> Result<FitResult> {
    control.validate()?;
    check_theta(start, data)?;
    check_full_rank(data)?;
    let clock = Instant::now();
    let mut state = State::evaluate(start.to_vec(), data, kind, control.clamp_eps)?;
    let mut score = state.score(data);
    let mut status = FitStatus::MaxIterations;
    let mut iterations = 0;

    while iterations < control.max_iter {
        iterations += 1;
        let step = state.factor.solve(&score);
        // the score is the gradient of the objective, so `step` is an ascent
        // direction; halve until the increase is at least a fixed fraction of
        // the one predicted to first order
        let slope: f64 = score.iter().zip(&step).map(|(g, s)| g * s).sum();
        let mut t = 1.0;
        let mut next: Option<State> = None;
        let mut fallback: Option<State> = None;
        let mut collapsed = true;
        for _ in 0..=control.max_step_halvings {
            let cand: Vec<f64> = state.theta.iter().zip(&step).map(|(a, s)| a + t * s).collect();
            match State::evaluate(cand, data, kind, control.clamp_eps) {
                Ok(s) if s.objective.is_finite() && s.objective >= state.objective + ARMIJO * t * slope => {
                    next = Some(s);
                    break;
                }
                Ok(s) => {
                    collapsed = false;
                    if fallback.is_none() && s.objective.is_finite() && s.objective >= state.objective {
                        fallback = Some(s);
                    }
                }
                Err(Error::SingularInformation) if kind == Objective::Likelihood => {}
                Err(e) => return Err(e),
            }
            t *= 0.5;
        }
        let change = max_abs(&step);
        let Some(next) = next.or(fallback) else {
            if kind == Objective::Likelihood && collapsed {
                // information collapsed along the ML path: the estimate runs off to infinity
                status = FitStatus::Diverging;
            } else if change < control.tol || slope <= 16.0 * f64::EPSILON * state.objective.abs().max(1.0) {
                // the predicted gain is below the rounding level of the objective
                status = FitStatus::Converged;
            }
            // no step raises the objective: stop at the current iterate
            break;
        };
        state = next;
        score = state.score(data);
        if kind == Objective::Likelihood && max_abs(&state.theta) > control.divergence_guard {
            status = FitStatus::Diverging;
            break;
        }
        // judged on the undamped step: a heavily halved step says nothing about
        // convergence. The quasi-Fisher iteration contracts only linearly, so a
        // small step can still leave the score above tol; keep going then.
        if change < control.tol && max_abs(&score) < control.tol {
            status = FitStatus::Converged;
            break;
        }
    }

    // out of iterations with fitted probabilities numerically 0 or 1: the
    // likelihood is still climbing towards a point at infinity
    if kind == Objective::Likelihood && status == FitStatus::MaxIterations && saturated(&state.theta, data) {
        status = FitStatus::Diverging;
    }

    let objective = state.objective;
    Ok(FitResult {
        score_norm: max_abs(&score),
        theta: state.theta,
        converged: status == FitStatus::Converged,
        status,
        iterations,
        objective,
        elapsed: clock.elapsed().as_secs_f64(),
    })
}

