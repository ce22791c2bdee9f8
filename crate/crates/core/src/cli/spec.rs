//! JSON experiment specs. Unknown fields are rejected when parsing and every
//! violated constraint is reported at once by `validate`.

use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::analysis::RescaleCoefficients;
use crate::error::{Error, Result};
use crate::glm::GlmControl;
use crate::phase::ExistenceMethod;
use crate::sim::{BetaStarConfig, CovariateFamily, DesignPoint, SimConfig, TestGrid};

pub fn load<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    Ok(serde_json::from_str(&text)?)
}

fn check_family(family: &CovariateFamily, problems: &mut Vec<String>) {
    if let CovariateFamily::Bernoulli { lambda } = family {
        if !(*lambda > 0.0 && *lambda < 1.0) {
            problems.push(format!("family.bernoulli.lambda = {lambda} must lie in (0, 1)"));
        }
    }
}

fn check_existence(method: &ExistenceMethod, problems: &mut Vec<String>) {
    match *method {
        ExistenceMethod::Analytic { panels } if panels < 40 => {
            problems.push(format!("existence.analytic.panels = {panels} must be at least 40"))
        }
        ExistenceMethod::MonteCarlo { n, reps, .. } if n < 500 || reps < 20 => problems.push(format!(
            "existence.monte-carlo needs n >= 500 and reps >= 20, got n = {n}, reps = {reps}"
        )),
        _ => {}
    }
}

fn check_control(control: &GlmControl, problems: &mut Vec<String>) {
    if let Err(e) = control.validate() {
        problems.push(format!("control: {e}"));
    }
}

fn finish(problems: Vec<String>) -> Result<()> {
    if problems.is_empty() {
        Ok(())
    } else {
        Err(Error::InvalidSpec(problems))
    }
}

/// `simulate`: one replicate of the data-generating process.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulateSpec {
    pub n: usize,
    pub kappa: f64,
    pub gamma: f64,
    #[serde(default)]
    pub rho2: f64,
    #[serde(default)]
    pub psi: f64,
    #[serde(default = "default_simulate_config")]
    pub beta_star: BetaStarConfig,
    #[serde(default)]
    pub family: CovariateFamily,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub point_id: u64,
    #[serde(default)]
    pub replicate: u64,
}

fn default_simulate_config() -> BetaStarConfig {
    BetaStarConfig::S1
}

impl SimulateSpec {
    pub fn config(&self, seed: u64) -> SimConfig {
        SimConfig {
            n: self.n,
            kappa: self.kappa,
            gamma: self.gamma,
            rho2: self.rho2,
            psi: self.psi,
            beta_star: self.beta_star,
            family: self.family,
            seed,
            point_id: self.point_id,
            replicate: self.replicate,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.config(0).validate()
    }
}

/// How the training design is produced when no explicit points are given.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DesignSpec {
    pub count: usize,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default = "default_rho2_max")]
    pub rho2_max: f64,
    #[serde(default = "yes")]
    pub non_existence_only: bool,
}

fn default_rho2_max() -> f64 {
    0.7
}

fn yes() -> bool {
    true
}

/// `train`: replicated mJPL fits over a design of `(kappa, gamma, rho2)` points.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrainSpec {
    #[serde(default = "default_train_n")]
    pub n: usize,
    #[serde(default = "default_train_reps")]
    pub reps: usize,
    #[serde(default)]
    pub points: Vec<DesignPoint>,
    #[serde(default)]
    pub design: Option<DesignSpec>,
    #[serde(default)]
    pub psi: f64,
    #[serde(default = "default_train_config")]
    pub beta_star: BetaStarConfig,
    #[serde(default)]
    pub family: CovariateFamily,
    #[serde(default)]
    pub existence: ExistenceMethod,
    #[serde(default)]
    pub control: GlmControl,
    #[serde(default)]
    pub seed: Option<u64>,
}

fn default_train_n() -> usize {
    500
}

fn default_train_reps() -> usize {
    10
}

fn default_train_config() -> BetaStarConfig {
    BetaStarConfig::TrainGrid
}

impl TrainSpec {
    pub fn validate(&self) -> Result<()> {
        let mut problems = Vec::new();
        if self.n < 2 {
            problems.push(format!("n = {} must be at least 2", self.n));
        }
        if self.reps == 0 {
            problems.push("reps must be at least 1".into());
        }
        match (&self.design, self.points.is_empty()) {
            (None, true) => problems.push("give either `points` or `design`".into()),
            (Some(_), false) => problems.push("`points` and `design` are mutually exclusive".into()),
            (Some(d), true) => {
                if d.count == 0 {
                    problems.push("design.count must be at least 1".into());
                }
                if !(0.0..1.0).contains(&d.rho2_max) {
                    problems.push(format!("design.rho2_max = {} must lie in [0, 1)", d.rho2_max));
                }
            }
            (None, false) => {}
        }
        for (k, d) in self.points.iter().enumerate() {
            if !(d.kappa > 0.0 && d.kappa < 1.0) {
                problems.push(format!("points[{k}].kappa = {} must lie in (0, 1)", d.kappa));
            }
            if !(d.gamma > 0.0 && d.gamma.is_finite()) {
                problems.push(format!("points[{k}].gamma = {} must be positive", d.gamma));
            }
            if !(0.0..1.0).contains(&d.rho2) {
                problems.push(format!("points[{k}].rho2 = {} must lie in [0, 1)", d.rho2));
            }
        }
        if !(self.psi > -1.0 && self.psi < 1.0) {
            problems.push(format!("psi = {} must lie in (-1, 1)", self.psi));
        }
        check_family(&self.family, &mut problems);
        check_existence(&self.existence, &mut problems);
        check_control(&self.control, &mut problems);
        finish(problems)
    }
}

/// `test`: one replicate per cell of a factorial grid, rescaled by `q`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TestSpec {
    pub grid: TestGrid,
    #[serde(default)]
    pub existence: ExistenceMethod,
    #[serde(default)]
    pub control: GlmControl,
    #[serde(default)]
    pub coefficients: Option<RescaleCoefficients>,
    #[serde(default)]
    pub seed: Option<u64>,
}

impl TestSpec {
    pub fn validate(&self) -> Result<()> {
        let mut problems = Vec::new();
        let g = &self.grid;
        for (name, empty) in [
            ("grid.ns", g.ns.is_empty()),
            ("grid.psis", g.psis.is_empty()),
            ("grid.rho2s", g.rho2s.is_empty()),
            ("grid.configs", g.configs.is_empty()),
        ] {
            if empty {
                problems.push(format!("{name} must not be empty"));
            }
        }
        for &n in &g.ns {
            if n < 2 {
                problems.push(format!("grid.ns contains {n}; sample sizes must be at least 2"));
            }
        }
        for &psi in &g.psis {
            if !(psi > -1.0 && psi < 1.0) {
                problems.push(format!("grid.psis contains {psi}; must lie in (-1, 1)"));
            }
        }
        for &r in &g.rho2s {
            if !(0.0..1.0).contains(&r) {
                problems.push(format!("grid.rho2s contains {r}; must lie in [0, 1)"));
            }
        }
        for &(k, gamma) in &g.points {
            if !(k > 0.0 && k < 1.0 && gamma > 0.0) {
                problems.push(format!("grid.points contains ({k}, {gamma}); need 0 < kappa < 1 and gamma > 0"));
            }
        }
        check_family(&g.family, &mut problems);
        check_existence(&self.existence, &mut problems);
        check_control(&self.control, &mut problems);
        finish(problems)
    }
}

/// `amse`: aggregate MSE of the rescaled estimator without intercept.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AmseSpec {
    pub kappas: Vec<f64>,
    pub gammas: Vec<f64>,
    #[serde(default = "default_amse_n")]
    pub n: usize,
    #[serde(default = "default_amse_reps")]
    pub reps: usize,
    #[serde(default = "default_panels")]
    pub panels: usize,
    #[serde(default)]
    pub control: GlmControl,
    #[serde(default)]
    pub coefficients: Option<RescaleCoefficients>,
    #[serde(default)]
    pub seed: Option<u64>,
}

fn default_amse_n() -> usize {
    1000
}

fn default_amse_reps() -> usize {
    50
}

fn default_panels() -> usize {
    crate::phase::DEFAULT_PANELS
}

impl AmseSpec {
    pub fn validate(&self) -> Result<()> {
        let mut problems = Vec::new();
        if self.kappas.is_empty() {
            problems.push("kappas must not be empty".into());
        }
        if self.gammas.is_empty() {
            problems.push("gammas must not be empty".into());
        }
        for &k in &self.kappas {
            if !(k > 0.0 && k < 1.0) {
                problems.push(format!("kappas contains {k}; must lie in (0, 1)"));
            }
        }
        for &g in &self.gammas {
            if !(g > 0.0 && g.is_finite()) {
                problems.push(format!("gammas contains {g}; must be positive"));
            }
        }
        if self.n < 2 {
            problems.push(format!("n = {} must be at least 2", self.n));
        }
        if self.reps == 0 {
            problems.push("reps must be at least 1".into());
        }
        if self.panels < 40 {
            problems.push(format!("panels = {} must be at least 40", self.panels));
        }
        check_control(&self.control, &mut problems);
        finish(problems)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_fields_rejected() {
        let e = serde_json::from_str::<TrainSpec>(r#"{"n": 100, "repz": 3}"#).unwrap_err();
        assert!(e.to_string().contains("repz"));
        assert!(serde_json::from_str::<AmseSpec>(r#"{"kappas": [0.1], "gammas": [1], "extra": 1}"#).is_err());
    }

    #[test]
    fn all_violations_reported() {
        let spec: TrainSpec = serde_json::from_str(
            r#"{"n": 1, "reps": 0, "psi": 1.5, "points": [{"kappa": 2, "gamma": 1, "rho2": 0}],
                "existence": {"analytic": {"panels": 10}}}"#,
        )
        .unwrap();
        match spec.validate() {
            Err(Error::InvalidSpec(p)) => assert_eq!(p.len(), 5, "{p:?}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn design_or_points_required() {
        let spec: TrainSpec = serde_json::from_str(r#"{"n": 100}"#).unwrap();
        assert!(matches!(spec.validate(), Err(Error::InvalidSpec(p)) if p.len() == 1));
        let spec: TrainSpec = serde_json::from_str(r#"{"design": {"count": 4}}"#).unwrap();
        spec.validate().unwrap();
        assert_eq!(spec.design.unwrap().rho2_max, 0.7);
    }

    #[test]
    fn test_spec_parses_grid() {
        let spec: TestSpec = serde_json::from_str(
            r#"{"grid": {"ns": [200], "psis": [0], "rho2s": [0, 0.5], "configs": ["s1", "u2"],
                "points": [[0.1, 2]]}, "seed": 4}"#,
        )
        .unwrap();
        spec.validate().unwrap();
        assert_eq!(spec.grid.cells().len(), 4);
        let bad: TestSpec = serde_json::from_str(r#"{"grid": {"ns": [], "psis": [2], "rho2s": [0], "configs": []}}"#).unwrap();
        assert!(matches!(bad.validate(), Err(Error::InvalidSpec(p)) if p.len() == 3));
    }

    #[test]
    fn simulate_defaults() {
        let spec: SimulateSpec = serde_json::from_str(r#"{"n": 50, "kappa": 0.1, "gamma": 1}"#).unwrap();
        spec.validate().unwrap();
        assert_eq!(spec.config(3).p(), 5);
        let bad: SimulateSpec = serde_json::from_str(r#"{"n": 1, "kappa": 1.5, "gamma": 1}"#).unwrap();
        assert!(matches!(bad.validate(), Err(Error::InvalidSpec(p)) if p.len() == 2));
    }
}
