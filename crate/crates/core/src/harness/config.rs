//! Experiment configuration, mirrored by the CLI's `--config` file.

use crate::error::{Error, Result};
use crate::estimate::EstimatorKind;
use crate::kernel::{BandwidthScale, Kernel};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelId {
    /// Classic benchmark, three declared inputs.
    Ishigami,
    /// Classic benchmark with the fourth-power input as a hidden nuisance.
    IshigamiNuisance,
    /// High-frequency benchmark (multiplier 11), nuisance mode.
    IshigamiMod,
    /// Stochastic SIR final size over `(lambda/N, mu)`.
    Sir,
    /// Deterministic ODE limit of the SIR model.
    SirOde,
}

impl ModelId {
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "ishigami" => Ok(ModelId::Ishigami),
            "ishigami-nuisance" => Ok(ModelId::IshigamiNuisance),
            "ishigami-mod" => Ok(ModelId::IshigamiMod),
            "sir" => Ok(ModelId::Sir),
            "sir-ode" => Ok(ModelId::SirOde),
            other => Err(Error::Config(format!("unknown model `{other}`"))),
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            ModelId::Ishigami => "ishigami",
            ModelId::IshigamiNuisance => "ishigami-nuisance",
            ModelId::IshigamiMod => "ishigami-mod",
            ModelId::Sir => "sir",
            ModelId::SirOde => "sir-ode",
        }
    }
}

fn default_estimators() -> Vec<EstimatorKind> {
    EstimatorKind::ALL.to_vec()
}

fn default_replications() -> usize {
    1
}

fn default_first_stream() -> u64 {
    1
}

/// One experiment: model, estimator set, sample size, replication count,
/// seeding, and per-estimator overrides. Fields left `None` fall back to
/// the model's stored defaults (see [`super::Experiment`]).
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub model: ModelId,
    #[serde(default = "default_estimators")]
    pub estimators: Vec<EstimatorKind>,
    pub n: usize,
    #[serde(default = "default_replications")]
    pub replications: usize,
    pub master_seed: u64,
    /// Stream id of the first replication; replication `r` uses stream
    /// `first_stream + r`. Disjoint ranges give independent studies under
    /// one master seed.
    #[serde(default = "default_first_stream")]
    pub first_stream: u64,
    /// Restrict estimation to these input columns (default: all).
    #[serde(default)]
    pub inputs: Option<Vec<usize>>,
    #[serde(default)]
    pub bandwidth: Option<f64>,
    #[serde(default)]
    pub kernel: Option<Kernel>,
    #[serde(default)]
    pub bandwidth_scale: Option<BandwidthScale>,
    #[serde(default)]
    pub kprime: Option<f64>,
    #[serde(default)]
    pub j_cap: Option<i32>,
    #[serde(default)]
    pub grid_depth: Option<u32>,
}

impl ExperimentConfig {
    pub fn new(model: ModelId, n: usize, replications: usize, master_seed: u64) -> Self {
        Self {
            model,
            estimators: default_estimators(),
            n,
            replications,
            master_seed,
            first_stream: default_first_stream(),
            inputs: None,
            bandwidth: None,
            kernel: None,
            bandwidth_scale: None,
            kprime: None,
            j_cap: None,
            grid_depth: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 100 {
            return Err(Error::Config(format!("n must be at least 100, got {}", self.n)));
        }
        if self.replications < 1 {
            return Err(Error::Config("replications must be at least 1".into()));
        }
        if self.estimators.is_empty() {
            return Err(Error::Config("at least one estimator is required".into()));
        }
        if let Some(b) = self.bandwidth {
            if !(b > 0.0) {
                return Err(Error::Config(format!("bandwidth must be positive, got {b}")));
            }
        }
        if let Some(k) = self.kprime {
            if !(k > 0.0) {
                return Err(Error::Config(format!("kprime must be positive, got {k}")));
            }
        }
        Ok(())
    }
}
