//! Binds a config to a concrete model, input specs, reference values, and
//! resolved estimator settings.

use crate::error::{Error, Result};
use crate::harness::config::{ExperimentConfig, ModelId};
use crate::input::InputSpec;
use crate::kernel::{BandwidthScale, Kernel, KernelConfig};
use crate::models::ishigami::analytic;
use crate::models::{IshigamiConfig, IshigamiModel, Model, SirConfig, SirModel, SirOdeModel};
use crate::wavelet::PenaltyConfig;
use std::f64::consts::PI;

/// Estimator parameters after defaults and overrides are merged.
#[derive(Debug, Clone, Copy)]
pub struct EstimatorSettings {
    pub kernel_cfg: KernelConfig,
    pub penalty: PenaltyConfig,
    pub grid_depth: u32,
}

pub struct Experiment {
    pub model: Box<dyn Model>,
    pub specs: Vec<InputSpec>,
    /// Analytic first-order indices, when known for the model.
    pub reference: Option<Vec<f64>>,
    pub settings: EstimatorSettings,
    pub model_id: ModelId,
}

/// Calibrated penalty constants: benchmark experiments carry the value the
/// slope heuristic selects on a dedicated calibration run, frozen here so
/// studies are reproducible without re-calibrating.
const KPRIME_ISHIGAMI: f64 = 5.0;
const KPRIME_SIR: f64 = 0.2;

/// Level-cap overrides where the default `J_n` cannot reach the response's
/// frequency content: the multiplier-11 benchmark concentrates energy at
/// levels 4-6, and the SIR mean response needs level 4 at n = 10^4.
const J_CAP_ISHIGAMI_MOD: i32 = 6;
const J_CAP_SIR: i32 = 4;

fn pi_specs(names: &[&str]) -> Vec<InputSpec> {
    names
        .iter()
        .map(|n| InputSpec::uniform(*n, -PI, PI).expect("valid bounds"))
        .collect()
}

pub fn sir_base_config() -> SirConfig {
    SirConfig {
        population: 1200,
        initial_susceptible: 1190,
        initial_infectious: 10,
        horizon: None,
        lambda_over_n: 2.0 / 15_000.0,
        mu: 2.0 / 15.0,
    }
}

pub fn sir_specs() -> Vec<InputSpec> {
    vec![
        InputSpec::uniform("lambda_over_n", 1.0 / 15_000.0, 3.0 / 15_000.0).expect("valid"),
        InputSpec::uniform("mu", 1.0 / 15.0, 3.0 / 15.0).expect("valid"),
    ]
}

impl Experiment {
    pub fn build(cfg: &ExperimentConfig) -> Result<Self> {
        cfg.validate()?;
        let (model, specs, reference, default_kernel, default_pen): (
            Box<dyn Model>,
            Vec<InputSpec>,
            Option<Vec<f64>>,
            KernelConfig,
            PenaltyConfig,
        ) = match cfg.model {
            ModelId::Ishigami => (
                Box::new(IshigamiModel::new(IshigamiConfig {
                    frequency_multiplier: 1.0,
                    nuisance_mode: false,
                })),
                pi_specs(&["x1", "x2", "x3"]),
                Some(vec![analytic::s1(), analytic::s2(), analytic::s3()]),
                KernelConfig::default(),
                PenaltyConfig::new(KPRIME_ISHIGAMI),
            ),
            ModelId::IshigamiNuisance => (
                Box::new(IshigamiModel::new(IshigamiConfig {
                    frequency_multiplier: 1.0,
                    nuisance_mode: true,
                })),
                pi_specs(&["x1", "x2"]),
                Some(vec![analytic::s1(), analytic::s2()]),
                KernelConfig::default(),
                PenaltyConfig::new(KPRIME_ISHIGAMI),
            ),
            ModelId::IshigamiMod => (
                Box::new(IshigamiModel::new(IshigamiConfig {
                    frequency_multiplier: 11.0,
                    nuisance_mode: true,
                })),
                pi_specs(&["x1", "x2"]),
                Some(vec![analytic::s1(), analytic::s2()]),
                KernelConfig::default(),
                PenaltyConfig::with_cap(KPRIME_ISHIGAMI, J_CAP_ISHIGAMI_MOD),
            ),
            ModelId::Sir => (
                Box::new(SirModel::new(sir_base_config())),
                sir_specs(),
                None,
                KernelConfig {
                    kernel: Kernel::Gaussian,
                    bandwidth: 0.05,
                    bandwidth_scale: BandwidthScale::Warped,
                },
                PenaltyConfig::with_cap(KPRIME_SIR, J_CAP_SIR),
            ),
            ModelId::SirOde => (
                Box::new(SirOdeModel::new(sir_base_config())),
                sir_specs(),
                None,
                KernelConfig {
                    kernel: Kernel::Gaussian,
                    bandwidth: 0.05,
                    bandwidth_scale: BandwidthScale::Warped,
                },
                PenaltyConfig::with_cap(KPRIME_SIR, J_CAP_SIR),
            ),
        };

        let kernel_cfg = KernelConfig {
            kernel: cfg.kernel.unwrap_or(default_kernel.kernel),
            bandwidth: cfg.bandwidth.unwrap_or(default_kernel.bandwidth),
            bandwidth_scale: cfg
                .bandwidth_scale
                .unwrap_or(default_kernel.bandwidth_scale),
        };
        let penalty = PenaltyConfig {
            k_prime: cfg.kprime.unwrap_or(default_pen.k_prime),
            j_cap: cfg.j_cap.or(default_pen.j_cap),
        };

        let experiment = Self {
            model,
            specs,
            reference,
            settings: EstimatorSettings {
                kernel_cfg,
                penalty,
                grid_depth: cfg.grid_depth.unwrap_or(12),
            },
            model_id: cfg.model,
        };

        if let Some(inputs) = &cfg.inputs {
            for &ell in inputs {
                if ell >= experiment.specs.len() {
                    return Err(Error::Config(format!(
                        "input index {ell} out of range for model `{}` with {} inputs",
                        cfg.model.as_str(),
                        experiment.specs.len()
                    )));
                }
            }
        }
        Ok(experiment)
    }

    /// Input columns under study: the config's filter or all of them.
    pub fn input_indices(&self, cfg: &ExperimentConfig) -> Vec<usize> {
        match &cfg.inputs {
            Some(v) => v.clone(),
            None => (0..self.specs.len()).collect(),
        }
    }
}
