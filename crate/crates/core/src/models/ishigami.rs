//! The Ishigami benchmark function and its analytic Sobol indices.

use crate::error::Result;
use crate::models::Model;
use crate::rng::SeedStream;
use std::f64::consts::PI;

/// `sin(m x1) + 7 sin^2(x2) + 0.1 x3^4 sin(m x1)` with inputs uniform on
/// `[-pi, pi]`.
///
/// `frequency_multiplier` m = 1 is the classic function; m = 11 is the
/// high-frequency variant. In `nuisance_mode` only `(x1, x2)` are declared
/// inputs and `x3` is drawn internally from `U(-pi, pi)` on the call's own
/// stream, making the model stochastic from the caller's point of view.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IshigamiConfig {
    pub frequency_multiplier: f64,
    pub nuisance_mode: bool,
}

impl Default for IshigamiConfig {
    fn default() -> Self {
        Self {
            frequency_multiplier: 1.0,
            nuisance_mode: false,
        }
    }
}

pub fn ishigami(x1: f64, x2: f64, x3: f64, cfg: &IshigamiConfig) -> f64 {
    let s = (cfg.frequency_multiplier * x1).sin();
    s + 7.0 * x2.sin().powi(2) + 0.1 * x3.powi(4) * s
}

pub struct IshigamiModel {
    cfg: IshigamiConfig,
    id: &'static str,
}

impl IshigamiModel {
    pub fn new(cfg: IshigamiConfig) -> Self {
        let id = match (cfg.frequency_multiplier == 1.0, cfg.nuisance_mode) {
            (true, false) => "ishigami",
            (true, true) => "ishigami-nuisance",
            (false, _) => "ishigami-mod",
        };
        Self { cfg, id }
    }

    pub fn config(&self) -> &IshigamiConfig {
        &self.cfg
    }
}

impl Model for IshigamiModel {
    fn model_id(&self) -> &str {
        self.id
    }

    fn input_count(&self) -> usize {
        if self.cfg.nuisance_mode {
            2
        } else {
            3
        }
    }

    fn eval(&self, inputs: &[f64], stream: &SeedStream) -> Result<f64> {
        debug_assert_eq!(inputs.len(), self.input_count());
        let x3 = if self.cfg.nuisance_mode {
            stream.rng().uniform_in(-PI, PI)
        } else {
            inputs[2]
        };
        Ok(ishigami(inputs[0], inputs[1], x3, &self.cfg))
    }
}

/// Analytic first-order variance contributions under `X_i ~ U(-pi, pi)`.
///
/// With `a = 7`, `b = 0.1`:
/// `V1 = (1 + b pi^4/5)^2 / 2`, `V2 = a^2/8`, `V3 = 0`, and
/// `Var(Y) = 1/2 + a^2/8 + b pi^4/5 + b^2 pi^8/18`. The same values hold
/// for any integer frequency multiplier.
pub mod analytic {
    use std::f64::consts::PI;

    pub fn total_variance() -> f64 {
        0.5 + 49.0 / 8.0 + 0.1 * PI.powi(4) / 5.0 + 0.01 * PI.powi(8) / 18.0
    }

    pub fn s1() -> f64 {
        0.5 * (1.0 + PI.powi(4) / 50.0).powi(2) / total_variance()
    }

    pub fn s2() -> f64 {
        (49.0 / 8.0) / total_variance()
    }

    pub fn s3() -> f64 {
        0.0
    }

    /// Mean output `E[Y] = 7/2`.
    pub fn mean() -> f64 {
        3.5
    }

    /// Conditional mean `E[Y | X_1 = x]`.
    pub fn cond_mean_x1(x: f64, frequency_multiplier: f64) -> f64 {
        (1.0 + PI.powi(4) / 50.0) * (frequency_multiplier * x).sin() + 3.5
    }

    /// Conditional mean `E[Y | X_2 = x]`.
    pub fn cond_mean_x2(x: f64) -> f64 {
        7.0 * x.sin().powi(2)
    }

    /// Conditional mean `E[Y | X_3 = x]`.
    pub fn cond_mean_x3(_x: f64) -> f64 {
        3.5
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::input::InputSpec;
    use crate::sample::draw_iid;

    fn pi_specs() -> Vec<InputSpec> {
        ["x1", "x2", "x3"]
            .iter()
            .map(|n| InputSpec::uniform(*n, -PI, PI).unwrap())
            .collect()
    }

    #[test]
    fn pointwise_values() {
        let cfg = IshigamiConfig::default();
        assert_eq!(ishigami(0.0, 0.0, 0.0, &cfg), 0.0);
        let v = ishigami(PI / 2.0, PI / 2.0, 0.0, &cfg);
        assert!((v - 8.0).abs() < 1e-12, "got {v}");
    }

    #[test]
    fn analytic_values_match_paper() {
        assert!((analytic::s1() - 0.3139).abs() < 5e-5);
        assert!((analytic::s2() - 0.4424).abs() < 5e-5);
        assert_eq!(analytic::s3(), 0.0);
    }

    #[test]
    fn sample_variance_matches_closed_form() {
        let specs = pi_specs();
        let model = IshigamiModel::new(IshigamiConfig::default());
        let m = draw_iid(&specs, 100_000, &SeedStream::new(41));
        let ys: Vec<f64> = (0..m.rows())
            .map(|i| {
                let r = m.row(i);
                ishigami(r[0], r[1], r[2], model.config())
            })
            .collect();
        let (_, var) = crate::estimate::empirical_moments(&ys).unwrap();
        assert!(
            (var - analytic::total_variance()).abs() < 0.3,
            "var {var} vs {}",
            analytic::total_variance()
        );
    }

    #[test]
    fn nuisance_mode_is_deterministic_per_stream() {
        let model = IshigamiModel::new(IshigamiConfig {
            frequency_multiplier: 1.0,
            nuisance_mode: true,
        });
        assert_eq!(model.input_count(), 2);
        let s = SeedStream::with_stream(3, 5);
        let a = model.eval(&[0.3, -0.2], &s).unwrap();
        let b = model.eval(&[0.3, -0.2], &s).unwrap();
        assert_eq!(a, b);
        let c = model.eval(&[0.3, -0.2], &s.stream(6)).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn conditional_mean_x2_integrates_to_paper_value() {
        // V2 = int h2(u)^2 du, h2(u) = E[Y | X2 = G^{-1}(u)] = 7 sin^2(.);
        // then S2 = (V2 - E[Y]^2) / Var(Y) must reproduce 0.4424.
        let h2 = |u: f64| analytic::cond_mean_x2(-PI + 2.0 * PI * u);
        let m = 1 << 14;
        let v2: f64 = (0..m)
            .map(|i| h2((i as f64 + 0.5) / m as f64).powi(2))
            .sum::<f64>()
            / m as f64;
        let s2 = (v2 - analytic::mean().powi(2)) / analytic::total_variance();
        assert!((s2 - analytic::s2()).abs() < 1e-4, "{s2}");
    }
}
