//! Stochastic SIR final-size model and its deterministic ODE limit.
//!
//! The stochastic model is a continuous-time Markov chain on counts
//! `(S, I, R)`: infections fire at rate `(lambda/N) S I`, removals at
//! `mu I`. Simulation is event-driven and exact; the output is the final
//! size `(I_T + R_T)/N` once `I_T = 0` (or a finite horizon is hit).
//!
//! As `N` grows the rescaled process converges to the ODE system
//! `ds/dt = -lambda s i`, `di/dt = lambda s i - mu i`, `dr/dt = mu i`,
//! which serves as the deterministic metamodel.

use crate::error::{Error, Result};
use crate::models::Model;
use crate::rng::SeedStream;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SirConfig {
    pub population: u64,
    pub initial_susceptible: u64,
    pub initial_infectious: u64,
    /// `None` runs until extinction; `Some(t)` additionally stops at time `t`.
    pub horizon: Option<f64>,
    /// Per-pair infection rate `lambda / N`.
    pub lambda_over_n: f64,
    /// Per-capita removal rate.
    pub mu: f64,
}

impl SirConfig {
    pub fn validate(&self) -> Result<()> {
        if self.initial_susceptible + self.initial_infectious > self.population {
            return Err(Error::InvalidSirConfig(format!(
                "S0 + I0 = {} exceeds N = {}",
                self.initial_susceptible + self.initial_infectious,
                self.population
            )));
        }
        if self.population == 0 {
            return Err(Error::InvalidSirConfig("population is zero".into()));
        }
        if !(self.lambda_over_n >= 0.0) || !(self.mu >= 0.0) {
            return Err(Error::InvalidSirConfig(format!(
                "rates must be nonnegative: lambda/N = {}, mu = {}",
                self.lambda_over_n, self.mu
            )));
        }
        Ok(())
    }
}

/// Compartment counts at one instant; `s + i + r` is conserved.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SirState {
    pub s: u64,
    pub i: u64,
    pub r: u64,
    pub t: f64,
}

/// Exact event-driven simulation; returns the final size `(I + R)/N`.
///
/// Deterministic given `(cfg, stream)`. The event count is capped at
/// `10 N` as a defensive bound (an SIR chain fires at most `2 N` events,
/// so the cap signals a logic error rather than slow extinction).
pub fn sir_simulate(cfg: &SirConfig, stream: &SeedStream) -> Result<f64> {
    cfg.validate()?;
    let mut rng = stream.rng();
    let mut state = SirState {
        s: cfg.initial_susceptible,
        i: cfg.initial_infectious,
        r: 0,
        t: 0.0,
    };
    let n = cfg.population as f64;
    let cap = 10 * cfg.population;
    let mut events: u64 = 0;

    while state.i > 0 {
        let rate_inf = cfg.lambda_over_n * state.s as f64 * state.i as f64;
        let rate_rem = cfg.mu * state.i as f64;
        let total = rate_inf + rate_rem;
        if total <= 0.0 {
            break; // both rates zero: the chain is frozen
        }
        state.t += rng.exponential(total);
        if let Some(h) = cfg.horizon {
            if state.t >= h {
                break;
            }
        }
        if rng.uniform() * total < rate_inf {
            state.s -= 1;
            state.i += 1;
        } else {
            state.i -= 1;
            state.r += 1;
        }
        events += 1;
        if events >= cap {
            return Err(Error::RunawaySimulation(cap));
        }
    }
    Ok((state.i + state.r) as f64 / n)
}

/// Deterministic final size from the ODE limit.
///
/// Classical fixed-step RK4 on the density system, integrating until the
/// infectious density falls below `1/(10 N)` (below one-tenth of an
/// individual the epidemic is numerically over). The step is chosen by
/// successive halving until the output moves by less than 1e-8.
pub fn sir_metamodel(cfg: &SirConfig) -> Result<f64> {
    cfg.validate()?;
    let n = cfg.population as f64;
    let thresh = 1.0 / (10.0 * n);
    let i0 = cfg.initial_infectious as f64 / n;
    if i0 < thresh {
        return Ok(i0); // r0 = 0; nothing to integrate
    }
    if cfg.mu <= 0.0 {
        // i(t) is nondecreasing: extinction is unreachable
        return Err(Error::NoExtinction { t_max: f64::INFINITY });
    }
    let t_max = 100.0 / cfg.mu;
    let lambda = cfg.lambda_over_n * n;

    let mut step = 0.05_f64.min(0.05 / cfg.mu.max(lambda));
    let mut prev = integrate(cfg, lambda, thresh, t_max, step)?;
    for _ in 0..24 {
        step *= 0.5;
        let cur = integrate(cfg, lambda, thresh, t_max, step)?;
        if (cur - prev).abs() < 1e-8 {
            return Ok(cur);
        }
        prev = cur;
    }
    Ok(prev)
}

fn integrate(cfg: &SirConfig, lambda: f64, thresh: f64, t_max: f64, step: f64) -> Result<f64> {
    let n = cfg.population as f64;
    let mut s = cfg.initial_susceptible as f64 / n;
    let mut i = cfg.initial_infectious as f64 / n;
    let mut r = 0.0_f64;
    let mut t = 0.0_f64;
    let mu = cfg.mu;

    let deriv = |s: f64, i: f64| -> (f64, f64, f64) {
        (-lambda * s * i, lambda * s * i - mu * i, mu * i)
    };

    while i >= thresh {
        if t >= t_max {
            return Err(Error::NoExtinction { t_max });
        }
        let (k1s, k1i, k1r) = deriv(s, i);
        let (k2s, k2i, k2r) = deriv(s + 0.5 * step * k1s, i + 0.5 * step * k1i);
        let (k3s, k3i, k3r) = deriv(s + 0.5 * step * k2s, i + 0.5 * step * k2i);
        let (k4s, k4i, k4r) = deriv(s + step * k3s, i + step * k3i);
        s += step / 6.0 * (k1s + 2.0 * k2s + 2.0 * k3s + k4s);
        i += step / 6.0 * (k1i + 2.0 * k2i + 2.0 * k3i + k4i);
        r += step / 6.0 * (k1r + 2.0 * k2r + 2.0 * k3r + k4r);
        t += step;
    }
    Ok(i + r)
}

/// Stochastic SIR as a [`Model`] over `(lambda/N, mu)`.
pub struct SirModel {
    pub base: SirConfig,
}

impl SirModel {
    pub fn new(base: SirConfig) -> Self {
        Self { base }
    }
}

impl Model for SirModel {
    fn model_id(&self) -> &str {
        "sir"
    }

    fn input_count(&self) -> usize {
        2
    }

    fn eval(&self, inputs: &[f64], stream: &SeedStream) -> Result<f64> {
        let cfg = SirConfig {
            lambda_over_n: inputs[0],
            mu: inputs[1],
            ..self.base
        };
        sir_simulate(&cfg, stream)
    }
}

/// ODE metamodel as a deterministic [`Model`] over `(lambda/N, mu)`.
pub struct SirOdeModel {
    pub base: SirConfig,
}

impl SirOdeModel {
    pub fn new(base: SirConfig) -> Self {
        Self { base }
    }
}

impl Model for SirOdeModel {
    fn model_id(&self) -> &str {
        "sir-ode"
    }

    fn input_count(&self) -> usize {
        2
    }

    fn eval(&self, inputs: &[f64], _stream: &SeedStream) -> Result<f64> {
        let cfg = SirConfig {
            lambda_over_n: inputs[0],
            mu: inputs[1],
            ..self.base
        };
        sir_metamodel(&cfg)
    }
}
