//! The simulators under study.
//!
//! A [`Model`] maps one row of declared inputs to a scalar output. Stochastic
//! models draw their nuisance randomness from the [`SeedStream`] handed to
//! each call, so evaluation is a pure function of `(inputs, config, stream)`
//! and rows may be evaluated concurrently on distinct streams.

pub mod ishigami;
pub mod sir;

pub use ishigami::{ishigami, IshigamiConfig, IshigamiModel};
pub use sir::{sir_metamodel, sir_simulate, SirConfig, SirModel, SirOdeModel, SirState};

use crate::error::Result;
use crate::rng::SeedStream;
use crate::sample::InputMatrix;
use std::sync::atomic::{AtomicU64, Ordering};

pub trait Model: Sync {
    fn model_id(&self) -> &str;

    /// Number of declared inputs (nuisance variables are not counted).
    fn input_count(&self) -> usize;

    fn eval(&self, inputs: &[f64], stream: &SeedStream) -> Result<f64>;
}

/// Evaluates every row of `inputs`, row `i` on `base.substream(i)`.
pub fn eval_rows(model: &dyn Model, inputs: &InputMatrix, base: &SeedStream) -> Result<Vec<f64>> {
    (0..inputs.rows())
        .map(|i| model.eval(inputs.row(i), &base.substream(i as u64)))
        .collect()
}

/// Wrapper that counts model calls, for cost accounting in the harness.
pub struct CountingModel<'a> {
    inner: &'a dyn Model,
    calls: AtomicU64,
}

impl<'a> CountingModel<'a> {
    pub fn new(inner: &'a dyn Model) -> Self {
        Self {
            inner,
            calls: AtomicU64::new(0),
        }
    }

    pub fn calls(&self) -> u64 {
        self.calls.load(Ordering::Relaxed)
    }
}

impl Model for CountingModel<'_> {
    fn model_id(&self) -> &str {
        self.inner.model_id()
    }

    fn input_count(&self) -> usize {
        self.inner.input_count()
    }

    fn eval(&self, inputs: &[f64], stream: &SeedStream) -> Result<f64> {
        self.calls.fetch_add(1, Ordering::Relaxed);
        self.inner.eval(inputs, stream)
    }
}
