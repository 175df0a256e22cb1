//! Replication studies: bias and MSE of each estimator against a known
//! reference, fully deterministic given the master seed.

use crate::error::{Error, Result};
use crate::estimate::EstimatorKind;
use crate::harness::config::ExperimentConfig;
use crate::harness::experiment::{Experiment, EstimatorSettings};
use crate::input::InputSpec;
use crate::jansen::{jansen_from_outputs, pick_freeze_outputs};
use crate::kernel::nw_estimate;
use crate::models::{eval_rows, Model};
use crate::rng::SeedStream;
use crate::sample::{draw_iid, jansen_design, SampleSet};
use crate::wavelet::{wavelet_estimate, WaveletBasis};
use rayon::prelude::*;

/// Per-(estimator, input) aggregate over all replications.
#[derive(Debug, Clone)]
pub struct ReportRow {
    pub model: String,
    pub estimator: EstimatorKind,
    pub input: String,
    pub n: usize,
    pub replications: usize,
    pub reference: f64,
    pub bias: f64,
    pub mse: f64,
    pub sd: f64,
    pub seed: u64,
}

#[derive(Debug, Clone)]
pub struct ReplicationReport {
    pub rows: Vec<ReportRow>,
}

// Substream layout of one replication: the sample draw, the sample's model
// evaluations, the pick-freeze design, and its evaluations never overlap.
const SUB_SAMPLE_DRAW: u64 = 0;
const SUB_SAMPLE_EVAL: u64 = 1;
const SUB_DESIGN: u64 = 2;
const SUB_PICK_FREEZE: u64 = 3;

/// Runs every requested estimator once on replication stream `stream`.
///
/// Returns `(estimator, input index, estimate)` triples in a fixed order:
/// estimators in request order, inputs ascending. The two plug-in
/// estimators share one sample of size `n` (n model calls); Jansen uses
/// its own paired design costing `n (p + 1)` calls.
pub fn single_replication(
    model: &dyn Model,
    specs: &[InputSpec],
    estimators: &[EstimatorKind],
    inputs: &[usize],
    settings: &EstimatorSettings,
    basis: Option<&WaveletBasis>,
    n: usize,
    stream: &SeedStream,
) -> Result<Vec<(EstimatorKind, usize, f64)>> {
    let needs_sample = estimators
        .iter()
        .any(|e| matches!(e, EstimatorKind::NadarayaWatson | EstimatorKind::WarpedWavelet));

    let sample = if needs_sample {
        let matrix = draw_iid(specs, n, &stream.substream(SUB_SAMPLE_DRAW));
        let outputs = eval_rows(model, &matrix, &stream.substream(SUB_SAMPLE_EVAL))?;
        Some(SampleSet::new(
            matrix,
            outputs,
            stream.master_seed(),
            model.model_id(),
        )?)
    } else {
        None
    };

    let pick_freeze = if estimators.contains(&EstimatorKind::Jansen) {
        let pair = jansen_design(specs, n, &stream.substream(SUB_DESIGN));
        let outputs = pick_freeze_outputs(model, &pair, &stream.substream(SUB_PICK_FREEZE))?;
        Some(outputs)
    } else {
        None
    };

    let mut out = Vec::with_capacity(estimators.len() * inputs.len());
    for &kind in estimators {
        for &ell in inputs {
            let estimate = match kind {
                EstimatorKind::Jansen => {
                    let outputs = pick_freeze.as_ref().expect("design prepared above");
                    jansen_from_outputs(outputs, specs, ell)?.index_value
                }
                EstimatorKind::NadarayaWatson => {
                    let sample = sample.as_ref().expect("sample prepared above");
                    nw_estimate(sample, ell, &specs[ell], &settings.kernel_cfg)?.index_value
                }
                EstimatorKind::WarpedWavelet => {
                    let sample = sample.as_ref().expect("sample prepared above");
                    let basis = basis.expect("basis prepared for wavelet runs");
                    wavelet_estimate(sample, ell, &specs[ell], basis, &settings.penalty)?
                        .index_value
                }
            };
            out.push((kind, ell, estimate));
        }
    }
    Ok(out)
}

/// Full bias/MSE study. Replications run concurrently on their own
/// streams; aggregation is an ordered serial reduction over the
/// replication index, so output bytes never depend on thread count.
pub fn run_replications(cfg: &ExperimentConfig) -> Result<ReplicationReport> {
    let exp = Experiment::build(cfg)?;
    let reference = exp.reference.clone().ok_or_else(|| {
        Error::Config(format!(
            "model `{}` has no analytic reference for a bias/MSE study; use sir-compare",
            exp.model_id.as_str()
        ))
    })?;
    let inputs = exp.input_indices(cfg);
    let basis = if cfg.estimators.contains(&EstimatorKind::WarpedWavelet) {
        Some(WaveletBasis::daubechies4(exp.settings.grid_depth))
    } else {
        None
    };

    let per_rep: Vec<Vec<(EstimatorKind, usize, f64)>> = (0..cfg.replications as u64)
        .into_par_iter()
        .map(|r| {
            let stream = SeedStream::with_stream(cfg.master_seed, cfg.first_stream + r);
            single_replication(
                exp.model.as_ref(),
                &exp.specs,
                &cfg.estimators,
                &inputs,
                &exp.settings,
                basis.as_ref(),
                cfg.n,
                &stream,
            )
        })
        .collect::<Result<Vec<_>>>()?;

    let slots = cfg.estimators.len() * inputs.len();
    let mut err_sum = vec![0.0_f64; slots];
    let mut err_sq_sum = vec![0.0_f64; slots];
    for rep in &per_rep {
        debug_assert_eq!(rep.len(), slots);
        for (slot, &(_, ell, estimate)) in rep.iter().enumerate() {
            let err = estimate - reference[ell];
            err_sum[slot] += err;
            err_sq_sum[slot] += err * err;
        }
    }

    let r = cfg.replications as f64;
    let mut rows = Vec::with_capacity(slots);
    for (slot, &(kind, ell, _)) in per_rep[0].iter().enumerate() {
        let bias = err_sum[slot] / r;
        let mse = err_sq_sum[slot] / r;
        let sd = (mse - bias * bias).max(0.0).sqrt();
        rows.push(ReportRow {
            model: exp.model_id.as_str().to_string(),
            estimator: kind,
            input: exp.specs[ell].name.clone(),
            n: cfg.n,
            replications: cfg.replications,
            reference: reference[ell],
            bias,
            mse,
            sd,
            seed: cfg.master_seed,
        });
    }
    Ok(ReplicationReport { rows })
}
