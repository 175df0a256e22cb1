//! Estimator comparison on models without analytic references (the SIR
//! experiment set): per-replication index estimates plus mean/sd summary.

use crate::error::Result;
use crate::estimate::EstimatorKind;
use crate::harness::config::ExperimentConfig;
use crate::harness::experiment::Experiment;
use crate::harness::replicate::single_replication;
use crate::rng::SeedStream;
use crate::wavelet::WaveletBasis;
use rayon::prelude::*;

#[derive(Debug, Clone)]
pub struct CompareRow {
    pub model: String,
    pub estimator: EstimatorKind,
    pub input: String,
    pub rep: u64,
    pub estimate: f64,
}

#[derive(Debug, Clone)]
pub struct CompareSummary {
    pub estimator: EstimatorKind,
    pub input: String,
    pub mean: f64,
    pub sd: f64,
}

#[derive(Debug, Clone)]
pub struct CompareReport {
    pub rows: Vec<CompareRow>,
    pub summary: Vec<CompareSummary>,
}

/// Runs all requested estimators over `replications` Monte-Carlo
/// repetitions and reports every per-replication estimate (the raw
/// material of the distribution plots) plus means and spreads.
pub fn run_compare(cfg: &ExperimentConfig) -> Result<CompareReport> {
    let exp = Experiment::build(cfg)?;
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
    let mut rows = Vec::with_capacity(per_rep.len() * slots);
    let mut sums = vec![0.0_f64; slots];
    let mut sq_sums = vec![0.0_f64; slots];
    for (r, rep) in per_rep.iter().enumerate() {
        for (slot, &(kind, ell, estimate)) in rep.iter().enumerate() {
            rows.push(CompareRow {
                model: exp.model_id.as_str().to_string(),
                estimator: kind,
                input: exp.specs[ell].name.clone(),
                rep: cfg.first_stream + r as u64,
                estimate,
            });
            sums[slot] += estimate;
            sq_sums[slot] += estimate * estimate;
        }
    }

    let n_rep = cfg.replications as f64;
    let summary = per_rep[0]
        .iter()
        .enumerate()
        .map(|(slot, &(kind, ell, _))| {
            let mean = sums[slot] / n_rep;
            let var = (sq_sums[slot] / n_rep - mean * mean).max(0.0);
            CompareSummary {
                estimator: kind,
                input: exp.specs[ell].name.clone(),
                mean,
                sd: var.sqrt(),
            }
        })
        .collect();

    Ok(CompareReport { rows, summary })
}
