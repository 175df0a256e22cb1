//! Slope-heuristic calibration sweep: kept-level counts as a function of
//! the penalty constant, per input, on a dedicated calibration sample.

use crate::error::Result;
use crate::harness::config::ExperimentConfig;
use crate::harness::experiment::Experiment;
use crate::models::eval_rows;
use crate::rng::SeedStream;
use crate::sample::{draw_iid, SampleSet};
use crate::wavelet::{coefficients, slope_heuristic, WaveletBasis};

#[derive(Debug, Clone)]
pub struct CalibrationReport {
    pub model: String,
    /// `(input name, kprime, kept level count)` curve points.
    pub curve: Vec<(String, f64, usize)>,
    /// Slope-heuristic selection per input.
    pub selected: Vec<(String, f64)>,
}

/// Default sweep grid: geometric from 0.02 to ~2000.
pub fn default_kprime_grid() -> Vec<f64> {
    (0..25).map(|i| 0.02 * 1.6_f64.powi(i)).collect()
}

/// The calibration sample lives on stream 0, disjoint from every
/// replication stream (those start at 1).
pub fn run_calibration(cfg: &ExperimentConfig, k_grid: &[f64]) -> Result<CalibrationReport> {
    let exp = Experiment::build(cfg)?;
    let basis = WaveletBasis::daubechies4(exp.settings.grid_depth);
    let stream = SeedStream::with_stream(cfg.master_seed, 0);
    let matrix = draw_iid(&exp.specs, cfg.n, &stream.substream(0));
    let outputs = eval_rows(exp.model.as_ref(), &matrix, &stream.substream(1))?;
    let sample = SampleSet::new(matrix, outputs, cfg.master_seed, exp.model.model_id())?;

    let mut curve = Vec::new();
    let mut selected = Vec::new();
    for ell in exp.input_indices(cfg) {
        let spec = &exp.specs[ell];
        let sp = coefficients(&sample, ell, spec, &basis, exp.settings.penalty.j_cap)?;
        let (kp, pts) = slope_heuristic(&sp, cfg.n, k_grid)?;
        for (k, kept) in pts {
            curve.push((spec.name.clone(), k, kept));
        }
        selected.push((spec.name.clone(), kp));
    }
    Ok(CalibrationReport {
        model: exp.model_id.as_str().to_string(),
        curve,
        selected,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::config::ModelId;

    #[test]
    fn calibration_sweep_produces_monotone_curves() {
        let cfg = ExperimentConfig::new(ModelId::Ishigami, 2000, 1, 13);
        let grid = default_kprime_grid();
        let rep = run_calibration(&cfg, &grid).unwrap();
        assert_eq!(rep.selected.len(), 3);
        for (name, _) in &rep.selected {
            let counts: Vec<usize> = rep
                .curve
                .iter()
                .filter(|(n, _, _)| n == name)
                .map(|(_, _, c)| *c)
                .collect();
            assert_eq!(counts.len(), grid.len());
            assert!(counts.windows(2).all(|w| w[0] >= w[1]));
        }
    }
}
