//! Jansen pick-freeze estimator of first-order Sobol indices.
//!
//! `S_l = 1 - sum_i (Y_b^i - Y_h^i)^2 / (2 n sigma^2)`, where `Y_b` are the
//! outputs on the second design and `Y_h` the outputs on the first design
//! with column `l` swapped in from the second. The squared differences
//! estimate `2 (Var(Y) - Var(E[Y|X_l]))`, so the subtraction recovers the
//! index. `sigma^2` is pooled over the `2n` evaluations `{Y_b} + {Y_h}`
//! already paid for — no extra model calls.

use crate::error::Result;
use crate::estimate::{combine, empirical_moments, EstimatorKind, SobolEstimate};
use crate::input::InputSpec;
use crate::models::{eval_rows, Model};
use crate::rng::SeedStream;
use crate::sample::{DesignPair, InputMatrix};

/// Stream layout for pick-freeze evaluations: `Y_b` rows on substream
/// `JANSEN_BASE`, hybrid rows for column `l` on `JANSEN_BASE + 1 + l`.
/// Stochastic models draw fresh noise per call either way; fixing the
/// layout keeps runs reproducible and lets `Y_b` be shared across columns.
const JANSEN_BASE: u64 = 100;

/// Outputs of the shared pick-freeze evaluations: `Y_b` once, one hybrid
/// vector per input column. Total model calls: `n (p + 1)`.
pub struct PickFreezeOutputs {
    pub y_b: Vec<f64>,
    pub y_hybrid: Vec<Vec<f64>>,
}

/// Evaluates the `n (p + 1)` pick-freeze outputs for all columns at once.
pub fn pick_freeze_outputs(
    model: &dyn Model,
    pair: &DesignPair,
    stream: &SeedStream,
) -> Result<PickFreezeOutputs> {
    let n = pair.sample_b.rows();
    let p = pair.sample_b.cols();
    let y_b = eval_rows(model, &pair.sample_b, &stream.substream(JANSEN_BASE))?;
    let mut y_hybrid = Vec::with_capacity(p);
    for ell in 0..p {
        let hybrid = hybrid_matrix(pair, ell);
        y_hybrid.push(eval_rows(
            model,
            &hybrid,
            &stream.substream(JANSEN_BASE + 1 + ell as u64),
        )?);
    }
    debug_assert_eq!(y_b.len(), n);
    Ok(PickFreezeOutputs { y_b, y_hybrid })
}

fn hybrid_matrix(pair: &DesignPair, ell: usize) -> InputMatrix {
    let n = pair.sample_a.rows();
    let p = pair.sample_a.cols();
    let mut data = Vec::with_capacity(n * p);
    for i in 0..n {
        for j in 0..p {
            data.push(if j == ell {
                pair.sample_b.get(i, j)
            } else {
                pair.sample_a.get(i, j)
            });
        }
    }
    InputMatrix::from_rows(data, n, p)
}

/// Index estimate for column `ell` from already-computed outputs.
pub fn jansen_from_outputs(
    outputs: &PickFreezeOutputs,
    specs: &[InputSpec],
    ell: usize,
) -> Result<SobolEstimate> {
    let y_b = &outputs.y_b;
    let y_h = &outputs.y_hybrid[ell];
    let n = y_b.len();
    let pooled: Vec<f64> = y_b.iter().chain(y_h.iter()).copied().collect();
    let (mean, variance) = empirical_moments(&pooled)?;
    let sq_diff: f64 = y_b
        .iter()
        .zip(y_h.iter())
        .map(|(b, h)| (b - h) * (b - h))
        .sum();
    // V_hat = mean^2 + sigma^2 - sq_diff/(2n), so the combined index is
    // 1 - sq_diff / (2 n sigma^2).
    let v_hat = mean * mean + (variance - sq_diff / (2.0 * n as f64));
    combine(
        v_hat,
        mean,
        variance,
        specs[ell].name.clone(),
        EstimatorKind::Jansen,
    )
}

/// Full pick-freeze estimate of one first-order index.
///
/// Costs `2n` model calls on its own; use [`pick_freeze_outputs`] +
/// [`jansen_from_outputs`] to share the `Y_b` evaluations across all `p`
/// columns at `n (p + 1)` total calls.
pub fn jansen_first_order(
    model: &dyn Model,
    specs: &[InputSpec],
    pair: &DesignPair,
    ell: usize,
    stream: &SeedStream,
) -> Result<SobolEstimate> {
    assert!(ell < specs.len(), "input index {ell} out of range");
    let n = pair.sample_b.rows();
    let y_b = eval_rows(model, &pair.sample_b, &stream.substream(JANSEN_BASE))?;
    let hybrid = hybrid_matrix(pair, ell);
    let y_h = eval_rows(
        model,
        &hybrid,
        &stream.substream(JANSEN_BASE + 1 + ell as u64),
    )?;
    let outputs = PickFreezeOutputs {
        y_b,
        y_hybrid: {
            let mut v: Vec<Vec<f64>> = (0..specs.len()).map(|_| Vec::new()).collect();
            v[ell] = y_h;
            v
        },
    };
    debug_assert_eq!(outputs.y_b.len(), n);
    jansen_from_outputs(&outputs, specs, ell)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::CountingModel;
    use crate::sample::jansen_design;

    struct Pick {
        ell: usize,
        p: usize,
    }

    impl Model for Pick {
        fn model_id(&self) -> &str {
            "pick"
        }
        fn input_count(&self) -> usize {
            self.p
        }
        fn eval(&self, x: &[f64], _s: &SeedStream) -> Result<f64> {
            Ok(x[self.ell])
        }
    }

    struct Additive;

    impl Model for Additive {
        fn model_id(&self) -> &str {
            "additive"
        }
        fn input_count(&self) -> usize {
            3
        }
        fn eval(&self, x: &[f64], _s: &SeedStream) -> Result<f64> {
            Ok(x[0] + 2.0 * x[1] - 0.5 * x[2])
        }
    }

    fn unit_specs(p: usize) -> Vec<InputSpec> {
        (0..p)
            .map(|i| InputSpec::uniform(format!("x{i}"), 0.0, 1.0).unwrap())
            .collect()
    }

    #[test]
    fn identity_model_scores_one_on_its_input() {
        let specs = unit_specs(2);
        let pair = jansen_design(&specs, 2000, &SeedStream::new(51));
        let model = Pick { ell: 0, p: 2 };
        let est = jansen_first_order(&model, &specs, &pair, 0, &SeedStream::new(51)).unwrap();
        assert!(
            (est.index_value - 1.0).abs() < 1e-12,
            "S = {}",
            est.index_value
        );
    }

    #[test]
    fn identity_model_scores_zero_on_unused_input() {
        let specs = unit_specs(2);
        let n = 10_000;
        let pair = jansen_design(&specs, n, &SeedStream::new(53));
        let model = Pick { ell: 0, p: 2 };
        let est = jansen_first_order(&model, &specs, &pair, 1, &SeedStream::new(53)).unwrap();
        assert!(
            est.index_value.abs() < 5.0 / (n as f64).sqrt(),
            "S = {}",
            est.index_value
        );
    }

    #[test]
    fn estimate_never_exceeds_one() {
        let specs = unit_specs(3);
        let model = Additive;
        for seed in 0..20 {
            let pair = jansen_design(&specs, 500, &SeedStream::new(seed));
            for ell in 0..3 {
                let est =
                    jansen_first_order(&model, &specs, &pair, ell, &SeedStream::new(seed))
                        .unwrap();
                assert!(est.index_value <= 1.0 + 1e-12, "S = {}", est.index_value);
            }
        }
    }

    #[test]
    fn additive_model_indices_sum_to_one() {
        let specs = unit_specs(3);
        let n = 20_000;
        let stream = SeedStream::new(57);
        let pair = jansen_design(&specs, n, &stream);
        let model = Additive;
        let outputs = pick_freeze_outputs(&model, &pair, &stream).unwrap();
        let total: f64 = (0..3)
            .map(|ell| {
                jansen_from_outputs(&outputs, &specs, ell)
                    .unwrap()
                    .index_value
            })
            .sum();
        assert!((total - 1.0).abs() < 5.0 / (n as f64).sqrt(), "sum {total}");
    }

    #[test]
    fn permutation_symmetry() {
        // Relabeling inputs and permuting spec order yields identical
        // estimates for corresponding indices.
        let n = 4000;
        let specs = unit_specs(2);
        let stream = SeedStream::new(59);
        let pair = jansen_design(&specs, n, &stream);
        let m01 = Pick { ell: 0, p: 2 };
        let e0 = jansen_first_order(&m01, &specs, &pair, 0, &stream)
            .unwrap()
            .index_value;

        // permuted design: swap the two columns everywhere
        let swap = |m: &InputMatrix| {
            let mut data = Vec::with_capacity(m.rows() * 2);
            for i in 0..m.rows() {
                data.push(m.get(i, 1));
                data.push(m.get(i, 0));
            }
            InputMatrix::from_rows(data, m.rows(), 2)
        };
        let pair_sw = DesignPair {
            sample_a: swap(&pair.sample_a),
            sample_b: swap(&pair.sample_b),
            seed: pair.seed,
        };
        let m10 = Pick { ell: 1, p: 2 };
        let e1 = jansen_first_order(&m10, &specs, &pair_sw, 1, &stream)
            .unwrap()
            .index_value;
        assert_eq!(e0.to_bits(), e1.to_bits());
    }

    #[test]
    fn shared_outputs_cost_n_times_p_plus_one_calls() {
        let specs = unit_specs(3);
        let n = 1000;
        let stream = SeedStream::new(61);
        let pair = jansen_design(&specs, n, &stream);
        let model = Additive;
        let counting = CountingModel::new(&model);
        let _ = pick_freeze_outputs(&counting, &pair, &stream).unwrap();
        assert_eq!(counting.calls(), (n * (3 + 1)) as u64);
    }
}
