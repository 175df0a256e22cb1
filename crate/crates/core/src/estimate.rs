//! The generic plug-in combiner `S_l = (V_l - mean^2) / variance`.
//!
//! Every estimator in this crate reduces to an estimate of
//! `V_l = E[E^2(Y|X_l)]`; this module turns such an estimate plus the
//! empirical output moments into a [`SobolEstimate`].

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Which estimator produced an index estimate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EstimatorKind {
    Jansen,
    NadarayaWatson,
    WarpedWavelet,
}

impl EstimatorKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            EstimatorKind::Jansen => "jansen",
            EstimatorKind::NadarayaWatson => "nadaraya_watson",
            EstimatorKind::WarpedWavelet => "warped_wavelet",
        }
    }

    pub const ALL: [EstimatorKind; 3] = [
        EstimatorKind::Jansen,
        EstimatorKind::NadarayaWatson,
        EstimatorKind::WarpedWavelet,
    ];
}

impl std::fmt::Display for EstimatorKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A first-order Sobol index estimate with its diagnostics.
///
/// `index_value` is exactly `(v_hat - y_bar^2) / sigma2_hat` as computed by
/// [`combine`] and is deliberately *not* clamped to `[0, 1]`: sampling noise
/// may push it outside, and clamping would hide estimator bias. Estimates
/// outside `[-0.05, 1.05]` are flagged with `out_of_range` instead.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SobolEstimate {
    pub index_value: f64,
    pub input_name: String,
    pub estimator: EstimatorKind,
    pub v_hat: f64,
    pub y_bar: f64,
    pub sigma2_hat: f64,
    pub out_of_range: bool,
}

/// Empirical mean and variance of the outputs, both with `1/n`
/// normalization (the variance is the biased population form, not `1/(n-1)`).
pub fn empirical_moments(outputs: &[f64]) -> Result<(f64, f64)> {
    if outputs.len() < 2 {
        return Err(Error::InsufficientSample {
            need: 2,
            got: outputs.len(),
        });
    }
    let n = outputs.len() as f64;
    let mean = outputs.iter().sum::<f64>() / n;
    let variance = outputs.iter().map(|y| (y - mean) * (y - mean)).sum::<f64>() / n;
    Ok((mean, variance))
}

/// Plug-in combination `(v_hat - mean^2) / variance`.
///
/// Errors with [`Error::ZeroOutputVariance`] when `variance <= 0`, which
/// signals a degenerate (constant-output) model.
pub fn combine(
    v_hat: f64,
    mean: f64,
    variance: f64,
    input_name: impl Into<String>,
    estimator: EstimatorKind,
) -> Result<SobolEstimate> {
    if !(variance > 0.0) {
        return Err(Error::ZeroOutputVariance);
    }
    let index_value = (v_hat - mean * mean) / variance;
    Ok(SobolEstimate {
        index_value,
        input_name: input_name.into(),
        estimator,
        v_hat,
        y_bar: mean,
        sigma2_hat: variance,
        out_of_range: !(-0.05..=1.05).contains(&index_value),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn constant_sample_has_zero_variance() {
        let (m, v) = empirical_moments(&[1.0, 1.0, 1.0, 1.0]).unwrap();
        assert_eq!((m, v), (1.0, 0.0));
    }

    #[test]
    fn two_point_sample_uses_population_normalization() {
        let (m, v) = empirical_moments(&[0.0, 2.0]).unwrap();
        assert_eq!((m, v), (1.0, 1.0));
    }

    #[test]
    fn short_sample_is_rejected() {
        assert!(matches!(
            empirical_moments(&[1.0]),
            Err(Error::InsufficientSample { .. })
        ));
    }

    #[test]
    fn combine_trivial_cases() {
        let e = combine(1.0, 1.0, 1.0, "x", EstimatorKind::Jansen).unwrap();
        assert_eq!(e.index_value, 0.0);
        assert!(!e.out_of_range);
        let e = combine(2.0, 1.0, 1.0, "x", EstimatorKind::Jansen).unwrap();
        assert_eq!(e.index_value, 1.0);
    }

    #[test]
    fn combine_rejects_degenerate_variance() {
        assert!(matches!(
            combine(1.0, 1.0, 0.0, "x", EstimatorKind::Jansen),
            Err(Error::ZeroOutputVariance)
        ));
    }

    #[test]
    fn out_of_range_flag_tracks_band() {
        let e = combine(3.0, 1.0, 1.0, "x", EstimatorKind::Jansen).unwrap();
        assert!(e.out_of_range);
        let e = combine(-0.2, 0.0, 1.0, "x", EstimatorKind::Jansen).unwrap();
        assert!(e.out_of_range);
    }

    proptest! {
        // Reconstructing the index from the stored fields reproduces it
        // bit-for-bit: combine is exact algebra, nothing else.
        #[test]
        fn combine_is_exact_algebra(
            v in -100.0f64..100.0,
            m in -10.0f64..10.0,
            s in 1e-6f64..100.0,
        ) {
            let e = combine(v, m, s, "x", EstimatorKind::WarpedWavelet).unwrap();
            prop_assert_eq!(e.index_value, (e.v_hat - e.y_bar * e.y_bar) / e.sigma2_hat);
        }

        // Sobol indices are scale-free: an affine output transform applied
        // consistently to (v_hat, mean, variance) leaves the index unchanged
        // to 1e-12 relative error.
        #[test]
        fn combine_is_affine_invariant(
            v in 0.0f64..50.0,
            m in -5.0f64..5.0,
            s in 0.01f64..50.0,
            a in prop::sample::select(vec![-3.0f64, -0.5, 0.25, 2.0, 10.0]),
            b in -5.0f64..5.0,
        ) {
            let base = combine(v, m, s, "x", EstimatorKind::Jansen).unwrap().index_value;
            // Y' = aY + b: E[E^2(Y'|X)] = a^2 v + 2ab m + b^2, mean' = am + b,
            // var' = a^2 s.
            let v2 = a * a * v + 2.0 * a * b * m + b * b;
            let m2 = a * m + b;
            let s2 = a * a * s;
            let scaled = combine(v2, m2, s2, "x", EstimatorKind::Jansen).unwrap().index_value;
            let tol = 1e-12 * base.abs().max(1.0);
            prop_assert!((scaled - base).abs() <= tol.max(1e-9),
                "base {} scaled {}", base, scaled);
        }

        #[test]
        fn variance_is_nonnegative(ys in prop::collection::vec(-1e6f64..1e6, 2..200)) {
            let (_, v) = empirical_moments(&ys).unwrap();
            prop_assert!(v >= 0.0);
        }
    }
}
