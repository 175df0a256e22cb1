//! Input parameter descriptions and the CDF warp `u = G_l(x)`.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// One uncertain model input: a named uniform distribution on `[lower, upper]`.
///
/// The warp [`InputSpec::warp`] is the input's CDF, mapping draws onto
/// `[0, 1]` where the wavelet basis lives.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InputSpec {
    pub name: String,
    pub lower: f64,
    pub upper: f64,
}

impl InputSpec {
    pub fn uniform(name: impl Into<String>, lower: f64, upper: f64) -> Result<Self> {
        let name = name.into();
        if !(lower < upper) || !lower.is_finite() || !upper.is_finite() {
            return Err(Error::InvalidBounds { name, lower, upper });
        }
        Ok(Self { name, lower, upper })
    }

    /// CDF value `G(x)`, clamped to `[0, 1]` outside the support.
    pub fn warp(&self, x: f64) -> f64 {
        ((x - self.lower) / (self.upper - self.lower)).clamp(0.0, 1.0)
    }

    /// Quantile `G^{-1}(u)` for `u` in `[0, 1]`.
    pub fn inverse_warp(&self, u: f64) -> f64 {
        self.lower + u * (self.upper - self.lower)
    }
}

/// Rank-transform fallback when the input's law is unknown: the fraction of
/// sample values `<= x`.
pub fn empirical_warp(column: &[f64], x: f64) -> f64 {
    assert!(!column.is_empty(), "empirical_warp needs a nonempty column");
    let below = column.iter().filter(|&&v| v <= x).count();
    below as f64 / column.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn warp_midpoint() {
        let spec = InputSpec::uniform("x", 0.0, 2.0).unwrap();
        assert_eq!(spec.warp(1.0), 0.5);
    }

    #[test]
    fn warp_boundary_and_clamp() {
        let spec = InputSpec::uniform("x", -PI, PI).unwrap();
        assert_eq!(spec.warp(-PI), 0.0);
        assert_eq!(spec.warp(PI), 1.0);
        assert_eq!(spec.warp(-PI - 1.0), 0.0);
        assert_eq!(spec.warp(PI + 1.0), 1.0);
    }

    #[test]
    fn warp_is_monotone() {
        let spec = InputSpec::uniform("x", -1.0, 3.0).unwrap();
        let mut prev = f64::NEG_INFINITY;
        for i in 0..=100 {
            let u = spec.warp(-2.0 + 0.06 * i as f64);
            assert!(u >= prev);
            prev = u;
        }
    }

    #[test]
    fn inverse_warp_round_trips() {
        let spec = InputSpec::uniform("x", 2.0, 10.0).unwrap();
        for i in 0..=20 {
            let u = i as f64 / 20.0;
            assert!((spec.warp(spec.inverse_warp(u)) - u).abs() < 1e-12);
        }
    }

    #[test]
    fn degenerate_bounds_rejected() {
        assert!(InputSpec::uniform("x", 1.0, 1.0).is_err());
        assert!(InputSpec::uniform("x", 2.0, 1.0).is_err());
    }

    #[test]
    fn empirical_warp_examples() {
        let col = [1.0, 2.0, 3.0];
        assert_eq!(empirical_warp(&col, 2.0), 2.0 / 3.0);
        assert_eq!(empirical_warp(&col, 0.5), 0.0);
        assert_eq!(empirical_warp(&col, 4.0), 1.0);
    }
}
