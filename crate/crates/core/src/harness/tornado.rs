//! One-at-a-time tornado diagram: each input swept to its interval
//! endpoints with the others held at nominal values.

use crate::error::{Error, Result};
use crate::input::InputSpec;
use crate::models::Model;
use crate::rng::SeedStream;

#[derive(Debug, Clone)]
pub struct TornadoBar {
    pub input_name: String,
    pub y_low: f64,
    pub y_high: f64,
}

impl TornadoBar {
    pub fn width(&self) -> f64 {
        (self.y_high - self.y_low).abs()
    }
}

/// Evaluates the model at each input's bounds (others at `nominal`),
/// averaging `replications` runs for stochastic models, and returns bars
/// sorted by decreasing width.
pub fn tornado(
    model: &dyn Model,
    specs: &[InputSpec],
    nominal: &[f64],
    replications: usize,
    stream: &SeedStream,
) -> Result<Vec<TornadoBar>> {
    if nominal.len() != specs.len() {
        return Err(Error::Config(format!(
            "nominal vector has {} entries for {} inputs",
            nominal.len(),
            specs.len()
        )));
    }
    for (spec, &x) in specs.iter().zip(nominal.iter()) {
        if x < spec.lower || x > spec.upper {
            return Err(Error::Config(format!(
                "nominal value {x} outside bounds of `{}`",
                spec.name
            )));
        }
    }
    let replications = replications.max(1);

    let mut bars = Vec::with_capacity(specs.len());
    for (ell, spec) in specs.iter().enumerate() {
        let endpoint_mean = |value: f64, side: u64| -> Result<f64> {
            let mut x = nominal.to_vec();
            x[ell] = value;
            let base = stream.substream(ell as u64).substream(side);
            let mut acc = 0.0;
            for rep in 0..replications {
                acc += model.eval(&x, &base.substream(rep as u64))?;
            }
            Ok(acc / replications as f64)
        };
        let y_low = endpoint_mean(spec.lower, 0)?;
        let y_high = endpoint_mean(spec.upper, 1)?;
        bars.push(TornadoBar {
            input_name: spec.name.clone(),
            y_low,
            y_high,
        });
    }
    bars.sort_by(|a, b| b.width().partial_cmp(&a.width()).expect("finite widths"));
    Ok(bars)
}
