//! Joint input/output samples and Jansen's paired design.

use crate::error::{Error, Result};
use crate::input::InputSpec;
use crate::rng::SeedStream;

/// Dense row-major matrix of input draws, `n` rows by `p` columns.
#[derive(Debug, Clone, PartialEq)]
pub struct InputMatrix {
    data: Vec<f64>,
    rows: usize,
    cols: usize,
}

impl InputMatrix {
    pub fn from_rows(data: Vec<f64>, rows: usize, cols: usize) -> Self {
        assert_eq!(data.len(), rows * cols);
        Self { data, rows, cols }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }
}

/// `n` joint draws `(X_1..X_p, Y)` from one model, with seed provenance.
#[derive(Debug, Clone)]
pub struct SampleSet {
    pub inputs: InputMatrix,
    pub outputs: Vec<f64>,
    pub seed: u64,
    pub model_id: String,
}

impl SampleSet {
    pub fn new(
        inputs: InputMatrix,
        outputs: Vec<f64>,
        seed: u64,
        model_id: impl Into<String>,
    ) -> Result<Self> {
        if inputs.rows() != outputs.len() {
            return Err(Error::Config(format!(
                "input rows ({}) and outputs ({}) disagree",
                inputs.rows(),
                outputs.len()
            )));
        }
        if outputs.len() < 2 {
            return Err(Error::InsufficientSample {
                need: 2,
                got: outputs.len(),
            });
        }
        Ok(Self {
            inputs,
            outputs,
            seed,
            model_id: model_id.into(),
        })
    }

    pub fn len(&self) -> usize {
        self.outputs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.outputs.is_empty()
    }
}

/// Two independent input samples of identical shape, as Jansen's design.
#[derive(Debug, Clone)]
pub struct DesignPair {
    pub sample_a: InputMatrix,
    pub sample_b: InputMatrix,
    pub seed: u64,
}

/// Draws an `n x p` matrix with column `l` i.i.d. from `specs[l]`.
///
/// Deterministic given the stream; columns are filled row-major so the
/// draw order is independent of how the matrix is later consumed.
pub fn draw_iid(specs: &[InputSpec], n: usize, stream: &SeedStream) -> InputMatrix {
    assert!(n >= 1, "draw_iid needs n >= 1");
    let p = specs.len();
    let mut rng = stream.rng();
    let mut data = Vec::with_capacity(n * p);
    for _ in 0..n {
        for spec in specs {
            data.push(rng.uniform_in(spec.lower, spec.upper));
        }
    }
    InputMatrix::from_rows(data, n, p)
}

/// Two independent `n x p` draws from the same specs for pick-freeze
/// estimation; sub-streams 0 and 1 of `stream` feed the two halves.
pub fn jansen_design(specs: &[InputSpec], n: usize, stream: &SeedStream) -> DesignPair {
    assert!(n >= 2, "jansen_design needs n >= 2");
    DesignPair {
        sample_a: draw_iid(specs, n, &stream.substream(0)),
        sample_b: draw_iid(specs, n, &stream.substream(1)),
        seed: stream.master_seed(),
    }
}
