//! Splittable, counter-based random streams.
//!
//! Every consumer of randomness receives a [`SeedStream`] — a value, not a
//! shared generator. Distinct `(master_seed, stream_id)` pairs index
//! statistically independent ChaCha streams, and [`SeedStream::substream`]
//! derives an independent child family, so replication `r` can use stream
//! `r` and parallel workers never contend or depend on sequencing.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Identifies one reproducible random stream.
///
/// Same `(master_seed, stream_id)` always reproduces identical draws;
/// distinct ids give independent streams with no sequencing dependence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeedStream {
    master_seed: u64,
    stream_id: u64,
}

impl SeedStream {
    pub fn new(master_seed: u64) -> Self {
        Self {
            master_seed,
            stream_id: 0,
        }
    }

    pub fn with_stream(master_seed: u64, stream_id: u64) -> Self {
        Self {
            master_seed,
            stream_id,
        }
    }

    pub fn master_seed(&self) -> u64 {
        self.master_seed
    }

    pub fn stream_id(&self) -> u64 {
        self.stream_id
    }

    /// Sibling stream under the same master seed.
    pub fn stream(&self, stream_id: u64) -> Self {
        Self {
            master_seed: self.master_seed,
            stream_id,
        }
    }

    /// Child stream family: folds this stream's identity into a fresh
    /// master so `substream(i)` draws are independent of `stream(i)` draws.
    pub fn substream(&self, child_id: u64) -> Self {
        Self {
            master_seed: splitmix64(self.master_seed ^ splitmix64(self.stream_id ^ GOLDEN)),
            stream_id: child_id,
        }
    }

    /// Fresh generator positioned at the start of this stream.
    pub fn rng(&self) -> StreamRng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.master_seed);
        rng.set_stream(self.stream_id);
        StreamRng { inner: rng }
    }
}

/// Thin wrapper exposing only the draw primitives the crate needs.
#[derive(Debug, Clone)]
pub struct StreamRng {
    inner: ChaCha8Rng,
}

impl StreamRng {
    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform in `[0, 1)` with 53-bit resolution.
    pub fn uniform(&mut self) -> f64 {
        (self.inner.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `[lo, hi)`.
    pub fn uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        lo + self.uniform() * (hi - lo)
    }

    /// Exponential waiting time with the given rate (inverse CDF on (0, 1]).
    pub fn exponential(&mut self, rate: f64) -> f64 {
        let u = 1.0 - self.uniform(); // (0, 1]
        -u.ln() / rate
    }

    /// Standard normal via Box-Muller (used only by synthetic test models).
    pub fn standard_normal(&mut self) -> f64 {
        let u1 = 1.0 - self.uniform();
        let u2 = self.uniform();
        (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
    }
}
