//! Daubechies-4 wavelet basis tabulated on a dyadic grid.
//!
//! The scaling function has no closed form; it is tabulated by exact
//! dyadic refinement: values at the integers come from the eigenvector of
//! the refinement operator, and each halving of the grid spacing applies
//! the two-scale relation `phi(x) = sqrt(2) sum_k h_k phi(2x - k)`, which
//! is exact at dyadic rationals. Point evaluation between grid nodes uses
//! linear interpolation; the `O(2^(-2 depth))` interpolation error is far
//! below sampling noise at the default depth of 12.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::ops::RangeInclusive;

/// D4 scaling filter `((1+sqrt3), (3+sqrt3), (3-sqrt3), (1-sqrt3)) / (4 sqrt2)`.
fn d4_filter() -> [f64; 4] {
    let s3 = 3.0_f64.sqrt();
    let c = 1.0 / (4.0 * 2.0_f64.sqrt());
    [(1.0 + s3) * c, (3.0 + s3) * c, (3.0 - s3) * c, (1.0 - s3) * c]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum WaveletFamily {
    #[default]
    Daubechies4,
}

impl WaveletFamily {
    pub fn from_name(name: &str) -> Result<Self> {
        match name {
            "daubechies4" | "d4" | "db2" => Ok(WaveletFamily::Daubechies4),
            other => Err(Error::UnsupportedFamily(other.to_string())),
        }
    }
}

/// Father and mother wavelet tables over the common support `[0, 3]`.
#[derive(Debug, Clone)]
pub struct WaveletBasis {
    pub family: WaveletFamily,
    pub grid_depth: u32,
    father: Vec<f64>,
    mother: Vec<f64>,
    scale: f64, // 2^grid_depth
}

impl WaveletBasis {
    /// Support length of both wavelets (`[0, L)` with `L = 3`).
    pub const SUPPORT_LEN: i64 = 3;

    pub fn daubechies4(grid_depth: u32) -> Self {
        assert!(grid_depth >= 8, "grid_depth must be at least 8");
        let h = d4_filter();
        let sqrt2 = 2.0_f64.sqrt();

        // integers: phi(0) = phi(3) = 0 and (phi(1), phi(2)) is the
        // eigenvector of the refinement matrix normalized to sum 1
        let s3 = 3.0_f64.sqrt();
        let mut father = vec![0.0, (1.0 + s3) / 2.0, (1.0 - s3) / 2.0, 0.0];

        for d in 1..=grid_depth {
            let m = 3usize << d;
            let prev_m = 3i64 << (d - 1);
            let half = 1i64 << (d - 1);
            let mut cur = vec![0.0; m + 1];
            for (idx, v) in father.iter().enumerate() {
                cur[idx * 2] = *v;
            }
            // odd nodes x = k/2^d: the value of 2x - tap sits at index
            // k - tap * 2^(d-1) of the depth-(d-1) table
            for k in (1..m).step_by(2) {
                let mut acc = 0.0;
                for (tap, hm) in h.iter().enumerate() {
                    let prev_idx = k as i64 - tap as i64 * half;
                    if prev_idx >= 0 && prev_idx <= prev_m {
                        acc += hm * father[prev_idx as usize];
                    }
                }
                cur[k] = sqrt2 * acc;
            }
            father = cur;
        }

        // psi(x) = sqrt2 sum_k g_k phi(2x - k), g_k = (-1)^k h_{3-k}
        let g = [h[3], -h[2], h[1], -h[0]];
        let m = 3usize << grid_depth;
        let scale = (1u64 << grid_depth) as f64;
        let mut mother = vec![0.0; m + 1];
        for (i, slot) in mother.iter_mut().enumerate() {
            let mut acc = 0.0;
            for (tap, gk) in g.iter().enumerate() {
                let idx = 2 * i as i64 - (tap as i64) * m as i64 / 3;
                if idx >= 0 && idx <= m as i64 {
                    acc += gk * father[idx as usize];
                }
            }
            *slot = sqrt2 * acc;
        }

        Self {
            family: WaveletFamily::Daubechies4,
            grid_depth,
            father,
            mother,
            scale,
        }
    }

    pub fn build(family: WaveletFamily, grid_depth: u32) -> Self {
        match family {
            WaveletFamily::Daubechies4 => Self::daubechies4(grid_depth),
        }
    }

    #[inline]
    fn interp(table: &[f64], scale: f64, t: f64) -> f64 {
        if t <= 0.0 || t >= 3.0 {
            return 0.0;
        }
        let x = t * scale;
        let i = x as usize; // t > 0 so x > 0
        let frac = x - i as f64;
        table[i] + frac * (table[i + 1] - table[i])
    }

    /// Father wavelet value at `t` (zero outside `[0, 3]`).
    #[inline]
    pub fn father_at(&self, t: f64) -> f64 {
        Self::interp(&self.father, self.scale, t)
    }

    /// Mother wavelet value at `t` (zero outside `[0, 3]`).
    #[inline]
    pub fn mother_at(&self, t: f64) -> f64 {
        Self::interp(&self.mother, self.scale, t)
    }

    /// Dilated/translated basis function `psi_{jk}` at `u`.
    ///
    /// Level `-1` holds the father translates `phi(u - k)`; level `j >= 0`
    /// holds `2^{j/2} psi(2^j u - k)`. Exact zero outside the support.
    #[inline]
    pub fn eval_psi(&self, j: i32, k: i64, u: f64) -> f64 {
        if j == -1 {
            self.father_at(u - k as f64)
        } else {
            let pow = 2.0_f64.powi(j);
            pow.sqrt() * self.mother_at(pow * u - k as f64)
        }
    }

    /// Exactly the translates whose support intersects `(0, 1)`:
    /// `{-L+1, ..., 2^j - 1}` at level `j >= 0` and `{-L+1, ..., 0}` at
    /// level `-1`, for support `[0, L)`.
    pub fn k_range(&self, j: i32) -> RangeInclusive<i64> {
        let lo = -(Self::SUPPORT_LEN - 1);
        if j == -1 {
            lo..=0
        } else {
            lo..=(1i64 << j) - 1
        }
    }

    /// Grid spacing of the tables.
    pub fn resolution(&self) -> f64 {
        1.0 / self.scale
    }
}
