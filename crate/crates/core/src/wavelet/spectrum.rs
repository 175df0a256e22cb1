//! Warped-wavelet coefficients and block thresholding.
//!
//! For input `l`, the coefficients `beta_{jk} = (1/n) sum_i Y_i
//! psi_{jk}(G_l(X_l^i))` estimate the expansion of the warped conditional
//! mean `h_l`, and `V_l = ||h_l||^2` is estimated by keeping whole
//! resolution levels whose energy beats the penalty `w(j)`:
//!
//! `theta = sum_{j kept} (sum_k beta_{jk}^2 - w(j))`,
//! `w(j) = K' (2^j + ln 2) / n`.
//!
//! Because the penalty is additive across levels, this per-level rule
//! realizes the supremum over all level subsets exactly.

use crate::error::{Error, Result};
use crate::input::InputSpec;
use crate::sample::SampleSet;
use crate::wavelet::basis::WaveletBasis;
use serde::{Deserialize, Serialize};
use std::f64::consts::LN_2;

/// Penalty constant and optional level-cap override.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PenaltyConfig {
    /// The per-level constant `K'` in `w(j) = K' (2^j + ln 2) / n`.
    pub k_prime: f64,
    /// Overrides the default cap `J_n = floor(log2(sqrt(n)/ln(n)))`.
    pub j_cap: Option<i32>,
}

impl PenaltyConfig {
    pub fn new(k_prime: f64) -> Self {
        assert!(k_prime > 0.0, "k_prime must be positive");
        Self {
            k_prime,
            j_cap: None,
        }
    }

    pub fn with_cap(k_prime: f64, j_cap: i32) -> Self {
        assert!(k_prime > 0.0, "k_prime must be positive");
        Self {
            k_prime,
            j_cap: Some(j_cap),
        }
    }

    /// Per-level penalty `w(j)`; `2^j` is `1/2` at the father level.
    pub fn w(&self, j: i32, n: usize) -> f64 {
        self.k_prime * (2.0_f64.powi(j) + LN_2) / n as f64
    }
}

/// Default level cap `J_n = floor(log2(sqrt(n) / ln(n)))` (natural log).
pub fn default_j_max(n: usize) -> Result<i32> {
    if n < 2 {
        return Err(Error::SampleTooSmall(n));
    }
    let jn = ((n as f64).sqrt() / (n as f64).ln()).log2().floor() as i32;
    if jn < -1 {
        return Err(Error::SampleTooSmall(n));
    }
    Ok(jn)
}

/// All coefficients of one resolution level.
#[derive(Debug, Clone)]
pub struct LevelBlock {
    pub j: i32,
    /// `(k, beta_hat)` for every translate intersecting `(0, 1)`.
    pub coeffs: Vec<(i64, f64)>,
    /// `sum_k beta_hat^2`.
    pub energy: f64,
}

/// Per-level block energies for one input, levels `-1..=j_max`.
#[derive(Debug, Clone)]
pub struct BlockSpectrum {
    pub levels: Vec<LevelBlock>,
    pub j_max: i32,
    pub n: usize,
}

impl BlockSpectrum {
    pub fn coefficient(&self, j: i32, k: i64) -> Option<f64> {
        self.levels
            .iter()
            .find(|l| l.j == j)?
            .coeffs
            .iter()
            .find(|(kk, _)| *kk == k)
            .map(|(_, b)| *b)
    }

    /// Total energy across all levels.
    pub fn total_energy(&self) -> f64 {
        self.levels.iter().map(|l| l.energy).sum()
    }
}

/// Computes the block spectrum of input column `ell` from warped values.
///
/// The warp applied is the declared CDF of `spec`; levels run from `-1` to
/// `j_cap` (default [`default_j_max`]).
pub fn coefficients(
    sample: &SampleSet,
    ell: usize,
    spec: &InputSpec,
    basis: &WaveletBasis,
    j_cap: Option<i32>,
) -> Result<BlockSpectrum> {
    let n = sample.len();
    if n < 2 {
        return Err(Error::InsufficientSample { need: 2, got: n });
    }
    let j_max = match j_cap {
        Some(j) => j.max(-1),
        None => default_j_max(n)?,
    };
    let u: Vec<f64> = sample
        .inputs
        .column(ell)
        .iter()
        .map(|&x| spec.warp(x))
        .collect();
    Ok(spectrum_from_warped(&u, &sample.outputs, basis, j_max))
}

/// Spectrum from already-warped positions `u` in `[0, 1]`.
pub fn spectrum_from_warped(
    u: &[f64],
    y: &[f64],
    basis: &WaveletBasis,
    j_max: i32,
) -> BlockSpectrum {
    assert_eq!(u.len(), y.len());
    let n = u.len();
    let sup = WaveletBasis::SUPPORT_LEN;
    let mut levels = Vec::with_capacity((j_max + 2) as usize);
    for j in -1..=j_max {
        let range = basis.k_range(j);
        let k_lo = *range.start();
        let width = (range.end() - range.start() + 1) as usize;
        let mut acc = vec![0.0_f64; width];
        let pow = if j == -1 { 1.0 } else { 2.0_f64.powi(j) };
        let scale = if j == -1 { 1.0 } else { pow.sqrt() };
        for (ui, yi) in u.iter().zip(y.iter()) {
            let v = pow * ui;
            // psi(v - k) is nonzero only for k in (v - L, v)
            let first = (v - sup as f64).floor() as i64 + 1;
            let last = v.ceil() as i64 - 1;
            for k in first.max(k_lo)..=last.min(k_lo + width as i64 - 1) {
                let w = if j == -1 {
                    basis.father_at(v - k as f64)
                } else {
                    basis.mother_at(v - k as f64)
                };
                acc[(k - k_lo) as usize] += yi * w;
            }
        }
        let inv_n = 1.0 / n as f64;
        let coeffs: Vec<(i64, f64)> = acc
            .iter()
            .enumerate()
            .map(|(idx, &a)| (k_lo + idx as i64, a * inv_n * scale))
            .collect();
        let energy = coeffs.iter().map(|(_, b)| b * b).sum();
        levels.push(LevelBlock { j, coeffs, energy });
    }
    BlockSpectrum { levels, j_max, n }
}

/// Block-thresholded energy estimate of `V_l`.
///
/// Keeps level `j` iff `energy(j) >= w(j)` and sums `energy(j) - w(j)`
/// over kept levels in ascending `j` order. Equals the supremum of the
/// penalized sum over all level subsets because the penalty is additive.
pub fn theta_hat(spectrum: &BlockSpectrum, pen: &PenaltyConfig, n: usize) -> (f64, Vec<i32>) {
    debug_assert_eq!(spectrum.n, n, "spectrum was built with a different n");
    let mut theta = 0.0;
    let mut kept = Vec::new();
    for level in &spectrum.levels {
        let w = pen.w(level.j, n);
        if level.energy >= w {
            theta += level.energy - w;
            kept.push(level.j);
        }
    }
    (theta, kept)
}

/// Kept-level counts along a grid of penalty constants, and the constant
/// selected by the slope heuristic (the largest single-step drop of the
/// curve; ties resolve to the smallest constant; a flat curve selects the
/// first grid point).
pub fn slope_heuristic(
    spectrum: &BlockSpectrum,
    n: usize,
    k_grid: &[f64],
) -> Result<(f64, Vec<(f64, usize)>)> {
    if k_grid.is_empty() {
        return Err(Error::EmptyPenaltyGrid);
    }
    assert!(
        k_grid.windows(2).all(|w| w[0] < w[1]) && k_grid[0] > 0.0,
        "penalty grid must be strictly increasing and positive"
    );
    let curve: Vec<(f64, usize)> = k_grid
        .iter()
        .map(|&kp| {
            let pen = PenaltyConfig::new(kp);
            let (_, kept) = theta_hat(spectrum, &pen, n);
            (kp, kept.len())
        })
        .collect();
    let mut best_drop = 0usize;
    let mut selected = curve[0].0;
    for w in curve.windows(2) {
        let drop = w[0].1.saturating_sub(w[1].1);
        if drop > best_drop {
            best_drop = drop;
            selected = w[1].0;
        }
    }
    Ok((selected, curve))
}

/// Reconstruction of the warped conditional mean from kept levels only:
/// `h_hat(u) = sum_{j kept} sum_k beta_{jk} psi_{jk}(u)`.
pub fn reconstruct(
    spectrum: &BlockSpectrum,
    pen: &PenaltyConfig,
    basis: &WaveletBasis,
    u: f64,
) -> f64 {
    let (_, kept) = theta_hat(spectrum, pen, spectrum.n);
    let mut acc = 0.0;
    for level in &spectrum.levels {
        if !kept.contains(&level.j) {
            continue;
        }
        for &(k, b) in &level.coeffs {
            acc += b * basis.eval_psi(level.j, k, u);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SeedStream;
    use crate::sample::{draw_iid, InputMatrix, SampleSet};

    fn basis() -> WaveletBasis {
        WaveletBasis::daubechies4(12)
    }

    fn unit_spec() -> InputSpec {
        InputSpec::uniform("u", 0.0, 1.0).unwrap()
    }

    #[test]
    fn default_j_max_matches_hand_arithmetic() {
        // n = 10^4: floor(log2(100 / ln 10^4)) = floor(3.4405) = 3
        assert_eq!(default_j_max(10_000).unwrap(), 3);
        assert_eq!(default_j_max(40_000).unwrap(), 4);
        assert_eq!(default_j_max(2_500).unwrap(), 2);
        assert!(default_j_max(1).is_err());
    }

    #[test]
    fn zero_outputs_give_zero_spectrum() {
        let spec = unit_spec();
        let inputs = draw_iid(std::slice::from_ref(&spec), 500, &SeedStream::new(91));
        let sample = SampleSet::new(inputs, vec![0.0; 500], 91, "zero").unwrap();
        let sp = coefficients(&sample, 0, &spec, &basis(), None).unwrap();
        for level in &sp.levels {
            assert_eq!(level.energy, 0.0);
            assert!(level.coeffs.iter().all(|(_, b)| *b == 0.0));
        }
        let (theta, kept) = theta_hat(&sp, &PenaltyConfig::new(1.0), 500);
        assert_eq!(theta, 0.0);
        assert!(kept.is_empty());
    }

    #[test]
    fn energy_equals_sum_of_squared_coefficients() {
        let spec = unit_spec();
        let b = basis();
        let inputs = draw_iid(std::slice::from_ref(&spec), 2000, &SeedStream::new(93));
        let outputs: Vec<f64> = (0..2000)
            .map(|i| (inputs.get(i, 0) * 7.0).sin() + 0.5)
            .collect();
        let sample = SampleSet::new(inputs, outputs, 93, "toy").unwrap();
        let sp = coefficients(&sample, 0, &spec, &b, None).unwrap();
        for level in &sp.levels {
            let direct: f64 = level.coeffs.iter().map(|(_, c)| c * c).sum();
            assert!((level.energy - direct).abs() <= 1e-12 * direct.max(1.0));
        }
    }

    #[test]
    fn coefficients_match_direct_definition() {
        // The windowed accumulation must agree with the naive
        // sum over every (j, k) pair.
        let spec = unit_spec();
        let b = basis();
        let n = 300;
        let inputs = draw_iid(std::slice::from_ref(&spec), n, &SeedStream::new(95));
        let outputs: Vec<f64> = (0..n).map(|i| (inputs.get(i, 0) * 3.0).cos()).collect();
        let sample = SampleSet::new(inputs.clone(), outputs.clone(), 95, "toy").unwrap();
        let sp = coefficients(&sample, 0, &spec, &b, Some(3)).unwrap();
        for level in &sp.levels {
            for &(k, beta) in &level.coeffs {
                let direct: f64 = (0..n)
                    .map(|i| outputs[i] * b.eval_psi(level.j, k, inputs.get(i, 0)))
                    .sum::<f64>()
                    / n as f64;
                assert!(
                    (beta - direct).abs() < 1e-13,
                    "j={} k={k}: {beta} vs {direct}",
                    level.j
                );
            }
        }
    }

    #[test]
    fn noiseless_basis_function_recovers_unit_coefficient() {
        // Y = psi_00(U): beta_00 -> 1, other level energies small.
        let spec = unit_spec();
        let b = basis();
        let n = 20_000;
        let inputs = draw_iid(std::slice::from_ref(&spec), n, &SeedStream::new(97));
        let outputs: Vec<f64> = (0..n).map(|i| b.eval_psi(0, 0, inputs.get(i, 0))).collect();
        let sample = SampleSet::new(inputs, outputs, 97, "psi").unwrap();
        let sp = coefficients(&sample, 0, &spec, &b, None).unwrap();
        let b00 = sp.coefficient(0, 0).unwrap();
        let tol = 3.0 / (n as f64).sqrt();
        assert!((b00 - 1.0).abs() < tol, "beta_00 = {b00}");
        // Parseval: total energy tends to ||psi_00||^2 = 1
        let total = sp.total_energy();
        assert!((total - 1.0).abs() < 5.0 / (n as f64).sqrt(), "total {total}");
    }

    #[test]
    fn threshold_arithmetic() {
        // single level with energy = 2 w(j) contributes exactly w(j)
        let n = 1000;
        let pen = PenaltyConfig::new(2.0);
        let w0 = pen.w(0, n);
        let sp = BlockSpectrum {
            levels: vec![LevelBlock {
                j: 0,
                coeffs: vec![(0, (2.0 * w0).sqrt())],
                energy: 2.0 * w0,
            }],
            j_max: 0,
            n,
        };
        let (theta, kept) = theta_hat(&sp, &pen, n);
        assert!((theta - w0).abs() < 1e-15);
        assert_eq!(kept, vec![0]);
    }

    /// Brute-force the supremum over every level subset, summing in
    /// ascending-j order exactly like `theta_hat` does.
    pub fn brute_force_sup(spectrum: &BlockSpectrum, pen: &PenaltyConfig, n: usize) -> f64 {
        let m = spectrum.levels.len();
        let mut best = 0.0_f64; // empty subset
        for mask in 1u32..(1 << m) {
            let mut acc = 0.0;
            for (idx, level) in spectrum.levels.iter().enumerate() {
                if mask & (1 << idx) != 0 {
                    acc += level.energy - pen.w(level.j, n);
                }
            }
            if acc > best {
                best = acc;
            }
        }
        best
    }

    #[test]
    fn theta_equals_subset_supremum_exactly() {
        // Eq-style identity: the per-level rule realizes the supremum over
        // all subsets, bit-for-bit, on random spectra with J_n = 3.
        let mut rng = SeedStream::new(101).rng();
        let b = basis();
        let n = 10_000;
        for trial in 0..100 {
            let scale = 0.3 + 2.0 * rng.uniform();
            let kp = 0.5 + 30.0 * rng.uniform();
            let pen = PenaltyConfig::new(kp);
            let mut levels = Vec::new();
            for j in -1..=3 {
                let range = b.k_range(j);
                let coeffs: Vec<(i64, f64)> = range
                    .map(|k| {
                        // make small energies likely so keep/drop both occur
                        let beta = (rng.uniform() - 0.5) * scale / (1 << (j + 1).max(0)) as f64;
                        (k, beta)
                    })
                    .collect();
                let energy = coeffs.iter().map(|(_, c)| c * c).sum();
                levels.push(LevelBlock { j, coeffs, energy });
            }
            let sp = BlockSpectrum {
                levels,
                j_max: 3,
                n,
            };
            let (theta, _) = theta_hat(&sp, &pen, n);
            let sup = brute_force_sup(&sp, &pen, n);
            assert_eq!(theta.to_bits(), sup.to_bits(), "trial {trial}");
        }
    }

    #[test]
    fn theta_is_nonincreasing_in_kprime() {
        let spec = unit_spec();
        let b = basis();
        let n = 4000;
        let inputs = draw_iid(std::slice::from_ref(&spec), n, &SeedStream::new(103));
        let outputs: Vec<f64> = (0..n)
            .map(|i| (inputs.get(i, 0) * 11.0).sin() + 1.0)
            .collect();
        let sample = SampleSet::new(inputs, outputs, 103, "toy").unwrap();
        let sp = coefficients(&sample, 0, &spec, &b, None).unwrap();
        let mut prev = f64::INFINITY;
        for kp in [0.1, 0.5, 1.0, 5.0, 20.0, 100.0, 500.0] {
            let (theta, _) = theta_hat(&sp, &PenaltyConfig::new(kp), n);
            assert!(theta <= prev + 1e-15, "kp={kp}: {theta} > {prev}");
            prev = theta;
        }
    }

    #[test]
    fn slope_heuristic_curve_is_monotone() {
        let spec = unit_spec();
        let b = basis();
        let n = 4000;
        let inputs = draw_iid(std::slice::from_ref(&spec), n, &SeedStream::new(105));
        let outputs: Vec<f64> = (0..n).map(|i| (inputs.get(i, 0) * 5.0).sin()).collect();
        let sample = SampleSet::new(inputs, outputs, 105, "toy").unwrap();
        let sp = coefficients(&sample, 0, &spec, &b, None).unwrap();
        let grid: Vec<f64> = (0..20).map(|i| 0.05 * 1.8_f64.powi(i)).collect();
        let (selected, curve) = slope_heuristic(&sp, n, &grid).unwrap();
        assert!(curve.windows(2).all(|w| w[0].1 >= w[1].1), "not monotone");
        assert!(grid.contains(&selected));
        // zero penalty limit keeps every level; huge penalty keeps none
        let pen0 = PenaltyConfig::new(1e-12);
        let (_, kept_all) = theta_hat(&sp, &pen0, n);
        assert_eq!(kept_all.len(), sp.levels.len());
        let (_, kept_none) = theta_hat(&sp, &PenaltyConfig::new(1e12), n);
        assert!(kept_none.is_empty());
    }

    #[test]
    fn empty_grid_is_rejected() {
        let sp = BlockSpectrum {
            levels: vec![],
            j_max: -1,
            n: 100,
        };
        assert!(matches!(
            slope_heuristic(&sp, 100, &[]),
            Err(Error::EmptyPenaltyGrid)
        ));
    }

    #[test]
    fn reconstruction_tracks_a_smooth_target() {
        // noiseless Y = h(U) with h in the span of levels <= 2: the kept
        // reconstruction approaches h pointwise away from the boundary
        let spec = unit_spec();
        let b = basis();
        let n = 30_000;
        let h = |u: f64| 2.0 * b.eval_psi(2, 0, u) + 1.0 * b.eval_psi(2, 1, u);
        let inputs = draw_iid(std::slice::from_ref(&spec), n, &SeedStream::new(107));
        let outputs: Vec<f64> = (0..n).map(|i| h(inputs.get(i, 0))).collect();
        let sample = SampleSet::new(inputs, outputs, 107, "toy").unwrap();
        let sp = coefficients(&sample, 0, &spec, &b, None).unwrap();
        let pen = PenaltyConfig::new(0.5);
        for i in 1..10 {
            let u = i as f64 / 10.0;
            let rec = reconstruct(&sp, &pen, &b, u);
            assert!(
                (rec - h(u)).abs() < 0.1,
                "u={u}: rec {rec} vs h {}",
                h(u)
            );
        }
    }

    #[test]
    fn matrix_round_trip_helper() {
        let m = InputMatrix::from_rows(vec![1.0, 2.0, 3.0, 4.0], 2, 2);
        assert_eq!(m.row(1), &[3.0, 4.0]);
        assert_eq!(m.column(0), vec![1.0, 3.0]);
    }
}
