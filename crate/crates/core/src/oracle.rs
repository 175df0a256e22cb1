//! Brute-force references: exact ANOVA decomposition on discretized models
//! and quadrature for `V_l` of smooth conditional means. Test and
//! acceptance machinery, not part of the estimation path.

use crate::error::{Error, Result};
use crate::input::InputSpec;
use crate::models::Model;
use crate::rng::SeedStream;

const MAX_CELLS: usize = 10_000_000;
const MAX_DIMS: usize = 4;

/// A model discretized on an `m^p` grid of cell centers, inputs uniform.
#[derive(Debug, Clone)]
pub struct GridModel {
    pub levels_per_input: usize,
    pub specs: Vec<InputSpec>,
    values: Vec<f64>,
}

impl GridModel {
    /// Tabulates `f` at every cell-center combination (midpoint rule).
    pub fn tabulate(
        specs: &[InputSpec],
        m: usize,
        f: impl Fn(&[f64]) -> f64,
    ) -> Result<Self> {
        let p = specs.len();
        if m < 2 || p == 0 || p > MAX_DIMS {
            return Err(Error::Config(format!(
                "grid needs 2 <= m and 1 <= p <= {MAX_DIMS}, got m = {m}, p = {p}"
            )));
        }
        let cells = m.checked_pow(p as u32).ok_or(Error::GridTooLarge {
            cells: usize::MAX,
            max: MAX_CELLS,
        })?;
        if cells > MAX_CELLS {
            return Err(Error::GridTooLarge {
                cells,
                max: MAX_CELLS,
            });
        }
        let centers: Vec<Vec<f64>> = specs
            .iter()
            .map(|s| {
                (0..m)
                    .map(|i| s.inverse_warp((i as f64 + 0.5) / m as f64))
                    .collect()
            })
            .collect();
        let mut values = Vec::with_capacity(cells);
        let mut x = vec![0.0; p];
        for cell in 0..cells {
            let mut rest = cell;
            for d in (0..p).rev() {
                x[d] = centers[d][rest % m];
                rest /= m;
            }
            values.push(f(&x));
        }
        Ok(Self {
            levels_per_input: m,
            specs: specs.to_vec(),
            values,
        })
    }

    pub fn dims(&self) -> usize {
        self.specs.len()
    }

    fn value(&self, idx: &[usize]) -> f64 {
        let m = self.levels_per_input;
        let mut flat = 0;
        for &i in idx {
            flat = flat * m + i;
        }
        self.values[flat]
    }

    /// Nearest cell index along one axis for a continuous coordinate.
    fn snap(&self, d: usize, x: f64) -> usize {
        let m = self.levels_per_input;
        let u = self.specs[d].warp(x);
        ((u * m as f64) as usize).min(m - 1)
    }
}

/// All variance components of the grid ANOVA decomposition.
#[derive(Debug, Clone)]
pub struct AnovaDecomposition {
    pub total_var: f64,
    /// `V_l = Var(E[Y|X_l])` per input.
    pub first: Vec<f64>,
    /// `V_{l1,l2}` interaction components (symmetric, zero diagonal).
    pub second: Vec<Vec<f64>>,
    /// Everything above second order.
    pub residual: f64,
}

impl AnovaDecomposition {
    pub fn first_order_indices(&self) -> Vec<f64> {
        self.first.iter().map(|v| v / self.total_var).collect()
    }

    /// Total index for one input: the sum of every component involving it,
    /// over the total variance (exact at p <= 3 where the residual is the
    /// single highest-order component).
    pub fn total_index(&self, ell: usize, include_residual: bool) -> f64 {
        let p = self.first.len();
        let mut acc = self.first[ell];
        for other in 0..p {
            if other != ell {
                acc += self.second[ell][other];
            }
        }
        if include_residual {
            acc += self.residual;
        }
        acc / self.total_var
    }
}

/// Exact conditional means by axis-averaging over the grid.
pub fn anova_decompose(gm: &GridModel) -> AnovaDecomposition {
    let p = gm.dims();
    let m = gm.levels_per_input;
    let cells = gm.values.len();
    let inv_cells = 1.0 / cells as f64;

    let mean: f64 = gm.values.iter().sum::<f64>() * inv_cells;
    let total_var: f64 = gm
        .values
        .iter()
        .map(|v| (v - mean) * (v - mean))
        .sum::<f64>()
        * inv_cells;

    // E[Y | X_d = i]: average over all cells whose d-th index is i
    let mut cond1 = vec![vec![0.0_f64; m]; p];
    // E[Y | X_a = i, X_b = j] for a < b
    let mut cond2: Vec<Vec<f64>> = (0..p * p).map(|_| Vec::new()).collect();
    for a in 0..p {
        for b in (a + 1)..p {
            cond2[a * p + b] = vec![0.0; m * m];
        }
    }

    let mut idx = vec![0usize; p];
    for (cell, &v) in gm.values.iter().enumerate() {
        let mut rest = cell;
        for d in (0..p).rev() {
            idx[d] = rest % m;
            rest /= m;
        }
        for d in 0..p {
            cond1[d][idx[d]] += v;
        }
        for a in 0..p {
            for b in (a + 1)..p {
                cond2[a * p + b][idx[a] * m + idx[b]] += v;
            }
        }
    }

    let slab1 = (cells / m) as f64;
    let first: Vec<f64> = cond1
        .iter()
        .map(|sums| {
            sums.iter()
                .map(|s| {
                    let g = s / slab1;
                    (g - mean) * (g - mean)
                })
                .sum::<f64>()
                / m as f64
        })
        .collect();

    let slab2 = (cells / (m * m)) as f64;
    let mut second = vec![vec![0.0_f64; p]; p];
    for a in 0..p {
        for b in (a + 1)..p {
            let var_ab: f64 = cond2[a * p + b]
                .iter()
                .map(|s| {
                    let g = s / slab2;
                    (g - mean) * (g - mean)
                })
                .sum::<f64>()
                / (m * m) as f64;
            let v = var_ab - first[a] - first[b];
            second[a][b] = v;
            second[b][a] = v;
        }
    }

    let sum_first: f64 = first.iter().sum();
    let sum_second: f64 = (0..p)
        .map(|a| ((a + 1)..p).map(|b| second[a][b]).sum::<f64>())
        .sum();
    let residual = total_var - sum_first - sum_second;

    AnovaDecomposition {
        total_var,
        first,
        second,
        residual,
    }
}

/// Composite Simpson quadrature of `h(u)^2` over `[0, 1]`, where
/// `h(u) = cond_mean(G^{-1}(u))`. Node count doubles until the result
/// moves by less than 1e-8; errors out past `2^20` nodes.
pub fn quadrature_v(
    cond_mean: impl Fn(f64) -> f64,
    spec: &InputSpec,
    nodes: usize,
) -> Result<f64> {
    assert!(nodes >= 16, "need at least 16 nodes");
    let g = |u: f64| {
        let h = cond_mean(spec.inverse_warp(u));
        h * h
    };
    let mut n = nodes.next_power_of_two();
    let mut prev = simpson(&g, n);
    loop {
        n *= 2;
        if n > (1 << 20) {
            return Err(Error::QuadratureNonConvergence(1 << 20));
        }
        let cur = simpson(&g, n);
        if (cur - prev).abs() < 1e-8 {
            return Ok(cur);
        }
        prev = cur;
    }
}

fn simpson(g: &impl Fn(f64) -> f64, intervals: usize) -> f64 {
    debug_assert!(intervals % 2 == 0);
    let h = 1.0 / intervals as f64;
    let mut acc = g(0.0) + g(1.0);
    for i in 1..intervals {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * g(i as f64 * h);
    }
    acc * h / 3.0
}

/// The grid model made samplable: inputs snap to the nearest cell center,
/// so the continuous model's exact first-order quantities coincide with
/// the grid decomposition's.
pub struct SnappedGridModel {
    pub grid: GridModel,
}

impl Model for SnappedGridModel {
    fn model_id(&self) -> &str {
        "grid-snapped"
    }

    fn input_count(&self) -> usize {
        self.grid.dims()
    }

    fn eval(&self, inputs: &[f64], _stream: &SeedStream) -> Result<f64> {
        let idx: Vec<usize> = inputs
            .iter()
            .enumerate()
            .map(|(d, &x)| self.grid.snap(d, x))
            .collect();
        Ok(self.grid.value(&idx))
    }
}
