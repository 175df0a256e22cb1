//! `sobolw` — first-order Sobol index estimation for stochastic simulators.
//!
//! Subcommands:
//! * `estimate`    one run of the requested estimators, optional curve CSV
//! * `replicate`   bias/MSE study against the model's analytic reference
//! * `tornado`     one-at-a-time endpoint sweep
//! * `calibrate`   slope-heuristic sweep of the wavelet penalty constant
//! * `sir-compare` the SIR comparison experiment (per-replication CSV)
//!
//! Exit codes: 0 success, 2 configuration error, 3 runtime/model error.

use clap::{Args, Parser, Subcommand};
use sobolw::harness::{
    emit_compare, emit_curve, emit_report, run_calibration, run_compare, run_replications,
    tornado, write_to_path, Experiment, ExperimentConfig, ModelId,
};
use sobolw::kernel::{nw_regress, BandwidthScale, Kernel};
use sobolw::models::eval_rows;
use sobolw::sample::{draw_iid, SampleSet};
use sobolw::wavelet::{coefficients, reconstruct, WaveletBasis};
use sobolw::{Error, EstimatorKind, SeedStream};

#[derive(Parser)]
#[command(name = "sobolw", version, about = "Sobol sensitivity indices for stochastic simulators")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonOpts {
    /// Model: ishigami | ishigami-nuisance | ishigami-mod | sir | sir-ode
    #[arg(long)]
    model: Option<String>,

    /// Estimators: jansen | nw | wavelet | all
    #[arg(long, default_value = "all")]
    estimator: String,

    /// Sample size n (Jansen additionally evaluates n*p hybrid rows)
    #[arg(long)]
    n: Option<usize>,

    /// Number of replications
    #[arg(long)]
    reps: Option<usize>,

    /// Master seed
    #[arg(long)]
    seed: Option<u64>,

    /// Nadaraya-Watson bandwidth
    #[arg(long)]
    bandwidth: Option<f64>,

    /// Kernel: gaussian | epanechnikov
    #[arg(long)]
    kernel: Option<String>,

    /// Bandwidth scale: raw | warped
    #[arg(long)]
    bandwidth_scale: Option<String>,

    /// Wavelet penalty constant K'
    #[arg(long)]
    kprime: Option<f64>,

    /// Wavelet level cap override
    #[arg(long)]
    j_cap: Option<i32>,

    /// Restrict to these input indices (comma-separated)
    #[arg(long, value_delimiter = ',')]
    inputs: Option<Vec<usize>>,

    /// Output CSV path
    #[arg(long)]
    out: Option<String>,

    /// TOML config file mirroring the experiment config; CLI flags override
    #[arg(long)]
    config: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Single estimation run; prints one line per (estimator, input).
    Estimate {
        #[command(flatten)]
        common: CommonOpts,
        /// Also write regression curves (NW and kept-level wavelet
        /// reconstruction) on a 512-point grid per input.
        #[arg(long)]
        curve_out: Option<String>,
    },
    /// Bias/MSE replication study (needs a model with analytic reference).
    Replicate {
        #[command(flatten)]
        common: CommonOpts,
    },
    /// One-at-a-time endpoint sweep at the nominal midpoint.
    Tornado {
        #[command(flatten)]
        common: CommonOpts,
        /// Replications averaged per endpoint for stochastic models
        #[arg(long, default_value_t = 2000)]
        endpoint_reps: usize,
    },
    /// Kept-level curve over a K' grid (slope heuristic).
    Calibrate {
        #[command(flatten)]
        common: CommonOpts,
    },
    /// SIR comparison experiment: per-replication estimates for all
    /// estimators on the stochastic model (or the ODE metamodel).
    SirCompare {
        #[command(flatten)]
        common: CommonOpts,
    },
}

fn parse_estimators(s: &str) -> Result<Vec<EstimatorKind>, Error> {
    let mut out = Vec::new();
    for part in s.split(',') {
        match part.trim() {
            "all" => return Ok(EstimatorKind::ALL.to_vec()),
            "jansen" => out.push(EstimatorKind::Jansen),
            "nw" | "nadaraya_watson" | "nadaraya-watson" => {
                out.push(EstimatorKind::NadarayaWatson)
            }
            "wavelet" | "warped_wavelet" | "warped-wavelet" => {
                out.push(EstimatorKind::WarpedWavelet)
            }
            other => return Err(Error::Config(format!("unknown estimator `{other}`"))),
        }
    }
    Ok(out)
}

fn parse_kernel(s: &str) -> Result<Kernel, Error> {
    match s {
        "gaussian" => Ok(Kernel::Gaussian),
        "epanechnikov" => Ok(Kernel::Epanechnikov),
        other => Err(Error::Config(format!("unknown kernel `{other}`"))),
    }
}

fn parse_scale(s: &str) -> Result<BandwidthScale, Error> {
    match s {
        "raw" => Ok(BandwidthScale::Raw),
        "warped" => Ok(BandwidthScale::Warped),
        other => Err(Error::Config(format!("unknown bandwidth scale `{other}`"))),
    }
}

/// Layers: config file (if any) -> CLI overrides. The model and n must be
/// present somewhere.
fn build_config(common: &CommonOpts) -> Result<ExperimentConfig, Error> {
    let mut cfg: ExperimentConfig = match &common.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
                path: path.clone(),
                source,
            })?;
            toml::from_str(&text).map_err(|e| Error::Config(format!("config file: {e}")))?
        }
        None => {
            let model = common
                .model
                .as_deref()
                .ok_or_else(|| Error::Config("--model is required".into()))?;
            let n = common
                .n
                .ok_or_else(|| Error::Config("--n is required".into()))?;
            ExperimentConfig::new(ModelId::parse(model)?, n, 1, 0)
        }
    };
    if let Some(model) = &common.model {
        cfg.model = ModelId::parse(model)?;
    }
    if let Some(n) = common.n {
        cfg.n = n;
    }
    if let Some(r) = common.reps {
        cfg.replications = r;
    }
    if let Some(s) = common.seed {
        cfg.master_seed = s;
    }
    cfg.estimators = parse_estimators(&common.estimator)?;
    if let Some(b) = common.bandwidth {
        cfg.bandwidth = Some(b);
    }
    if let Some(k) = &common.kernel {
        cfg.kernel = Some(parse_kernel(k)?);
    }
    if let Some(s) = &common.bandwidth_scale {
        cfg.bandwidth_scale = Some(parse_scale(s)?);
    }
    if let Some(k) = common.kprime {
        cfg.kprime = Some(k);
    }
    if let Some(j) = common.j_cap {
        cfg.j_cap = Some(j);
    }
    if let Some(inputs) = &common.inputs {
        cfg.inputs = Some(inputs.clone());
    }
    cfg.validate()?;
    Ok(cfg)
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Estimate { common, curve_out } => {
            let mut cfg = build_config(&common)?;
            cfg.replications = 1;
            let report = run_compare(&cfg)?;
            for s in &report.summary {
                println!("{} {} S = {}", s.estimator, s.input, s.mean);
            }
            if let Some(path) = &common.out {
                write_to_path(path, |w| emit_compare(&report, w))?;
            }
            if let Some(path) = &curve_out {
                let rows = regression_curves(&cfg)?;
                write_to_path(path, |w| {
                    emit_curve("input,u,x,nadaraya_watson,warped_wavelet", &rows, w)
                })?;
            }
            Ok(())
        }
        Command::Replicate { common } => {
            let cfg = build_config(&common)?;
            let report = run_replications(&cfg)?;
            for r in &report.rows {
                println!(
                    "{} {} bias = {:+.3e}  mse = {:.3e}  sd = {:.3e}",
                    r.estimator, r.input, r.bias, r.mse, r.sd
                );
            }
            if let Some(path) = &common.out {
                write_to_path(path, |w| emit_report(&report, w))?;
            }
            Ok(())
        }
        Command::Tornado {
            common,
            endpoint_reps,
        } => {
            let cfg = build_config(&common)?;
            let exp = Experiment::build(&cfg)?;
            let nominal: Vec<f64> = exp
                .specs
                .iter()
                .map(|s| 0.5 * (s.lower + s.upper))
                .collect();
            let stream = SeedStream::with_stream(cfg.master_seed, 0);
            let bars = tornado(
                exp.model.as_ref(),
                &exp.specs,
                &nominal,
                endpoint_reps,
                &stream,
            )?;
            for b in &bars {
                println!(
                    "{}: [{}, {}] width {}",
                    b.input_name,
                    b.y_low,
                    b.y_high,
                    b.width()
                );
            }
            if let Some(path) = &common.out {
                let rows: Vec<Vec<String>> = bars
                    .iter()
                    .map(|b| {
                        vec![
                            b.input_name.clone(),
                            b.y_low.to_string(),
                            b.y_high.to_string(),
                            b.width().to_string(),
                        ]
                    })
                    .collect();
                write_to_path(path, |w| emit_curve("input,y_low,y_high,width", &rows, w))?;
            }
            Ok(())
        }
        Command::Calibrate { common } => {
            let cfg = build_config(&common)?;
            let grid = sobolw::harness::default_kprime_grid();
            let report = run_calibration(&cfg, &grid)?;
            for (input, kp) in &report.selected {
                println!("{input}: selected K' = {kp}");
            }
            if let Some(path) = &common.out {
                let rows: Vec<Vec<String>> = report
                    .curve
                    .iter()
                    .map(|(input, kp, kept)| {
                        vec![input.clone(), kp.to_string(), kept.to_string()]
                    })
                    .collect();
                write_to_path(path, |w| emit_curve("input,kprime,kept_levels", &rows, w))?;
            }
            Ok(())
        }
        Command::SirCompare { common } => {
            let mut cfg = build_config(&common)?;
            if !matches!(cfg.model, ModelId::Sir | ModelId::SirOde) {
                cfg.model = ModelId::Sir;
            }
            let report = run_compare(&cfg)?;
            for s in &report.summary {
                println!(
                    "{} {}: mean = {:.4}  sd = {:.2e}",
                    s.estimator, s.input, s.mean, s.sd
                );
            }
            if let Some(path) = &common.out {
                write_to_path(path, |w| emit_compare(&report, w))?;
            }
            Ok(())
        }
    }
}

/// NW and kept-level wavelet regression curves on a 512-point grid,
/// using one sample drawn exactly like a replication's.
fn regression_curves(cfg: &ExperimentConfig) -> Result<Vec<Vec<String>>, Error> {
    let exp = Experiment::build(cfg)?;
    let stream = SeedStream::with_stream(cfg.master_seed, cfg.first_stream);
    let matrix = draw_iid(&exp.specs, cfg.n, &stream.substream(0));
    let outputs = eval_rows(exp.model.as_ref(), &matrix, &stream.substream(1))?;
    let sample = SampleSet::new(matrix, outputs, cfg.master_seed, exp.model.model_id())?;
    let basis = WaveletBasis::daubechies4(exp.settings.grid_depth);

    let mut rows = Vec::new();
    for ell in exp.input_indices(cfg) {
        let spec = &exp.specs[ell];
        let sp = coefficients(&sample, ell, spec, &basis, exp.settings.penalty.j_cap)?;
        let raw = sample.inputs.column(ell);
        let xs: Vec<f64> = match exp.settings.kernel_cfg.bandwidth_scale {
            BandwidthScale::Raw => raw,
            BandwidthScale::Warped => raw.iter().map(|&x| spec.warp(x)).collect(),
        };
        for i in 0..512 {
            let u = (i as f64 + 0.5) / 512.0;
            let x = spec.inverse_warp(u);
            let x_kernel = match exp.settings.kernel_cfg.bandwidth_scale {
                BandwidthScale::Raw => x,
                BandwidthScale::Warped => u,
            };
            let nw = nw_regress(&xs, &sample.outputs, x_kernel, &exp.settings.kernel_cfg);
            let ww = reconstruct(&sp, &exp.settings.penalty, &basis, u);
            rows.push(vec![
                spec.name.clone(),
                u.to_string(),
                x.to_string(),
                nw.to_string(),
                ww.to_string(),
            ]);
        }
    }
    Ok(rows)
}

fn main() {
    let cli = Cli::parse();
    if let Err(err) = run(cli) {
        eprintln!("error: {err}");
        std::process::exit(err.exit_code());
    }
}
