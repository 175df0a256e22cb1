//! Experiment runner: replication studies, SIR comparisons, tornado
//! diagrams, slope-heuristic sweeps, and CSV emission.

mod calibrate;
mod compare;
mod config;
mod experiment;
mod replicate;
mod report;
mod tornado;

pub use calibrate::{default_kprime_grid, run_calibration, CalibrationReport};
pub use compare::{run_compare, CompareReport, CompareRow, CompareSummary};
pub use config::{ExperimentConfig, ModelId};
pub use experiment::{EstimatorSettings, Experiment};
pub use replicate::{run_replications, single_replication, ReplicationReport, ReportRow};
pub use report::{emit_compare, emit_curve, emit_report, write_to_path};
pub use tornado::{tornado, TornadoBar};
