//! CSV emission. Floats print in Rust's shortest round-trip decimal form,
//! so identical runs produce byte-identical files.

use crate::error::{Error, Result};
use crate::harness::compare::CompareReport;
use crate::harness::replicate::ReplicationReport;
use std::io::Write;
use std::path::Path;

pub fn emit_report(report: &ReplicationReport, out: &mut impl Write) -> std::io::Result<()> {
    writeln!(
        out,
        "model,estimator,input,n,replications,reference,bias,mse,sd,seed"
    )?;
    for r in &report.rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{}",
            r.model,
            r.estimator,
            r.input,
            r.n,
            r.replications,
            r.reference,
            r.bias,
            r.mse,
            r.sd,
            r.seed
        )?;
    }
    Ok(())
}

pub fn emit_compare(report: &CompareReport, out: &mut impl Write) -> std::io::Result<()> {
    writeln!(out, "model,estimator,input,rep,estimate")?;
    for r in &report.rows {
        writeln!(
            out,
            "{},{},{},{},{}",
            r.model, r.estimator, r.input, r.rep, r.estimate
        )?;
    }
    Ok(())
}

/// Regression-curve CSV: one row per grid point per input, with the raw
/// input coordinate and each requested regression value.
pub fn emit_curve(
    header: &str,
    rows: &[Vec<String>],
    out: &mut impl Write,
) -> std::io::Result<()> {
    writeln!(out, "{header}")?;
    for row in rows {
        writeln!(out, "{}", row.join(","))?;
    }
    Ok(())
}

/// Writes through any emitter, attaching the path to I/O failures.
pub fn write_to_path(
    path: impl AsRef<Path>,
    emit: impl FnOnce(&mut std::io::BufWriter<std::fs::File>) -> std::io::Result<()>,
) -> Result<()> {
    let path = path.as_ref();
    let wrap = |source: std::io::Error| Error::Io {
        path: path.display().to_string(),
        source,
    };
    let file = std::fs::File::create(path).map_err(wrap)?;
    let mut writer = std::io::BufWriter::new(file);
    emit(&mut writer).map_err(wrap)?;
    writer.into_inner().map_err(|e| wrap(e.into_error()))?.sync_all().ok();
    Ok(())
}
