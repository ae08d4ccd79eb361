use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::asymptotics::AsymptoticPrediction;
use crate::error::{Error, Result};
use crate::matrix::{OffDiagonalSign, SchrodingerMatrix};
use crate::potential::PiecewisePotential;

use super::scenario::{OutputFormat, Scenario};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub n: usize,
    pub ratio: f64,
    pub prediction: f64,
    pub error: f64,
}

fn record(
    f: &PiecewisePotential,
    prediction: &AsymptoticPrediction,
    n: usize,
) -> Result<SweepRecord> {
    let m = SchrodingerMatrix::build(f, n, prediction.epsilon, OffDiagonalSign::Minus)?;
    let det = m.det_log()?.with_geometric_mean(prediction.g_log);
    let ratio = det.ratio().expect("geometric mean attached");
    let predicted = prediction.prediction(n);
    Ok(SweepRecord {
        n,
        ratio,
        prediction: predicted,
        error: ratio - predicted,
    })
}

/// One record per `n`, in the order of `ns`. Each record depends only on
/// its own `n`, so parallel and serial runs agree exactly.
pub fn sweep(
    f: &PiecewisePotential,
    prediction: &AsymptoticPrediction,
    ns: &[usize],
    parallel: bool,
) -> Result<Vec<SweepRecord>> {
    let one = |&n: &usize| record(f, prediction, n).map_err(|e| e.at_order(n));
    if parallel {
        ns.par_iter().map(one).collect()
    } else {
        ns.iter().map(one).collect()
    }
}

pub fn run_sweep(s: &Scenario) -> Result<Vec<SweepRecord>> {
    let prediction = AsymptoticPrediction::with_epsilon(&s.potential, s.epsilon)?;
    sweep(&s.potential, &prediction, &s.n_set.values(), true)
}

/// 17 significant digits, enough to round-trip any `f64`.
fn fmt17(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn write_csv<W: Write>(records: &[SweepRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["n", "ratio", "prediction", "error"])?;
    for r in records {
        w.write_record([
            r.n.to_string(),
            fmt17(r.ratio),
            fmt17(r.prediction),
            fmt17(r.error),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_json<W: Write>(records: &[SweepRecord], mut out: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, records)?;
    writeln!(out)?;
    Ok(())
}

pub fn write_records<W: Write>(records: &[SweepRecord], format: OutputFormat, out: W) -> Result<()> {
    match format {
        OutputFormat::Csv => write_csv(records, out),
        OutputFormat::Json => write_json(records, out),
    }
}

/// Read records written by [`write_csv`].
pub fn read_csv<R: std::io::Read>(input: R) -> Result<Vec<SweepRecord>> {
    let mut r = csv::Reader::from_reader(input);
    let records = r
        .deserialize()
        .collect::<std::result::Result<Vec<SweepRecord>, _>>()?;
    if records.is_empty() {
        return Err(Error::InvalidArgument("no records in input".into()));
    }
    Ok(records)
}
