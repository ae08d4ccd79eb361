//! Least-squares error laws `A n^b` and `A B^n` for sweep errors.
//!
//! Both models are fitted as straight lines to `log|error|`, against
//! `log n` and `n` respectively, and compared by residual sum of squares
//! in that same log space.

use serde::Serialize;

use crate::error::{Error, Result};

use super::sweep::SweepRecord;

/// Records with `|error|` at or below this are dropped before fitting.
pub const DEGENERATE_ERROR: f64 = 1e-14;
pub const MIN_RECORDS: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PowerLawFit {
    pub a: f64,
    pub b: f64,
    pub rss: f64,
    pub n_min: usize,
    pub n_max: usize,
    pub used: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExponentialFit {
    pub a: f64,
    pub base: f64,
    pub rss: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ErrorModel {
    Power,
    Exponential,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FitReport {
    pub power: PowerLawFit,
    pub exponential: ExponentialFit,
    pub preferred: ErrorModel,
}

/// `(intercept, slope, rss)` of the least-squares line through `(x, y)`.
fn line_fit(x: &[f64], y: &[f64]) -> (f64, f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|v| (v - mx).powi(2)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rss = x
        .iter()
        .zip(y)
        .map(|(a, b)| (b - intercept - slope * a).powi(2))
        .sum();
    (intercept, slope, rss)
}

pub fn fit_power_law(records: &[SweepRecord]) -> Result<FitReport> {
    let usable: Vec<&SweepRecord> = records
        .iter()
        .filter(|r| r.error.abs() > DEGENERATE_ERROR && r.error.is_finite())
        .collect();
    let distinct_n = {
        let mut ns: Vec<usize> = usable.iter().map(|r| r.n).collect();
        ns.sort_unstable();
        ns.dedup();
        ns.len()
    };
    if usable.len() < MIN_RECORDS || distinct_n < 2 {
        return Err(Error::TooFewRecords {
            found: usable.len(),
            needed: MIN_RECORDS,
        });
    }
    let n: Vec<f64> = usable.iter().map(|r| r.n as f64).collect();
    let log_n: Vec<f64> = n.iter().map(|v| v.ln()).collect();
    let log_err: Vec<f64> = usable.iter().map(|r| r.error.abs().ln()).collect();

    let (ia, slope, rss_p) = line_fit(&log_n, &log_err);
    let (ie, rate, rss_e) = line_fit(&n, &log_err);
    let power = PowerLawFit {
        a: ia.exp(),
        b: slope,
        rss: rss_p,
        n_min: usable.iter().map(|r| r.n).min().unwrap(),
        n_max: usable.iter().map(|r| r.n).max().unwrap(),
        used: usable.len(),
    };
    let exponential = ExponentialFit {
        a: ie.exp(),
        base: rate.exp(),
        rss: rss_e,
    };
    let preferred = if rss_p <= rss_e {
        ErrorModel::Power
    } else {
        ErrorModel::Exponential
    };
    Ok(FitReport {
        power,
        exponential,
        preferred,
    })
}
