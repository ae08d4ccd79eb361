//! Sweeps of `D_n / G^n` against predictions, error-law fits, and spectral
//! checks, driven by scenario files.

mod checks;
mod fit;
mod scenario;
mod sweep;

pub use checks::{kms_check, shift_invariance_check, symbol_average, KmsCheck, SYMBOL_NODES};
pub use fit::{
    fit_power_law, ErrorModel, ExponentialFit, FitReport, PowerLawFit, DEGENERATE_ERROR,
    MIN_RECORDS,
};
pub use scenario::{Check, NSet, OutputFormat, Scenario};
pub use sweep::{read_csv, run_sweep, sweep, write_csv, write_json, write_records, SweepRecord};
