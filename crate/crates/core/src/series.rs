//! Fourier coefficients of `log(f(x) - 2cos t)` and the series constant
//! `E(f)` built from them.
//!
//! Factoring `v - 2cos t = rho (1 - e^{it}/rho)(1 - e^{-it}/rho)` gives
//! `V_0 = log rho` and `V_k = -rho^{-|k|}/|k|` for `k != 0`.
//!
//! `E(f)` is evaluated exactly as displayed,
//! `exp ½{V_0(0) + V_0(1) + Σ k V_k V_{-k}(0) + Σ k V_k V_{-k}(1)}`.
//! For constant `f ≡ a` this is `rho³/(rho² - 1)`, a factor `rho` above the
//! determinant limit `rho²/(rho² - 1)`. The value is reported next to
//! [`crate::asymptotics::kac_limit`] rather than adjusted.

use serde::Serialize;

use crate::asymptotics::{kac_limit, rho};
use crate::compensated::CompensatedSum;
use crate::error::{Error, Result};
use crate::potential::{Approach, PiecewisePotential};
use crate::quadrature::periodic_mean;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FourierLogCoefficients {
    pub x: f64,
    pub rho_x: f64,
    /// `V_0 ..= V_K`.
    pub coefficients: Vec<f64>,
}

impl FourierLogCoefficients {
    pub fn order(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// `V_k` for any `|k| <= K`; the symbol is even in `t`.
    pub fn v(&self, k: i64) -> f64 {
        self.coefficients[k.unsigned_abs() as usize]
    }

    /// Bound on `Σ_{|k| > K} |V_k|`-type tails: `rho^{-K}/(K (1 - 1/rho))`.
    pub fn tail_bound(&self) -> f64 {
        let k = self.order() as f64;
        self.rho_x.powf(-k) / (k * (1.0 - 1.0 / self.rho_x))
    }
}

/// Closed-form `V_k`, `k = 0..=K`, for the scalar `v = f(x)`.
pub fn coefficients_for_value(v: f64, order: usize) -> Result<Vec<f64>> {
    let r = rho(v)?;
    let mut out = Vec::with_capacity(order + 1);
    out.push(r.ln());
    for k in 1..=order {
        out.push(-r.powi(-(k as i32)) / k as f64);
    }
    Ok(out)
}

pub fn fourier_coefficients(
    f: &PiecewisePotential,
    x: f64,
    order: usize,
) -> Result<FourierLogCoefficients> {
    if order < 1 {
        return Err(Error::InvalidArgument("truncation order must be >= 1".into()));
    }
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::InvalidArgument(format!("x={x} outside [0, 1]")));
    }
    let v = f.eval(x, Approach::At)?;
    Ok(FourierLogCoefficients {
        x,
        rho_x: rho(v)?,
        coefficients: coefficients_for_value(v, order)?,
    })
}

/// `V_k` by the trapezoid rule on the defining integral; `V_k` is real
/// because the symbol is even.
pub fn coefficient_by_quadrature(v: f64, k: i64, nodes: usize) -> f64 {
    periodic_mean(|t| (v - 2.0 * t.cos()).ln() * (k as f64 * t).cos(), nodes)
}

/// Order making `rho_min^{-2K}` negligible against `1e-12`.
pub fn default_order(rho_min: f64) -> usize {
    let per_term = (rho_min.powi(-2)).ln();
    (-12.0 * 10f64.ln() / per_term).ceil() as usize + 5
}

/// `Σ_{k=1}^{K} k V_k V_{-k}` for one endpoint.
pub fn weighted_square_sum(c: &FourierLogCoefficients) -> f64 {
    let mut acc = CompensatedSum::new();
    for k in 1..=c.order() as i64 {
        acc.add(k as f64 * c.v(k) * c.v(-k));
    }
    acc.value()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeriesConstant {
    pub value: f64,
    pub order: usize,
    /// Bound on the neglected part of the exponent.
    pub truncation_bound: f64,
    pub at_zero: FourierLogCoefficients,
    pub at_one: FourierLogCoefficients,
    /// Kac's closed form, when the potential is smooth.
    pub kac_limit: Option<f64>,
}

impl SeriesConstant {
    /// `E(f) / kac_limit(f)`.
    pub fn discrepancy(&self) -> Option<f64> {
        self.kac_limit.map(|k| self.value / k)
    }
}

pub fn ms_constant(f: &PiecewisePotential, order: Option<usize>) -> Result<SeriesConstant> {
    let r0 = rho(f.eval(0.0, Approach::At)?)?;
    let r1 = rho(f.eval(1.0, Approach::At)?)?;
    let order = order.unwrap_or_else(|| default_order(r0.min(r1)));
    let at_zero = fourier_coefficients(f, 0.0, order)?;
    let at_one = fourier_coefficients(f, 1.0, order)?;
    let exponent = 0.5
        * (at_zero.v(0)
            + at_one.v(0)
            + weighted_square_sum(&at_zero)
            + weighted_square_sum(&at_one));
    let tail = |r: f64| {
        let q = r.powi(-2);
        q.powi(order as i32 + 1) / ((order + 1) as f64 * (1.0 - q))
    };
    let kac = if f.has_jumps() {
        None
    } else {
        Some(kac_limit(f)?)
    };
    Ok(SeriesConstant {
        value: exponent.exp(),
        order,
        truncation_bound: 0.5 * (tail(r0) + tail(r1)),
        at_zero,
        at_one,
        kac_limit: kac,
    })
}
