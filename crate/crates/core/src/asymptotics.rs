//! Closed-form limits of `D_n / G(f)^n`.
//!
//! Every formula here is built from `rho(v) = (v + sqrt(v^2 - 4))/2`, the
//! larger root of `r + 1/r = v`, and `sqrt(v^2 - 4) = rho - 1/rho`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::potential::{Approach, PiecewisePotential, Side};
use crate::quadrature::AdaptiveSimpson;

/// Largest denominator tried when classifying a jump location as rational.
pub const MAX_DENOMINATOR: u64 = 1_000_000;
/// A jump location within this distance of `p/q` is treated as `p/q`.
pub const RATIONAL_TOL: f64 = 1e-13;

pub fn rho(v: f64) -> Result<f64> {
    if !(v > 2.0) {
        return Err(Error::InvalidArgument(format!("rho requires v > 2, got {v}")));
    }
    Ok(0.5 * (v + root(v)))
}

/// `sqrt(v^2 - 4)`, factored to avoid cancellation near `v = 2`.
fn root(v: f64) -> f64 {
    ((v - 2.0) * (v + 2.0)).sqrt()
}

pub fn frac(x: f64) -> f64 {
    x - x.floor()
}

/// Fractional part, except 1 at integers.
pub fn frac_prime(x: f64) -> f64 {
    1.0 + x - x.ceil()
}

/// `log G(f) = ∫_0^1 log rho(f(x)) dx`, split at every breakpoint.
pub fn geometric_mean_log(f: &PiecewisePotential) -> Result<f64> {
    let quad = AdaptiveSimpson::default();
    f.function()
        .integrate_with(0.0, 1.0, &quad, |v| (0.5 * (v + root(v))).ln())
}

fn endpoint_values(f: &PiecewisePotential) -> Result<(f64, f64)> {
    Ok((f.eval(0.0, Approach::Right)?, f.eval(1.0, Approach::Left)?))
}

fn kac_formula(f0: f64, f1: f64) -> f64 {
    0.5 * (f1 + root(f1)) / (root(f0) * root(f1)).sqrt()
}

fn shifted_formula(f0: f64, f1: f64, epsilon: f64) -> f64 {
    (f0 + root(f0)).powf(1.0 - epsilon) * (f1 + root(f1)).powf(epsilon)
        / (2.0 * (root(f0) * root(f1)).sqrt())
}

/// Kac's limit of `D_n / G^n` for a smooth potential.
pub fn kac_limit(f: &PiecewisePotential) -> Result<f64> {
    if f.has_jumps() {
        return Err(Error::HasJumps);
    }
    let (f0, f1) = endpoint_values(f)?;
    Ok(kac_formula(f0, f1))
}

/// Limit of `det T_n(f; ε) / G^n`; equals [`kac_limit`] at `ε = 1`.
pub fn shifted_limit(f: &PiecewisePotential, epsilon: f64) -> Result<f64> {
    if f.has_jumps() {
        return Err(Error::HasJumps);
    }
    let (f0, f1) = endpoint_values(f)?;
    if epsilon == 1.0 {
        return Ok(kac_formula(f0, f1));
    }
    Ok(shifted_formula(f0, f1, epsilon))
}

/// `(β, γ)` from the one-sided limits `f(c-)`, `f(c+)`.
pub fn beta_gamma(left: f64, right: f64) -> (f64, f64) {
    let (rl, rr) = (root(left), root(right));
    let beta = (left - right + rr + rl) / (2.0 * (rr * rl).sqrt());
    let gamma = (right + rr) / (left + rl);
    (beta, gamma)
}

pub fn jump_parameters(f: &PiecewisePotential, j: usize) -> Result<(f64, f64)> {
    let jump = f.jumps().get(j).ok_or_else(|| {
        Error::InvalidArgument(format!(
            "jump index {j} out of range ({} jumps)",
            f.jumps().len()
        ))
    })?;
    let (left, right) = f.function().one_sided_limits(jump.c)?;
    Ok(beta_gamma(left, right))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JumpFactor {
    pub c: f64,
    pub side: Side,
    pub beta: f64,
    pub gamma: f64,
}

impl JumpFactor {
    /// `{nc}` for left-continuous jumps, `{nc}'` for right-continuous ones.
    pub fn exponent(&self, n: usize) -> f64 {
        let x = n as f64 * self.c;
        match self.side {
            Side::Left => frac(x),
            Side::Right => frac_prime(x),
        }
    }

    /// Extremes `(max, min)` of `γ^e` over the exponents attained for
    /// large `n`: `{0, 1/q, .., (q-1)/q}` (left) or `{1/q, .., 1}` (right)
    /// when `c = p/q`, and the closure `[0, 1]` when `c` is irrational.
    pub fn extremes(&self) -> (f64, f64) {
        let candidates = match (rational_denominator(self.c), self.side) {
            (Some(q), Side::Left) => [1.0, self.gamma.powf((q - 1) as f64 / q as f64)],
            (Some(q), Side::Right) => [self.gamma.powf(1.0 / q as f64), self.gamma],
            (None, _) => [1.0, self.gamma],
        };
        (
            candidates[0].max(candidates[1]),
            candidates[0].min(candidates[1]),
        )
    }
}

/// Smallest `q <= MAX_DENOMINATOR` with `|c - p/q| < RATIONAL_TOL`, found
/// among the continued-fraction convergents of `c`.
pub fn rational_denominator(c: f64) -> Option<u64> {
    let (mut h0, mut h1) = (0f64, 1f64);
    let (mut k0, mut k1) = (1f64, 0f64);
    let mut x = c;
    for _ in 0..64 {
        let a = x.floor();
        let h2 = a * h1 + h0;
        let k2 = a * k1 + k0;
        if k2 > MAX_DENOMINATOR as f64 {
            return None;
        }
        if (c - h2 / k2).abs() < RATIONAL_TOL {
            return Some(k2 as u64);
        }
        let rem = x - a;
        if rem <= 0.0 {
            return None;
        }
        x = 1.0 / rem;
        (h0, h1) = (h1, h2);
        (k0, k1) = (k1, k2);
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Envelope {
    pub limsup: f64,
    pub liminf: f64,
    /// False when built from per-jump extremes of several jumps, in which
    /// case the values are bounds rather than attained limits.
    pub exact: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AsymptoticPrediction {
    pub g_log: f64,
    pub alpha: f64,
    pub jumps: Vec<JumpFactor>,
    pub epsilon: f64,
}

impl AsymptoticPrediction {
    pub fn new(f: &PiecewisePotential) -> Result<Self> {
        Self::with_epsilon(f, 1.0)
    }

    /// Prediction for `T_n(f; ε)`. Shifts other than `ε = 1` are only
    /// covered for smooth potentials.
    pub fn with_epsilon(f: &PiecewisePotential, epsilon: f64) -> Result<Self> {
        let g_log = geometric_mean_log(f)?;
        let (f0, f1) = endpoint_values(f)?;
        if f.has_jumps() && epsilon != 1.0 {
            return Err(Error::InvalidArgument(
                "jump predictions are only available for epsilon = 1".into(),
            ));
        }
        let alpha = if epsilon == 1.0 {
            kac_formula(f0, f1)
        } else {
            shifted_formula(f0, f1, epsilon)
        };
        let jumps = (0..f.jumps().len())
            .map(|j| {
                let (beta, gamma) = jump_parameters(f, j)?;
                let jp = f.jumps()[j];
                Ok(JumpFactor {
                    c: jp.c,
                    side: jp.side,
                    beta,
                    gamma,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            g_log,
            alpha,
            jumps,
            epsilon,
        })
    }

    /// `α ∏ β_j γ_j^{e_j(n)}`.
    pub fn prediction(&self, n: usize) -> f64 {
        self.jumps.iter().fold(self.alpha, |acc, j| {
            acc * j.beta * j.gamma.powf(j.exponent(n))
        })
    }

    /// `α ∏ β_j`, the prediction with all exponents zero.
    pub fn base(&self) -> f64 {
        self.jumps.iter().fold(self.alpha, |acc, j| acc * j.beta)
    }

    pub fn envelope(&self) -> Envelope {
        let base = self.base();
        let (hi, lo) = self
            .jumps
            .iter()
            .map(JumpFactor::extremes)
            .fold((1.0, 1.0), |(h, l), (jh, jl)| (h * jh, l * jl));
        Envelope {
            limsup: base * hi,
            liminf: base * lo,
            exact: self.jumps.len() <= 1,
        }
    }
}

/// Convenience wrapper: `jump_prediction(p, n) = p.prediction(n)`.
pub fn jump_prediction(p: &AsymptoticPrediction, n: usize) -> f64 {
    p.prediction(n)
}
