//! First-order Euler–Maclaurin formulas for `Σ_{k=1}^{n-1} g(·)`, checked
//! against brute-force compensated sums.
//!
//! * endpoint form: `n∫g - (g(0) + g(1))/2`
//! * shifted form, samples `(k - 1 + ε)/n`: `n∫g + (ε - 3/2) g(1) + (1/2 - ε) g(0)`
//! * jump form: endpoint form plus `Σ_j (e_j(n) - 1/2)(g(c_j+) - g(c_j-))`,
//!   with `e_j = {n c_j}` (left-continuous) or `{n c_j}'` (right-continuous)
//!
//! All three leave an `O(1/n)` residual.

use serde::Serialize;

use crate::asymptotics::{frac, frac_prime};
use crate::compensated::CompensatedSum;
use crate::error::{Error, Result};
use crate::potential::{Approach, PiecewiseFunction, Side};
use crate::quadrature::AdaptiveSimpson;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SumComparison {
    pub n: usize,
    pub exact_sum: f64,
    pub formula_value: f64,
    pub residual: f64,
}

impl SumComparison {
    pub fn scaled_residual(&self) -> f64 {
        self.residual * self.n as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Lemma {
    Endpoint,
    Shifted(f64),
    Jump,
}

/// `Σ_{k=1}^{n-1} g((k - 1 + ε)/n)` in ascending `k` with compensation.
pub fn brute_force_sum(g: &PiecewiseFunction, n: usize, epsilon: f64) -> Result<f64> {
    let nf = n as f64;
    let mut acc = CompensatedSum::new();
    for k in 1..n {
        acc.add(g.eval(((k - 1) as f64 + epsilon) / nf, Approach::At)?);
    }
    Ok(acc.value())
}

/// Summation formulas for one function, with `∫_0^1 g` computed once.
#[derive(Debug, Clone)]
pub struct EulerMaclaurin<'a> {
    g: &'a PiecewiseFunction,
    integral: f64,
    g0: f64,
    g1: f64,
}

impl<'a> EulerMaclaurin<'a> {
    pub fn new(g: &'a PiecewiseFunction) -> Result<Self> {
        let integral = g.integrate(0.0, 1.0, &AdaptiveSimpson::default())?;
        Ok(Self {
            g,
            integral,
            g0: g.eval(0.0, Approach::Right)?,
            g1: g.eval(1.0, Approach::Left)?,
        })
    }

    pub fn integral(&self) -> f64 {
        self.integral
    }

    pub fn em_formula(&self, n: usize) -> Result<f64> {
        if self.g.has_jumps() {
            return Err(Error::HasJumps);
        }
        Ok(self.endpoint(n))
    }

    fn endpoint(&self, n: usize) -> f64 {
        n as f64 * self.integral - 0.5 * (self.g0 + self.g1)
    }

    pub fn shifted_formula(&self, n: usize, epsilon: f64) -> Result<f64> {
        if self.g.has_jumps() {
            return Err(Error::HasJumps);
        }
        let (lo, hi) = self.g.domain();
        let first = (epsilon) / n as f64;
        let last = (n as f64 - 2.0 + epsilon) / n as f64;
        if n > 1 && (first < lo || last > hi) {
            return Err(Error::OutOfDomain {
                x: if first < lo { first } else { last },
                lo,
                hi,
            });
        }
        Ok(n as f64 * self.integral + (epsilon - 1.5) * self.g1 + (0.5 - epsilon) * self.g0)
    }

    /// Per-jump corrections `(e_j(n) - 1/2)(g(c_j+) - g(c_j-))`.
    pub fn jump_corrections(&self, n: usize) -> Result<Vec<f64>> {
        self.g
            .jumps()
            .iter()
            .map(|j| {
                let (left, right) = self.g.one_sided_limits(j.c)?;
                let x = n as f64 * j.c;
                let e = match j.side {
                    Side::Left => frac(x),
                    Side::Right => frac_prime(x),
                };
                Ok((e - 0.5) * (right - left))
            })
            .collect()
    }

    pub fn jump_formula(&self, n: usize) -> Result<f64> {
        let mut acc = CompensatedSum::new();
        acc.add(self.endpoint(n));
        for c in self.jump_corrections(n)? {
            acc.add(c);
        }
        Ok(acc.value())
    }

    pub fn compare(&self, lemma: Lemma, n: usize) -> Result<SumComparison> {
        let (exact_sum, formula_value) = match lemma {
            Lemma::Endpoint => (brute_force_sum(self.g, n, 1.0)?, self.em_formula(n)?),
            Lemma::Shifted(eps) => (
                brute_force_sum(self.g, n, eps)?,
                self.shifted_formula(n, eps)?,
            ),
            Lemma::Jump => (brute_force_sum(self.g, n, 1.0)?, self.jump_formula(n)?),
        };
        Ok(SumComparison {
            n,
            exact_sum,
            formula_value,
            residual: exact_sum - formula_value,
        })
    }

    pub fn residual_table(&self, lemma: Lemma, ns: &[usize]) -> Result<Vec<SumComparison>> {
        ns.iter()
            .map(|&n| self.compare(lemma, n).map_err(|e| e.at_order(n)))
            .collect()
    }
}

pub fn em_formula(g: &PiecewiseFunction, n: usize) -> Result<f64> {
    EulerMaclaurin::new(g)?.em_formula(n)
}

pub fn shifted_formula(g: &PiecewiseFunction, n: usize, epsilon: f64) -> Result<f64> {
    EulerMaclaurin::new(g)?.shifted_formula(n, epsilon)
}

pub fn jump_formula(g: &PiecewiseFunction, n: usize) -> Result<f64> {
    EulerMaclaurin::new(g)?.jump_formula(n)
}
