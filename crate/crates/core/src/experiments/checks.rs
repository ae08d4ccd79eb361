//! Spectral checks: trace averages against the symbol integral, and the
//! insensitivity of low moments to the index shift.

use serde::Serialize;

use crate::compensated;
use crate::error::{Error, Result};
use crate::matrix::{OffDiagonalSign, Phi, SchrodingerMatrix};
use crate::potential::PiecewisePotential;
use crate::quadrature::{periodic_mean, AdaptiveSimpson};

/// Trapezoid nodes for the `t` integral.
pub const SYMBOL_NODES: usize = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KmsCheck {
    pub n: usize,
    pub lhs: f64,
    pub rhs: f64,
    pub gap: f64,
}

/// `∫_0^1 (1/2π) ∫_0^{2π} φ(f(x) - 2cos t) dt dx`.
pub fn symbol_average(f: &PiecewisePotential, phi: Phi) -> Result<f64> {
    let quad = AdaptiveSimpson::new(1e-11, 40);
    f.function().integrate_with(0.0, 1.0, &quad, |v| {
        periodic_mean(|t| phi.apply(v - 2.0 * t.cos()), SYMBOL_NODES)
    })
}

/// `Tr φ(T_n(f; ε)) / n` against the symbol average.
pub fn kms_check(f: &PiecewisePotential, n: usize, phi: Phi, epsilon: f64) -> Result<KmsCheck> {
    let m = SchrodingerMatrix::build(f, n, epsilon, OffDiagonalSign::Minus)?;
    let lhs = m.trace_phi(phi)? / n as f64;
    let rhs = symbol_average(f, phi)?;
    Ok(KmsCheck {
        n,
        lhs,
        rhs,
        gap: (lhs - rhs).abs(),
    })
}

/// `max_{p ∈ {1,2}} |Tr T_a^p - Tr T_b^p| / n` for the shifts `eps_a`, `eps_b`.
pub fn shift_invariance_check(
    f: &PiecewisePotential,
    n: usize,
    eps_a: f64,
    eps_b: f64,
) -> Result<f64> {
    if eps_a == eps_b {
        return Ok(0.0);
    }
    let a = SchrodingerMatrix::build(f, n, eps_a, OffDiagonalSign::Minus)?;
    let b = SchrodingerMatrix::build(f, n, eps_b, OffDiagonalSign::Minus)?;
    if a.diagonal() == b.diagonal() {
        return Ok(0.0);
    }
    let ea = a.eigenvalues()?;
    let eb = b.eigenvalues()?;
    let moment = |eig: &[f64], p: i32| compensated::sum(eig.iter().map(|l| l.powi(p)));
    let gap = [1, 2]
        .into_iter()
        .map(|p| (moment(&ea, p) - moment(&eb, p)).abs() / n as f64)
        .fold(0.0, f64::max);
    if !gap.is_finite() {
        return Err(Error::InvalidArgument("non-finite moment gap".into()));
    }
    Ok(gap)
}
