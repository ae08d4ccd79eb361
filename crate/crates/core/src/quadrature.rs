//! Adaptive Simpson quadrature and the periodic trapezoid rule.

use crate::compensated::CompensatedSum;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct AdaptiveSimpson {
    pub abs_tol: f64,
    pub max_depth: u32,
}

impl Default for AdaptiveSimpson {
    fn default() -> Self {
        Self {
            abs_tol: 1e-12,
            max_depth: 40,
        }
    }
}

struct Panel {
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
}

impl AdaptiveSimpson {
    pub fn new(abs_tol: f64, max_depth: u32) -> Self {
        Self { abs_tol, max_depth }
    }

    /// Integrate `f` over `[a, b]`; the integrand is never evaluated outside
    /// the closed interval.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F, a: f64, b: f64) -> Result<f64> {
        if a == b {
            return Ok(0.0);
        }
        let fa = f(a);
        let fb = f(b);
        let m = 0.5 * (a + b);
        let fm = f(m);
        let panel = Panel {
            a,
            b,
            fa,
            fm,
            fb,
            whole: simpson(a, b, fa, fm, fb),
        };
        let mut acc = CompensatedSum::new();
        self.recurse(&f, panel, self.abs_tol, 0, &mut acc)?;
        let value = acc.value();
        if value.is_finite() {
            Ok(value)
        } else {
            Err(Error::QuadratureDiverged { a, b })
        }
    }

    fn recurse<F: Fn(f64) -> f64>(
        &self,
        f: &F,
        p: Panel,
        tol: f64,
        depth: u32,
        acc: &mut CompensatedSum,
    ) -> Result<()> {
        let m = 0.5 * (p.a + p.b);
        let lm = 0.5 * (p.a + m);
        let rm = 0.5 * (m + p.b);
        let flm = f(lm);
        let frm = f(rm);
        let left = simpson(p.a, m, p.fa, flm, p.fm);
        let right = simpson(m, p.b, p.fm, frm, p.fb);
        let delta = left + right - p.whole;
        if !delta.is_finite() {
            return Err(Error::QuadratureDiverged { a: p.a, b: p.b });
        }
        if delta.abs() <= 15.0 * tol {
            acc.add(left + right + delta / 15.0);
            return Ok(());
        }
        if depth >= self.max_depth || m <= p.a || m >= p.b {
            return Err(Error::QuadratureDiverged { a: p.a, b: p.b });
        }
        self.recurse(
            f,
            Panel {
                a: p.a,
                b: m,
                fa: p.fa,
                fm: flm,
                fb: p.fm,
                whole: left,
            },
            0.5 * tol,
            depth + 1,
            acc,
        )?;
        self.recurse(
            f,
            Panel {
                a: m,
                b: p.b,
                fa: p.fm,
                fm: frm,
                fb: p.fb,
                whole: right,
            },
            0.5 * tol,
            depth + 1,
            acc,
        )
    }
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

/// `(1/2π) ∫_0^{2π} f(t) dt` by the trapezoid rule on `nodes` equispaced
/// points, which converges geometrically for smooth periodic `f`.
pub fn periodic_mean<F: Fn(f64) -> f64>(f: F, nodes: usize) -> f64 {
    let h = std::f64::consts::TAU / nodes as f64;
    let acc: CompensatedSum = (0..nodes).map(|j| f(j as f64 * h)).collect();
    acc.value() / nodes as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_exact() {
        let q = AdaptiveSimpson::default();
        let v = q.integrate(|x| x * x * x - 2.0 * x, 0.0, 2.0).unwrap();
        assert!((v - 0.0).abs() < 1e-13);
    }

    #[test]
    fn smooth_oscillatory() {
        let q = AdaptiveSimpson::default();
        let v = q.integrate(|x| (20.0 * x).cos(), 0.0, 1.0).unwrap();
        assert!((v - (20.0f64).sin() / 20.0).abs() < 1e-12);
    }

    #[test]
    fn power_singularity_at_endpoint() {
        // x^{3/2} behaviour at 0, as in sqrt(x)·sin(13x).
        let q = AdaptiveSimpson::default();
        let v = q.integrate(|x| x.sqrt() * x, 0.0, 1.0).unwrap();
        assert!((v - 0.4).abs() < 1e-12);
    }

    #[test]
    fn reports_divergence() {
        let q = AdaptiveSimpson::new(1e-12, 10);
        assert!(matches!(
            q.integrate(|x| 1.0 / x, 0.0, 1.0),
            Err(Error::QuadratureDiverged { .. })
        ));
    }

    #[test]
    fn periodic_mean_of_cosine_powers() {
        let m2 = periodic_mean(|t| t.cos().powi(2), 64);
        assert!((m2 - 0.5).abs() < 1e-15);
        let m1 = periodic_mean(|t| t.cos(), 64);
        assert!(m1.abs() < 1e-15);
    }
}
