//! Discrete Schrödinger matrices `T_n(f; ε)`: determinants in log scale and
//! eigenvalues by Sturm-sequence bisection.
//!
//! The matrix has diagonal `d_k = f((k - 1 + ε)/n)` for `k = 1..n` and unit
//! off-diagonals of a fixed sign. With `ε = 1` the diagonal is `f(k/n)`.

use rayon::prelude::*;

use crate::compensated::{self, CompensatedSum};
use crate::error::{Error, Result};
use crate::potential::{Approach, PiecewisePotential};

/// Largest order accepted by [`SchrodingerMatrix::eigenvalues`].
pub const DEFAULT_EIGEN_CAP: usize = 4096;
/// Absolute bisection tolerance for each eigenvalue.
pub const EIGEN_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OffDiagonalSign {
    #[default]
    Minus,
    Plus,
}

impl OffDiagonalSign {
    pub fn value(self) -> f64 {
        match self {
            OffDiagonalSign::Minus => -1.0,
            OffDiagonalSign::Plus => 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SchrodingerMatrix {
    diag: Vec<f64>,
    sign: OffDiagonalSign,
    epsilon: f64,
}

/// `log D_n`, and `log(D_n / G^n)` once a geometric mean is attached.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeterminantResult {
    pub n: usize,
    pub log_det: f64,
    pub ratio_log: Option<f64>,
}

impl DeterminantResult {
    pub fn with_geometric_mean(mut self, g_log: f64) -> Self {
        self.ratio_log = Some(self.log_det - self.n as f64 * g_log);
        self
    }

    pub fn ratio(&self) -> Option<f64> {
        self.ratio_log.map(f64::exp)
    }
}

/// Spectral function for trace checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Phi {
    /// `s^p`, `p <= 4`.
    Power(u32),
    Log,
}

impl Phi {
    pub fn apply(self, s: f64) -> f64 {
        match self {
            Phi::Power(p) => s.powi(p as i32),
            Phi::Log => s.ln(),
        }
    }
}

/// Sample points `(k - 1 + ε)/n`, `k = 1..n`.
pub fn sample_points(n: usize, epsilon: f64) -> impl Iterator<Item = f64> {
    let nf = n as f64;
    (1..=n).map(move |k| ((k - 1) as f64 + epsilon) / nf)
}

impl SchrodingerMatrix {
    pub fn build(
        f: &PiecewisePotential,
        n: usize,
        epsilon: f64,
        sign: OffDiagonalSign,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("matrix order must be positive".into()));
        }
        let diag = sample_points(n, epsilon)
            .map(|x| f.eval(x, Approach::At))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            diag,
            sign,
            epsilon,
        })
    }

    /// A matrix with an explicit diagonal; `epsilon` is recorded as NaN.
    pub fn from_diagonal(diag: Vec<f64>, sign: OffDiagonalSign) -> Result<Self> {
        if diag.is_empty() {
            return Err(Error::InvalidArgument("matrix order must be positive".into()));
        }
        Ok(Self {
            diag,
            sign,
            epsilon: f64::NAN,
        })
    }

    pub fn n(&self) -> usize {
        self.diag.len()
    }

    pub fn diagonal(&self) -> &[f64] {
        &self.diag
    }

    pub fn sign(&self) -> OffDiagonalSign {
        self.sign
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// Determinant via the minor-ratio recurrence `r_1 = d_1`,
    /// `r_k = d_k - 1/r_{k-1}`; `log D_n = Σ log r_k`.
    ///
    /// The off-diagonal sign drops out because only products of symmetric
    /// off-diagonal pairs enter.
    pub fn det_log(&self) -> Result<DeterminantResult> {
        let mut acc = CompensatedSum::new();
        let mut prev: Option<f64> = None;
        for (k, &d) in self.diag.iter().enumerate() {
            let r = match prev {
                None => d,
                Some(p) => d - 1.0 / p,
            };
            if !(r > 0.0) {
                return Err(Error::NonPositivePivot { k: k + 1, value: r });
            }
            debug_assert!(d <= 2.0 || r > 1.0);
            acc.add(r.ln());
            prev = Some(r);
        }
        Ok(DeterminantResult {
            n: self.n(),
            log_det: acc.value(),
            ratio_log: None,
        })
    }

    /// Number of eigenvalues strictly below `x` (negative pivots of the
    /// `LDLᵀ` factorization of `T - xI`).
    pub fn sturm_count(&self, x: f64) -> usize {
        const PIVMIN: f64 = 1e-300;
        let mut count = 0;
        let mut q = 1.0f64;
        for (k, &d) in self.diag.iter().enumerate() {
            q = if k == 0 { d - x } else { d - x - 1.0 / q };
            if q.abs() < PIVMIN {
                q = -PIVMIN;
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// Gershgorin interval containing the spectrum.
    pub fn spectral_bounds(&self) -> (f64, f64) {
        let n = self.n();
        let radius = |i: usize| (i > 0) as u8 as f64 + (i + 1 < n) as u8 as f64;
        let lo = (0..n)
            .map(|i| self.diag[i] - radius(i))
            .fold(f64::INFINITY, f64::min);
        let hi = (0..n)
            .map(|i| self.diag[i] + radius(i))
            .fold(f64::NEG_INFINITY, f64::max);
        (lo, hi)
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        self.eigenvalues_capped(DEFAULT_EIGEN_CAP)
    }

    /// All eigenvalues in ascending order, each bisected to [`EIGEN_TOL`].
    pub fn eigenvalues_capped(&self, cap: usize) -> Result<Vec<f64>> {
        let n = self.n();
        if n > cap {
            return Err(Error::EigenCapExceeded { n, cap });
        }
        let (lo, hi) = self.spectral_bounds();
        let (lo, hi) = (lo - EIGEN_TOL, hi + EIGEN_TOL);
        let values = (0..n)
            .into_par_iter()
            .map(|k| {
                let (mut a, mut b) = (lo, hi);
                while b - a > EIGEN_TOL {
                    let mid = 0.5 * (a + b);
                    if mid <= a || mid >= b {
                        break;
                    }
                    if self.sturm_count(mid) > k {
                        b = mid;
                    } else {
                        a = mid;
                    }
                }
                0.5 * (a + b)
            })
            .collect();
        Ok(values)
    }

    /// `Σ φ(λ_k)` over the spectrum.
    pub fn trace_phi(&self, phi: Phi) -> Result<f64> {
        if let Phi::Power(p) = phi {
            if p > 4 {
                return Err(Error::InvalidArgument(format!(
                    "power {p} exceeds 4"
                )));
            }
        }
        let eig = self.eigenvalues()?;
        Ok(compensated::sum(eig.into_iter().map(|l| phi.apply(l))))
    }
}

/// `D_n / G^n` for `T_n(f; ε)` given `log G`.
pub fn ratio(f: &PiecewisePotential, n: usize, epsilon: f64, g_log: f64) -> Result<f64> {
    let m = SchrodingerMatrix::build(f, n, epsilon, OffDiagonalSign::Minus)?;
    let det = m.det_log()?.with_geometric_mean(g_log);
    Ok(det.ratio().expect("geometric mean attached"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn constant(a: f64, n: usize) -> SchrodingerMatrix {
        SchrodingerMatrix::from_diagonal(vec![a; n], OffDiagonalSign::Minus).unwrap()
    }

    fn golden() -> f64 {
        (3.0 + 5f64.sqrt()) / 2.0
    }

    #[test]
    fn build_constant() {
        let f = PiecewisePotential::smooth("3").unwrap();
        let m = SchrodingerMatrix::build(&f, 3, 1.0, OffDiagonalSign::Minus).unwrap();
        assert_eq!(m.diagonal(), &[3.0, 3.0, 3.0]);
    }

    #[test]
    fn build_linear_with_shift() {
        let f = PiecewisePotential::smooth("x + 3").unwrap();
        let m = SchrodingerMatrix::build(&f, 2, 1.0, OffDiagonalSign::Minus).unwrap();
        assert_eq!(m.diagonal(), &[3.5, 4.0]);
        let m = SchrodingerMatrix::build(&f, 2, 0.0, OffDiagonalSign::Minus).unwrap();
        assert_eq!(m.diagonal(), &[3.0, 3.5]);
    }

    #[test]
    fn build_rejects_points_outside_domain() {
        let f = PiecewisePotential::smooth("x + 3").unwrap();
        assert!(matches!(
            SchrodingerMatrix::build(&f, 4, 5.0, OffDiagonalSign::Minus),
            Err(Error::OutOfDomain { .. })
        ));
        assert!(SchrodingerMatrix::build(&f, 0, 1.0, OffDiagonalSign::Minus).is_err());
    }

    #[test]
    fn small_determinants() {
        assert!((constant(3.0, 2).det_log().unwrap().log_det - 8f64.ln()).abs() < 1e-15);
        // D_k = 3 D_{k-1} - D_{k-2}: 1, 3, 8, 21, 55, 144.
        assert!((constant(3.0, 5).det_log().unwrap().log_det - 144f64.ln()).abs() < 1e-13);
    }

    #[test]
    fn fifty_by_fifty_ratio() {
        let r = golden();
        let det = constant(3.0, 50).det_log().unwrap().with_geometric_mean(r.ln());
        let expected = r * r / (r * r - 1.0) * (1.0 - r.powi(-102));
        assert!((det.ratio().unwrap() - expected).abs() < 1e-12);
        assert!((det.ratio().unwrap() - 1.1708203932).abs() < 1e-9);
    }

    #[test]
    fn ratio_n1() {
        let f = PiecewisePotential::smooth("3").unwrap();
        let v = ratio(&f, 1, 1.0, golden().ln()).unwrap();
        assert!((v - 1.1458980338).abs() < 1e-10);
    }

    #[test]
    fn non_positive_pivot_is_reported() {
        let m = SchrodingerMatrix::from_diagonal(vec![1.0, 1.0], OffDiagonalSign::Minus).unwrap();
        assert!(matches!(m.det_log(), Err(Error::NonPositivePivot { k: 2, .. })));
    }

    #[test]
    fn eigenvalues_constant() {
        assert_eq!(constant(3.0, 1).eigenvalues().unwrap().len(), 1);
        assert!((constant(3.0, 1).eigenvalues().unwrap()[0] - 3.0).abs() < 1e-10);
        let eig = constant(3.0, 3).eigenvalues().unwrap();
        let s2 = 2f64.sqrt();
        for (got, want) in eig.iter().zip([3.0 - s2, 3.0, 3.0 + s2]) {
            assert!((got - want).abs() < 1e-10);
        }
    }

    #[test]
    fn eigen_cap() {
        assert!(matches!(
            constant(3.0, 10).eigenvalues_capped(8),
            Err(Error::EigenCapExceeded { n: 10, cap: 8 })
        ));
    }

    #[test]
    fn trace_small() {
        let m = constant(3.0, 2);
        assert!((m.trace_phi(Phi::Power(1)).unwrap() - 6.0).abs() < 1e-9);
        assert!((m.trace_phi(Phi::Log).unwrap() - 8f64.ln()).abs() < 1e-10);
        assert!(m.trace_phi(Phi::Power(5)).is_err());
    }

    #[test]
    fn sign_does_not_change_spectrum() {
        let diag = vec![3.1, 4.2, 2.7, 5.0, 3.3];
        let a = SchrodingerMatrix::from_diagonal(diag.clone(), OffDiagonalSign::Minus).unwrap();
        let b = SchrodingerMatrix::from_diagonal(diag, OffDiagonalSign::Plus).unwrap();
        assert_eq!(a.det_log().unwrap(), b.det_log().unwrap());
        assert_eq!(a.eigenvalues().unwrap(), b.eigenvalues().unwrap());
    }
}
