//! Independent checks of the numerical kernels against closed forms and
//! brute-force computations written here, not in the library.

mod common;

use rand::{rngs::StdRng, Rng, SeedableRng};
use schrodet::asymptotics::{kac_limit, rho, shifted_limit};
use schrodet::{OffDiagonalSign, Phi, PiecewisePotential, SchrodingerMatrix};

fn chebyshev_log(a: f64, n: usize) -> f64 {
    let r = (a + (a * a - 4.0).sqrt()) / 2.0;
    // log of (r^{n+1} - r^{-n-1}) / (r - 1/r), arranged to avoid overflow
    (n as f64 + 1.0) * r.ln() + (-(r.powi(-2)).powi(n as i32 + 1)).ln_1p()
        - (r - 1.0 / r).ln()
}

fn random_potential(rng: &mut StdRng) -> PiecewisePotential {
    let src = format!(
        "{:.5} + {:.5}*x^2 + {:.5}*cos({:.5}*x)",
        rng.gen_range(3.5..6.0),
        rng.gen_range(-0.8..0.8),
        rng.gen_range(-0.5..0.5),
        rng.gen_range(0.5..10.0)
    );
    PiecewisePotential::smooth(&src).unwrap()
}

#[test]
fn constant_potential_matches_chebyshev() {
    for a in [2.5, 3.0, 5.0, 10.0] {
        for n in 1..=200 {
            let m = SchrodingerMatrix::from_diagonal(vec![a; n], OffDiagonalSign::Minus).unwrap();
            let got = m.det_log().unwrap().log_det;
            let want = chebyshev_log(a, n);
            assert!((got - want).abs() <= 1e-10 * want.abs().max(1.0), "a={a} n={n}");
        }
    }
}

#[test]
fn off_diagonal_sign_does_not_matter() {
    let mut rng = StdRng::seed_from_u64(1);
    for _ in 0..10 {
        let f = random_potential(&mut rng);
        let n = rng.gen_range(1..300);
        let minus = SchrodingerMatrix::build(&f, n, 1.0, OffDiagonalSign::Minus).unwrap();
        let plus = SchrodingerMatrix::build(&f, n, 1.0, OffDiagonalSign::Plus).unwrap();
        assert_eq!(minus.det_log().unwrap(), plus.det_log().unwrap());
        assert_eq!(minus.eigenvalues().unwrap(), plus.eigenvalues().unwrap());
    }
}

#[test]
fn sturm_count_agrees_with_eigenvalues() {
    let mut rng = StdRng::seed_from_u64(2);
    let f = random_potential(&mut rng);
    let m = SchrodingerMatrix::build(&f, 300, 1.0, OffDiagonalSign::Minus).unwrap();
    let eig = m.eigenvalues().unwrap();
    assert!(eig.windows(2).all(|w| w[0] <= w[1]));
    let (lo, hi) = m.spectral_bounds();
    for _ in 0..20 {
        let x = rng.gen_range(lo..hi);
        let below = eig.iter().filter(|&&l| l < x).count();
        // Eigenvalues within the bisection tolerance of x may land on
        // either side.
        let near = eig.iter().filter(|&&l| (l - x).abs() <= 1e-9).count();
        let count = m.sturm_count(x);
        assert!(count.abs_diff(below) <= near, "x={x}: {count} vs {below}");
    }
}

#[test]
fn log_trace_equals_log_det() {
    for (i, f) in common::smooth_corpus().iter().enumerate() {
        for n in [1, 2, 17, 128, 512] {
            let m = SchrodingerMatrix::build(f, n, 1.0, OffDiagonalSign::Minus).unwrap();
            let tr = m.trace_phi(Phi::Log).unwrap();
            let ld = m.det_log().unwrap().log_det;
            assert!((tr - ld).abs() <= 1e-8 * ld.abs(), "corpus {i}, n={n}: {tr} vs {ld}");
        }
    }
}

#[test]
fn rho_identities() {
    let mut rng = StdRng::seed_from_u64(3);
    for _ in 0..200 {
        let v = rng.gen_range(2.0001..50.0);
        let r = rho(v).unwrap();
        assert!((r + 1.0 / r - v).abs() <= 1e-12 * v);
        assert!(r >= 1.0);
        assert!((r * r - v * r + 1.0).abs() <= 1e-11 * r * r);
    }
    assert!(rho(2.0).is_err());
    let near: Vec<f64> = [1e-2, 1e-4, 1e-8].iter().map(|d| rho(2.0 + d).unwrap()).collect();
    assert!(near.windows(2).all(|w| w[1] < w[0]) && near[2] - 1.0 < 1e-3);
}

#[test]
fn shifted_limit_at_one_is_kac() {
    let mut rng = StdRng::seed_from_u64(4);
    for _ in 0..20 {
        let f = random_potential(&mut rng);
        let k = kac_limit(&f).unwrap();
        let s = shifted_limit(&f, 1.0).unwrap();
        assert!((k - s).abs() <= 1e-12 * k);
    }
}
