// Smooth potentials: D_n / G^n tends to Kac's constant, with an error that
// halves when n doubles.

use schrodet::asymptotics::{geometric_mean_log, kac_limit};
use schrodet::matrix::ratio;
use schrodet::PiecewisePotential;

pub fn run_example() -> schrodet::Result<()> {
    for src in ["x + 3", "3 + x^2", "3.3 + x^2/2 + sin(3*x)", "4 - cos(5*x)"] {
        let f = PiecewisePotential::smooth(src)?;
        let g_log = geometric_mean_log(&f)?;
        let alpha = kac_limit(&f)?;
        println!("f = {src}: G = {:.10}, alpha = {alpha:.10}", g_log.exp());
        let mut prev: Option<f64> = None;
        for n in [250, 500, 1000, 2000, 4000] {
            let err = ratio(&f, n, 1.0, g_log)? - alpha;
            let shrink = prev.map(|p| format!("{:.3}", err / p)).unwrap_or_default();
            println!("  n = {n:>4}  error = {err:+.3e}  {shrink}");
            prev = Some(err);
        }
    }
    Ok(())
}

fn main() -> schrodet::Result<()> {
    run_example()
}
