// Sampling at (k - 1 + eps)/n instead of k/n changes the limit of
// D_n / G^n, even though G itself is unchanged.

use schrodet::asymptotics::{geometric_mean_log, shifted_limit};
use schrodet::matrix::ratio;
use schrodet::PiecewisePotential;

pub fn run_example() -> schrodet::Result<()> {
    let f = PiecewisePotential::smooth("x + 3")?;
    let g_log = geometric_mean_log(&f)?;
    println!("{:>6} {:>14} {:>14} {:>10}", "eps", "ratio(2000)", "limit", "diff");
    for eps in [-0.3, 0.0, 0.5, 1.0, 2.0, 5.0] {
        let r = ratio(&f, 2000, eps, g_log)?;
        let l = shifted_limit(&f, eps)?;
        println!("{eps:>6.2} {r:>14.10} {l:>14.10} {:>10.2e}", r - l);
    }
    Ok(())
}

fn main() -> schrodet::Result<()> {
    run_example()
}
