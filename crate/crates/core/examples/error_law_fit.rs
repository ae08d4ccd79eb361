// Fit the o(1) error of the jump prediction to A n^b and A B^n.

use schrodet::experiments::{fit_power_law, sweep};
use schrodet::{AsymptoticPrediction, PiecewisePotential};

pub fn run_example() -> schrodet::Result<()> {
    let f = PiecewisePotential::parse(
        "domain [0, 1.25]\n\
         piece [0, 0.9 - 1/pi]: 3.3 + x^2/2 + sqrt(x)*sin(13*x)\n\
         piece [0.9 - 1/pi, 1.25]: 3.5 - cos(20*x)\n\
         jump at 0.9 - 1/pi side left",
    )?;
    let p = AsymptoticPrediction::new(&f)?;
    let ns: Vec<usize> = (10..=3000).step_by(23).collect();
    let records = sweep(&f, &p, &ns, true)?;
    for r in records.iter().step_by(26) {
        println!("n = {:>4}  error = {:+.4e}", r.n, r.error);
    }
    let fit = fit_power_law(&records)?;
    println!(
        "power law:   {:.5} n^{:.6}  (rss {:.4}, {} points)",
        fit.power.a, fit.power.b, fit.power.rss, fit.power.used
    );
    println!(
        "exponential: {:.5} * {:.6}^n  (rss {:.4})",
        fit.exponential.a, fit.exponential.base, fit.exponential.rss
    );
    println!("preferred: {:?}", fit.preferred);
    Ok(())
}

fn main() -> schrodet::Result<()> {
    run_example()
}
