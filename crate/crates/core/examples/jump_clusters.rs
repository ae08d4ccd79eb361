// A single jump at c makes D_n / G^n depend on the fractional part of nc:
// two clusters for c = 1/2, three for c = 1/3, a dense band for c = 1/pi.

use schrodet::asymptotics::rational_denominator;
use schrodet::experiments::sweep;
use schrodet::{AsymptoticPrediction, PiecewisePotential};

pub fn run_example() -> schrodet::Result<()> {
    for c in ["1/2", "1/3", "1/pi"] {
        let f = PiecewisePotential::parse(&format!(
            "piece [-0.25, {c}]: 3.3 + x^2/2 + sin(3*x)\n\
             piece [{c}, 1.25]: 3.5 - x\n\
             jump at {c} side right"
        ))?;
        let p = AsymptoticPrediction::new(&f)?;
        let j = p.jumps[0];
        let env = p.envelope();
        println!(
            "c = {c}: alpha = {:.6}, beta = {:.6}, gamma = {:.6}, q = {:?}",
            p.alpha,
            j.beta,
            j.gamma,
            rational_denominator(j.c)
        );
        println!("  envelope [{:.6}, {:.6}]", env.liminf, env.limsup);
        let ns: Vec<usize> = (190..=200).collect();
        for r in sweep(&f, &p, &ns, true)? {
            println!(
                "  n = {}  ratio = {:.6}  prediction = {:.6}  {{nc}}' = {:.4}",
                r.n,
                r.ratio,
                r.prediction,
                j.exponent(r.n)
            );
        }
    }
    Ok(())
}

fn main() -> schrodet::Result<()> {
    run_example()
}
