// The eigenvalue distribution follows the symbol f(x) - 2 cos t, and does
// not care about the sampling shift, while the determinant does.

use schrodet::asymptotics::shifted_limit;
use schrodet::experiments::{kms_check, shift_invariance_check};
use schrodet::{Phi, PiecewisePotential};

pub fn run_example() -> schrodet::Result<()> {
    let f = PiecewisePotential::smooth("3.3 + x^2/2 + sin(3*x)")?;
    for phi in [Phi::Power(1), Phi::Power(2), Phi::Power(3), Phi::Log] {
        for n in [500, 1000, 2000] {
            let k = kms_check(&f, n, phi, 1.0)?;
            println!("{phi:?} n = {n:>4}: lhs = {:.8}  rhs = {:.8}  gap = {:.2e}", k.lhs, k.rhs, k.gap);
        }
    }

    let g = PiecewisePotential::smooth("x + 3")?;
    for n in [250, 500, 1000, 2000] {
        println!("moment gap eps 0 vs 5, n = {n:>4}: {:.5}", shift_invariance_check(&g, n, 0.0, 5.0)?);
    }
    println!(
        "determinant limits: eps 0 -> {:.6}, eps 5 -> {:.6}",
        shifted_limit(&g, 0.0)?,
        shifted_limit(&g, 5.0)?
    );
    Ok(())
}

fn main() -> schrodet::Result<()> {
    run_example()
}
