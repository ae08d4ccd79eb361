// The Fourier-coefficient series constant E(f): it depends only on f(0)
// and f(1), and as written differs from Kac's limit by a factor rho.

use schrodet::asymptotics::rho;
use schrodet::series::ms_constant;
use schrodet::PiecewisePotential;

pub fn run_example() -> schrodet::Result<()> {
    let c = ms_constant(&PiecewisePotential::smooth("3")?, None)?;
    println!("f = 3: V_0 = {:.12}, V_1 = {:.12}, V_2 = {:.12}", c.at_zero.v(0), c.at_zero.v(1), c.at_zero.v(2));
    println!("E = {:.12}, K = {}, tail <= {:.1e}", c.value, c.order, c.truncation_bound);
    println!(
        "E / kac = {:.12}, rho(3) = {:.12}",
        c.discrepancy().unwrap_or(f64::NAN),
        rho(3.0)?
    );

    for src in ["3 + x", "3 + x + sin(pi*x)^2", "3 + x^3"] {
        let e = ms_constant(&PiecewisePotential::smooth(src)?, None)?;
        println!("f = {src:<20} E = {:.12}", e.value);
    }
    Ok(())
}

fn main() -> schrodet::Result<()> {
    run_example()
}
