// For a constant potential the recurrence has a closed form, so the log
// determinant can be checked digit for digit.

use schrodet::{OffDiagonalSign, PiecewisePotential, SchrodingerMatrix};
use schrodet::asymptotics::{geometric_mean_log, kac_limit};

pub fn run_example() -> schrodet::Result<()> {
    let a: f64 = 3.0;
    let r = (a + (a * a - 4.0).sqrt()) / 2.0;
    println!("{:>5} {:>22} {:>22} {:>10}", "n", "log D_n", "closed form", "rel err");
    for n in [1usize, 2, 5, 10, 50, 200, 1000] {
        let m = SchrodingerMatrix::from_diagonal(vec![a; n], OffDiagonalSign::Minus)?;
        let got = m.det_log()?.log_det;
        let want = (n as f64 + 1.0) * r.ln() + (-r.powi(-2 * (n as i32 + 1))).ln_1p()
            - (r - 1.0 / r).ln();
        println!("{n:>5} {got:>22.15} {want:>22.15} {:>10.1e}", ((got - want) / want).abs());
    }

    let f = PiecewisePotential::smooth("3")?;
    let g_log = geometric_mean_log(&f)?;
    println!("G = {:.12} (rho(3) = {r:.12})", g_log.exp());
    for n in [10, 25, 50] {
        let ratio = schrodet::matrix::ratio(&f, n, 1.0, g_log)?;
        println!("D_{n}/G^{n} = {ratio:.12}");
    }
    println!("limit     = {:.12}", kac_limit(&f)?);
    Ok(())
}

fn main() -> schrodet::Result<()> {
    run_example()
}
