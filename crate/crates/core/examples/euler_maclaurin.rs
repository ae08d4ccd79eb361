// First-order summation formulas against brute-force sums; the residual
// times n settles to a constant.

use schrodet::eulermaclaurin::{EulerMaclaurin, Lemma};
use schrodet::PiecewiseFunction;

pub fn run_example() -> schrodet::Result<()> {
    let smooth = PiecewiseFunction::parse("piece [-0.25, 1.25]: log((3 + x + sqrt((3 + x)^2 - 4))/2)")?;
    let jump = PiecewiseFunction::parse(
        "piece [-0.25, 3/8]: exp(x)\npiece [3/8, 1.25]: -x\njump at 3/8 side left",
    )?;
    let ns: Vec<usize> = (6..=12).map(|k| 1 << k).collect();
    let cases = [
        ("endpoint", &smooth, Lemma::Endpoint),
        ("shifted eps=0.25", &smooth, Lemma::Shifted(0.25)),
        ("jump", &jump, Lemma::Jump),
    ];
    for (name, g, lemma) in cases {
        println!("{name}");
        for row in EulerMaclaurin::new(g)?.residual_table(lemma, &ns)? {
            println!("  n = {:>4}  residual = {:+.4e}  n*residual = {:+.6}", row.n, row.residual, row.scaled_residual());
        }
    }
    Ok(())
}

fn main() -> schrodet::Result<()> {
    run_example()
}
