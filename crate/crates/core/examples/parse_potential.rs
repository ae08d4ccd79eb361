// Parse a piecewise potential, inspect its pieces and one-sided limits,
// and see what a rejected source looks like.

use schrodet::{Approach, PiecewisePotential};

const SOURCE: &str = "\
# jump at c = 1/3, right-continuous
domain [-0.25, 1.25]
piece [-0.25, 1/3]: 3.3 + x^2/2 + sin(3*x)
piece [1/3, 1.25]:  3.5 - x
jump at 1/3 side right
";

pub fn run_example() -> schrodet::Result<()> {
    let f = PiecewisePotential::parse(SOURCE)?;
    for p in f.function().pieces() {
        println!("[{:.4}, {:.4}]  f = {}", p.lo, p.hi, p.expr);
        println!("                  f' = {}", p.derivative_expr());
    }
    let c = f.jumps()[0].c;
    let (left, right) = f.function().one_sided_limits(c)?;
    println!("jump at {c:.6} ({}): f(c-) = {left:.6}, f(c+) = {right:.6}", f.jumps()[0].side);
    println!("f(c) = {:.6}", f.eval(c, Approach::At)?);

    for bad in ["piece [0, 1]: x + 1", "piece [0, 1]: 3 +* x", "piece [0, 1/2]: 3\npiece [1/2, 1]: 4"] {
        match PiecewisePotential::parse(bad) {
            Ok(_) => println!("accepted?! {bad:?}"),
            Err(e) => println!("rejected: {e}"),
        }
    }
    Ok(())
}

fn main() -> schrodet::Result<()> {
    run_example()
}
