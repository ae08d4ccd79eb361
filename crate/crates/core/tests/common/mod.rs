#![allow(dead_code)]

use schrodet::{PiecewiseFunction, PiecewisePotential};

/// Smooth potentials used wherever a criterion asks for "the corpus".
pub const SMOOTH: [&str; 5] = [
    "x + 3",
    "3 + x^2",
    "3.3 + x^2/2 + sin(3*x)",
    "4 - cos(5*x)",
    "2.2 + exp(x)",
];

pub fn smooth(i: usize) -> PiecewisePotential {
    PiecewisePotential::smooth(SMOOTH[i]).unwrap()
}

pub fn smooth_corpus() -> Vec<PiecewisePotential> {
    (0..SMOOTH.len()).map(smooth).collect()
}

/// The jump potential of the first figure, with the jump at `c`.
pub fn ff(c: &str, side: &str) -> PiecewisePotential {
    PiecewisePotential::parse(&format!(
        "piece [-0.25, {c}]: 3.3 + x^2/2 + sin(3*x)\n\
         piece [{c}, 1.25]: 3.5 - x\n\
         jump at {c} side {side}"
    ))
    .unwrap()
}

pub fn ff2() -> PiecewisePotential {
    PiecewisePotential::parse(
        "domain [0, 1.25]\n\
         piece [0, 0.9 - 1/pi]: 3.3 + x^2/2 + sqrt(x)*sin(13*x)\n\
         piece [0.9 - 1/pi, 1.25]: 3.5 - cos(20*x)\n\
         jump at 0.9 - 1/pi side left",
    )
    .unwrap()
}

/// Test functions for the summation formulas, without jumps.
pub fn em_smooth_corpus() -> Vec<PiecewiseFunction> {
    let mut out: Vec<PiecewiseFunction> = ["1 + x + x^2", "x^3 - 2*x", "exp(x)", "cos(3*x)"]
        .iter()
        .map(|s| PiecewiseFunction::parse(&format!("piece [-0.25, 1.25]: {s}")).unwrap())
        .collect();
    for i in 0..SMOOTH.len() {
        out.push(smooth(i).log_rho().unwrap());
    }
    out
}

/// Step-like functions with dyadic jumps, so `{nc}` is constant over
/// powers of two.
pub fn em_jump_corpus() -> Vec<PiecewiseFunction> {
    [
        "piece [-0.25, 1/2]: 1 + x\npiece [1/2, 1.25]: 3 - x^2\njump at 1/2 side left",
        "piece [-0.25, 1/4]: x\npiece [1/4, 1.25]: 2 + x^2\njump at 1/4 side right",
        "piece [-0.25, 3/8]: exp(x)\npiece [3/8, 1.25]: -x\njump at 3/8 side left",
    ]
    .iter()
    .map(|s| PiecewiseFunction::parse(s).unwrap())
    .chain([ff("1/2", "left").log_rho().unwrap()])
    .collect()
}
