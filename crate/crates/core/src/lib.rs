//! Determinants of discrete Schrödinger matrices
//! `T_n(f) = -(shift + shiftᵀ) + diag(f(1/n), …, f(n/n))` and the closed-form
//! asymptotics of `D_n / G(f)^n`.
//!
//! * [`potential`] parses and validates piecewise-smooth potentials `f > 2`.
//! * [`matrix`] builds `T_n(f; ε)`, computes `log det` and eigenvalues.
//! * [`asymptotics`] evaluates `G(f)`, Kac's limit, the shifted limit and the
//!   jump prediction `α ∏ β_j γ_j^{{n c_j}}`.
//! * [`series`] holds the Fourier-coefficient series constant.
//! * [`eulermaclaurin`] checks the summation formulas behind the limits.
//! * [`experiments`] runs n-sweeps, error-law fits and trace checks.

pub mod asymptotics;
pub mod compensated;
pub mod error;
pub mod eulermaclaurin;
pub mod experiments;
pub mod expr;
pub mod matrix;
pub mod potential;
pub mod quadrature;
pub mod series;

pub use asymptotics::{AsymptoticPrediction, Envelope, JumpFactor};
pub use error::{Error, Result};
pub use expr::Expr;
pub use matrix::{DeterminantResult, OffDiagonalSign, Phi, SchrodingerMatrix};
pub use potential::{Approach, JumpPoint, PiecewiseFunction, PiecewisePotential, Side};
