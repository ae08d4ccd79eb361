//! Piecewise-smooth functions on an interval containing `[0, 1]`.
//!
//! A [`PiecewiseFunction`] is a tiling of `[lo, hi]` by pieces, each carrying
//! an [`Expr`] and its symbolic derivative, plus a list of jump points with a
//! side convention. A [`PiecewisePotential`] additionally guarantees the floor
//! `f > 2 + margin` needed for every determinant asymptotic in this crate.
//!
//! Potentials are written in a line-oriented text format:
//!
//! ```text
//! # comment
//! domain [-0.25, 1.25]
//! piece [-0.25, 1/2]: 3.3 + x^2/2 + sin(3*x)
//! piece [1/2, 1.25]:  3.5 - x
//! jump at 1/2 side left
//! floor_margin 1e-6
//! ```
//!
//! Without a `domain` line the domain defaults to `[-0.25, 1.25]` and the
//! first and last pieces are extended to cover it.

use std::fmt;

use crate::error::{Error, Result};
use crate::expr::{parse_at, parse_constant_at, Expr};
use crate::quadrature::AdaptiveSimpson;

pub const DEFAULT_DOMAIN: (f64, f64) = (-0.25, 1.25);
pub const DEFAULT_FLOOR_MARGIN: f64 = 1e-6;
/// Grid points per piece for floor and finiteness validation.
pub const FLOOR_SAMPLES: usize = 4096;
/// One-sided limits closer than this are treated as continuous.
pub const JUMP_THRESHOLD: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// `f(c) = f(c-)`.
    Left,
    /// `f(c) = f(c+)`.
    Right,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Approach {
    At,
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JumpPoint {
    pub c: f64,
    pub side: Side,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Piece {
    pub lo: f64,
    pub hi: f64,
    pub expr: Expr,
    derivative: Expr,
}

impl Piece {
    pub fn new(lo: f64, hi: f64, expr: Expr) -> Self {
        let derivative = expr.derivative();
        Self {
            lo,
            hi,
            expr,
            derivative,
        }
    }

    pub fn derivative_expr(&self) -> &Expr {
        &self.derivative
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseFunction {
    lo: f64,
    hi: f64,
    pieces: Vec<Piece>,
    jumps: Vec<JumpPoint>,
}

impl PiecewiseFunction {
    /// Validate and assemble. Pieces must tile `[lo, hi]` in order; jumps
    /// must sit on piece boundaries strictly inside `(0, 1)`. Declared jumps
    /// whose one-sided limits differ by at most [`JUMP_THRESHOLD`] are
    /// demoted to continuous boundaries.
    pub fn new(lo: f64, hi: f64, mut pieces: Vec<Piece>, mut jumps: Vec<JumpPoint>) -> Result<Self> {
        if !(lo <= 0.0 && hi >= 1.0) {
            return Err(Error::InvalidPotential(format!(
                "domain [{lo}, {hi}] must contain [0, 1]"
            )));
        }
        if pieces.is_empty() {
            return Err(Error::InvalidPotential("no pieces".into()));
        }
        pieces.sort_by(|a, b| a.lo.total_cmp(&b.lo));
        for p in &pieces {
            if !(p.lo < p.hi) {
                return Err(Error::InvalidPotential(format!(
                    "empty piece [{}, {}]",
                    p.lo, p.hi
                )));
            }
        }
        for w in pieces.windows(2) {
            if w[1].lo < w[0].hi {
                return Err(Error::OverlappingPieces {
                    a_lo: w[0].lo,
                    a_hi: w[0].hi,
                    b_lo: w[1].lo,
                    b_hi: w[1].hi,
                });
            }
            if w[1].lo > w[0].hi {
                return Err(Error::InvalidPotential(format!(
                    "gap between pieces at ({}, {})",
                    w[0].hi, w[1].lo
                )));
            }
        }
        if pieces[0].lo != lo || pieces[pieces.len() - 1].hi != hi {
            return Err(Error::InvalidPotential(format!(
                "pieces cover [{}, {}] but the domain is [{lo}, {hi}]",
                pieces[0].lo,
                pieces[pieces.len() - 1].hi
            )));
        }

        jumps.sort_by(|a, b| a.c.total_cmp(&b.c));
        for w in jumps.windows(2) {
            if w[0].c == w[1].c {
                return Err(Error::InvalidPotential(format!(
                    "duplicate jump at {}",
                    w[0].c
                )));
            }
        }
        for j in &jumps {
            if !(j.c > 0.0 && j.c < 1.0) {
                return Err(Error::JumpOutsideUnitInterval(j.c));
            }
            if !pieces.iter().any(|p| p.hi == j.c) {
                return Err(Error::InvalidPotential(format!(
                    "jump at {} is not a piece boundary",
                    j.c
                )));
            }
        }

        let mut kept = Vec::with_capacity(jumps.len());
        for j in jumps {
            let i = pieces.iter().position(|p| p.hi == j.c).unwrap();
            let left = pieces[i].expr.eval(j.c);
            let right = pieces[i + 1].expr.eval(j.c);
            if !left.is_finite() || !right.is_finite() {
                return Err(Error::InvalidPotential(format!(
                    "one-sided limits at jump {} are not finite",
                    j.c
                )));
            }
            if (left - right).abs() > JUMP_THRESHOLD {
                kept.push(j);
            }
        }
        for w in pieces.windows(2) {
            let b = w[0].hi;
            if kept.iter().any(|j| j.c == b) {
                continue;
            }
            let left = w[0].expr.eval(b);
            let right = w[1].expr.eval(b);
            if !((left - right).abs() <= JUMP_THRESHOLD) {
                return Err(Error::InvalidPotential(format!(
                    "discontinuity at x={b} ({left} vs {right}) without a jump declaration"
                )));
            }
        }

        for p in &pieces {
            for (i, x) in sample_grid(p.lo, p.hi, FLOOR_SAMPLES).enumerate() {
                let v = p.expr.eval(x);
                if !v.is_finite() {
                    return Err(Error::InvalidPotential(format!(
                        "'{}' is not finite at x={x}",
                        p.expr
                    )));
                }
                let interior = i > 0 && i + 1 < FLOOR_SAMPLES;
                if interior && !p.derivative.eval(x).is_finite() {
                    return Err(Error::InvalidPotential(format!(
                        "derivative of '{}' is not finite at x={x}",
                        p.expr
                    )));
                }
            }
        }

        Ok(Self {
            lo,
            hi,
            pieces,
            jumps: kept,
        })
    }

    /// A single smooth piece on `[lo, hi]`.
    pub fn smooth(expr: Expr, lo: f64, hi: f64) -> Result<Self> {
        Self::new(lo, hi, vec![Piece::new(lo, hi, expr)], Vec::new())
    }

    /// Parse the text format without the `f > 2` floor check.
    pub fn parse(source: &str) -> Result<Self> {
        Ok(parse_source(source)?.0)
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn jumps(&self) -> &[JumpPoint] {
        &self.jumps
    }

    pub fn has_jumps(&self) -> bool {
        !self.jumps.is_empty()
    }

    /// Piece boundaries strictly inside `(a, b)`.
    pub fn breakpoints_in(&self, a: f64, b: f64) -> Vec<f64> {
        self.pieces
            .iter()
            .map(|p| p.hi)
            .filter(|&x| x > a && x < b)
            .collect()
    }

    fn check_domain(&self, x: f64, approach: Approach) -> Result<()> {
        let outside = match approach {
            Approach::At => !(x >= self.lo && x <= self.hi),
            Approach::Left => !(x > self.lo && x <= self.hi),
            Approach::Right => !(x >= self.lo && x < self.hi),
        };
        if outside {
            Err(Error::OutOfDomain {
                x,
                lo: self.lo,
                hi: self.hi,
            })
        } else {
            Ok(())
        }
    }

    /// Index of the piece governing `x` under `approach`.
    fn piece_index(&self, x: f64, approach: Approach) -> Result<usize> {
        self.check_domain(x, approach)?;
        // First piece whose upper end is >= x.
        let first_ge = self.pieces.partition_point(|p| p.hi < x);
        let last = self.pieces.len() - 1;
        let on_boundary = first_ge < last && self.pieces[first_ge].hi == x;
        let idx = match approach {
            Approach::Left => first_ge,
            Approach::Right => {
                if on_boundary {
                    first_ge + 1
                } else {
                    first_ge
                }
            }
            Approach::At => {
                if on_boundary {
                    match self.jumps.iter().find(|j| j.c == x) {
                        Some(JumpPoint {
                            side: Side::Left, ..
                        }) => first_ge,
                        _ => first_ge + 1,
                    }
                } else {
                    first_ge.min(last)
                }
            }
        };
        Ok(idx)
    }

    pub fn eval(&self, x: f64, approach: Approach) -> Result<f64> {
        let i = self.piece_index(x, approach)?;
        Ok(self.pieces[i].expr.eval(x))
    }

    pub fn derivative(&self, x: f64, approach: Approach) -> Result<f64> {
        let i = self.piece_index(x, approach)?;
        Ok(self.pieces[i].derivative.eval(x))
    }

    /// One-sided limits `(f(c-), f(c+))`.
    pub fn one_sided_limits(&self, c: f64) -> Result<(f64, f64)> {
        Ok((self.eval(c, Approach::Left)?, self.eval(c, Approach::Right)?))
    }

    /// Apply `map` to every piece's expression, keeping breakpoints and jumps.
    pub fn map_pieces(&self, map: impl Fn(&Expr) -> Expr) -> Result<Self> {
        let pieces = self
            .pieces
            .iter()
            .map(|p| Piece::new(p.lo, p.hi, map(&p.expr)))
            .collect();
        Self::new(self.lo, self.hi, pieces, self.jumps.clone())
    }

    /// `∫_a^b f`, split at every piece boundary so each panel is smooth.
    pub fn integrate(&self, a: f64, b: f64, quad: &AdaptiveSimpson) -> Result<f64> {
        self.integrate_with(a, b, quad, |v| v)
    }

    /// `∫_a^b h(f(x)) dx`, split at every piece boundary.
    pub fn integrate_with(
        &self,
        a: f64,
        b: f64,
        quad: &AdaptiveSimpson,
        h: impl Fn(f64) -> f64,
    ) -> Result<f64> {
        self.check_domain(a, Approach::At)?;
        self.check_domain(b, Approach::At)?;
        let mut knots = vec![a];
        knots.extend(self.breakpoints_in(a, b));
        knots.push(b);
        let mut total = crate::compensated::CompensatedSum::new();
        let width = b - a;
        for w in knots.windows(2) {
            let i = self.piece_index(0.5 * (w[0] + w[1]), Approach::At)?;
            let expr = &self.pieces[i].expr;
            let panel_quad = AdaptiveSimpson::new(
                quad.abs_tol * (w[1] - w[0]) / width,
                quad.max_depth,
            );
            total.add(panel_quad.integrate(|x| h(expr.eval(x)), w[0], w[1])?);
        }
        Ok(total.value())
    }
}

fn sample_grid(lo: f64, hi: f64, count: usize) -> impl Iterator<Item = f64> {
    let step = (hi - lo) / (count - 1) as f64;
    (0..count).map(move |i| if i + 1 == count { hi } else { lo + step * i as f64 })
}

/// A piecewise function validated to satisfy `f > 2 + floor_margin`.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewisePotential {
    func: PiecewiseFunction,
    floor_margin: f64,
}

impl PiecewisePotential {
    pub fn new(func: PiecewiseFunction, floor_margin: f64) -> Result<Self> {
        if !(floor_margin > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "floor margin must be positive, got {floor_margin}"
            )));
        }
        for p in func.pieces() {
            for x in sample_grid(p.lo, p.hi, FLOOR_SAMPLES) {
                let v = p.expr.eval(x);
                if !(v > 2.0 + floor_margin) {
                    return Err(Error::FloorViolation {
                        x,
                        value: v,
                        margin: floor_margin,
                    });
                }
            }
        }
        Ok(Self { func, floor_margin })
    }

    pub fn parse(source: &str) -> Result<Self> {
        let (func, margin) = parse_source(source)?;
        Self::new(func, margin.unwrap_or(DEFAULT_FLOOR_MARGIN))
    }

    /// A smooth potential given by one expression on the default domain.
    pub fn smooth(expr: &str) -> Result<Self> {
        let expr = Expr::parse(expr)?;
        let (lo, hi) = DEFAULT_DOMAIN;
        Self::new(PiecewiseFunction::smooth(expr, lo, hi)?, DEFAULT_FLOOR_MARGIN)
    }

    pub fn function(&self) -> &PiecewiseFunction {
        &self.func
    }

    pub fn floor_margin(&self) -> f64 {
        self.floor_margin
    }

    pub fn domain(&self) -> (f64, f64) {
        self.func.domain()
    }

    pub fn jumps(&self) -> &[JumpPoint] {
        self.func.jumps()
    }

    pub fn has_jumps(&self) -> bool {
        self.func.has_jumps()
    }

    pub fn eval(&self, x: f64, approach: Approach) -> Result<f64> {
        self.func.eval(x, approach)
    }

    pub fn derivative(&self, x: f64, approach: Approach) -> Result<f64> {
        self.func.derivative(x, approach)
    }

    /// `g(x) = log((f(x) + sqrt(f(x)^2 - 4)) / 2)` as a piecewise function.
    pub fn log_rho(&self) -> Result<PiecewiseFunction> {
        self.func.map_pieces(Expr::log_rho)
    }
}

struct PieceDecl {
    lo: f64,
    hi: f64,
    expr: Expr,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

/// Parse `[a, b]` at the start of `text`; returns the bounds and the
/// remainder after `]`.
fn parse_interval(text: &str, line: usize, col: usize) -> Result<(f64, f64, &str)> {
    let trimmed = text.trim_start();
    let col = col + (text.len() - trimmed.len());
    let Some(body) = trimmed.strip_prefix('[') else {
        return Err(syntax(line, col, "expected '['"));
    };
    let close = body
        .find(']')
        .ok_or_else(|| syntax(line, col, "missing ']'"))?;
    let inner = &body[..close];
    let comma = inner
        .find(',')
        .ok_or_else(|| syntax(line, col + 1, "expected ',' between interval bounds"))?;
    let a = parse_constant_at(&inner[..comma], line, col + 1)?;
    let b = parse_constant_at(&inner[comma + 1..], line, col + 2 + comma)?;
    Ok((a, b, &body[close + 1..]))
}

pub(crate) fn parse_source(source: &str) -> Result<(PiecewiseFunction, Option<f64>)> {
    let mut domain: Option<(f64, f64)> = None;
    let mut pieces: Vec<PieceDecl> = Vec::new();
    let mut jumps: Vec<JumpPoint> = Vec::new();
    let mut margin: Option<f64> = None;

    for (idx, raw) in source.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim_start();
        if trimmed.trim().is_empty() {
            continue;
        }
        let col0 = content.len() - trimmed.len() + 1;
        let keyword_end = trimmed
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(trimmed.len());
        let keyword = &trimmed[..keyword_end];
        let rest = &trimmed[keyword_end..];
        let rest_col = col0 + keyword_end;
        match keyword {
            "domain" => {
                if domain.is_some() {
                    return Err(syntax(line, col0, "duplicate domain line"));
                }
                let (a, b, tail) = parse_interval(rest, line, rest_col)?;
                if !tail.trim().is_empty() {
                    return Err(syntax(line, rest_col, "unexpected text after domain"));
                }
                if !(a < b) {
                    return Err(syntax(line, rest_col, "domain must satisfy lo < hi"));
                }
                domain = Some((a, b));
            }
            "piece" => {
                let (a, b, tail) = parse_interval(rest, line, rest_col)?;
                let tail_col = rest_col + (rest.len() - tail.len());
                let tail_trim = tail.trim_start();
                let Some(expr_src) = tail_trim.strip_prefix(':') else {
                    return Err(syntax(line, tail_col, "expected ':' after piece interval"));
                };
                let expr_col = tail_col + (tail.len() - tail_trim.len()) + 1;
                let expr = parse_at(expr_src, line, expr_col)?;
                pieces.push(PieceDecl { lo: a, hi: b, expr });
            }
            "jump" => {
                let words: Vec<&str> = rest.split_whitespace().collect();
                let at = words.first().copied();
                let side_pos = words.iter().position(|w| *w == "side");
                match (at, side_pos) {
                    (Some("at"), Some(sp)) if sp >= 2 && sp + 2 == words.len() => {
                        let c_src = words[1..sp].join(" ");
                        let c = parse_constant_at(&c_src, line, rest_col)?;
                        let side = match words[sp + 1] {
                            "left" => Side::Left,
                            "right" => Side::Right,
                            other => {
                                return Err(syntax(
                                    line,
                                    rest_col,
                                    format!("side must be 'left' or 'right', got '{other}'"),
                                ))
                            }
                        };
                        jumps.push(JumpPoint { c, side });
                    }
                    _ => {
                        return Err(syntax(
                            line,
                            rest_col,
                            "expected 'jump at <c> side <left|right>'",
                        ))
                    }
                }
            }
            "floor_margin" => {
                margin = Some(parse_constant_at(rest, line, rest_col)?);
            }
            _ => {
                return Err(syntax(
                    line,
                    col0,
                    format!("unknown directive '{keyword}'"),
                ))
            }
        }
    }

    if pieces.is_empty() {
        return Err(syntax(1, 1, "at least one 'piece' line is required"));
    }
    pieces.sort_by(|a, b| a.lo.total_cmp(&b.lo));
    let (lo, hi) = match domain {
        Some(d) => d,
        None => {
            let first = pieces[0].lo;
            let last = pieces[pieces.len() - 1].hi;
            let lo = first.min(DEFAULT_DOMAIN.0);
            let hi = last.max(DEFAULT_DOMAIN.1);
            pieces[0].lo = lo;
            let n = pieces.len();
            pieces[n - 1].hi = hi;
            (lo, hi)
        }
    };
    let pieces = pieces
        .into_iter()
        .map(|d| Piece::new(d.lo, d.hi, d.expr))
        .collect();
    Ok((PiecewiseFunction::new(lo, hi, pieces, jumps)?, margin))
}
