//! Expression trees for one smooth piece of a potential.
//!
//! The grammar is small: decimal literals, the variable `x`, the constant
//! `pi`, the binary operators `+ - * / ^`, unary minus, parentheses and the
//! functions `sin cos sqrt exp log`. The exponent of `^` must be a numeric
//! literal (optionally negated), which keeps differentiation total.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Func {
    Sin,
    Cos,
    Sqrt,
    Exp,
    Log,
}

impl Func {
    fn from_name(name: &str) -> Option<Func> {
        match name {
            "sin" => Some(Func::Sin),
            "cos" => Some(Func::Cos),
            "sqrt" => Some(Func::Sqrt),
            "exp" => Some(Func::Exp),
            "log" => Some(Func::Log),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Sqrt => "sqrt",
            Func::Exp => "exp",
            Func::Log => "log",
        }
    }

    fn apply(self, v: f64) -> f64 {
        match self {
            Func::Sin => v.sin(),
            Func::Cos => v.cos(),
            Func::Sqrt => v.sqrt(),
            Func::Exp => v.exp(),
            Func::Log => v.ln(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    X,
    Pi,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, f64),
    Call(Func, Box<Expr>),
}

impl Expr {
    pub fn parse(source: &str) -> Result<Expr> {
        parse_at(source, 1, 1)
    }

    pub fn eval(&self, x: f64) -> f64 {
        match self {
            Expr::Num(v) => *v,
            Expr::X => x,
            Expr::Pi => std::f64::consts::PI,
            Expr::Neg(a) => -a.eval(x),
            Expr::Add(a, b) => a.eval(x) + b.eval(x),
            Expr::Sub(a, b) => a.eval(x) - b.eval(x),
            Expr::Mul(a, b) => a.eval(x) * b.eval(x),
            Expr::Div(a, b) => a.eval(x) / b.eval(x),
            Expr::Pow(a, p) => {
                let base = a.eval(x);
                if p.fract() == 0.0 && p.abs() <= i32::MAX as f64 {
                    base.powi(*p as i32)
                } else {
                    base.powf(*p)
                }
            }
            Expr::Call(f, a) => f.apply(a.eval(x)),
        }
    }

    /// True when the tree does not mention `x`.
    pub fn is_constant(&self) -> bool {
        match self {
            Expr::Num(_) | Expr::Pi => true,
            Expr::X => false,
            Expr::Neg(a) | Expr::Pow(a, _) | Expr::Call(_, a) => a.is_constant(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.is_constant() && b.is_constant()
            }
        }
    }

    /// Symbolic derivative with respect to `x`.
    pub fn derivative(&self) -> Expr {
        match self {
            Expr::Num(_) | Expr::Pi => Expr::Num(0.0),
            Expr::X => Expr::Num(1.0),
            Expr::Neg(a) => neg(a.derivative()),
            Expr::Add(a, b) => add(a.derivative(), b.derivative()),
            Expr::Sub(a, b) => sub(a.derivative(), b.derivative()),
            Expr::Mul(a, b) => add(
                mul(a.derivative(), (**b).clone()),
                mul((**a).clone(), b.derivative()),
            ),
            Expr::Div(a, b) if b.is_constant() => div(a.derivative(), (**b).clone()),
            Expr::Div(a, b) => div(
                sub(
                    mul(a.derivative(), (**b).clone()),
                    mul((**a).clone(), b.derivative()),
                ),
                pow((**b).clone(), 2.0),
            ),
            Expr::Pow(a, p) => mul(
                mul(Expr::Num(*p), pow((**a).clone(), p - 1.0)),
                a.derivative(),
            ),
            Expr::Call(f, a) => {
                let inner = (**a).clone();
                let outer = match f {
                    Func::Sin => call(Func::Cos, inner),
                    Func::Cos => neg(call(Func::Sin, inner)),
                    Func::Sqrt => div(Expr::Num(1.0), mul(Expr::Num(2.0), call(Func::Sqrt, inner))),
                    Func::Exp => call(Func::Exp, inner),
                    Func::Log => div(Expr::Num(1.0), inner),
                };
                mul(outer, a.derivative())
            }
        }
    }

    /// Substitute `inner` for every occurrence of `x`.
    pub fn compose(&self, inner: &Expr) -> Expr {
        match self {
            Expr::X => inner.clone(),
            Expr::Num(_) | Expr::Pi => self.clone(),
            Expr::Neg(a) => Expr::Neg(Box::new(a.compose(inner))),
            Expr::Add(a, b) => Expr::Add(Box::new(a.compose(inner)), Box::new(b.compose(inner))),
            Expr::Sub(a, b) => Expr::Sub(Box::new(a.compose(inner)), Box::new(b.compose(inner))),
            Expr::Mul(a, b) => Expr::Mul(Box::new(a.compose(inner)), Box::new(b.compose(inner))),
            Expr::Div(a, b) => Expr::Div(Box::new(a.compose(inner)), Box::new(b.compose(inner))),
            Expr::Pow(a, p) => Expr::Pow(Box::new(a.compose(inner)), *p),
            Expr::Call(f, a) => Expr::Call(*f, Box::new(a.compose(inner))),
        }
    }

    /// `log((v + sqrt(v^2 - 4)) / 2)` with `v` replaced by this expression.
    pub fn log_rho(&self) -> Expr {
        let v = || self.clone();
        call(
            Func::Log,
            div(
                add(v(), call(Func::Sqrt, sub(pow(v(), 2.0), Expr::Num(4.0)))),
                Expr::Num(2.0),
            ),
        )
    }
}

fn is_num(e: &Expr, v: f64) -> bool {
    matches!(e, Expr::Num(w) if *w == v)
}

// Smart constructors folding the identities that differentiation produces.

fn neg(a: Expr) -> Expr {
    match a {
        Expr::Num(v) => Expr::Num(-v),
        Expr::Neg(inner) => *inner,
        other => Expr::Neg(Box::new(other)),
    }
}

fn add(a: Expr, b: Expr) -> Expr {
    if is_num(&a, 0.0) {
        b
    } else if is_num(&b, 0.0) {
        a
    } else {
        Expr::Add(Box::new(a), Box::new(b))
    }
}

fn sub(a: Expr, b: Expr) -> Expr {
    if is_num(&b, 0.0) {
        a
    } else if is_num(&a, 0.0) {
        neg(b)
    } else {
        Expr::Sub(Box::new(a), Box::new(b))
    }
}

fn mul(a: Expr, b: Expr) -> Expr {
    if is_num(&a, 0.0) || is_num(&b, 0.0) {
        Expr::Num(0.0)
    } else if is_num(&a, 1.0) {
        b
    } else if is_num(&b, 1.0) {
        a
    } else if let (Expr::Num(u), Expr::Num(v)) = (&a, &b) {
        Expr::Num(u * v)
    } else {
        Expr::Mul(Box::new(a), Box::new(b))
    }
}

fn div(a: Expr, b: Expr) -> Expr {
    if is_num(&a, 0.0) {
        Expr::Num(0.0)
    } else if is_num(&b, 1.0) {
        a
    } else {
        Expr::Div(Box::new(a), Box::new(b))
    }
}

fn pow(a: Expr, p: f64) -> Expr {
    if p == 0.0 {
        Expr::Num(1.0)
    } else if p == 1.0 {
        a
    } else {
        Expr::Pow(Box::new(a), p)
    }
}

fn call(f: Func, a: Expr) -> Expr {
    Expr::Call(f, Box::new(a))
}

/// Fully parenthesized rendering; reparses to an equal tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(v) => write!(f, "{v:?}"),
            Expr::X => write!(f, "x"),
            Expr::Pi => write!(f, "pi"),
            Expr::Neg(a) => write!(f, "(-{a})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "({a} * {b})"),
            Expr::Div(a, b) => write!(f, "({a} / {b})"),
            Expr::Pow(a, p) => write!(f, "({a} ^ {p:?})"),
            Expr::Call(func, a) => write!(f, "{}({a})", func.name()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Op(char),
    LParen,
    RParen,
    End,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    column: usize,
}

fn tokenize(source: &str, line: usize, col0: usize) -> Result<Vec<Token>> {
    let chars: Vec<char> = source.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = col0 + i;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                let mut j = i + 1;
                if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                    j += 1;
                }
                if j < chars.len() && chars[j].is_ascii_digit() {
                    while j < chars.len() && chars[j].is_ascii_digit() {
                        j += 1;
                    }
                    i = j;
                }
            }
            let text: String = chars[start..i].iter().collect();
            let value = text.parse::<f64>().map_err(|_| Error::Syntax {
                line,
                column,
                message: format!("malformed number '{text}'"),
            })?;
            out.push(Token {
                tok: Tok::Num(value),
                column,
            });
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                column,
            });
            continue;
        }
        let tok = match c {
            '+' | '-' | '*' | '/' | '^' => Tok::Op(c),
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            _ => {
                return Err(Error::Syntax {
                    line,
                    column,
                    message: format!("unexpected character '{c}'"),
                })
            }
        };
        out.push(Token { tok, column });
        i += 1;
    }
    out.push(Token {
        tok: Tok::End,
        column: col0 + chars.len(),
    });
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    line: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            line: self.line,
            column: self.tokens[self.pos].column,
            message: message.into(),
        })
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.error(format!("expected {what}"))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Op('+') => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Op('-') => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Tok::Op('*') => {
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Tok::Op('/') => {
                    self.bump();
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if *self.peek() == Tok::Op('-') {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if *self.peek() == Tok::Op('^') {
            self.bump();
            let exponent = self.exponent()?;
            return Ok(Expr::Pow(Box::new(base), exponent));
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<f64> {
        let parenthesized = *self.peek() == Tok::LParen;
        if parenthesized {
            self.bump();
        }
        let negative = *self.peek() == Tok::Op('-');
        if negative {
            self.bump();
        }
        let value = match self.peek().clone() {
            Tok::Num(v) => {
                self.bump();
                v
            }
            _ => return self.error("exponent must be a numeric literal"),
        };
        if parenthesized {
            self.expect(Tok::RParen, "')'")?;
        }
        Ok(if negative { -value } else { value })
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().clone() {
            Tok::Num(v) => {
                self.bump();
                Ok(Expr::Num(v))
            }
            Tok::Ident(name) => {
                if name == "x" {
                    self.bump();
                    return Ok(Expr::X);
                }
                if name == "pi" {
                    self.bump();
                    return Ok(Expr::Pi);
                }
                match Func::from_name(&name) {
                    Some(func) => {
                        self.bump();
                        self.expect(Tok::LParen, &format!("'(' after {name}"))?;
                        let arg = self.expr()?;
                        self.expect(Tok::RParen, "')'")?;
                        Ok(Expr::Call(func, Box::new(arg)))
                    }
                    None => self.error(format!("unknown identifier '{name}'")),
                }
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            Tok::End => self.error("unexpected end of expression"),
            Tok::RParen => self.error("unexpected ')'"),
            Tok::Op(c) => self.error(format!("unexpected operator '{c}'")),
        }
    }
}

/// Parse `source`, reporting positions as if it started at `line`:`column`.
pub(crate) fn parse_at(source: &str, line: usize, column: usize) -> Result<Expr> {
    let tokens = tokenize(source, line, column)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        line,
    };
    let expr = parser.expr()?;
    if *parser.peek() != Tok::End {
        return parser.error("unexpected trailing input");
    }
    Ok(expr)
}

/// Parse a constant expression such as `1/pi` or `0.9 - 1/pi`.
pub(crate) fn parse_constant_at(source: &str, line: usize, column: usize) -> Result<f64> {
    let expr = parse_at(source, line, column)?;
    if !expr.is_constant() {
        return Err(Error::Syntax {
            line,
            column,
            message: format!("'{}' must be a constant expression", source.trim()),
        });
    }
    let v = expr.eval(0.0);
    if !v.is_finite() {
        return Err(Error::Syntax {
            line,
            column,
            message: format!("'{}' is not finite", source.trim()),
        });
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence_and_unary_minus() {
        let e = Expr::parse("-x^2 + 3*x - 1/2").unwrap();
        assert_eq!(e.eval(2.0), -4.0 + 6.0 - 0.5);
        let e = Expr::parse("2^-1").unwrap();
        assert_eq!(e.eval(0.0), 0.5);
        let e = Expr::parse("(x+1)^(-2)").unwrap();
        assert_eq!(e.eval(1.0), 0.25);
    }

    #[test]
    fn left_associative_subtraction_and_division() {
        assert_eq!(Expr::parse("8 - 4 - 2").unwrap().eval(0.0), 2.0);
        assert_eq!(Expr::parse("8 / 4 / 2").unwrap().eval(0.0), 1.0);
    }

    #[test]
    fn smooth_branch_of_jump_potential() {
        let e = Expr::parse("3.3+x^2/2 + sin(3 * x)").unwrap();
        let x = 0.5f64;
        assert_eq!(e.eval(x), 3.3 + 0.125 + (1.5f64).sin());
    }

    #[test]
    fn exponent_notation_and_pi() {
        assert_eq!(Expr::parse("1.5e-3").unwrap().eval(0.0), 1.5e-3);
        assert_eq!(Expr::parse("1/pi").unwrap().eval(0.0), 1.0 / std::f64::consts::PI);
    }

    #[test]
    fn syntax_errors_carry_position() {
        match Expr::parse("3 + * x") {
            Err(Error::Syntax { column, .. }) => assert_eq!(column, 5),
            other => panic!("unexpected {other:?}"),
        }
        assert!(Expr::parse("x ^ x").is_err());
        assert!(Expr::parse("tan(x)").is_err());
        assert!(Expr::parse("(x + 1").is_err());
        assert!(Expr::parse("x $ 2").is_err());
        assert!(Expr::parse("").is_err());
    }

    #[test]
    fn derivative_of_smooth_branch_at_zero() {
        let e = Expr::parse("3.3+x^2/2+sin(3*x)").unwrap();
        assert!((e.derivative().eval(0.0) - 3.0).abs() < 1e-15);
    }

    #[test]
    fn derivative_rules_against_closed_forms() {
        let cases: [(&str, fn(f64) -> f64); 6] = [
            ("sqrt(x)", |x| 0.5 / x.sqrt()),
            ("log(x)", |x| 1.0 / x),
            ("exp(2*x)", |x| 2.0 * (2.0 * x).exp()),
            ("cos(x)^3", |x| -3.0 * x.cos().powi(2) * x.sin()),
            ("1/(x+1)", |x| -1.0 / (x + 1.0).powi(2)),
            ("-x*x", |x| -2.0 * x),
        ];
        for (src, df) in cases {
            let d = Expr::parse(src).unwrap().derivative();
            for x in [0.3, 0.7, 1.1] {
                assert!((d.eval(x) - df(x)).abs() < 1e-13, "{src} at {x}");
            }
        }
    }

    #[test]
    fn derivative_of_constant_is_zero() {
        assert_eq!(Expr::parse("3 + pi").unwrap().derivative(), Expr::Num(0.0));
    }

    #[test]
    fn log_rho_of_constant() {
        let g = Expr::Num(3.0).log_rho();
        let rho = (3.0 + 5f64.sqrt()) / 2.0;
        assert!((g.eval(0.0) - rho.ln()).abs() < 1e-15);
    }

    #[test]
    fn display_reparses() {
        let e = Expr::parse("-x^-2.5 + sin(x)/3 - (pi*x)").unwrap();
        let again = Expr::parse(&e.to_string()).unwrap();
        assert_eq!(e, again);
    }
}
