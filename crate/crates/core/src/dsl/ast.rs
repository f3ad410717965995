//! Expression AST and its canonical printer.

use std::fmt;

use num_traits::Signed;

use crate::mocktheta::MockTheta;
use crate::number::{fmt_exp, Exp};

/// Bound of a Pochhammer symbol.
#[derive(Clone, PartialEq, Debug)]
pub enum Bound {
    Int(i64),
    Inf,
    /// An integer-valued expression (a bare variable or a parenthesized
    /// expression like `2*r+1`).
    Expr(Box<Expr>),
}

/// Bound of a `sum(...)` index.
#[derive(Clone, Copy, PartialEq, Debug)]
pub enum SumBound {
    Int(i64),
    Inf,
    NegInf,
}

/// Named function calls.
#[derive(Clone, PartialEq, Debug)]
pub enum Func {
    /// `j(x; base)` — the theta block `(x, base/x, base; base)_∞`.
    JBlock { x: Box<Expr>, base: Box<Expr> },
    /// `J(a, m)` = `j(q^a; q^m)`.
    JSub { a: i64, m: i64 },
    /// `Jbar(a, m)` = `j(-q^a; q^m)`.
    JBar { a: i64, m: i64 },
    /// `Jm(m)` = `(q^m; q^m)_∞`.
    JM { m: i64 },
    /// `m(x; z)` or `m(x; z; base)` — the Appell-Lerch sum.
    AppellM { x: Box<Expr>, z: Box<Expr>, base: Option<Box<Expr>> },
    /// `g2(x)` / `g2(x; base)`.
    G2 { x: Box<Expr>, base: Option<Box<Expr>> },
    /// `g3(x)` / `g3(x; base)`.
    G3 { x: Box<Expr>, base: Option<Box<Expr>> },
    /// A mock theta builder applied to a monomial argument.
    Mock { id: MockTheta, arg: Box<Expr> },
}

#[derive(Clone, PartialEq, Debug)]
pub enum Expr {
    /// Exact rational literal.
    Num(Exp),
    /// The imaginary unit.
    ImagUnit,
    /// The formal variable `q`.
    Q,
    Var(String),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    /// `base ^ exponent`; the exponent is evaluated numerically.
    Pow(Box<Expr>, Box<Expr>),
    /// `poch(a_1,...,a_k; base; bound)` = `Π_i (a_i; base)_bound`.
    Poch { params: Vec<Expr>, base: Box<Expr>, bound: Bound },
    /// `prod(a_1,...,a_k; base)` = `Π_i (a_i; base)_∞`.
    ProdInf { params: Vec<Expr>, base: Box<Expr> },
    Sum { var: String, lo: SumBound, hi: SumBound, body: Box<Expr> },
    Call(Func),
}

impl Expr {
    pub fn boxed(self) -> Box<Expr> {
        Box::new(self)
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(..) => 3,
            Expr::Num(n) if n.is_negative() => 3,
            Expr::Pow(..) => 4,
            _ => 5,
        }
    }
}

fn paren(f: &mut fmt::Formatter<'_>, e: &Expr, min_prec: u8) -> fmt::Result {
    if e.precedence() < min_prec {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for SumBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SumBound::Int(n) => write!(f, "{n}"),
            SumBound::Inf => write!(f, "inf"),
            SumBound::NegInf => write!(f, "-inf"),
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Int(n) => write!(f, "{n}"),
            Bound::Inf => write!(f, "inf"),
            Bound::Expr(e) => match e.as_ref() {
                Expr::Var(v) => write!(f, "{v}"),
                other => write!(f, "({other})"),
            },
        }
    }
}

fn join(f: &mut fmt::Formatter<'_>, items: &[Expr]) -> fmt::Result {
    for (k, it) in items.iter().enumerate() {
        if k > 0 {
            write!(f, ", ")?;
        }
        write!(f, "{it}")?;
    }
    Ok(())
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            // Negative literals print with a leading minus and re-parse as a
            // folded negation, so round-tripping is structural.
            Expr::Num(r) => write!(f, "{}", fmt_exp(r)),
            Expr::ImagUnit => write!(f, "i"),
            Expr::Q => write!(f, "q"),
            Expr::Var(v) => write!(f, "{v}"),
            Expr::Add(a, b) => {
                paren(f, a, 1)?;
                write!(f, " + ")?;
                paren(f, b, 2)
            }
            Expr::Sub(a, b) => {
                paren(f, a, 1)?;
                write!(f, " - ")?;
                paren(f, b, 2)
            }
            Expr::Mul(a, b) => {
                paren(f, a, 2)?;
                write!(f, "*")?;
                paren(f, b, 3)
            }
            Expr::Div(a, b) => {
                paren(f, a, 2)?;
                write!(f, "/")?;
                paren(f, b, 3)
            }
            Expr::Neg(a) => {
                write!(f, "-")?;
                paren(f, a, 3)
            }
            Expr::Pow(b, e) => {
                paren(f, b, 5)?;
                match e.as_ref() {
                    Expr::Num(n) if n.is_integer() && !n.is_negative() => write!(f, "^{}", n.numer()),
                    Expr::Num(n) if n.is_integer() => write!(f, "^{}", n.numer()),
                    Expr::Var(v) => write!(f, "^{v}"),
                    other => write!(f, "^({other})"),
                }
            }
            Expr::Poch { params, base, bound } => {
                write!(f, "poch(")?;
                join(f, params)?;
                write!(f, "; {base}; {bound})")
            }
            Expr::ProdInf { params, base } => {
                write!(f, "prod(")?;
                join(f, params)?;
                write!(f, "; {base})")
            }
            Expr::Sum { var, lo, hi, body } => write!(f, "sum({var}={lo}..{hi}, {body})"),
            Expr::Call(func) => match func {
                Func::JBlock { x, base } => write!(f, "j({x}; {base})"),
                Func::JSub { a, m } => write!(f, "J({a}, {m})"),
                Func::JBar { a, m } => write!(f, "Jbar({a}, {m})"),
                Func::JM { m } => write!(f, "Jm({m})"),
                Func::AppellM { x, z, base: None } => write!(f, "m({x}; {z})"),
                Func::AppellM { x, z, base: Some(b) } => write!(f, "m({x}; {z}; {b})"),
                Func::G2 { x, base: None } => write!(f, "g2({x})"),
                Func::G2 { x, base: Some(b) } => write!(f, "g2({x}; {b})"),
                Func::G3 { x, base: None } => write!(f, "g3({x})"),
                Func::G3 { x, base: Some(b) } => write!(f, "g3({x}; {b})"),
                Func::Mock { id, arg } => write!(f, "{}({arg})", id.name()),
            },
        }
    }
}
