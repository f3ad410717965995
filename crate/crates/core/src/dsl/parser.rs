//! Hand-rolled lexer and recursive-descent parser with source positions.

use crate::error::{Error, Result};
use crate::mocktheta::MockTheta;
use crate::number::{exp, exp_int, Exp, GRat};
use crate::qproducts::MonomialParam;

use super::ast::{Bound, Expr, Func, SumBound};

#[derive(Clone, PartialEq, Debug)]
enum Tok {
    Int(i64),
    Name(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    Semi,
    Eq,
    DotDot,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: u32,
    col: u32,
}

fn lex(text: &str) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    let mut line = 1u32;
    let mut col = 1u32;
    let mut it = text.chars().peekable();
    while let Some(&c) = it.peek() {
        let (l, co) = (line, col);
        let mut push = |tok: Tok| out.push(Spanned { tok, line: l, col: co });
        match c {
            '\n' => {
                it.next();
                line += 1;
                col = 1;
            }
            ' ' | '\t' | '\r' => {
                it.next();
                col += 1;
            }
            '#' => {
                while let Some(&c2) = it.peek() {
                    if c2 == '\n' {
                        break;
                    }
                    it.next();
                }
            }
            '0'..='9' => {
                let mut v: i64 = 0;
                while let Some(&d) = it.peek() {
                    if let Some(dig) = d.to_digit(10) {
                        v = v
                            .checked_mul(10)
                            .and_then(|x| x.checked_add(dig as i64))
                            .ok_or_else(|| Error::SyntaxError {
                                line,
                                col,
                                msg: "integer literal overflows".into(),
                            })?;
                        it.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                push(Tok::Int(v));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut name = String::new();
                while let Some(&d) = it.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        name.push(d);
                        it.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                push(Tok::Name(name));
            }
            '.' => {
                it.next();
                col += 1;
                if it.peek() == Some(&'.') {
                    it.next();
                    col += 1;
                    push(Tok::DotDot);
                } else {
                    return Err(Error::SyntaxError { line, col: co, msg: "stray '.'".into() });
                }
            }
            _ => {
                let tok = match c {
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' => Tok::Star,
                    '/' => Tok::Slash,
                    '^' => Tok::Caret,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    ',' => Tok::Comma,
                    ';' => Tok::Semi,
                    '=' => Tok::Eq,
                    other => {
                        return Err(Error::SyntaxError {
                            line,
                            col,
                            msg: format!("unexpected character {other:?}"),
                        })
                    }
                };
                it.next();
                col += 1;
                push(tok);
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn here(&self) -> (u32, u32) {
        self.toks
            .get(self.pos.min(self.toks.len().saturating_sub(1)))
            .map(|s| (s.line, s.col))
            .unwrap_or((1, 1))
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        let (line, col) = self.here();
        Error::SyntaxError { line, col, msg: msg.into() }
    }

    fn advance(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|s| s.tok.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, want: &Tok, what: &str) -> Result<()> {
        if self.peek() == Some(want) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected {what}")))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    lhs = Expr::Add(lhs.boxed(), rhs.boxed());
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    lhs = Expr::Sub(lhs.boxed(), rhs.boxed());
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    lhs = Expr::Mul(lhs.boxed(), rhs.boxed());
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    lhs = fold_div(lhs, rhs);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            let inner = self.unary()?;
            return Ok(fold_neg(inner));
        }
        self.pow()
    }

    fn pow(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            let e = self.pexp()?;
            return Ok(Expr::Pow(base.boxed(), e.boxed()));
        }
        Ok(base)
    }

    /// Exponent position: signed integer, variable, or parenthesized expr.
    fn pexp(&mut self) -> Result<Expr> {
        match self.peek().cloned() {
            Some(Tok::Minus) => {
                self.pos += 1;
                match self.advance() {
                    Some(Tok::Int(n)) => Ok(Expr::Num(exp_int(-n))),
                    _ => Err(self.err("expected integer after '-' in exponent")),
                }
            }
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(Expr::Num(exp_int(n)))
            }
            Some(Tok::Name(v)) => {
                self.pos += 1;
                Ok(Expr::Var(v))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                self.eat(&Tok::RParen, "')'")?;
                Ok(e)
            }
            _ => Err(self.err("expected exponent")),
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(Expr::Num(exp_int(n)))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                self.eat(&Tok::RParen, "')'")?;
                Ok(e)
            }
            Some(Tok::Name(name)) => {
                self.pos += 1;
                if self.peek() == Some(&Tok::LParen) {
                    self.pos += 1;
                    return self.call(&name);
                }
                match name.as_str() {
                    "q" => Ok(Expr::Q),
                    "i" => Ok(Expr::ImagUnit),
                    "inf" => Err(self.err("'inf' is only valid as a bound")),
                    _ => Ok(Expr::Var(name)),
                }
            }
            _ => Err(self.err("expected an expression")),
        }
    }

    /// Comma-separated expressions up to (not consuming) ';' or ')'.
    fn expr_list(&mut self) -> Result<Vec<Expr>> {
        let mut items = vec![self.expr()?];
        while self.peek() == Some(&Tok::Comma) {
            self.pos += 1;
            items.push(self.expr()?);
        }
        Ok(items)
    }

    fn bound(&mut self) -> Result<Bound> {
        match self.peek().cloned() {
            Some(Tok::Name(n)) if n == "inf" => {
                self.pos += 1;
                Ok(Bound::Inf)
            }
            Some(Tok::Name(v)) => {
                self.pos += 1;
                Ok(Bound::Expr(Expr::Var(v).boxed()))
            }
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(Bound::Int(n))
            }
            Some(Tok::Minus) => {
                self.pos += 1;
                match self.advance() {
                    Some(Tok::Int(n)) => Ok(Bound::Int(-n)),
                    _ => Err(self.err("expected integer after '-' in bound")),
                }
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                self.eat(&Tok::RParen, "')'")?;
                Ok(Bound::Expr(e.boxed()))
            }
            _ => Err(self.err("expected a bound")),
        }
    }

    fn sum_bound(&mut self) -> Result<SumBound> {
        match self.advance() {
            Some(Tok::Int(n)) => Ok(SumBound::Int(n)),
            Some(Tok::Minus) => match self.advance() {
                Some(Tok::Int(n)) => Ok(SumBound::Int(-n)),
                Some(Tok::Name(n)) if n == "inf" => Ok(SumBound::NegInf),
                _ => Err(self.err("expected integer or 'inf' after '-'")),
            },
            Some(Tok::Name(n)) if n == "inf" => Ok(SumBound::Inf),
            _ => Err(self.err("expected a sum bound")),
        }
    }

    fn int_arg(&mut self, name: &str) -> Result<i64> {
        match self.advance() {
            Some(Tok::Int(n)) => Ok(n),
            Some(Tok::Minus) => match self.advance() {
                Some(Tok::Int(n)) => Ok(-n),
                _ => Err(self.err(format!("{name} expects integer arguments"))),
            },
            _ => Err(self.err(format!("{name} expects integer arguments"))),
        }
    }

    fn arity_err(&self, name: &str, expected: &str, got: usize) -> Error {
        let (line, col) = self.here();
        Error::ArityError { name: name.to_string(), expected: expected.into(), got, line, col }
    }

    /// Number of top-level ';'-separated segments between the already
    /// consumed '(' and its matching ')'.
    fn count_segments(&self) -> usize {
        let mut depth = 0usize;
        let mut semis = 0usize;
        for s in &self.toks[self.pos..] {
            match s.tok {
                Tok::LParen => depth += 1,
                Tok::RParen => {
                    if depth == 0 {
                        return semis + 1;
                    }
                    depth -= 1;
                }
                Tok::Semi if depth == 0 => semis += 1,
                _ => {}
            }
        }
        semis + 1
    }

    fn check_segments(&self, name: &str, signature: &str, want: &[usize]) -> Result<()> {
        let got = self.count_segments();
        if want.contains(&got) {
            Ok(())
        } else {
            Err(self.arity_err(name, signature, got))
        }
    }

    /// Parse a call after `NAME (` has been consumed.
    fn call(&mut self, name: &str) -> Result<Expr> {
        match name {
            "poch" => {
                self.check_segments("poch", "poch(a_1,...,a_k; base; bound)", &[3])?;
                let params = self.expr_list()?;
                self.eat(&Tok::Semi, "';' after pochhammer parameters")?;
                let base = self.expr()?;
                self.eat(&Tok::Semi, "';' after pochhammer base")?;
                let bound = self.bound()?;
                self.eat(&Tok::RParen, "')'")?;
                Ok(Expr::Poch { params, base: base.boxed(), bound })
            }
            "prod" => {
                self.check_segments("prod", "prod(a_1,...,a_k; base)", &[2])?;
                let params = self.expr_list()?;
                self.eat(&Tok::Semi, "';' after product parameters")?;
                let base = self.expr()?;
                self.eat(&Tok::RParen, "')'")?;
                Ok(Expr::ProdInf { params, base: base.boxed() })
            }
            "sum" => {
                let var = match self.advance() {
                    Some(Tok::Name(v)) => v,
                    _ => return Err(self.err("sum expects an index variable")),
                };
                self.eat(&Tok::Eq, "'='")?;
                let lo = self.sum_bound()?;
                self.eat(&Tok::DotDot, "'..'")?;
                let hi = self.sum_bound()?;
                self.eat(&Tok::Comma, "','")?;
                let body = self.expr()?;
                self.eat(&Tok::RParen, "')'")?;
                Ok(Expr::Sum { var, lo, hi, body: body.boxed() })
            }
            "jtp" => {
                // jtp(z=expr) or jtp(expr): macro-expand to the triple
                // product (zq, q/z, q^2; q^2)_∞.
                if let (Some(Tok::Name(n)), Some(Tok::Eq)) =
                    (self.peek().cloned(), self.toks.get(self.pos + 1).map(|s| s.tok.clone()))
                {
                    if n == "z" {
                        self.pos += 2;
                    }
                }
                let z = self.expr()?;
                self.eat(&Tok::RParen, "')'")?;
                let q2 = Expr::Pow(Expr::Q.boxed(), Expr::Num(exp_int(2)).boxed());
                Ok(Expr::ProdInf {
                    params: vec![
                        Expr::Mul(z.clone().boxed(), Expr::Q.boxed()),
                        Expr::Div(Expr::Q.boxed(), z.boxed()),
                        q2.clone(),
                    ],
                    base: q2.boxed(),
                })
            }
            "j" => {
                self.check_segments("j", "j(x; base)", &[2])?;
                let x = self.expr()?;
                self.eat(&Tok::Semi, "';' in j(x; base)")?;
                let base = self.expr()?;
                self.eat(&Tok::RParen, "')'")?;
                Ok(Expr::Call(Func::JBlock { x: x.boxed(), base: base.boxed() }))
            }
            "J" | "Jbar" => {
                let a = self.int_arg(name)?;
                self.eat(&Tok::Comma, "','")?;
                let m = self.int_arg(name)?;
                self.eat(&Tok::RParen, "')'")?;
                Ok(Expr::Call(if name == "J" { Func::JSub { a, m } } else { Func::JBar { a, m } }))
            }
            "Jm" => {
                let m = self.int_arg(name)?;
                self.eat(&Tok::RParen, "')'")?;
                Ok(Expr::Call(Func::JM { m }))
            }
            "m" => {
                self.check_segments("m", "m(x; z) or m(x; z; base)", &[2, 3])?;
                let x = self.expr()?;
                self.eat(&Tok::Semi, "';' in m(x; z)")?;
                let z = self.expr()?;
                let base = if self.peek() == Some(&Tok::Semi) {
                    self.pos += 1;
                    Some(self.expr()?.boxed())
                } else {
                    None
                };
                self.eat(&Tok::RParen, "')'")?;
                Ok(Expr::Call(Func::AppellM { x: x.boxed(), z: z.boxed(), base }))
            }
            "g2" | "g3" => {
                self.check_segments(name, "g(x) or g(x; base)", &[1, 2])?;
                let x = self.expr()?;
                let base = if self.peek() == Some(&Tok::Semi) {
                    self.pos += 1;
                    Some(self.expr()?.boxed())
                } else {
                    None
                };
                self.eat(&Tok::RParen, "')'")?;
                let x = x.boxed();
                Ok(Expr::Call(if name == "g2" { Func::G2 { x, base } } else { Func::G3 { x, base } }))
            }
            other => {
                if let Some(id) = MockTheta::from_name(other) {
                    let args = self.expr_list()?;
                    if args.len() != 1 {
                        return Err(self.arity_err(other, "one monomial argument", args.len()));
                    }
                    self.eat(&Tok::RParen, "')'")?;
                    let arg = args.into_iter().next().unwrap();
                    Ok(Expr::Call(Func::Mock { id, arg: arg.boxed() }))
                } else {
                    Err(self.err(format!("unknown function `{other}`")))
                }
            }
        }
    }
}

/// Fold rational literals so printing and re-parsing is structural:
/// `-`(Num) and Num/Num collapse into a single literal.
fn fold_neg(e: Expr) -> Expr {
    match e {
        Expr::Num(n) => Expr::Num(-n),
        other => Expr::Neg(other.boxed()),
    }
}

fn fold_div(a: Expr, b: Expr) -> Expr {
    match (&a, &b) {
        (Expr::Num(x), Expr::Num(y)) if *y != exp_int(0) && x.is_integer() && y.is_integer() => {
            Expr::Num(*x / *y)
        }
        _ => Expr::Div(a.boxed(), b.boxed()),
    }
}

/// Parse a complete expression (the whole input must be consumed).
pub fn parse(text: &str) -> Result<Expr> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0 };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input after expression"));
    }
    Ok(e)
}

/// Parse a tuple binding value of the form `unit*q^exp`, `unit`, `q^exp`,
/// `q`, `-q`, `i*q^1/2`, ... into a monomial parameter.
pub fn parse_monomial(text: &str) -> Result<MonomialParam> {
    let t = text.trim();
    let (neg, t) = match t.strip_prefix('-') {
        Some(rest) => (true, rest.trim()),
        None => (false, t),
    };
    let (unit_str, qpart) = match t.find('q') {
        Some(i) => {
            let head = t[..i].trim().trim_end_matches('*').trim();
            (head, Some(t[i..].trim()))
        }
        None => (t, None),
    };
    let mut unit = if unit_str.is_empty() {
        GRat::one()
    } else if unit_str == "i" {
        GRat::i()
    } else if let Some((n, d)) = unit_str.split_once('/') {
        let n: i64 = n.trim().parse().map_err(|_| bad(text))?;
        let d: i64 = d.trim().parse().map_err(|_| bad(text))?;
        GRat::from_frac(n, d)
    } else {
        let n: i64 = unit_str.parse().map_err(|_| bad(text))?;
        GRat::from_int(n)
    };
    if neg {
        unit = -unit;
    }
    if unit.is_zero() {
        return Err(bad(text));
    }
    let e = match qpart {
        None => exp_int(0),
        Some("q") => exp_int(1),
        Some(rest) => {
            let rest = rest.strip_prefix('q').ok_or_else(|| bad(text))?;
            let rest = rest.trim().strip_prefix('^').ok_or_else(|| bad(text))?.trim();
            let (neg_e, rest) = match rest.strip_prefix('-') {
                Some(r) => (true, r),
                None => (false, rest),
            };
            let val: Exp = if let Some((n, d)) = rest.split_once('/') {
                let n: i64 = n.trim().parse().map_err(|_| bad(text))?;
                let d: i64 = d.trim().parse().map_err(|_| bad(text))?;
                exp(n, d)
            } else {
                exp_int(rest.parse().map_err(|_| bad(text))?)
            };
            if neg_e {
                -val
            } else {
                val
            }
        }
    };
    Ok(MonomialParam::new(unit, e))
}

fn bad(text: &str) -> Error {
    Error::SyntaxError { line: 1, col: 1, msg: format!("malformed monomial `{text}`") }
}
