//! Truncated Laurent series in `q` over the Gaussian rationals.
//!
//! A series stores finitely many (exponent, coefficient) pairs plus a
//! truncation order `N`: every coefficient with exponent `< N` is exact, and
//! nothing is known at or beyond `N`. Exponents are exact rationals (integer
//! multiples of `1/denom_hint`), so substitutions like `q -> q^{1/2}` stay
//! exact. Values are immutable after construction; all operations are pure.

mod arithmetic;
mod cesaro;

pub use cesaro::{cesaro_sum, default_cesaro_cap, CesaroValue};

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::number::{exp_int, fmt_exp, Exp, GRat};

#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    /// Nonzero coefficients, keyed by exponent, all strictly below `order`.
    terms: BTreeMap<Exp, GRat>,
    /// Truncation order: coefficients below this exponent are exact.
    order: Exp,
    /// Positive integer D with every stored exponent a multiple of 1/D.
    denom_hint: i64,
}

impl TruncatedSeries {
    pub fn zero(order: Exp) -> Self {
        TruncatedSeries { terms: BTreeMap::new(), order, denom_hint: order.denom().abs().max(1) }
    }

    pub fn one(order: Exp) -> Self {
        Self::monomial(GRat::one(), exp_int(0), order)
    }

    pub fn constant(c: GRat, order: Exp) -> Self {
        Self::monomial(c, exp_int(0), order)
    }

    /// The single term `c·q^e`, truncated at `order`.
    pub fn monomial(c: GRat, e: Exp, order: Exp) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() && e < order {
            terms.insert(e, c);
        }
        let mut s = TruncatedSeries { terms, order, denom_hint: 1 };
        s.recompute_hint();
        s
    }

    /// `q^e` truncated at `order`.
    pub fn q_pow(e: Exp, order: Exp) -> Self {
        Self::monomial(GRat::one(), e, order)
    }

    pub fn from_terms(pairs: impl IntoIterator<Item = (Exp, GRat)>, order: Exp) -> Self {
        let mut terms: BTreeMap<Exp, GRat> = BTreeMap::new();
        for (e, c) in pairs {
            if e >= order || c.is_zero() {
                continue;
            }
            let entry = terms.entry(e).or_insert_with(GRat::zero);
            *entry = &*entry + &c;
        }
        terms.retain(|_, c| !c.is_zero());
        let mut s = TruncatedSeries { terms, order, denom_hint: 1 };
        s.recompute_hint();
        s
    }

    fn recompute_hint(&mut self) {
        let mut d: i64 = self.order.denom().abs().max(1);
        for e in self.terms.keys() {
            d = d.lcm(e.denom());
        }
        self.denom_hint = d;
    }

    pub fn order(&self) -> Exp {
        self.order
    }

    pub fn denom_hint(&self) -> i64 {
        self.denom_hint
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &GRat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// True when no nonzero coefficient is known below the order.
    pub fn is_zero_series(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lowest exponent with a nonzero coefficient, if any.
    pub fn valuation(&self) -> Option<Exp> {
        self.terms.keys().next().copied()
    }

    /// Valuation for order bookkeeping: the order itself for a zero series
    /// (pessimistic: a zero series is `O(q^order)`).
    pub(crate) fn val_or_order(&self) -> Exp {
        self.valuation().unwrap_or(self.order)
    }

    /// Exact coefficient of `q^e`; zero if absent. Errors beyond the order.
    pub fn coefficient(&self, e: Exp) -> Result<GRat> {
        if e >= self.order {
            return Err(Error::BeyondTruncation { exponent: e, order: self.order });
        }
        Ok(self.terms.get(&e).cloned().unwrap_or_else(GRat::zero))
    }

    /// Coefficient lookup without the order check (internal use).
    pub(crate) fn coeff_at(&self, e: Exp) -> GRat {
        self.terms.get(&e).cloned().unwrap_or_else(GRat::zero)
    }

    /// Reinterpret this series as exact below `order`, keeping the stored
    /// terms. Only valid when the caller knows every coefficient between the
    /// old and new order to be exactly zero (e.g. Newton iterates, which are
    /// polynomials whose correctness window outruns the pessimistic
    /// min-rule bookkeeping).
    pub(crate) fn reinterpret_order(&self, order: Exp) -> Self {
        if order <= self.order {
            return self.truncate(order);
        }
        let mut s = TruncatedSeries { terms: self.terms.clone(), order, denom_hint: 1 };
        s.recompute_hint();
        s
    }

    /// Restrict to a lower truncation order (dropping terms beyond it).
    pub fn truncate(&self, order: Exp) -> Self {
        let order = order.min(self.order);
        let terms = self.terms.range(..order).map(|(e, c)| (*e, c.clone())).collect();
        let mut s = TruncatedSeries { terms, order, denom_hint: 1 };
        s.recompute_hint();
        s
    }

    /// First exponent below `bound` where the two series differ, with both
    /// coefficients. `None` means exact agreement below `bound`.
    ///
    /// Both series must be exact below `bound`.
    pub fn first_mismatch(&self, other: &Self, bound: Exp) -> Option<(Exp, GRat, GRat)> {
        assert!(
            self.order >= bound && other.order >= bound,
            "first_mismatch needs both series exact below the bound"
        );
        let mut exps: Vec<Exp> = self
            .terms
            .range(..bound)
            .map(|(e, _)| *e)
            .chain(other.terms.range(..bound).map(|(e, _)| *e))
            .collect();
        exps.sort();
        exps.dedup();
        for e in exps {
            let a = self.coeff_at(e);
            let b = other.coeff_at(e);
            if a != b {
                return Some((e, a, b));
            }
        }
        None
    }
}

impl fmt::Display for TruncatedSeries {
    /// `q^-1 + 2 - q^2 + 1/2q^3 + O(q^8)`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in &self.terms {
            let (sign, mag) = if c.is_real() && c.re.is_negative() {
                ("-", -c)
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", sign)?;
            }
            let coeff_str = mag.to_string();
            if e.is_zero() {
                write!(f, "{}", coeff_str)?;
            } else {
                let pow = if *e == exp_int(1) { "q".to_string() } else { format!("q^{}", fmt_exp(e)) };
                if mag.is_one() {
                    write!(f, "{}", pow)?;
                } else if coeff_str.contains(['+', '-']) && !coeff_str.starts_with('-') {
                    write!(f, "({}){}", coeff_str, pow)?;
                } else {
                    write!(f, "{}*{}", coeff_str, pow)?;
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", fmt_exp(&self.order))
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
