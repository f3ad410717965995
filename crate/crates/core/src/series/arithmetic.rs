//! Ring operations on truncated Laurent series.
//!
//! Truncation-order bookkeeping is pessimistic: binary operations use
//! `min(a, b)` for addition and the valuation-shifted min rule for
//! multiplication. Repeating a computation with a larger order reproduces all
//! previously known coefficients unchanged.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::TruncatedSeries;
use crate::error::{Error, Result};
use crate::number::{exp_int, Exp, GRat};

impl TruncatedSeries {
    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(e, c)| (*e, -c)).collect();
        TruncatedSeries { terms, order: self.order, denom_hint: self.denom_hint }
    }

    /// Exact sum; result order is `min(a.order, b.order)`.
    pub fn add(&self, rhs: &Self) -> Self {
        let order = self.order.min(rhs.order);
        let mut terms: BTreeMap<Exp, GRat> = self.terms.range(..order).map(|(e, c)| (*e, c.clone())).collect();
        for (e, c) in rhs.terms.range(..order) {
            let entry = terms.entry(*e).or_insert_with(GRat::zero);
            *entry = &*entry + c;
        }
        terms.retain(|_, c| !c.is_zero());
        let mut s = TruncatedSeries { terms, order, denom_hint: 1 };
        s.recompute_hint();
        s
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn scalar_mul(&self, c: &GRat) -> Self {
        if c.is_zero() {
            return TruncatedSeries::zero(self.order);
        }
        let terms = self.terms.iter().map(|(e, k)| (*e, k * c)).collect();
        TruncatedSeries { terms, order: self.order, denom_hint: self.denom_hint }
    }

    /// Multiply by the monomial `c·q^e`; the order shifts by `e`.
    pub fn mul_monomial(&self, c: &GRat, e: Exp) -> Self {
        if c.is_zero() {
            return TruncatedSeries::zero(self.order + e);
        }
        let terms = self.terms.iter().map(|(k, v)| (*k + e, v * c)).collect();
        let mut s = TruncatedSeries { terms, order: self.order + e, denom_hint: 1 };
        s.recompute_hint();
        s
    }

    /// Exact product. Result order is
    /// `min(a.order + val(b), b.order + val(a))`, with a zero factor's
    /// valuation taken as its order.
    pub fn mul(&self, rhs: &Self) -> Self {
        let order = (self.order + rhs.val_or_order()).min(rhs.order + self.val_or_order());
        if self.terms.is_empty() || rhs.terms.is_empty() {
            return TruncatedSeries::zero(order);
        }
        // Iterate the sparser operand on the outside.
        let (small, big) = if self.terms.len() <= rhs.terms.len() { (self, rhs) } else { (rhs, self) };
        let big_val = big.val_or_order();
        let mut terms: BTreeMap<Exp, GRat> = BTreeMap::new();
        for (ea, ca) in &small.terms {
            if *ea + big_val >= order {
                break; // keys ascend: every remaining product lands beyond order
            }
            for (eb, cb) in big.terms.range(..(order - *ea)) {
                let prod = ca * cb;
                let entry = terms.entry(*ea + *eb).or_insert_with(GRat::zero);
                *entry = &*entry + &prod;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        let mut s = TruncatedSeries { terms, order, denom_hint: 1 };
        s.recompute_hint();
        s
    }

    /// Two-sided multiplicative inverse via Newton iteration.
    ///
    /// For `a = c·q^v·(1 + u)` the result has valuation `-v` and order
    /// `a.order - 2v`, and `a · invert(a) = 1` up to the product's order.
    pub fn invert(&self) -> Result<Self> {
        let v = match self.valuation() {
            Some(v) => v,
            None => return Err(Error::ZeroSeries),
        };
        let lead = self.coeff_at(v);
        // b = 1 + u with val(u) > 0, exact below `window`.
        let b = self.mul_monomial(&lead.inv(), -v);
        let window = b.order;
        debug_assert!(window > exp_int(0), "inversion window must be positive");
        let u_val = b
            .terms
            .iter()
            .find(|(e, _)| !e.is_zero())
            .map(|(e, _)| *e)
            .unwrap_or(window);
        // Each Newton iterate is a polynomial agreeing with b^{-1} below
        // q^known; doubling that window outruns the pessimistic min-rule, so
        // the iterate's order is reasserted explicitly at every step.
        let mut x = TruncatedSeries::one(window);
        let mut known = u_val; // x == b^{-1} below q^known
        let two = TruncatedSeries::constant(GRat::from_int(2), window);
        while known < window {
            let next = (known + known).min(window);
            let xp = x.reinterpret_order(next);
            let bx = b.truncate(next).mul(&xp);
            x = xp.mul(&two.truncate(next).sub(&bx)).reinterpret_order(next);
            known = next;
        }
        Ok(x.reinterpret_order(window).mul_monomial(&lead.inv(), -v))
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, n: i64) -> Result<Self> {
        if n == 0 {
            return Ok(TruncatedSeries::one(self.order));
        }
        let (mut base, mut k) = if n < 0 { (self.invert()?, (-n) as u64) } else { (self.clone(), n as u64) };
        let mut acc: Option<TruncatedSeries> = None;
        while k > 0 {
            if k & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul(&base),
                });
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc.unwrap())
    }

    /// Apply the ring homomorphism `q -> u·q^k` (k > 0).
    ///
    /// Each term `c·q^e` becomes `c·u^e·q^{k e}`; `u^e` must be exactly
    /// computable, which requires integral `e` unless `u = 1`. The order
    /// scales by `k`.
    pub fn substitute(&self, u: &GRat, k: Exp) -> Result<Self> {
        assert!(k > exp_int(0), "substitution exponent must be positive");
        assert!(!u.is_zero(), "substitution unit must be nonzero");
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let unit_pow = u.pow_exp(*e)?;
            let coeff = c * &unit_pow;
            if !coeff.is_zero() {
                terms.insert(*e * k, coeff);
            }
        }
        let mut s = TruncatedSeries { terms, order: self.order * k, denom_hint: 1 };
        s.recompute_hint();
        Ok(s)
    }
}
