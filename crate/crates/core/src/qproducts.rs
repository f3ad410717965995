//! q-Pochhammer symbols, theta blocks and the Jacobi triple product.
//!
//! Every parameter is a monomial `u·q^e` (`u` a nonzero Gaussian rational,
//! `e` an exact rational): the catalog verifies identities either at fully
//! specialized values or at sampled monomial tuples, which keeps the
//! coefficient ring a field and all arithmetic exact.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::number::{exp_int, fmt_exp, Exp, GRat};
use crate::series::TruncatedSeries;

/// A parameter of the form `unit·q^exponent`, `unit != 0`.
#[derive(Clone, PartialEq, Eq)]
pub struct MonomialParam {
    unit: GRat,
    exponent: Exp,
}

impl MonomialParam {
    pub fn new(unit: GRat, exponent: Exp) -> Self {
        assert!(!unit.is_zero(), "monomial parameter must be nonzero");
        MonomialParam { unit, exponent }
    }

    /// `q^e`.
    pub fn q_pow(e: Exp) -> Self {
        Self::new(GRat::one(), e)
    }

    /// A nonzero constant.
    pub fn constant(u: GRat) -> Self {
        Self::new(u, exp_int(0))
    }

    pub fn one() -> Self {
        Self::constant(GRat::one())
    }

    pub fn unit(&self) -> &GRat {
        &self.unit
    }

    pub fn exponent(&self) -> Exp {
        self.exponent
    }

    pub fn is_one(&self) -> bool {
        self.unit.is_one() && self.exponent.is_zero()
    }

    pub fn neg(&self) -> Self {
        MonomialParam { unit: -&self.unit, exponent: self.exponent }
    }

    pub fn inv(&self) -> Self {
        MonomialParam { unit: self.unit.inv(), exponent: -self.exponent }
    }

    pub fn times(&self, other: &Self) -> Self {
        MonomialParam { unit: &self.unit * &other.unit, exponent: self.exponent + other.exponent }
    }

    pub fn div(&self, other: &Self) -> Self {
        self.times(&other.inv())
    }

    /// Multiply by `q^e`.
    pub fn shift(&self, e: Exp) -> Self {
        MonomialParam { unit: self.unit.clone(), exponent: self.exponent + e }
    }

    pub fn pow(&self, n: i64) -> Self {
        MonomialParam { unit: self.unit.pow(n), exponent: self.exponent * exp_int(n) }
    }

    /// The monomial as a truncated series (empty if the exponent is beyond
    /// the order).
    pub fn series(&self, order: Exp) -> TruncatedSeries {
        TruncatedSeries::monomial(self.unit.clone(), self.exponent, order)
    }
}

impl fmt::Display for MonomialParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent.is_zero() {
            return write!(f, "{}", self.unit);
        }
        write!(f, "{}*q^{}", self.unit, fmt_exp(&self.exponent))
    }
}

impl fmt::Debug for MonomialParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The base `q^scale` of a Pochhammer symbol, `scale > 0`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct QStep {
    scale: Exp,
}

impl QStep {
    pub fn new(scale: Exp) -> Self {
        assert!(scale > exp_int(0), "step scale must be positive");
        QStep { scale }
    }

    pub fn of(n: i64) -> Self {
        Self::new(exp_int(n))
    }

    pub fn one() -> Self {
        Self::of(1)
    }

    pub fn scale(&self) -> Exp {
        self.scale
    }

    /// The monomial `q^scale`.
    pub fn q(&self) -> MonomialParam {
        MonomialParam::q_pow(self.scale)
    }
}

/// `(1 - m)` as a series.
pub fn factor(m: &MonomialParam, order: Exp) -> TruncatedSeries {
    TruncatedSeries::one(order).sub(&m.series(order))
}

/// `(1 - m)^{-1}` as an explicit series.
///
/// For a negative exponent the factor is rewritten as
/// `(1 - m)^{-1} = -m^{-1} (1 - m^{-1})^{-1}`, which keeps Laurent valuations
/// finite (the result then has the positive valuation `-exponent`).
pub fn inv_factor(m: &MonomialParam, order: Exp) -> Result<TruncatedSeries> {
    let e = m.exponent;
    if e.is_zero() {
        if m.unit.is_one() {
            return Err(Error::PolePochhammer { exponent: e });
        }
        let c = (GRat::one() - m.unit.clone()).inv();
        return Ok(TruncatedSeries::constant(c, order));
    }
    if e > exp_int(0) {
        // 1 + m + m^2 + ...
        let mut terms = Vec::new();
        let mut k = 0i64;
        while exp_int(k) * e < order {
            terms.push((exp_int(k) * e, m.unit.pow(k)));
            k += 1;
        }
        return Ok(TruncatedSeries::from_terms(terms, order));
    }
    // e < 0: -(m^{-1} + m^{-2} + ...), valuation -e > 0.
    let mut terms = Vec::new();
    let mut k = 1i64;
    while exp_int(-k) * e < order {
        terms.push((exp_int(-k) * e, -m.unit.pow(-k)));
        k += 1;
    }
    Ok(TruncatedSeries::from_terms(terms, order))
}

/// `(a; q^step)_n` for `n >= 0`: the product `∏_{j=0}^{n-1} (1 - a q^{j·step})`.
pub fn poch_finite(a: &MonomialParam, step: QStep, n: u32, order: Exp) -> TruncatedSeries {
    // Factors with negative exponents are Laurent polynomials; build with
    // enough headroom that the pessimistic min-rule still certifies `order`.
    let mut headroom = exp_int(0);
    for j in 0..n as i64 {
        let e = a.exponent + step.scale * exp_int(j);
        if e < exp_int(0) {
            headroom -= e;
        }
    }
    // The product's valuation is at least -headroom, so below that order
    // there is nothing to represent.
    if order <= -headroom {
        return TruncatedSeries::zero(order);
    }
    let work = order + headroom;
    let mut acc = TruncatedSeries::one(work);
    for j in 0..n as i64 {
        let m = a.shift(step.scale * exp_int(j));
        if m.is_one() {
            // A vanishing factor makes the whole product exactly zero.
            return TruncatedSeries::zero(order);
        }
        acc = acc.mul(&factor(&m, work));
    }
    debug_assert!(acc.order() >= order);
    acc.truncate(order)
}

/// `1 / (a; q^step)_n` for `n >= 0`, as a product of explicit reciprocal
/// factors (each has valuation >= 0, so no order is lost). Errors with
/// `PolePochhammer` if some factor vanishes.
pub fn poch_finite_inv(a: &MonomialParam, step: QStep, n: u32, order: Exp) -> Result<TruncatedSeries> {
    // Reciprocal factors with negative exponents have the positive valuation
    // -e; if the requested order sits at or below the total valuation the
    // zero series already represents the value exactly.
    let mut val = exp_int(0);
    for j in 0..n as i64 {
        let e = a.exponent + step.scale * exp_int(j);
        if e.is_zero() && a.unit.is_one() {
            return Err(Error::PolePochhammer { exponent: e });
        }
        if e < exp_int(0) {
            val -= e;
        }
    }
    if order <= val {
        return Ok(TruncatedSeries::zero(order));
    }
    let mut acc = TruncatedSeries::one(order);
    for j in 0..n as i64 {
        let m = a.shift(step.scale * exp_int(j));
        acc = acc.mul(&inv_factor(&m, order)?);
    }
    Ok(acc.truncate(order))
}

/// `(a; q^step)_{-n}` for `n > 0`, via the closed form
/// `(a;q)_{-n} = (-q/a)^n (q/a;q)_n^{-1} q^{n(n-1)/2}` (all powers in the
/// step base). Errors with `PolePochhammer` when some factor of the
/// equivalent quotient form vanishes.
pub fn poch_neg(a: &MonomialParam, step: QStep, n: u32, order: Exp) -> Result<TruncatedSeries> {
    assert!(n > 0);
    let s = step.scale;
    let qs_over_a = a.inv().shift(s); // q^s / a
    let n_i = n as i64;
    // (-q^s/a)^n · q^{s·n(n-1)/2}
    let prefactor = qs_over_a.neg().pow(n_i).shift(s * exp_int(n_i * (n_i - 1) / 2));
    let inner_order = order - prefactor.exponent();
    let inv = poch_finite_inv(&qs_over_a, step, n, inner_order)?;
    Ok(inv.mul_monomial(prefactor.unit(), prefactor.exponent()))
}

/// `(a; q^step)_k` for any integer index `k` (the negative-index extension).
pub fn poch_at_index(a: &MonomialParam, step: QStep, k: i64, order: Exp) -> Result<TruncatedSeries> {
    if k >= 0 {
        Ok(poch_finite(a, step, k as u32, order))
    } else {
        poch_neg(a, step, (-k) as u32, order)
    }
}

/// `(a; q^step)_∞` truncated at `order`.
///
/// Formal convergence requires `a.exponent > 0`, or `a.exponent = 0` with a
/// unit other than 1 (the constant factor `(1 - unit)` splits off and the
/// remaining product converges). Anything else is `FormalDivergence`.
pub fn poch_inf(a: &MonomialParam, step: QStep, order: Exp) -> Result<TruncatedSeries> {
    let e = a.exponent;
    if e < exp_int(0) || (e.is_zero() && a.unit.is_one()) {
        return Err(Error::FormalDivergence { exponent: e });
    }
    let (mut acc, mut j) = if e.is_zero() {
        // Split (1 - unit) and start the tail at j = 1.
        (TruncatedSeries::constant(GRat::one() - a.unit.clone(), order), 1i64)
    } else {
        (TruncatedSeries::one(order), 0i64)
    };
    loop {
        let fe = a.exponent + step.scale * exp_int(j);
        if fe >= order {
            break;
        }
        acc = acc.mul(&factor(&a.shift(step.scale * exp_int(j)), order));
        j += 1;
    }
    Ok(acc)
}

/// Product of several `(a_i; q^step)_∞`.
pub fn poch_inf_multi(params: &[MonomialParam], step: QStep, order: Exp) -> Result<TruncatedSeries> {
    let mut acc = TruncatedSeries::one(order);
    for a in params {
        acc = acc.mul(&poch_inf(a, step, order)?);
    }
    Ok(acc)
}

/// The theta block `j(x; q^base) = (x, q^base/x, q^base; q^base)_∞`.
pub fn j_block(x: &MonomialParam, base: QStep, order: Exp) -> Result<TruncatedSeries> {
    let qb_over_x = x.inv().shift(base.scale);
    poch_inf_multi(&[x.clone(), qb_over_x, base.q()], base, order)
}

/// `J_{a,m} = j(q^a; q^m)`.
pub fn j_sub(a: i64, m: i64, order: Exp) -> Result<TruncatedSeries> {
    j_block(&MonomialParam::q_pow(exp_int(a)), QStep::of(m), order)
}

/// `J̄_{a,m} = j(-q^a; q^m)`.
pub fn j_bar(a: i64, m: i64, order: Exp) -> Result<TruncatedSeries> {
    j_block(&MonomialParam::new(GRat::from_int(-1), exp_int(a)), QStep::of(m), order)
}

/// `J_m = (q^m; q^m)_∞`.
pub fn j_m(m: i64, order: Exp) -> Result<TruncatedSeries> {
    poch_inf(&MonomialParam::q_pow(exp_int(m)), QStep::of(m), order)
}

/// Both sides of the Jacobi triple product
/// `Σ_n (-z)^n q^{σ n²} = (z q^σ, q^σ/z, q^{2σ}; q^{2σ})_∞`
/// (`σ = scale.scale()`, the classical statement being `σ = 1`).
pub fn jacobi_triple_product(
    z: &MonomialParam,
    scale: QStep,
    order: Exp,
) -> Result<(TruncatedSeries, TruncatedSeries)> {
    let sigma = scale.scale();
    // lhs: term n has exponent σn² + e·n, coefficient (-1)^n u^n.
    let e = z.exponent();
    let mut terms = Vec::new();
    let mut n = 0i64;
    loop {
        let quad = sigma * exp_int(n * n);
        if quad - e.abs() * exp_int(n) >= order && n > 0 {
            break;
        }
        for m in [n, -n] {
            if m == 0 && n != 0 {
                continue;
            }
            let ex = sigma * exp_int(m * m) + e * exp_int(m);
            if ex < order {
                let c = z.unit().pow(m);
                let c = if m % 2 == 0 { c } else { -c };
                terms.push((ex, c));
            }
            if n == 0 {
                break;
            }
        }
        n += 1;
    }
    let lhs = TruncatedSeries::from_terms(terms, order);
    let double = QStep::new(sigma * exp_int(2));
    let rhs = poch_inf_multi(
        &[z.shift(sigma), z.inv().shift(sigma), MonomialParam::q_pow(sigma * exp_int(2))],
        double,
        order,
    )?;
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number::exp;

    fn ord(n: i64) -> Exp {
        exp_int(n)
    }

    fn q_pow(e: i64) -> MonomialParam {
        MonomialParam::q_pow(exp_int(e))
    }

    fn neg_q_pow(e: i64) -> MonomialParam {
        MonomialParam::new(GRat::from_int(-1), exp_int(e))
    }

    fn coeffs(s: &TruncatedSeries, upto: i64) -> Vec<i64> {
        (0..upto)
            .map(|k| {
                let c = s.coefficient(exp_int(k)).unwrap();
                assert!(c.is_real() && c.re.denom() == &num_bigint::BigInt::from(1), "non-integer coeff");
                let n: num_bigint::BigInt = c.re.numer().clone();
                i64::try_from(n).unwrap()
            })
            .collect()
    }

    #[test]
    fn poch_finite_basics() {
        // (-1; q^2)_2 = (1+1)(1+q^2) = 2 + 2q^2
        let p = poch_finite(&MonomialParam::constant(GRat::from_int(-1)), QStep::of(2), 2, ord(8));
        assert_eq!(coeffs(&p, 4), vec![2, 0, 2, 0]);
        // (q; q)_3 = 1 - q - q^2 + q^4 + q^5 - q^6
        let p = poch_finite(&q_pow(1), QStep::one(), 3, ord(8));
        assert_eq!(coeffs(&p, 8), vec![1, -1, -1, 0, 1, 1, -1, 0]);
        // empty product
        let p = poch_finite(&q_pow(1), QStep::one(), 0, ord(5));
        assert_eq!(p, TruncatedSeries::one(ord(5)));
        // (1; q)_2 contains the factor (1-1) = 0
        let p = poch_finite(&MonomialParam::one(), QStep::one(), 2, ord(5));
        assert!(p.is_zero_series());
    }

    #[test]
    fn poch_neg_closed_form() {
        // (q^3; q)_{-1} = 1/(1 - q^2) = 1 + q^2 + q^4 + ...
        let p = poch_neg(&q_pow(3), QStep::one(), 1, ord(7)).unwrap();
        assert_eq!(coeffs(&p, 7), vec![1, 0, 1, 0, 1, 0, 1]);
        // (-q^2; q)_{-1} = 1/(1 + q) = 1 - q + q^2 - ...
        let p = poch_neg(&neg_q_pow(2), QStep::one(), 1, ord(5)).unwrap();
        assert_eq!(coeffs(&p, 5), vec![1, -1, 1, -1, 1]);
        // (q; q)_{-1} has the pole factor 1 - q·q^{-1}
        let err = poch_neg(&q_pow(1), QStep::one(), 1, ord(5)).unwrap_err();
        assert!(matches!(err, Error::PolePochhammer { .. }));
    }

    #[test]
    fn poch_neg_quotient_form_agrees() {
        // (a;q)_{-n} · (a q^{-n·s}; q^s)_n = 1 for several valid parameters.
        for (a, n) in [(q_pow(4), 2u32), (neg_q_pow(1), 3), (MonomialParam::new(GRat::i(), exp(1, 2)), 2)] {
            let lhs = poch_neg(&a, QStep::one(), n, ord(12)).unwrap();
            let shifted = a.shift(exp_int(-(n as i64)));
            let fin = poch_finite(&shifted, QStep::one(), n, ord(12));
            let prod = lhs.mul(&fin);
            let one = TruncatedSeries::one(prod.order());
            assert!(prod.first_mismatch(&one, prod.order()).is_none(), "a={a} n={n}: {prod}");
        }
    }

    #[test]
    fn poch_inf_euler() {
        // (q;q)_inf = 1 - q - q^2 + q^5 + q^7 - q^12 - ... (pentagonal numbers)
        let p = poch_inf(&q_pow(1), QStep::one(), ord(13)).unwrap();
        assert_eq!(coeffs(&p, 13), vec![1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1]);
        // (-1; q)_inf = 2·(-q; q)_inf
        let lhs = poch_inf(&MonomialParam::constant(GRat::from_int(-1)), QStep::one(), ord(10)).unwrap();
        let rhs = poch_inf(&neg_q_pow(1), QStep::one(), ord(10)).unwrap().scalar_mul(&GRat::from_int(2));
        assert_eq!(lhs, rhs);
        // (q^{-1}; q)_inf diverges formally
        assert!(matches!(
            poch_inf(&q_pow(-1), QStep::one(), ord(5)),
            Err(Error::FormalDivergence { .. })
        ));
        assert!(matches!(
            poch_inf(&MonomialParam::one(), QStep::one(), ord(5)),
            Err(Error::FormalDivergence { .. })
        ));
    }

    #[test]
    fn inv_factor_laurent_rewrite() {
        // 1/(1 - q^{-2}) = -q^2 - q^4 - ... : valuation +2.
        let m = q_pow(-2);
        let f = inv_factor(&m, ord(7)).unwrap();
        assert_eq!(f.valuation().unwrap(), exp_int(2));
        let prod = f.mul(&factor(&m, ord(7)));
        let one = TruncatedSeries::one(prod.order());
        assert!(prod.first_mismatch(&one, prod.order()).is_none());
    }

    #[test]
    fn jacobi_triple_product_classic() {
        // z = 1: theta4 = 1 - 2q + 2q^4 - 2q^9 + ...
        let (lhs, rhs) = jacobi_triple_product(&MonomialParam::one(), QStep::one(), ord(12)).unwrap();
        assert_eq!(coeffs(&lhs, 12), vec![1, -2, 0, 0, 2, 0, 0, 0, 0, -2, 0, 0]);
        assert!(lhs.first_mismatch(&rhs, ord(12)).is_none());
        // z = -1: theta3 = 1 + 2q + 2q^4 + ...
        let (lhs, rhs) =
            jacobi_triple_product(&MonomialParam::constant(GRat::from_int(-1)), QStep::one(), ord(12)).unwrap();
        assert_eq!(coeffs(&lhs, 12), vec![1, 2, 0, 0, 2, 0, 0, 0, 0, 2, 0, 0]);
        assert!(lhs.first_mismatch(&rhs, ord(12)).is_none());
    }

    #[test]
    fn j_block_identities() {
        // j(q; q^3) = (q, q^2, q^3; q^3)_inf = (q; q)_inf
        let lhs = j_sub(1, 3, ord(20)).unwrap();
        let rhs = poch_inf(&q_pow(1), QStep::one(), ord(20)).unwrap();
        assert!(lhs.first_mismatch(&rhs, ord(20)).is_none());
        // J_2 = (q^2; q^2)_inf
        let lhs = j_m(2, ord(16)).unwrap();
        let rhs = poch_inf(&q_pow(2), QStep::of(2), ord(16)).unwrap();
        assert_eq!(lhs, rhs);
        // Jbar(1,2) = j(-q; q^2) = (-q, -q, q^2; q^2)_inf
        let lhs = j_bar(1, 2, ord(16)).unwrap();
        let nq = neg_q_pow(1);
        let rhs = poch_inf_multi(&[nq.clone(), nq, q_pow(2)], QStep::of(2), ord(16)).unwrap();
        assert_eq!(lhs, rhs);
    }
}
