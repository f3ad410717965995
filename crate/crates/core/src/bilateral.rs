//! Bilateral series evaluators with certified tail cutoffs.
//!
//! Everything here works in the formal-series topology: a bilateral family is
//! admissible iff its term valuations grow without bound in both summation
//! directions. That growth replaces the analytic convergence hypotheses of
//! the source identities (conditions like `|bd/azq| < 1`), and it is what the
//! tail-cutoff certificate checks.

use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::number::{exp, exp_int, Exp, GRat};
use crate::qproducts::{
    factor, inv_factor, j_block, poch_at_index, poch_finite, poch_finite_inv, poch_inf_multi,
    MonomialParam, QStep,
};
use crate::series::TruncatedSeries;

/// How many consecutive strictly-increasing valuation bounds (all at or above
/// the target order) certify a direction.
const GROWTH_WINDOW: usize = 8;

/// A family of bilateral summands, given by the term at each integer index
/// and a lower bound on each term's valuation. `Ok(None)` marks a term known
/// to be exactly zero.
#[derive(Clone)]
pub struct BilateralTermFamily {
    order: Exp,
    term_at: Arc<dyn Fn(i64) -> Result<TruncatedSeries> + Send + Sync>,
    valuation_bound: Arc<dyn Fn(i64) -> Result<Option<Exp>> + Send + Sync>,
}

impl BilateralTermFamily {
    pub fn new(
        order: Exp,
        term_at: impl Fn(i64) -> Result<TruncatedSeries> + Send + Sync + 'static,
        valuation_bound: impl Fn(i64) -> Result<Option<Exp>> + Send + Sync + 'static,
    ) -> Self {
        BilateralTermFamily {
            order,
            term_at: Arc::new(term_at),
            valuation_bound: Arc::new(valuation_bound),
        }
    }

    /// Family whose valuation bound is read off the evaluated term itself
    /// (used for parsed expressions, where no symbolic bound is available).
    pub fn empirical(
        order: Exp,
        term_at: impl Fn(i64) -> Result<TruncatedSeries> + Send + Sync + 'static,
    ) -> Self {
        let term = Arc::new(term_at);
        let term2 = Arc::clone(&term);
        BilateralTermFamily {
            order,
            term_at: Arc::new(move |r| term(r)),
            valuation_bound: Arc::new(move |r| Ok(term2(r)?.valuation())),
        }
    }

    pub fn order(&self) -> Exp {
        self.order
    }

    pub fn term(&self, r: i64) -> Result<TruncatedSeries> {
        (self.term_at)(r)
    }

    pub fn bound(&self, r: i64) -> Result<Option<Exp>> {
        (self.valuation_bound)(r)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FailingDirection {
    PlusInf,
    MinusInf,
    None,
}

/// Outcome of the formal-convergence check.
#[derive(Clone, Debug)]
pub struct FormalValidity {
    pub ok: bool,
    pub failing_direction: FailingDirection,
    /// Index where the bound last failed to grow (when `ok` is false).
    pub witness: Option<i64>,
}

/// Which indices a sum runs over.
#[derive(Clone, Copy, Debug)]
pub enum SumRange {
    /// All of ℤ.
    Bilateral,
    /// `r >= n`.
    From(i64),
}

fn horizon_for(order: Exp) -> i64 {
    let n = (order.numer() / order.denom()).abs();
    (6 * n).max(64)
}

/// Walk one direction and find a cutoff index beyond which every bound is
/// certified at or above the target order. `Err(witness)` reports the last
/// index where the bound failed to grow.
fn certify_direction(
    f: &BilateralTermFamily,
    dir: i64,
    start: i64,
) -> Result<std::result::Result<i64, i64>> {
    let target = f.order;
    let horizon = horizon_for(target);
    let mut streak: usize = 0;
    let mut zero_streak: usize = 0;
    let mut last_bound: Option<Exp> = None;
    let mut last_violation: i64 = start;
    for k in 0..=horizon {
        let r = start + dir * k;
        match f.bound(r)? {
            None => {
                // Exactly-zero term: contributes nothing and never breaks growth.
                zero_streak += 1;
                if zero_streak >= GROWTH_WINDOW {
                    return Ok(Ok(r));
                }
            }
            Some(b) => {
                zero_streak = 0;
                let grew = last_bound.map_or(true, |p| b > p);
                if b >= target && grew {
                    streak += 1;
                    if streak >= GROWTH_WINDOW {
                        return Ok(Ok(r));
                    }
                } else {
                    streak = 0;
                    last_violation = r;
                }
                last_bound = Some(b);
            }
        }
    }
    Ok(Err(last_violation))
}

/// Formal-validity check: do term valuations grow without bound toward both
/// ±∞ (tested to a horizon, with a monotone-growth certificate)?
pub fn check_validity(f: &BilateralTermFamily) -> Result<FormalValidity> {
    match certify_direction(f, 1, 0)? {
        Err(w) => Ok(FormalValidity {
            ok: false,
            failing_direction: FailingDirection::PlusInf,
            witness: Some(w),
        }),
        Ok(_) => match certify_direction(f, -1, -1)? {
            Err(w) => Ok(FormalValidity {
                ok: false,
                failing_direction: FailingDirection::MinusInf,
                witness: Some(w),
            }),
            Ok(_) => {
                Ok(FormalValidity { ok: true, failing_direction: FailingDirection::None, witness: None })
            }
        },
    }
}

/// Sum a family over a range of indices, with the cutoff chosen so that all
/// omitted terms have valuation at or above the truncation order (enlarging
/// the range further cannot change the result).
pub fn sum_range(f: &BilateralTermFamily, range: SumRange) -> Result<TruncatedSeries> {
    let order = f.order;
    let (lo, hi) = match range {
        SumRange::Bilateral => {
            let hi = match certify_direction(f, 1, 0)? {
                Ok(r) => r,
                Err(w) => return Err(Error::DivergentFamily { direction: "+inf", witness: w }),
            };
            let lo = match certify_direction(f, -1, -1)? {
                Ok(r) => r,
                Err(w) => return Err(Error::DivergentFamily { direction: "-inf", witness: w }),
            };
            (lo, hi)
        }
        SumRange::From(n0) => {
            let hi = match certify_direction(f, 1, n0)? {
                Ok(r) => r,
                Err(w) => return Err(Error::DivergentFamily { direction: "+inf", witness: w }),
            };
            (n0, hi)
        }
    };
    let mut acc = TruncatedSeries::zero(order);
    for r in lo..=hi {
        if let Some(v) = f.bound(r)? {
            if v >= order {
                continue;
            }
            acc = acc.add(&f.term(r)?.truncate(order));
        }
    }
    Ok(acc)
}

/// Sum over all of ℤ (the common case).
pub fn sum_bilateral(f: &BilateralTermFamily) -> Result<TruncatedSeries> {
    sum_range(f, SumRange::Bilateral)
}

// ---------------------------------------------------------------------------
// Structured summand families
// ---------------------------------------------------------------------------

/// `(a; q^step)_{mult·r + offset}` as a summand component.
#[derive(Clone, Debug)]
pub struct PochSpec {
    pub a: MonomialParam,
    pub step: QStep,
    pub mult: i64,
    pub offset: i64,
}

impl PochSpec {
    pub fn plain(a: MonomialParam, step: QStep) -> Self {
        PochSpec { a, step, mult: 1, offset: 0 }
    }

    fn index(&self, r: i64) -> i64 {
        self.mult * r + self.offset
    }
}

/// A factor `(1 - m0·q^{slope·r})` in a summand.
#[derive(Clone, Debug)]
pub struct LinFactor {
    pub m0: MonomialParam,
    pub slope: Exp,
}

impl LinFactor {
    fn at(&self, r: i64) -> MonomialParam {
        self.m0.shift(self.slope * exp_int(r))
    }
}

/// Description of a bilateral summand of the shape
///
/// ```text
/// prefactor · q^shift · z^r · q^{quad·r² + lin·r}
///   · Π extra (1 - m0 q^{slope r}) / Π extra_inv (1 - m0 q^{slope r})
///   · Π num (a;q^s)_{m r + o} / Π den (a;q^s)_{m r + o}
///   / Π const_div (1 - m)
/// ```
///
/// which covers every bilateral display in the catalog. The valuation of each
/// term is computed exactly from the factor structure, which is what the
/// tail-cutoff certificate consumes.
#[derive(Clone, Debug)]
pub struct SumSpec {
    pub prefactor: GRat,
    pub shift: Exp,
    pub z: Option<MonomialParam>,
    pub quad: Exp,
    pub lin: Exp,
    pub num: Vec<PochSpec>,
    pub den: Vec<PochSpec>,
    pub extra: Vec<LinFactor>,
    pub extra_inv: Vec<LinFactor>,
    pub const_div: Vec<MonomialParam>,
}

impl Default for SumSpec {
    fn default() -> Self {
        SumSpec {
            prefactor: GRat::one(),
            shift: exp_int(0),
            z: None,
            quad: exp_int(0),
            lin: exp_int(0),
            num: Vec::new(),
            den: Vec::new(),
            extra: Vec::new(),
            extra_inv: Vec::new(),
            const_div: Vec::new(),
        }
    }
}

/// Exact valuation of a Pochhammer component, or the degenerate cases.
#[derive(Clone, Copy, PartialEq, Debug)]
enum PochVal {
    Val(Exp),
    /// The product contains a vanishing factor (value exactly zero).
    Zero,
    /// Negative-index symbol with a pole (not a Laurent series).
    Pole,
}

fn val_poch(a: &MonomialParam, step: QStep, k: i64) -> PochVal {
    let e = a.exponent();
    let s = step.scale();
    let unit_one = a.unit().is_one();
    if k >= 0 {
        let mut v = exp_int(0);
        for j in 0..k {
            let fe = e + s * exp_int(j);
            if fe.is_zero() && unit_one {
                return PochVal::Zero;
            }
            if fe < exp_int(0) {
                v += fe;
            }
        }
        PochVal::Val(v)
    } else {
        let m = -k;
        // (a;q)_{-m} = (-q/a)^m (q/a;q)_m^{-1} q^{m(m-1)/2}, all in base q^s.
        let mut v = exp_int(m) * (s - e) + s * exp_int(m * (m - 1) / 2);
        for j in 0..m {
            let fe = (s - e) + s * exp_int(j);
            if fe.is_zero() && unit_one {
                return PochVal::Pole;
            }
            if fe < exp_int(0) {
                v -= fe;
            }
        }
        PochVal::Val(v)
    }
}

/// `1/(a;q^s)_k` for any integer k. For k < 0 this is the pure product
/// `(a q^{k·s}; q^s)_{-k}` (so a pole of the symbol makes the reciprocal
/// exactly zero).
fn poch_inv_at_index(a: &MonomialParam, step: QStep, k: i64, order: Exp) -> Result<TruncatedSeries> {
    if k >= 0 {
        poch_finite_inv(a, step, k as u32, order)
    } else {
        let m = (-k) as u32;
        Ok(poch_finite(&a.shift(step.scale() * exp_int(k)), step, m, order))
    }
}

impl SumSpec {
    /// Exact valuation of the term at index `r` (`Zero` when the term
    /// vanishes, `Pole` when the family is ill-defined there).
    fn term_val(&self, r: i64) -> PochVal {
        let mut v = self.shift + self.quad * exp_int(r * r) + self.lin * exp_int(r);
        if let Some(z) = &self.z {
            v += z.exponent() * exp_int(r);
        }
        for p in &self.num {
            match val_poch(&p.a, p.step, p.index(r)) {
                PochVal::Val(x) => v += x,
                PochVal::Zero => return PochVal::Zero,
                PochVal::Pole => return PochVal::Pole,
            }
        }
        for p in &self.den {
            match val_poch(&p.a, p.step, p.index(r)) {
                PochVal::Val(x) => v -= x,
                // Zero denominator symbol: the term has a pole.
                PochVal::Zero => return PochVal::Pole,
                // Pole of the symbol: its reciprocal is exactly zero.
                PochVal::Pole => return PochVal::Zero,
            }
        }
        for lf in &self.extra {
            let m = lf.at(r);
            if m.is_one() {
                return PochVal::Zero;
            }
            let e = m.exponent();
            if e < exp_int(0) {
                v += e;
            }
        }
        for lf in &self.extra_inv {
            let m = lf.at(r);
            if m.is_one() {
                return PochVal::Pole;
            }
            let e = m.exponent();
            if e < exp_int(0) {
                v -= e;
            }
        }
        for m in &self.const_div {
            if m.is_one() {
                return PochVal::Pole;
            }
            let e = m.exponent();
            if e < exp_int(0) {
                v -= e;
            }
        }
        PochVal::Val(v)
    }

    /// Build the term at index `r`, exact below `order`.
    fn term(&self, r: i64, order: Exp) -> Result<TruncatedSeries> {
        let total = match self.term_val(r) {
            PochVal::Zero => return Ok(TruncatedSeries::zero(order)),
            PochVal::Pole => return Err(Error::PolePochhammer { exponent: exp_int(r) }),
            PochVal::Val(v) => v,
        };
        if total >= order {
            // The whole term sits at or beyond the truncation order.
            return Ok(TruncatedSeries::zero(order));
        }
        // Leading monomial part.
        let mut coeff = self.prefactor.clone();
        let mut e0 = self.shift + self.quad * exp_int(r * r) + self.lin * exp_int(r);
        if let Some(z) = &self.z {
            coeff = &coeff * &z.unit().pow(r);
            e0 += z.exponent() * exp_int(r);
        }
        // Each factor is computed at `order` minus the valuation of all the
        // other factors, so the running product stays exact below `order`.
        let mut acc = TruncatedSeries::monomial(coeff, e0, order - (total - e0));
        for p in &self.num {
            let pv = match val_poch(&p.a, p.step, p.index(r)) {
                PochVal::Val(x) => x,
                _ => unreachable!("degenerate cases handled above"),
            };
            acc = acc.mul(&poch_at_index(&p.a, p.step, p.index(r), order - (total - pv))?);
        }
        for p in &self.den {
            let pv = match val_poch(&p.a, p.step, p.index(r)) {
                PochVal::Val(x) => -x,
                _ => unreachable!(),
            };
            acc = acc.mul(&poch_inv_at_index(&p.a, p.step, p.index(r), order - (total - pv))?);
        }
        for lf in &self.extra {
            let m = lf.at(r);
            let pv = m.exponent().min(exp_int(0));
            acc = acc.mul(&factor(&m, order - (total - pv)));
        }
        for lf in &self.extra_inv {
            let m = lf.at(r);
            let pv = -m.exponent().min(exp_int(0));
            acc = acc.mul(&inv_factor(&m, order - (total - pv))?);
        }
        for m in &self.const_div {
            let pv = -m.exponent().min(exp_int(0));
            acc = acc.mul(&inv_factor(m, order - (total - pv))?);
        }
        debug_assert!(acc.order() >= order, "term order bookkeeping fell short");
        Ok(acc.truncate(order))
    }

    /// Wrap this spec as a term family at the given order.
    pub fn family(self, order: Exp) -> BilateralTermFamily {
        let spec = Arc::new(self);
        let s1 = Arc::clone(&spec);
        let s2 = Arc::clone(&spec);
        BilateralTermFamily {
            order,
            term_at: Arc::new(move |r| s1.term(r, order)),
            valuation_bound: Arc::new(move |r| match s2.term_val(r) {
                PochVal::Zero => Ok(None),
                PochVal::Pole => Err(Error::PolePochhammer { exponent: exp_int(r) }),
                PochVal::Val(v) => Ok(Some(v)),
            }),
        }
    }

    pub fn sum(self, range: SumRange, order: Exp) -> Result<TruncatedSeries> {
        sum_range(&self.family(order), range)
    }
}

// ---------------------------------------------------------------------------
// Named evaluators
// ---------------------------------------------------------------------------

/// `₂ψ₂`: `Σ_n (a,c;q)_n / (b,d;q)_n · z^n`.
pub fn two_psi_two(
    a: &MonomialParam,
    b: &MonomialParam,
    c: &MonomialParam,
    d: &MonomialParam,
    z: &MonomialParam,
    order: Exp,
) -> Result<TruncatedSeries> {
    let one = QStep::one();
    SumSpec {
        z: Some(z.clone()),
        num: vec![PochSpec::plain(a.clone(), one), PochSpec::plain(c.clone(), one)],
        den: vec![PochSpec::plain(b.clone(), one), PochSpec::plain(d.clone(), one)],
        ..Default::default()
    }
    .sum(SumRange::Bilateral, order)
}

/// Bailey's very-well-poised `₆ψ₆`, both sides.
///
/// The factor `(q√a,-q√a;q)_n/(√a,-√a;q)_n` is evaluated as
/// `(1-a q^{2n})/(1-a)` (the same rational function termwise), which keeps
/// every quantity inside the Gaussian-rational monomial calculus.
pub fn six_psi_six(
    a: &MonomialParam,
    b: &MonomialParam,
    c: &MonomialParam,
    d: &MonomialParam,
    e: &MonomialParam,
    order: Exp,
) -> Result<(TruncatedSeries, TruncatedSeries)> {
    let one = QStep::one();
    let q = MonomialParam::q_pow(exp_int(1));
    let aq = a.shift(exp_int(1));
    let z = q.times(&a.pow(2)).div(&b.times(c).times(&d.times(e)));
    let lhs = SumSpec {
        z: Some(z.clone()),
        num: vec![
            PochSpec::plain(b.clone(), one),
            PochSpec::plain(c.clone(), one),
            PochSpec::plain(d.clone(), one),
            PochSpec::plain(e.clone(), one),
        ],
        den: vec![
            PochSpec::plain(aq.div(b), one),
            PochSpec::plain(aq.div(c), one),
            PochSpec::plain(aq.div(d), one),
            PochSpec::plain(aq.div(e), one),
        ],
        extra: vec![LinFactor { m0: a.clone(), slope: exp_int(2) }],
        const_div: vec![a.clone()],
        ..Default::default()
    }
    .sum(SumRange::Bilateral, order)?;

    let num = vec![
        aq.clone(),
        aq.div(&b.times(c)),
        aq.div(&b.times(d)),
        aq.div(&b.times(e)),
        aq.div(&c.times(d)),
        aq.div(&c.times(e)),
        aq.div(&d.times(e)),
        q.clone(),
        q.div(a),
    ];
    let den = vec![
        aq.div(b),
        aq.div(c),
        aq.div(d),
        aq.div(e),
        q.div(b),
        q.div(c),
        q.div(d),
        q.div(e),
        z,
    ];
    let rhs = product_quotient(&num, &den, one, order)?;
    Ok((lhs, rhs))
}

/// `Π (n_i;q^s)_∞ / Π (d_i;q^s)_∞`.
pub fn product_quotient(
    num: &[MonomialParam],
    den: &[MonomialParam],
    step: QStep,
    order: Exp,
) -> Result<TruncatedSeries> {
    let n = poch_inf_multi(num, step, order)?;
    let d = poch_inf_multi(den, step, order)?;
    Ok(n.mul(&d.invert()?).truncate(order))
}

/// `G₃(s,t,q) = 1 + Σ_{n≥1} s^n t^n q^{n²} / (sq,tq;q)_n`.
pub fn g3(s: &MonomialParam, t: &MonomialParam, order: Exp) -> Result<TruncatedSeries> {
    let one = QStep::one();
    let tail = SumSpec {
        z: Some(s.times(t)),
        quad: exp_int(1),
        den: vec![
            PochSpec::plain(s.shift(exp_int(1)), one),
            PochSpec::plain(t.shift(exp_int(1)), one),
        ],
        ..Default::default()
    }
    .sum(SumRange::From(1), order)?;
    Ok(TruncatedSeries::one(order).add(&tail))
}

/// `G₃*(s,t,q) = Σ_{n∈ℤ} s^n t^n q^{n²} / (sq,tq;q)_n`.
pub fn g3_star(s: &MonomialParam, t: &MonomialParam, order: Exp) -> Result<TruncatedSeries> {
    let one = QStep::one();
    SumSpec {
        z: Some(s.times(t)),
        quad: exp_int(1),
        den: vec![
            PochSpec::plain(s.shift(exp_int(1)), one),
            PochSpec::plain(t.shift(exp_int(1)), one),
        ],
        ..Default::default()
    }
    .sum(SumRange::Bilateral, order)
}

/// The universal mock theta function
/// `g₃(x,q) = Σ_{n≥0} q^{n²+n} / ((x;q)_{n+1} (q/x;q)_{n+1})`, with the step
/// base generalized to `q^B`.
pub fn g_universal3(x: &MonomialParam, base: QStep, order: Exp) -> Result<TruncatedSeries> {
    let bs = base.scale();
    let qb_over_x = x.inv().shift(bs);
    SumSpec {
        quad: bs,
        lin: bs,
        den: vec![
            PochSpec { a: x.clone(), step: base, mult: 1, offset: 1 },
            PochSpec { a: qb_over_x, step: base, mult: 1, offset: 1 },
        ],
        ..Default::default()
    }
    .sum(SumRange::From(0), order)
}

/// `g₂(x,q) = Σ_{n≥0} q^{n(n+1)/2} (-q;q)_n / ((x;q)_{n+1} (q/x;q)_{n+1})`,
/// with the step base generalized to `q^B`.
pub fn g_universal2(x: &MonomialParam, base: QStep, order: Exp) -> Result<TruncatedSeries> {
    let bs = base.scale();
    let neg_qb = MonomialParam::new(GRat::from_int(-1), bs);
    let qb_over_x = x.inv().shift(bs);
    SumSpec {
        quad: bs / exp_int(2),
        lin: bs / exp_int(2),
        num: vec![PochSpec::plain(neg_qb, base)],
        den: vec![
            PochSpec { a: x.clone(), step: base, mult: 1, offset: 1 },
            PochSpec { a: qb_over_x, step: base, mult: 1, offset: 1 },
        ],
        ..Default::default()
    }
    .sum(SumRange::From(0), order)
}

/// The link `G₃(x, q/x, q) = (1-x)(1-q/x)·g₃(x,q)`: returns both sides.
pub fn g3_link_check(x: &MonomialParam, order: Exp) -> Result<(TruncatedSeries, TruncatedSeries)> {
    let q_over_x = x.inv().shift(exp_int(1));
    let lhs = g3(x, &q_over_x, order)?;
    let g = g_universal3(x, QStep::one(), order)?;
    let rhs = factor(x, order).mul(&factor(&q_over_x, order)).mul(&g).truncate(order);
    Ok((lhs, rhs))
}

/// `G₅*(w,y,q) = Σ_{n∈ℤ} w^n q^{n²} / (y;q)_n`.
pub fn g5_star(w: &MonomialParam, y: &MonomialParam, order: Exp) -> Result<TruncatedSeries> {
    SumSpec {
        z: Some(w.clone()),
        quad: exp_int(1),
        den: vec![PochSpec::plain(y.clone(), QStep::one())],
        ..Default::default()
    }
    .sum(SumRange::Bilateral, order)
}

/// `G₆(a,b,d,z,q) = Σ_{r∈ℤ} (a;q²)_r z^r q^{r²} / (b,d;q²)_r`.
pub fn g6(
    a: &MonomialParam,
    b: &MonomialParam,
    d: &MonomialParam,
    z: &MonomialParam,
    order: Exp,
) -> Result<TruncatedSeries> {
    let two = QStep::of(2);
    SumSpec {
        z: Some(z.clone()),
        quad: exp_int(1),
        num: vec![PochSpec::plain(a.clone(), two)],
        den: vec![PochSpec::plain(b.clone(), two), PochSpec::plain(d.clone(), two)],
        ..Default::default()
    }
    .sum(SumRange::Bilateral, order)
}

/// `G₈(a,b,z,q) = Σ_{r∈ℤ} (a;q²)_r z^r q^{r²} / (b;q²)_r` (the `d -> 0`
/// reduction of `G₆`).
pub fn g8(a: &MonomialParam, b: &MonomialParam, z: &MonomialParam, order: Exp) -> Result<TruncatedSeries> {
    let two = QStep::of(2);
    SumSpec {
        z: Some(z.clone()),
        quad: exp_int(1),
        num: vec![PochSpec::plain(a.clone(), two)],
        den: vec![PochSpec::plain(b.clone(), two)],
        ..Default::default()
    }
    .sum(SumRange::Bilateral, order)
}

/// The Appell-Lerch sum
/// `m(x,q,z) = (1/j(z;q)) Σ_r (-1)^r q^{r(r-1)/2} z^r / (1 - q^{r-1} x z)`.
///
/// A unit-coefficient integral power `x·z = q^k` is rejected up front: the
/// denominator then vanishes at `r = 1 - k`.
pub fn appell_lerch_m(x: &MonomialParam, z: &MonomialParam, order: Exp) -> Result<TruncatedSeries> {
    let xz = x.times(z);
    if xz.unit().is_one() && xz.exponent().is_integer() {
        let k = xz.exponent().to_integer();
        return Err(Error::PoleAppellLerch { index: 1 - k });
    }
    let sum = SumSpec {
        z: Some(z.neg()),
        quad: exp(1, 2),
        lin: exp(-1, 2),
        extra_inv: vec![LinFactor { m0: xz.shift(exp_int(-1)), slope: exp_int(1) }],
        ..Default::default()
    }
    .sum(SumRange::Bilateral, order)?;
    let j = j_block(z, QStep::one(), order)?;
    Ok(sum.mul(&j.invert()?).truncate(order))
}
