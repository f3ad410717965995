//! Cesàro regularization of coefficientwise-oscillating partial sums.
//!
//! Some series in the catalog (μ(q) and several bilateral tails) have terms
//! whose coefficients do not tend to zero; instead the even-indexed and
//! odd-indexed partial sums each stabilize coefficientwise, and the
//! regularized value is the average of the two limits.

use super::TruncatedSeries;
use crate::error::{Error, Result};
use crate::number::{Exp, GRat};

/// A regularized sum together with the index at which both parity classes of
/// partial sums had stabilized (below the truncation order).
#[derive(Clone, Debug)]
pub struct CesaroValue {
    pub value: TruncatedSeries,
    pub stabilized_at: usize,
}

/// Number of consecutive stable same-parity comparisons required before the
/// sequences are declared stabilized.
const STABLE_PAIRS: usize = 4;

/// Default iteration cap: 4 · (order numerator · denom hint), floored at 64.
pub fn default_cesaro_cap(order: Exp, denom_hint: i64) -> usize {
    let n = order.numer().unsigned_abs() as usize;
    let d = denom_hint.unsigned_abs().max(1) as usize;
    (4 * n * d).max(64)
}

/// Sum `term_at(0) + term_at(1) + ...` in the Cesàro sense: detect the index
/// from which the even- and odd-indexed partial sums are each constant below
/// `order`, and return the coefficientwise average of the two limits.
///
/// An ordinarily convergent sum (terms eventually zero below `order`)
/// stabilizes with equal parity limits, so the average equals the plain sum.
pub fn cesaro_sum(
    mut term_at: impl FnMut(usize) -> Result<TruncatedSeries>,
    order: Exp,
    cap: usize,
) -> Result<CesaroValue> {
    let mut partial = TruncatedSeries::zero(order);
    let mut last_even: Option<TruncatedSeries> = None;
    let mut last_odd: Option<TruncatedSeries> = None;
    let mut stable_streak = 0usize;
    let mut stable_since = 0usize;

    for n in 0..=cap {
        let term = term_at(n)?.truncate(order);
        partial = partial.add(&term);
        debug_assert!(partial.order() >= order);
        let snapshot = partial.truncate(order);
        let slot = if n % 2 == 0 { &mut last_even } else { &mut last_odd };
        let changed = match slot {
            Some(prev) => *prev != snapshot,
            None => true,
        };
        *slot = Some(snapshot);
        if changed {
            stable_streak = 0;
            stable_since = n + 1;
        } else {
            stable_streak += 1;
            if stable_streak >= 2 * STABLE_PAIRS && last_even.is_some() && last_odd.is_some() {
                let even = last_even.take().unwrap();
                let odd = last_odd.take().unwrap();
                let half = GRat::from_frac(1, 2);
                let value = even.add(&odd).scalar_mul(&half).truncate(order);
                return Ok(CesaroValue { value, stabilized_at: stable_since });
            }
        }
    }
    Err(Error::NoStabilization { cap })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number::{exp, exp_int};

    fn ord(n: i64) -> Exp {
        exp_int(n)
    }

    #[test]
    fn grandi_average() {
        // term(n) = (-1)^n: partial sums 1,0,1,0,... average 1/2.
        let got = cesaro_sum(
            |n| Ok(TruncatedSeries::constant(GRat::from_int(if n % 2 == 0 { 1 } else { -1 }), ord(10))),
            ord(10),
            100,
        )
        .unwrap();
        assert_eq!(got.value, TruncatedSeries::constant(GRat::from_frac(1, 2), ord(10)));
    }

    #[test]
    fn convergent_sum_matches_ordinary() {
        // term(n) = q^n: sum is the geometric series.
        let got = cesaro_sum(|n| Ok(TruncatedSeries::q_pow(exp_int(n as i64), ord(8))), ord(8), 100).unwrap();
        let expected =
            TruncatedSeries::from_terms((0..8).map(|k| (exp_int(k), GRat::one())), ord(8));
        assert_eq!(got.value, expected);
    }

    #[test]
    fn no_stabilization_reported() {
        // term(n) = n (constant series): partial sums never stabilize.
        let err = cesaro_sum(
            |n| Ok(TruncatedSeries::constant(GRat::from_int(n as i64 + 1), ord(4))),
            ord(4),
            50,
        )
        .unwrap_err();
        assert!(matches!(err, Error::NoStabilization { cap: 50 }));
    }

    #[test]
    fn fractional_order_cap() {
        assert_eq!(default_cesaro_cap(exp(3, 2), 2), 64);
        assert_eq!(default_cesaro_cap(exp_int(60), 1), 240);
    }
}
