//! Canonical builders for the named mock theta functions of orders 3, 5, 6
//! and 8, each returning an exact truncated series.
//!
//! The summation cutoff is always derived from the exponent growth of the
//! defining sum (never a fixed constant); μ(q), whose terms do not vanish
//! coefficientwise, is regularized in the Cesàro sense.

use crate::bilateral::{PochSpec, SumRange, SumSpec};
use crate::error::Result;
use crate::number::{exp, exp_int, Exp, GRat};
use crate::qproducts::{MonomialParam, QStep};
use crate::series::{cesaro_sum, default_cesaro_cap, CesaroValue, TruncatedSeries};

/// Identifier for every named mock theta function in the catalog.
///
/// Lowercase/uppercase pairs from the source material (`f0` vs `F0`) are
/// distinct functions; the uppercase fifth-order pair is spelled `CapF0`,
/// `CapF1` here.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum MockTheta {
    // third order
    F3,
    Phi3,
    Chi3,
    Psi3,
    Nu3,
    // fifth order
    F0,
    F1,
    CapF0,
    CapF1,
    Phi0,
    Phi1,
    Psi0,
    Psi1,
    Chi0,
    Chi1,
    // sixth order
    Phi6,
    Psi6,
    Rho6,
    Sigma6,
    Lambda6,
    Mu6,
    Phi6Minus,
    Psi6Minus,
    // eighth order
    S0,
    S1,
    T0,
    T1,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Summability {
    Ordinary,
    Cesaro,
}

pub const ALL: [MockTheta; 27] = [
    MockTheta::F3,
    MockTheta::Phi3,
    MockTheta::Chi3,
    MockTheta::Psi3,
    MockTheta::Nu3,
    MockTheta::F0,
    MockTheta::F1,
    MockTheta::CapF0,
    MockTheta::CapF1,
    MockTheta::Phi0,
    MockTheta::Phi1,
    MockTheta::Psi0,
    MockTheta::Psi1,
    MockTheta::Chi0,
    MockTheta::Chi1,
    MockTheta::Phi6,
    MockTheta::Psi6,
    MockTheta::Rho6,
    MockTheta::Sigma6,
    MockTheta::Lambda6,
    MockTheta::Mu6,
    MockTheta::Phi6Minus,
    MockTheta::Psi6Minus,
    MockTheta::S0,
    MockTheta::S1,
    MockTheta::T0,
    MockTheta::T1,
];

impl MockTheta {
    pub fn name(self) -> &'static str {
        use MockTheta::*;
        match self {
            F3 => "f3",
            Phi3 => "phi3",
            Chi3 => "chi3",
            Psi3 => "psi3",
            Nu3 => "nu3",
            F0 => "f0",
            F1 => "f1",
            CapF0 => "F0",
            CapF1 => "F1",
            Phi0 => "phi0",
            Phi1 => "phi1",
            Psi0 => "psi0",
            Psi1 => "psi1",
            Chi0 => "chi0",
            Chi1 => "chi1",
            Phi6 => "phi6",
            Psi6 => "psi6",
            Rho6 => "rho6",
            Sigma6 => "sigma6",
            Lambda6 => "lambda6",
            Mu6 => "mu6",
            Phi6Minus => "phi6minus",
            Psi6Minus => "psi6minus",
            S0 => "S0",
            S1 => "S1",
            T0 => "T0",
            T1 => "T1",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        ALL.iter().copied().find(|m| m.name() == s)
    }

    /// The classical order of the function (3, 5, 6 or 8).
    pub fn order_class(self) -> u8 {
        use MockTheta::*;
        match self {
            F3 | Phi3 | Chi3 | Psi3 | Nu3 => 3,
            F0 | F1 | CapF0 | CapF1 | Phi0 | Phi1 | Psi0 | Psi1 | Chi0 | Chi1 => 5,
            Phi6 | Psi6 | Rho6 | Sigma6 | Lambda6 | Mu6 | Phi6Minus | Psi6Minus => 6,
            S0 | S1 | T0 | T1 => 8,
        }
    }

    /// μ(q) is the one builder whose defining series needs Cesàro averaging.
    pub fn summability(self) -> Summability {
        match self {
            MockTheta::Mu6 => Summability::Cesaro,
            _ => Summability::Ordinary,
        }
    }

    /// The defining sum as a structured summand plus its starting index.
    pub(crate) fn spec(self) -> (SumSpec, i64) {
        use MockTheta::*;
        let one = QStep::one();
        let two = QStep::of(2);
        let q = |e: i64| MonomialParam::q_pow(exp_int(e));
        let nq = |e: i64| MonomialParam::new(GRat::from_int(-1), exp_int(e));
        let minus_one = Some(MonomialParam::constant(GRat::from_int(-1)));
        let h = exp(1, 2);
        let spec = SumSpec::default();
        match self {
            F3 => (
                SumSpec {
                    quad: exp_int(1),
                    den: vec![PochSpec::plain(nq(1), one), PochSpec::plain(nq(1), one)],
                    ..spec
                },
                0,
            ),
            Phi3 => (SumSpec { quad: exp_int(1), den: vec![PochSpec::plain(nq(2), two)], ..spec }, 0),
            Chi3 => (
                SumSpec {
                    quad: exp_int(1),
                    num: vec![PochSpec::plain(nq(1), one)],
                    den: vec![PochSpec::plain(nq(3), QStep::of(3))],
                    ..spec
                },
                0,
            ),
            Psi3 => (SumSpec { quad: exp_int(1), den: vec![PochSpec::plain(q(1), two)], ..spec }, 1),
            Nu3 => (
                SumSpec {
                    quad: exp_int(1),
                    lin: exp_int(1),
                    den: vec![PochSpec { a: nq(1), step: two, mult: 1, offset: 1 }],
                    ..spec
                },
                0,
            ),
            F0 => (SumSpec { quad: exp_int(1), den: vec![PochSpec::plain(nq(1), one)], ..spec }, 0),
            F1 => (
                SumSpec {
                    quad: exp_int(1),
                    lin: exp_int(1),
                    den: vec![PochSpec::plain(nq(1), one)],
                    ..spec
                },
                0,
            ),
            CapF0 => (SumSpec { quad: exp_int(2), den: vec![PochSpec::plain(q(1), two)], ..spec }, 0),
            CapF1 => (
                SumSpec {
                    quad: exp_int(2),
                    lin: exp_int(2),
                    den: vec![PochSpec { a: q(1), step: two, mult: 1, offset: 1 }],
                    ..spec
                },
                0,
            ),
            Phi0 => (SumSpec { quad: exp_int(1), num: vec![PochSpec::plain(nq(1), two)], ..spec }, 0),
            Phi1 => (
                SumSpec {
                    quad: exp_int(1),
                    lin: exp_int(2),
                    shift: exp_int(1),
                    num: vec![PochSpec::plain(nq(1), two)],
                    ..spec
                },
                0,
            ),
            Psi0 => (
                SumSpec {
                    quad: h,
                    lin: exp(3, 2),
                    shift: exp_int(1),
                    num: vec![PochSpec::plain(nq(1), one)],
                    ..spec
                },
                0,
            ),
            Psi1 => (SumSpec { quad: h, lin: h, num: vec![PochSpec::plain(nq(1), one)], ..spec }, 0),
            Chi0 => (
                SumSpec {
                    lin: exp_int(1),
                    num: vec![PochSpec::plain(q(1), one)],
                    den: vec![PochSpec { a: q(1), step: one, mult: 2, offset: 0 }],
                    ..spec
                },
                0,
            ),
            Chi1 => (
                SumSpec {
                    lin: exp_int(1),
                    num: vec![PochSpec::plain(q(1), one)],
                    den: vec![PochSpec { a: q(1), step: one, mult: 2, offset: 1 }],
                    ..spec
                },
                0,
            ),
            Phi6 => (
                SumSpec {
                    z: minus_one,
                    quad: exp_int(1),
                    num: vec![PochSpec::plain(q(1), two)],
                    den: vec![PochSpec { a: nq(1), step: one, mult: 2, offset: 0 }],
                    ..spec
                },
                0,
            ),
            Psi6 => (
                SumSpec {
                    z: minus_one,
                    quad: exp_int(1),
                    lin: exp_int(2),
                    shift: exp_int(1),
                    num: vec![PochSpec::plain(q(1), two)],
                    den: vec![PochSpec { a: nq(1), step: one, mult: 2, offset: 1 }],
                    ..spec
                },
                0,
            ),
            Rho6 => (
                SumSpec {
                    quad: h,
                    lin: h,
                    num: vec![PochSpec::plain(nq(1), one)],
                    den: vec![PochSpec { a: q(1), step: two, mult: 1, offset: 1 }],
                    ..spec
                },
                0,
            ),
            Sigma6 => (
                SumSpec {
                    quad: h,
                    lin: exp(3, 2),
                    shift: exp_int(1),
                    num: vec![PochSpec::plain(nq(1), one)],
                    den: vec![PochSpec { a: q(1), step: two, mult: 1, offset: 1 }],
                    ..spec
                },
                0,
            ),
            Lambda6 => (
                SumSpec {
                    z: minus_one,
                    lin: exp_int(1),
                    num: vec![PochSpec::plain(q(1), two)],
                    den: vec![PochSpec::plain(nq(1), one)],
                    ..spec
                },
                0,
            ),
            Mu6 => (
                SumSpec {
                    z: minus_one,
                    num: vec![PochSpec::plain(q(1), two)],
                    den: vec![PochSpec::plain(nq(1), one)],
                    ..spec
                },
                0,
            ),
            Phi6Minus => (
                SumSpec {
                    lin: exp_int(1),
                    num: vec![PochSpec { a: nq(1), step: one, mult: 2, offset: -1 }],
                    den: vec![PochSpec::plain(q(1), two)],
                    ..spec
                },
                1,
            ),
            Psi6Minus => (
                SumSpec {
                    lin: exp_int(1),
                    num: vec![PochSpec { a: nq(1), step: one, mult: 2, offset: -2 }],
                    den: vec![PochSpec::plain(q(1), two)],
                    ..spec
                },
                1,
            ),
            S0 => (
                SumSpec {
                    quad: exp_int(1),
                    num: vec![PochSpec::plain(nq(1), two)],
                    den: vec![PochSpec::plain(nq(2), two)],
                    ..spec
                },
                0,
            ),
            S1 => (
                SumSpec {
                    quad: exp_int(1),
                    lin: exp_int(2),
                    num: vec![PochSpec::plain(nq(1), two)],
                    den: vec![PochSpec::plain(nq(2), two)],
                    ..spec
                },
                0,
            ),
            T0 => (
                SumSpec {
                    quad: exp_int(1),
                    lin: exp_int(3),
                    shift: exp_int(2),
                    num: vec![PochSpec::plain(nq(2), two)],
                    den: vec![PochSpec { a: nq(1), step: two, mult: 1, offset: 1 }],
                    ..spec
                },
                0,
            ),
            T1 => (
                SumSpec {
                    quad: exp_int(1),
                    lin: exp_int(1),
                    num: vec![PochSpec::plain(nq(2), two)],
                    den: vec![PochSpec { a: nq(1), step: two, mult: 1, offset: 1 }],
                    ..spec
                },
                0,
            ),
        }
    }
}

/// Build the defining series of `id`, exact below `order`.
pub fn build(id: MockTheta, order: Exp) -> TruncatedSeries {
    try_build(id, order).expect("mock theta builder definitions are total")
}

fn try_build(id: MockTheta, order: Exp) -> Result<TruncatedSeries> {
    let (spec, start) = id.spec();
    match id.summability() {
        Summability::Ordinary => spec.sum(SumRange::From(start), order),
        Summability::Cesaro => Ok(build_cesaro(id, order)?.value),
    }
}

/// The Cesàro regularization of a builder with oscillating partial sums,
/// together with the stabilization index.
pub fn build_cesaro(id: MockTheta, order: Exp) -> Result<CesaroValue> {
    let (spec, start) = id.spec();
    let fam = spec.family(order);
    let cap = default_cesaro_cap(order, 1);
    cesaro_sum(|n| fam.term(start + n as i64), order, cap)
}

/// `build(id)` with `q -> u·q^k` applied at matched truncation
/// (e.g. ψ(q²), μ(-q), φ(-q²)).
pub fn build_at(id: MockTheta, u: &GRat, k: Exp, order: Exp) -> Result<TruncatedSeries> {
    let inner_order = order / k;
    build(id, inner_order).substitute(u, k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ord(n: i64) -> Exp {
        exp_int(n)
    }

    fn int_coeffs(s: &TruncatedSeries, upto: i64) -> Vec<i64> {
        (0..upto)
            .map(|k| {
                let c = s.coefficient(exp_int(k)).unwrap();
                assert!(c.is_real());
                assert_eq!(c.re.denom(), &num_bigint::BigInt::from(1));
                i64::try_from(c.re.numer().clone()).unwrap()
            })
            .collect()
    }

    #[test]
    fn f3_leading_coefficients() {
        let s = build(MockTheta::F3, ord(8));
        assert_eq!(int_coeffs(&s, 8), vec![1, 1, -2, 3, -3, 3, -5, 7]);
    }

    #[test]
    fn psi3_starts_at_n_equals_one() {
        let s = build(MockTheta::Psi3, ord(3));
        assert_eq!(int_coeffs(&s, 3), vec![0, 1, 1]);
    }

    #[test]
    fn s0_constant_term() {
        let s = build(MockTheta::S0, ord(1));
        assert_eq!(int_coeffs(&s, 1), vec![1]);
    }

    #[test]
    fn mu6_stabilizes_and_coefficients_are_half_integers() {
        let c = build_cesaro(MockTheta::Mu6, ord(12)).unwrap();
        assert!(c.stabilized_at > 0);
        let twice = c.value.scalar_mul(&GRat::from_int(2));
        for (e, coeff) in twice.terms() {
            assert!(coeff.is_real(), "non-real μ coefficient at {e}");
            assert_eq!(coeff.re.denom(), &num_bigint::BigInt::from(1));
        }
    }

    #[test]
    fn build_at_identity_substitution() {
        let a = build(MockTheta::F3, ord(10));
        let b = build_at(MockTheta::F3, &GRat::one(), exp_int(1), ord(10)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn build_at_scales_psi6() {
        // ψ(q²) rebuilt from the definition, versus substitution.
        let direct = build(MockTheta::Psi6, ord(10)).substitute(&GRat::one(), exp_int(2)).unwrap();
        let via = build_at(MockTheta::Psi6, &GRat::one(), exp_int(2), ord(20)).unwrap();
        assert_eq!(direct, via);
    }

    #[test]
    fn mu6_substitution_commutes_with_average() {
        // Cesàro average then q -> -q, versus averaging the sign-flipped terms.
        let order = ord(10);
        let avg_then_sub =
            build(MockTheta::Mu6, order).substitute(&GRat::from_int(-1), exp_int(1)).unwrap();
        let (spec, start) = MockTheta::Mu6.spec();
        let fam = spec.family(order);
        let flipped = cesaro_sum(
            |n| fam.term(start + n as i64)?.substitute(&GRat::from_int(-1), exp_int(1)),
            order,
            default_cesaro_cap(order, 1),
        )
        .unwrap();
        assert_eq!(avg_then_sub, flipped.value);
    }

    #[test]
    fn names_round_trip() {
        for id in ALL {
            assert_eq!(MockTheta::from_name(id.name()), Some(id));
        }
        assert_eq!(MockTheta::from_name("F0"), Some(MockTheta::CapF0));
        assert_eq!(MockTheta::from_name("f0"), Some(MockTheta::F0));
        assert_eq!(MockTheta::from_name("nosuch"), None);
    }
}
