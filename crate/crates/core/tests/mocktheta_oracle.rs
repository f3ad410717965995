//! Every mock theta builder against an independent naive summation oracle.

#[path = "support/naive.rs"]
mod naive;

use num_bigint::BigInt;
use qmock_core::mocktheta::{build, MockTheta, ALL};
use qmock_core::number::exp_int;

const ORDER: i64 = 40;

#[test]
fn all_builders_match_naive_oracle_to_order_40() {
    for id in ALL {
        let engine = build(id, exp_int(ORDER));
        let oracle = naive::naive_mock_theta(id.name(), ORDER as usize);
        for k in 0..ORDER {
            let got = engine.coefficient(exp_int(k)).unwrap();
            assert!(got.is_real(), "{}: non-real coefficient at q^{k}", id.name());
            let want = &oracle.c[k as usize];
            assert_eq!(
                &got.re, want,
                "{} disagrees with naive oracle at q^{k}: engine {} vs oracle {}",
                id.name(),
                got.re,
                want
            );
        }
    }
}

/// Builder coefficients are integers, except for μ(q) where the Cesàro
/// average introduces halves.
#[test]
fn builder_integrality() {
    let one = BigInt::from(1);
    let two = BigInt::from(2);
    for id in ALL {
        let engine = build(id, exp_int(30));
        for (e, c) in engine.terms() {
            assert!(c.is_real(), "{}: non-real coefficient at {e}", id.name());
            if id == MockTheta::Mu6 {
                let d = c.re.denom();
                assert!(d == &one || d == &two, "mu6: denominator {d} at q^{e}");
            } else {
                assert_eq!(c.re.denom(), &one, "{}: non-integer coefficient at q^{e}", id.name());
            }
        }
    }
}
