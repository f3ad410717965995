//! Naive reference implementations used as independent oracles.
//!
//! Everything here is deliberately separate from the engine: dense
//! coefficient vectors indexed by integer exponent, direct double-loop
//! products, and schoolbook long division. No code is shared with the
//! library's sparse-map arithmetic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Rat = BigRational;

fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Dense polynomial mod `q^N` over the rationals.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly {
    pub c: Vec<Rat>,
}

impl Poly {
    pub fn zero(n: usize) -> Self {
        Poly { c: vec![Rat::zero(); n] }
    }

    pub fn one(n: usize) -> Self {
        let mut p = Poly::zero(n);
        if n > 0 {
            p.c[0] = Rat::one();
        }
        p
    }

    pub fn order(&self) -> usize {
        self.c.len()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.order().min(other.order());
        let mut out = Poly::zero(n);
        for k in 0..n {
            out.c[k] = &self.c[k] + &other.c[k];
        }
        out
    }

    pub fn scale(&self, s: &Rat) -> Poly {
        Poly { c: self.c.iter().map(|x| x * s).collect() }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let n = self.order().min(other.order());
        let mut out = Poly::zero(n);
        for i in 0..n {
            if self.c[i].is_zero() {
                continue;
            }
            for j in 0..n - i {
                if other.c[j].is_zero() {
                    continue;
                }
                let prod = &self.c[i] * &other.c[j];
                out.c[i + j] = &out.c[i + j] + &prod;
            }
        }
        out
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: usize) -> Poly {
        let n = self.order();
        let mut out = Poly::zero(n);
        for i in 0..n.saturating_sub(k) {
            out.c[i + k] = self.c[i].clone();
        }
        out
    }

    /// Long division: `self / den`, requiring `den.c[0] != 0`.
    pub fn div(&self, den: &Poly) -> Poly {
        let n = self.order().min(den.order());
        assert!(!den.c[0].is_zero(), "oracle division needs a unit constant term");
        let inv0 = Rat::one() / den.c[0].clone();
        let mut out = Poly::zero(n);
        for k in 0..n {
            let mut acc = self.c[k].clone();
            for j in 1..=k {
                if den.c[j].is_zero() || out.c[k - j].is_zero() {
                    continue;
                }
                acc -= &den.c[j] * &out.c[k - j];
            }
            out.c[k] = acc * &inv0;
        }
        out
    }
}

/// `1 + sign·q^e` (mod q^N).
pub fn binom(sign: i64, e: usize, n: usize) -> Poly {
    let mut p = Poly::one(n);
    if e < n {
        p.c[e] = &p.c[e] + &rat(sign);
    }
    p
}

/// `(unit·q^e; q^step)_count = Π_{j<count} (1 - unit·q^{e + j·step})`,
/// with `unit` in {1, -1}.
pub fn poch(unit: i64, e: usize, step: usize, count: usize, n: usize) -> Poly {
    let mut acc = Poly::one(n);
    for j in 0..count {
        acc = acc.mul(&binom(-unit, e + j * step, n));
    }
    acc
}

/// One naive unilateral term `q^exp · poch_num / poch_den`.
fn term(
    exp: usize,
    nums: &[(i64, usize, usize, usize)],
    dens: &[(i64, usize, usize, usize)],
    n: usize,
) -> Poly {
    let mut p = Poly::one(n).shift(exp);
    for &(u, e, s, cnt) in nums {
        p = p.mul(&poch(u, e, s, cnt, n));
    }
    for &(u, e, s, cnt) in dens {
        p = p.div(&poch(u, e, s, cnt, n));
    }
    p
}

/// Direct double-loop summation of each mock theta definition. `name` uses
/// the engine's naming (`f3`, `phi3`, ..., `F0`, `S1`, ...).
pub fn naive_mock_theta(name: &str, n: usize) -> Poly {
    let mut acc = Poly::zero(n);
    match name {
        // ---- third order -------------------------------------------------
        "f3" => {
            let mut k = 0usize;
            while k * k < n {
                acc = acc.add(&term(k * k, &[], &[(-1, 1, 1, k), (-1, 1, 1, k)], n));
                k += 1;
            }
        }
        "phi3" => {
            let mut k = 0usize;
            while k * k < n {
                acc = acc.add(&term(k * k, &[], &[(-1, 2, 2, k)], n));
                k += 1;
            }
        }
        "chi3" => {
            let mut k = 0usize;
            while k * k < n {
                acc = acc.add(&term(k * k, &[(-1, 1, 1, k)], &[(-1, 3, 3, k)], n));
                k += 1;
            }
        }
        "psi3" => {
            let mut k = 1usize;
            while k * k < n {
                acc = acc.add(&term(k * k, &[], &[(1, 1, 2, k)], n));
                k += 1;
            }
        }
        "nu3" => {
            let mut k = 0usize;
            while k * k + k < n {
                acc = acc.add(&term(k * k + k, &[], &[(-1, 1, 2, k + 1)], n));
                k += 1;
            }
        }
        // ---- fifth order -------------------------------------------------
        "f0" => {
            let mut k = 0usize;
            while k * k < n {
                acc = acc.add(&term(k * k, &[], &[(-1, 1, 1, k)], n));
                k += 1;
            }
        }
        "f1" => {
            let mut k = 0usize;
            while k * (k + 1) < n {
                acc = acc.add(&term(k * (k + 1), &[], &[(-1, 1, 1, k)], n));
                k += 1;
            }
        }
        "F0" => {
            let mut k = 0usize;
            while 2 * k * k < n {
                acc = acc.add(&term(2 * k * k, &[], &[(1, 1, 2, k)], n));
                k += 1;
            }
        }
        "F1" => {
            let mut k = 0usize;
            while 2 * k * (k + 1) < n {
                acc = acc.add(&term(2 * k * (k + 1), &[], &[(1, 1, 2, k + 1)], n));
                k += 1;
            }
        }
        "phi0" => {
            let mut k = 0usize;
            while k * k < n {
                acc = acc.add(&term(k * k, &[(-1, 1, 2, k)], &[], n));
                k += 1;
            }
        }
        "phi1" => {
            let mut k = 0usize;
            while (k + 1) * (k + 1) < n {
                acc = acc.add(&term((k + 1) * (k + 1), &[(-1, 1, 2, k)], &[], n));
                k += 1;
            }
        }
        "psi0" => {
            let mut k = 0usize;
            while (k + 1) * (k + 2) / 2 < n {
                acc = acc.add(&term((k + 1) * (k + 2) / 2, &[(-1, 1, 1, k)], &[], n));
                k += 1;
            }
        }
        "psi1" => {
            let mut k = 0usize;
            while k * (k + 1) / 2 < n {
                acc = acc.add(&term(k * (k + 1) / 2, &[(-1, 1, 1, k)], &[], n));
                k += 1;
            }
        }
        "chi0" => {
            let mut k = 0usize;
            while k < n {
                acc = acc.add(&term(k, &[(1, 1, 1, k)], &[(1, 1, 1, 2 * k)], n));
                k += 1;
            }
        }
        "chi1" => {
            let mut k = 0usize;
            while k < n {
                acc = acc.add(&term(k, &[(1, 1, 1, k)], &[(1, 1, 1, 2 * k + 1)], n));
                k += 1;
            }
        }
        // ---- sixth order -------------------------------------------------
        "phi6" => {
            let mut k = 0usize;
            while k * k < n {
                let sign = if k % 2 == 0 { 1 } else { -1 };
                acc = acc.add(&term(k * k, &[(1, 1, 2, k)], &[(-1, 1, 1, 2 * k)], n).scale(&rat(sign)));
                k += 1;
            }
        }
        "psi6" => {
            let mut k = 0usize;
            while (k + 1) * (k + 1) < n {
                let sign = if k % 2 == 0 { 1 } else { -1 };
                acc = acc
                    .add(&term((k + 1) * (k + 1), &[(1, 1, 2, k)], &[(-1, 1, 1, 2 * k + 1)], n).scale(&rat(sign)));
                k += 1;
            }
        }
        "rho6" => {
            let mut k = 0usize;
            while k * (k + 1) / 2 < n {
                acc = acc.add(&term(k * (k + 1) / 2, &[(-1, 1, 1, k)], &[(1, 1, 2, k + 1)], n));
                k += 1;
            }
        }
        "sigma6" => {
            let mut k = 0usize;
            while (k + 1) * (k + 2) / 2 < n {
                acc = acc.add(&term((k + 1) * (k + 2) / 2, &[(-1, 1, 1, k)], &[(1, 1, 2, k + 1)], n));
                k += 1;
            }
        }
        "lambda6" => {
            let mut k = 0usize;
            while k < n {
                let sign = if k % 2 == 0 { 1 } else { -1 };
                acc = acc.add(&term(k, &[(1, 1, 2, k)], &[(-1, 1, 1, k)], n).scale(&rat(sign)));
                k += 1;
            }
        }
        "mu6" => {
            // Even/odd partial sums to index 2n, then average.
            let mut even = Poly::zero(n);
            let mut odd;
            let mut partial = Poly::zero(n);
            let mut last_even = Poly::zero(n);
            let mut last_odd = Poly::zero(n);
            for k in 0..=(2 * n + 2) {
                let sign = if k % 2 == 0 { 1 } else { -1 };
                let t = term(0, &[(1, 1, 2, k)], &[(-1, 1, 1, k)], n).scale(&rat(sign));
                partial = partial.add(&t);
                if k % 2 == 0 {
                    last_even = partial.clone();
                } else {
                    last_odd = partial.clone();
                }
            }
            even = even.add(&last_even);
            odd = last_odd;
            acc = even.add(&odd).scale(&Rat::new(BigInt::from(1), BigInt::from(2)));
        }
        "phi6minus" => {
            let mut k = 1usize;
            while k < n {
                acc = acc.add(&term(k, &[(-1, 1, 1, 2 * k - 1)], &[(1, 1, 2, k)], n));
                k += 1;
            }
        }
        "psi6minus" => {
            let mut k = 1usize;
            while k < n {
                acc = acc.add(&term(k, &[(-1, 1, 1, 2 * k - 2)], &[(1, 1, 2, k)], n));
                k += 1;
            }
        }
        // ---- eighth order ------------------------------------------------
        "S0" => {
            let mut k = 0usize;
            while k * k < n {
                acc = acc.add(&term(k * k, &[(-1, 1, 2, k)], &[(-1, 2, 2, k)], n));
                k += 1;
            }
        }
        "S1" => {
            let mut k = 0usize;
            while k * (k + 2) < n {
                acc = acc.add(&term(k * (k + 2), &[(-1, 1, 2, k)], &[(-1, 2, 2, k)], n));
                k += 1;
            }
        }
        "T0" => {
            let mut k = 0usize;
            while (k + 1) * (k + 2) < n {
                acc = acc.add(&term((k + 1) * (k + 2), &[(-1, 2, 2, k)], &[(-1, 1, 2, k + 1)], n));
                k += 1;
            }
        }
        "T1" => {
            let mut k = 0usize;
            while k * (k + 1) < n {
                acc = acc.add(&term(k * (k + 1), &[(-1, 2, 2, k)], &[(-1, 1, 2, k + 1)], n));
                k += 1;
            }
        }
        other => panic!("no naive oracle for {other}"),
    }
    acc
}

/// Naive partition-count oracle: p(k) for k < n by dynamic programming over
/// part sizes (used against `1/(q;q)_∞`).
pub fn naive_partitions(n: usize) -> Vec<u64> {
    let mut p = vec![0u64; n];
    if n > 0 {
        p[0] = 1;
    }
    for part in 1..n {
        for k in part..n {
            p[k] += p[k - part];
        }
    }
    p
}
