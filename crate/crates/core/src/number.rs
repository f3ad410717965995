//! Coefficient and exponent arithmetic.
//!
//! Coefficients live in the Gaussian rationals Q(i) so that parameter
//! specializations involving `i` stay exact; plain rational inputs embed with
//! zero imaginary part. Exponents are exact rationals over `i64` (they stay
//! tiny: a few thousand at most), kept separate from the arbitrary-precision
//! coefficient field.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, used for series coefficients.
pub type Rat = BigRational;

/// Exact rational exponent. Series exponents and truncation orders are small,
/// so a machine-word ratio suffices and keeps map keys cheap.
pub type Exp = Rational64;

pub fn exp(n: i64, d: i64) -> Exp {
    Exp::new(n, d)
}

pub fn exp_int(n: i64) -> Exp {
    Exp::from_integer(n)
}

/// A Gaussian rational `re + im·i`, the coefficient field of every series.
///
/// All arithmetic is exact; denominators are kept in lowest terms with
/// positive denominator by the underlying `BigRational`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GRat {
    pub re: Rat,
    pub im: Rat,
}

impl GRat {
    pub fn new(re: Rat, im: Rat) -> Self {
        GRat { re, im }
    }

    pub fn from_rat(re: Rat) -> Self {
        GRat { re, im: Rat::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(Rat::from_integer(BigInt::from(n)))
    }

    pub fn from_frac(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_rat(Rat::new(BigInt::from(num), BigInt::from(den)))
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GRat { re: Rat::zero(), im: Rat::one() }
    }

    pub fn zero() -> Self {
        GRat { re: Rat::zero(), im: Rat::zero() }
    }

    pub fn one() -> Self {
        GRat { re: Rat::one(), im: Rat::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GRat { re: self.re.clone(), im: -self.im.clone() }
    }

    /// Squared modulus `re² + im²` (a plain rational).
    pub fn norm(&self) -> Rat {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Exact multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "division by zero Gaussian rational");
        let n = self.norm();
        GRat { re: &self.re / &n, im: -(&self.im / &n) }
    }

    /// Exact integer power (negative exponents invert first).
    pub fn pow(&self, e: i64) -> Self {
        if e == 0 {
            return GRat::one();
        }
        let (mut base, mut e) = if e < 0 { (self.inv(), (-e) as u64) } else { (self.clone(), e as u64) };
        let mut acc = GRat::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// `u^e` for a rational exponent: defined for any `e` when `u = 1`,
    /// otherwise only when `e` is an integer.
    pub fn pow_exp(&self, e: Exp) -> Result<Self> {
        if self.is_one() {
            return Ok(GRat::one());
        }
        if !e.is_integer() {
            return Err(Error::NonIntegralUnitPower { exponent: e });
        }
        Ok(self.pow(e.to_integer()))
    }

    /// Multiplicative order if this is one of the exact units {1, -1, i, -i}.
    pub fn unit_order(&self) -> Option<u32> {
        if self.is_one() {
            Some(1)
        } else if self.re == -Rat::one() && self.im.is_zero() {
            Some(2)
        } else if self.re.is_zero() && (self.im.is_one() || self.im == -Rat::one()) {
            Some(4)
        } else {
            None
        }
    }
}

impl Add for &GRat {
    type Output = GRat;
    fn add(self, rhs: &GRat) -> GRat {
        GRat { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl Sub for &GRat {
    type Output = GRat;
    fn sub(self, rhs: &GRat) -> GRat {
        GRat { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl Mul for &GRat {
    type Output = GRat;
    fn mul(self, rhs: &GRat) -> GRat {
        GRat {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Div for &GRat {
    type Output = GRat;
    fn div(self, rhs: &GRat) -> GRat {
        self * &rhs.inv()
    }
}

impl Neg for &GRat {
    type Output = GRat;
    fn neg(self) -> GRat {
        GRat { re: -self.re.clone(), im: -self.im.clone() }
    }
}

impl Neg for GRat {
    type Output = GRat;
    fn neg(self) -> GRat {
        GRat { re: -self.re, im: -self.im }
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for GRat {
            type Output = GRat;
            fn $method(self, rhs: GRat) -> GRat {
                $trait::$method(&self, &rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for GRat {
    /// `0`, `3/2`, `i`, `-i`, `2i`, `3/2+1/2i`, `1-i`, ...
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", fmt_rat(&self.re));
        }
        let im_part = if self.im.is_one() {
            "i".to_string()
        } else if self.im == -Rat::one() {
            "-i".to_string()
        } else {
            format!("{}i", fmt_rat(&self.im))
        };
        if self.re.is_zero() {
            write!(f, "{}", im_part)
        } else if self.im.is_positive() {
            write!(f, "{}+{}", fmt_rat(&self.re), im_part)
        } else {
            write!(f, "{}{}", fmt_rat(&self.re), im_part)
        }
    }
}

impl fmt::Debug for GRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl From<i64> for GRat {
    fn from(n: i64) -> Self {
        GRat::from_int(n)
    }
}

/// Render an exponent as `3`, `-1/2`, ...
pub fn fmt_exp(e: &Exp) -> String {
    if e.is_integer() {
        format!("{}", e.numer())
    } else {
        format!("{}/{}", e.numer(), e.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_field_ops() {
        let i = GRat::i();
        assert_eq!(&i * &i, GRat::from_int(-1));
        assert_eq!(i.pow(4), GRat::one());
        assert_eq!(i.pow(-1), -GRat::i());
        let z = GRat::new(Rat::new(3.into(), 5.into()), Rat::new(4.into(), 5.into()));
        assert_eq!(z.norm(), Rat::one());
        assert_eq!(&z * &z.inv(), GRat::one());
    }

    #[test]
    fn unit_pow_exp() {
        let m1 = GRat::from_int(-1);
        assert_eq!(m1.pow_exp(exp_int(7)).unwrap(), GRat::from_int(-1));
        assert!(matches!(
            m1.pow_exp(exp(1, 2)),
            Err(Error::NonIntegralUnitPower { .. })
        ));
        assert_eq!(GRat::one().pow_exp(exp(1, 2)).unwrap(), GRat::one());
    }

    #[test]
    fn display_forms() {
        assert_eq!(GRat::from_int(0).to_string(), "0");
        assert_eq!(GRat::from_frac(3, 2).to_string(), "3/2");
        assert_eq!(GRat::i().to_string(), "i");
        assert_eq!((-GRat::i()).to_string(), "-i");
        let z = GRat::new(Rat::one(), -Rat::one());
        assert_eq!(z.to_string(), "1-i");
    }
}
