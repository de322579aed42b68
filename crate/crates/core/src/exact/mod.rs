//! Exact coefficient rings.
//!
//! Every series in the crate is generic over [`Coeff`]. The implementors are
//! plain rationals, [`SurdRational`] (rationals extended by square roots of
//! square-free integers), [`TruncPoly`] (truncated polynomials in the
//! deformation deviations with surd coefficients) and [`Decimal`], an
//! arbitrary-precision decimal float used where the exact rings are not closed.

pub(crate) mod decimal;
mod poly;
mod scalar;
mod surd;

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, Zero};

pub use decimal::{Decimal, GUARD_DIGITS};
pub use poly::{PolyBounds, TruncPoly, Var};
pub use scalar::Scalar;
pub use surd::SurdRational;
pub(crate) use surd::{fmt_rational, parse_rational};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// Builds a rational from machine integers.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Splits `n` as `s² · r` with `r` square-free, by trial division.
///
/// # Panics
/// Panics if `n == 0`.
pub fn radical_normalize(n: u64) -> (u64, u64) {
    assert!(n >= 1, "radical_normalize requires n >= 1");
    let mut rest = n;
    let mut square = 1u64;
    let mut radicand = 1u64;
    let mut p = 2u64;
    while p.saturating_mul(p) <= rest {
        let mut count = 0;
        while rest.is_multiple_of(p) {
            rest /= p;
            count += 1;
        }
        square *= p.pow(count / 2);
        if count % 2 == 1 {
            radicand *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    // whatever is left is 1 or a prime
    radicand *= rest;
    (square, radicand)
}

/// Exact `n^(-k/2)` for odd `k`.
pub fn half_power(n: u64, k: u32) -> SurdRational {
    SurdRational::half_power(n, k)
}

/// `base^exp` for a (possibly negative) integer exponent.
pub(crate) fn rational_powi(base: &Rational, exp: i64) -> Result<Rational> {
    if exp >= 0 {
        Ok(Pow::pow(base, exp as u64))
    } else if base.is_zero() {
        Err(Error::DivisionByZero)
    } else {
        Ok(Pow::pow(base.recip(), exp.unsigned_abs()))
    }
}

/// Whether `r` is an integer that fits in an `i64`.
pub(crate) fn as_small_integer(r: &Rational) -> Option<i64> {
    use num_traits::ToPrimitive;
    if r.is_integer() {
        r.to_integer().to_i64()
    } else {
        None
    }
}

/// A commutative coefficient ring the series engine works over.
///
/// Values of one implementor always share a backend, so mixed-backend
/// arithmetic cannot be expressed at this level; the dynamic [`Scalar`] wrapper
/// reports it as an error instead. `Ctx` carries what a constant needs to be
/// materialised in the ring (the digit budget of a decimal, the truncation
/// bounds of a polynomial).
pub trait Coeff: Clone + Debug + PartialEq + Send + Sync + 'static {
    type Ctx: Clone + Debug + PartialEq + Send + Sync;

    const BACKEND: &'static str;

    fn ctx(&self) -> Self::Ctx;
    fn from_rational(r: &Rational, ctx: &Self::Ctx) -> Self;
    fn vanishes(&self) -> bool;

    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;
    fn div_rational(&self, r: &Rational) -> Result<Self>;

    /// `n^(-k/2)` for odd `k`, if the ring can hold it.
    fn half_power(n: u64, k: u32, ctx: &Self::Ctx) -> Option<Self>;

    /// `base^exp` for rational `exp`, if the ring can hold it.
    fn rational_power(base: &Rational, exp: &Rational, ctx: &Self::Ctx) -> Option<Self> {
        let e = as_small_integer(exp)?;
        rational_powi(base, e)
            .ok()
            .map(|v| Self::from_rational(&v, ctx))
    }

    /// The formal deviation `ε = q - 1`, for rings that carry it.
    fn eps(_ctx: &Self::Ctx) -> Option<Self> {
        None
    }

    /// The value as a rational, when it is one.
    fn to_rational(&self) -> Option<Rational>;

    fn zero_in(ctx: &Self::Ctx) -> Self {
        Self::from_rational(&Rational::zero(), ctx)
    }

    fn one_in(ctx: &Self::Ctx) -> Self {
        Self::from_rational(&Rational::one(), ctx)
    }

    fn scale(&self, r: &Rational) -> Self {
        self.times(&Self::from_rational(r, &self.ctx()))
    }

    fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one_in(&self.ctx());
        for _ in 0..exp {
            acc = acc.times(self);
        }
        acc
    }
}

impl Coeff for Rational {
    type Ctx = ();

    const BACKEND: &'static str = "rational";

    fn ctx(&self) {}

    fn from_rational(r: &Rational, _: &()) -> Self {
        r.clone()
    }

    fn vanishes(&self) -> bool {
        self.is_zero()
    }

    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn negated(&self) -> Self {
        -self
    }

    fn div_rational(&self, r: &Rational) -> Result<Self> {
        if Zero::is_zero(r) {
            return Err(Error::DivisionByZero);
        }
        Ok(self / r)
    }

    fn half_power(n: u64, k: u32, _: &()) -> Option<Self> {
        let (s, r) = radical_normalize(n);
        if r != 1 {
            return None;
        }
        // n = s², so n^(-k/2) = s^(-k)
        Some(Pow::pow(Rational::from_integer(BigInt::from(s)), k).recip())
    }

    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
}

/// Round half to even of `num / den` (den > 0).
pub(crate) fn round_half_even(num: &BigInt, den: &BigInt) -> BigInt {
    let (q, r) = num.div_mod_floor(den);
    let twice: BigInt = &r * 2u32;
    match twice.cmp(den) {
        std::cmp::Ordering::Less => q,
        std::cmp::Ordering::Greater => q + 1,
        std::cmp::Ordering::Equal => {
            if q.is_even() {
                q
            } else {
                q + 1
            }
        }
    }
}

/// Formats `m / 10^frac` with exactly `frac` fractional digits.
pub(crate) fn format_fixed(m: &BigInt, frac: usize) -> String {
    let neg = m.is_negative();
    let digits = m.abs().to_string();
    let body = if frac == 0 {
        digits
    } else {
        let padded = format!("{:0>width$}", digits, width = frac + 1);
        let (int_part, frac_part) = padded.split_at(padded.len() - frac);
        format!("{int_part}.{frac_part}")
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division_oracle(n: u64) -> (u64, u64) {
        // largest s with s² | n
        let mut best = 1;
        let mut s = 1;
        while s * s <= n {
            if n.is_multiple_of(s * s) {
                best = s;
            }
            s += 1;
        }
        (best, n / (best * best))
    }

    #[test]
    fn radical_normalize_examples() {
        assert_eq!(radical_normalize(1), (1, 1));
        assert_eq!(radical_normalize(12), (2, 3));
        assert_eq!(radical_normalize(18), (3, 2));
        assert_eq!(radical_normalize(97), (1, 97));
        assert_eq!(radical_normalize(1 << 20), (1 << 10, 1));
    }

    #[test]
    fn radical_normalize_matches_oracle() {
        for n in 1..3000 {
            let (s, r) = radical_normalize(n);
            assert_eq!((s, r), trial_division_oracle(n), "n = {n}");
            assert_eq!(radical_normalize(r), (1, r));
        }
    }

    #[test]
    fn rational_half_power_only_for_squares() {
        assert_eq!(<Rational as Coeff>::half_power(4, 5, &()), Some(rat(1, 32)));
        assert_eq!(<Rational as Coeff>::half_power(2, 5, &()), None);
    }

    #[test]
    fn rounding_and_fixed_format() {
        let r = |a: i64, b: i64| round_half_even(&BigInt::from(a), &BigInt::from(b));
        assert_eq!(r(5, 2), BigInt::from(2));
        assert_eq!(r(7, 2), BigInt::from(4));
        assert_eq!(r(-5, 2), BigInt::from(-2));
        assert_eq!(r(-7, 3), BigInt::from(-2));
        assert_eq!(format_fixed(&BigInt::from(-176777), 6), "-0.176777");
        assert_eq!(format_fixed(&BigInt::from(0), 6), "0.000000");
        assert_eq!(format_fixed(&BigInt::from(1234), 0), "1234");
    }
}
