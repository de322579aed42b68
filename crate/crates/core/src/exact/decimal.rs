use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use super::{as_small_integer, format_fixed, rational_powi, round_half_even, Coeff, Rational};
use crate::error::{Error, Result};

/// Extra digits carried beyond a user-facing digit budget.
pub const GUARD_DIGITS: u32 = 10;

/// Arbitrary-precision decimal float `mant · 10^exp`, rounded half-to-even to
/// `prec` significant digits after every operation.
#[derive(Clone, Debug)]
pub struct Decimal {
    mant: BigInt,
    exp: i64,
    prec: u32,
}

fn pow10(n: u64) -> BigInt {
    Pow::pow(BigInt::from(10u32), n)
}

/// Number of decimal digits of `|m|` (zero has none).
fn num_digits(m: &BigInt) -> u64 {
    if m.is_zero() {
        return 0;
    }
    let bits = m.bits();
    let guess = ((bits - 1) as f64 * std::f64::consts::LOG10_2).floor() as u64 + 1;
    if m.magnitude() >= pow10(guess).magnitude() {
        guess + 1
    } else {
        guess
    }
}

impl Decimal {
    pub fn zero(prec: u32) -> Self {
        Self {
            mant: BigInt::zero(),
            exp: 0,
            prec,
        }
    }

    fn new(mant: BigInt, exp: i64, prec: u32) -> Self {
        let mut d = Self { mant, exp, prec };
        d.round();
        d
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    fn round(&mut self) {
        if self.mant.is_zero() {
            self.exp = 0;
            return;
        }
        let n = num_digits(&self.mant);
        if n > self.prec as u64 {
            let drop = n - self.prec as u64;
            self.mant = round_half_even(&self.mant, &pow10(drop));
            self.exp += drop as i64;
        }
    }

    /// Decimal exponent of the leading digit plus one (`0.5 → 0`, `12 → 2`).
    fn top(&self) -> i64 {
        self.exp + num_digits(&self.mant) as i64
    }

    pub fn from_rational(r: &Rational, prec: u32) -> Self {
        if r.is_zero() {
            return Self::zero(prec);
        }
        // scale so the quotient carries prec + 2 digits
        let shift = prec as i64 + 2 - (num_digits(r.numer()) as i64 - num_digits(r.denom()) as i64);
        let (num, den) = if shift >= 0 {
            (r.numer() * pow10(shift as u64), r.denom().clone())
        } else {
            (r.numer().clone(), r.denom() * pow10(shift.unsigned_abs()))
        };
        Self::new(round_half_even(&num, &den), -shift, prec)
    }

    /// `√n` for a nonnegative integer.
    pub fn sqrt_int(n: u64, prec: u32) -> Self {
        if n == 0 {
            return Self::zero(prec);
        }
        let s = prec as u64 + 2;
        let m = (BigInt::from(n) * pow10(2 * s)).sqrt();
        Self::new(m, -(s as i64), prec)
    }

    /// `base^exp` for rational `exp`; non-integer exponents need `base > 0`.
    pub fn rational_power(base: &Rational, exp: &Rational, prec: u32) -> Option<Self> {
        if let Some(e) = as_small_integer(exp) {
            return rational_powi(base, e)
                .ok()
                .map(|v| Self::from_rational(&v, prec));
        }
        if !base.is_positive() {
            return None;
        }
        let root = exp.denom().to_u32()?;
        let power = exp.numer().to_i64()?;
        let x = rational_powi(base, power).ok()?;
        // y = x^(1/root); pick s with y·10^s ≈ 10^(prec+2)
        let log10_x = (num_digits(x.numer()) as f64) - (num_digits(x.denom()) as f64);
        let s = (prec as f64 + 2.0 - log10_x / root as f64).ceil() as i64 + 1;
        let shift = s * root as i64;
        let (num, den) = if shift >= 0 {
            (x.numer() * pow10(shift as u64), x.denom().clone())
        } else {
            (x.numer().clone(), x.denom() * pow10(shift.unsigned_abs()))
        };
        let m = (num / den).nth_root(root);
        Some(Self::new(m, -s, prec))
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn signum(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Self {
        Self {
            mant: self.mant.abs(),
            ..self.clone()
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            mant: -&self.mant,
            ..self.clone()
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let prec = self.prec.min(rhs.prec);
        if rhs.is_zero() {
            return Self::new(self.mant.clone(), self.exp, prec);
        }
        if self.is_zero() {
            return Self::new(rhs.mant.clone(), rhs.exp, prec);
        }
        // an addend entirely below the rounding position cannot move the result
        // past a half-ulp tie except through its sign, so keep two digits of it
        let slack = prec as i64 + 3;
        let (a, b) = if self.top() >= rhs.top() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        if a.top() - b.top() > slack {
            let floor_exp = a.top() - slack;
            let b_sticky = Self::new(b.mant.signum(), floor_exp - 1, prec);
            return a.add_aligned(&b_sticky, prec);
        }
        a.add_aligned(b, prec)
    }

    fn add_aligned(&self, rhs: &Self, prec: u32) -> Self {
        let e = self.exp.min(rhs.exp);
        let ma = &self.mant * pow10((self.exp - e) as u64);
        let mb = &rhs.mant * pow10((rhs.exp - e) as u64);
        Self::new(ma + mb, e, prec)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self::new(
            &self.mant * &rhs.mant,
            self.exp + rhs.exp,
            self.prec.min(rhs.prec),
        )
    }

    pub fn div_rational(&self, r: &Rational) -> Result<Self> {
        if r.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        let s = self.prec as u64 + num_digits(r.numer()) + 2;
        let num = &self.mant * r.denom() * pow10(s);
        let (num, den) = if r.numer().is_negative() {
            (-num, -r.numer())
        } else {
            (num, r.numer().clone())
        };
        Ok(Self::new(
            round_half_even(&num, &den),
            self.exp - s as i64,
            self.prec,
        ))
    }

    /// The exact rational this float denotes.
    pub fn to_rational(&self) -> Rational {
        if self.exp >= 0 {
            Rational::from_integer(&self.mant * pow10(self.exp as u64))
        } else {
            Rational::new(self.mant.clone(), pow10(self.exp.unsigned_abs()))
        }
    }

    /// Fixed-point rendering with `digits` fractional digits.
    pub fn to_fixed(&self, digits: usize) -> String {
        let shift = self.exp + digits as i64;
        let m = if shift >= 0 {
            &self.mant * pow10(shift as u64)
        } else {
            round_half_even(&self.mant, &pow10(shift.unsigned_abs()))
        };
        format_fixed(&m, digits)
    }

    /// Scientific rendering with `sig` significant digits, e.g. `-1.7678e-1`.
    pub fn to_scientific(&self, sig: u32) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let sig = sig.max(1);
        let mut r = self.clone();
        r.prec = sig;
        r.round();
        let n = num_digits(&r.mant) as i64;
        let e10 = r.exp + n - 1;
        let digits = r.mant.abs().to_string();
        let digits = digits.trim_end_matches('0');
        let digits = if digits.is_empty() { "0" } else { digits };
        let sign = if r.mant.is_negative() { "-" } else { "" };
        let (lead, tail) = digits.split_at(1);
        if tail.is_empty() {
            format!("{sign}{lead}e{e10}")
        } else {
            format!("{sign}{lead}.{tail}e{e10}")
        }
    }

    /// Number of leading significant digits on which `self` and `other` agree,
    /// measured as `-log10(|a - b| / max(|a|, |b|))`; `None` when both are
    /// identical (unbounded agreement).
    pub fn agreement_digits(&self, other: &Self) -> Option<f64> {
        let a = self.to_rational();
        let b = other.to_rational();
        if a == b {
            return None;
        }
        let diff = (&a - &b).abs();
        let scale = if a.abs() > b.abs() { a.abs() } else { b.abs() };
        let ratio = diff / scale;
        Some(-log10_rational(&ratio))
    }
}

pub(crate) fn log10_rational(r: &Rational) -> f64 {
    // split into digit counts to stay finite for huge numerators/denominators
    let nd = num_digits(r.numer()) as i64;
    let dd = num_digits(r.denom()) as i64;
    let shift = nd - dd;
    let scaled = if shift >= 0 {
        r / Rational::from_integer(pow10(shift as u64))
    } else {
        r * Rational::from_integer(pow10(shift.unsigned_abs()))
    };
    scaled.to_f64().unwrap_or(1.0).abs().log10() + shift as f64
}

impl PartialEq for Decimal {
    fn eq(&self, other: &Self) -> bool {
        let e = self.exp.min(other.exp);
        let a = &self.mant * pow10((self.exp - e) as u64);
        let b = &other.mant * pow10((other.exp - e) as u64);
        a == b
    }
}

impl PartialOrd for Decimal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        let e = self.exp.min(other.exp);
        let a = &self.mant * pow10((self.exp - e) as u64);
        let b = &other.mant * pow10((other.exp - e) as u64);
        Some(a.cmp(&b))
    }
}

impl fmt::Display for Decimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sig = self.prec.saturating_sub(GUARD_DIGITS).max(1);
        f.write_str(&self.to_scientific(sig))
    }
}

impl Coeff for Decimal {
    type Ctx = u32;

    const BACKEND: &'static str = "decimal";

    fn ctx(&self) -> u32 {
        self.prec
    }

    fn from_rational(r: &Rational, ctx: &u32) -> Self {
        Decimal::from_rational(r, *ctx)
    }

    fn vanishes(&self) -> bool {
        self.mant.is_zero()
    }

    fn plus(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }

    fn minus(&self, rhs: &Self) -> Self {
        self.sub(rhs)
    }

    fn times(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }

    fn negated(&self) -> Self {
        self.neg()
    }

    fn div_rational(&self, r: &Rational) -> Result<Self> {
        Decimal::div_rational(self, r)
    }

    fn half_power(n: u64, k: u32, ctx: &u32) -> Option<Self> {
        let denom = Pow::pow(BigInt::from(n), k.div_ceil(2));
        Decimal::sqrt_int(n, *ctx)
            .div_rational(&Rational::from_integer(denom))
            .ok()
    }

    fn rational_power(base: &Rational, exp: &Rational, ctx: &u32) -> Option<Self> {
        Decimal::rational_power(base, exp, *ctx)
    }

    fn to_rational(&self) -> Option<Rational> {
        Some(Decimal::to_rational(self))
    }

    fn one_in(ctx: &u32) -> Self {
        Self::new(BigInt::one(), 0, *ctx)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn digits_count() {
        assert_eq!(num_digits(&BigInt::from(9)), 1);
        assert_eq!(num_digits(&BigInt::from(10)), 2);
        assert_eq!(num_digits(&BigInt::from(-99999)), 5);
        assert_eq!(num_digits(&pow10(300)), 301);
        assert_eq!(num_digits(&(pow10(300) - 1)), 300);
    }

    #[test]
    fn rational_round_trip_and_rendering() {
        let third = Decimal::from_rational(&rat(1, 3), 20);
        assert_eq!(third.to_fixed(5), "0.33333");
        assert_eq!(third.to_scientific(4), "3.333e-1");
        let x = Decimal::from_rational(&rat(-1234, 1), 3);
        assert_eq!(x.to_scientific(10), "-1.23e3");
        assert_eq!(
            Decimal::from_rational(&rat(5, 2), 1).to_scientific(3),
            "2e0"
        );
        assert_eq!(Decimal::zero(5).to_fixed(3), "0.000");
    }

    #[test]
    fn sqrt_and_roots() {
        let r2 = Decimal::sqrt_int(2, 30);
        assert_eq!(r2.to_fixed(25), "1.4142135623730950488016887");
        let cube = Decimal::rational_power(&rat(2, 1), &rat(1, 3), 30).unwrap();
        assert_eq!(cube.to_fixed(20), "1.25992104989487316477");
        let inv = Decimal::rational_power(&rat(3, 2), &rat(-5, 2), 30).unwrap();
        // (2/3)^(5/2) = 0.36288736930121...
        assert_eq!(inv.to_fixed(14), "0.36288736930121");
        assert!(Decimal::rational_power(&rat(-2, 1), &rat(1, 2), 30).is_none());
        assert_eq!(
            Decimal::rational_power(&rat(-2, 1), &rat(3, 1), 30).unwrap(),
            Decimal::from_rational(&rat(-8, 1), 30)
        );
    }

    #[test]
    fn arithmetic_rounds_to_precision() {
        let a = Decimal::from_rational(&rat(1, 1), 5);
        let tiny = Decimal::from_rational(&rat(1, 1_000_000_000), 5);
        assert_eq!(a.add(&tiny), a);
        assert_eq!(a.sub(&a), Decimal::zero(5));
        let half = Decimal::from_rational(&rat(1, 2), 10);
        assert_eq!(half.mul(&half).to_rational(), rat(1, 4));
        assert_eq!(
            half.div_rational(&rat(-3, 1)).unwrap().to_fixed(6),
            "-0.166667"
        );
        assert!(half.div_rational(&rat(0, 1)).is_err());
    }

    #[test]
    fn agreement_measure() {
        let a = Decimal::from_rational(&rat(1, 3), 60);
        let b = Decimal::from_rational(&rat(1, 3), 45);
        let d = a.agreement_digits(&b).unwrap();
        assert!(d > 44.0 && d < 47.0, "{d}");
        assert_eq!(a.agreement_digits(&a.clone()), None);
    }
}
