use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, Zero};

use super::{format_fixed, radical_normalize, round_half_even, Coeff, Decimal, Rational};
use crate::error::{Error, Result};

/// An element of ℚ[√2, √3, √5, …]: a finite sum `Σ c_r·√r` over square-free
/// radicands `r`, with `r = 1` holding the rational part.
///
/// The map never stores a zero coefficient or a radicand with a square
/// factor, so structural equality is value equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SurdRational {
    terms: BTreeMap<u64, Rational>,
}

impl SurdRational {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from(Rational::one())
    }

    /// `c · √r` for any positive `r`; square factors of `r` move into `c`.
    pub fn term(c: Rational, r: u64) -> Self {
        let (s, radicand) = radical_normalize(r);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(radicand, c * BigInt::from(s));
        }
        Self { terms }
    }

    pub fn sqrt(n: u64) -> Self {
        if n == 0 {
            return Self::zero();
        }
        Self::term(Rational::one(), n)
    }

    /// `n^(-k/2)` for odd `k`, rationalised as `√r / (s^k · r^((k+1)/2))`
    /// where `n = s²·r`.
    pub fn half_power(n: u64, k: u32) -> Self {
        assert!(n >= 1 && k % 2 == 1, "half_power needs n >= 1 and odd k");
        let (s, r) = radical_normalize(n);
        let denom = Pow::pow(BigInt::from(s), k) * Pow::pow(BigInt::from(r), k.div_ceil(2));
        let mut terms = BTreeMap::new();
        terms.insert(r, Rational::new(BigInt::one(), denom));
        Self { terms }
    }

    /// Radicand/coefficient pairs in ascending radicand order.
    pub fn terms(&self) -> impl Iterator<Item = (u64, &Rational)> {
        self.terms.iter().map(|(r, c)| (*r, c))
    }

    pub fn coefficient(&self, radicand: u64) -> Option<&Rational> {
        self.terms.get(&radicand)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_rational(&self) -> bool {
        self.terms.keys().all(|&r| r == 1)
    }

    pub fn to_rational(&self) -> Option<Rational> {
        if self.is_rational() {
            Some(self.terms.get(&1).cloned().unwrap_or_else(Rational::zero))
        } else {
            None
        }
    }

    fn add_term(terms: &mut BTreeMap<u64, Rational>, r: u64, c: Rational) {
        if c.is_zero() {
            return;
        }
        match terms.entry(r) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(r, c)| (*r, c * k)).collect(),
        }
    }

    /// Interval `[lo, hi]` (in units of `10^-prec`) that contains the value.
    fn enclose(&self, prec: u32) -> (BigInt, BigInt) {
        let scale = Pow::pow(BigInt::from(10u32), prec);
        let mut lo = BigInt::zero();
        let mut hi = BigInt::zero();
        for (&r, c) in &self.terms {
            if r == 1 {
                let v = c * Rational::from_integer(scale.clone());
                lo += v.floor().to_integer();
                hi += v.ceil().to_integer();
                continue;
            }
            // |c|·√r·10^prec = √(c²·r·10^(2·prec)), irrational, so strictly
            // between s and s + 1
            let sq = c * c * Rational::from_integer(BigInt::from(r) * &scale * &scale);
            let s = sq.floor().to_integer().sqrt();
            if c.is_positive() {
                lo += &s;
                hi += s + 1;
            } else {
                lo -= &s + 1;
                hi -= s;
            }
        }
        (lo, hi)
    }

    /// Sign of the value, decided exactly.
    pub fn signum(&self) -> i32 {
        if let Some(r) = self.to_rational() {
            return if r.is_zero() {
                0
            } else if r.is_positive() {
                1
            } else {
                -1
            };
        }
        let mut prec = 20;
        loop {
            let (lo, hi) = self.enclose(prec);
            if lo.is_positive() {
                return 1;
            }
            if hi.is_negative() {
                return -1;
            }
            prec *= 2;
        }
    }

    /// Correctly rounded fixed-point rendering with `digits` fractional digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        if let Some(r) = self.to_rational() {
            let scaled = r * Rational::from_integer(Pow::pow(BigInt::from(10u32), digits));
            let m = round_half_even(scaled.numer(), scaled.denom());
            return format_fixed(&m, digits);
        }
        let mut guard = 10u32;
        loop {
            let prec = digits as u32 + guard;
            let (lo, hi) = self.enclose(prec);
            let unit = Pow::pow(BigInt::from(10u32), guard);
            let a = round_half_even(&lo, &unit);
            let b = round_half_even(&hi, &unit);
            if a == b {
                return format_fixed(&a, digits);
            }
            guard *= 2;
        }
    }

    /// Approximation carrying `prec` significant digits.
    pub fn to_decimal_value(&self, prec: u32) -> Decimal {
        let mut acc = Decimal::zero(prec);
        for (&r, c) in &self.terms {
            let root = if r == 1 {
                Decimal::from_rational(&Rational::one(), prec)
            } else {
                Decimal::sqrt_int(r, prec)
            };
            acc = acc.add(&root.mul(&Decimal::from_rational(c, prec)));
        }
        acc
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        let mut terms = BTreeMap::new();
        for (&ra, ca) in &self.terms {
            for (&rb, cb) in &rhs.terms {
                // √a·√b = g·√((a/g)(b/g)) for square-free a, b with g = gcd(a, b)
                let g = ra.gcd(&rb);
                let r = (ra / g).checked_mul(rb / g).expect("radicand overflow");
                let c = ca * cb * BigInt::from(g);
                Self::add_term(&mut terms, r, c);
            }
        }
        Self { terms }
    }
}

impl From<Rational> for SurdRational {
    fn from(r: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(1, r);
        }
        Self { terms }
    }
}

impl From<i64> for SurdRational {
    fn from(n: i64) -> Self {
        Self::from(Rational::from_integer(BigInt::from(n)))
    }
}

impl Add<&SurdRational> for &SurdRational {
    type Output = SurdRational;
    fn add(self, rhs: &SurdRational) -> SurdRational {
        let mut terms = self.terms.clone();
        for (&r, c) in &rhs.terms {
            SurdRational::add_term(&mut terms, r, c.clone());
        }
        SurdRational { terms }
    }
}

impl Sub<&SurdRational> for &SurdRational {
    type Output = SurdRational;
    fn sub(self, rhs: &SurdRational) -> SurdRational {
        let mut terms = self.terms.clone();
        for (&r, c) in &rhs.terms {
            SurdRational::add_term(&mut terms, r, -c);
        }
        SurdRational { terms }
    }
}

impl Mul<&SurdRational> for &SurdRational {
    type Output = SurdRational;
    fn mul(self, rhs: &SurdRational) -> SurdRational {
        self.mul_ref(rhs)
    }
}

impl Neg for &SurdRational {
    type Output = SurdRational;
    fn neg(self) -> SurdRational {
        SurdRational {
            terms: self.terms.iter().map(|(r, c)| (*r, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr for SurdRational {
            type Output = SurdRational;
            fn $m(self, rhs: SurdRational) -> SurdRational {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Neg for SurdRational {
    type Output = SurdRational;
    fn neg(self) -> SurdRational {
        -&self
    }
}

impl Coeff for SurdRational {
    type Ctx = ();

    const BACKEND: &'static str = "exact";

    fn ctx(&self) {}

    fn from_rational(r: &Rational, _: &()) -> Self {
        Self::from(r.clone())
    }

    fn vanishes(&self) -> bool {
        self.terms.is_empty()
    }

    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn times(&self, rhs: &Self) -> Self {
        self.mul_ref(rhs)
    }

    fn negated(&self) -> Self {
        -self
    }

    fn div_rational(&self, r: &Rational) -> Result<Self> {
        if r.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(SurdRational::scale(self, &r.recip()))
    }

    fn half_power(n: u64, k: u32, _: &()) -> Option<Self> {
        Some(SurdRational::half_power(n, k))
    }

    fn to_rational(&self) -> Option<Rational> {
        SurdRational::to_rational(self)
    }

    fn scale(&self, r: &Rational) -> Self {
        SurdRational::scale(self, r)
    }
}

/// `p/q` for a rational, `p` when the denominator is one.
pub(crate) fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for SurdRational {
    /// Terms by ascending radicand: `c` or `c*sqrt(r)`, e.g.
    /// `-7/16*sqrt(2) + 1/81*sqrt(3)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (&r, c)) in self.terms.iter().enumerate() {
            let mag = fmt_rational(&c.abs());
            let body = if r == 1 {
                mag
            } else {
                format!("{mag}*sqrt({r})")
            };
            match (i, c.is_negative()) {
                (0, false) => f.write_str(&body)?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

pub(crate) fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("expected a rational like `3/2`, got `{s}`"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in `{s}`")));
    }
    Ok(Rational::new(n, d))
}

impl FromStr for SurdRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty surd expression".into()));
        }
        // split into signed terms on top-level ' + ' / ' - '
        let mut out = SurdRational::zero();
        let mut rest = s;
        let mut sign = 1;
        if let Some(r) = rest.strip_prefix('-') {
            sign = -1;
            rest = r;
        }
        loop {
            let next = [rest.find(" + "), rest.find(" - ")]
                .into_iter()
                .flatten()
                .min();
            let (tok, tail) = match next {
                Some(i) => (&rest[..i], Some(&rest[i..])),
                None => (rest, None),
            };
            let (c, r) = match tok.split_once("*sqrt(") {
                Some((c, r)) => {
                    let r = r
                        .strip_suffix(')')
                        .ok_or_else(|| Error::Parse(format!("unclosed sqrt in `{tok}`")))?;
                    let r: u64 = r
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad radicand `{r}`")))?;
                    (parse_rational(c)?, r)
                }
                None => (parse_rational(tok)?, 1),
            };
            if r == 0 {
                return Err(Error::Parse("radicand must be positive".into()));
            }
            let c = if sign < 0 { -c } else { c };
            out = &out + &SurdRational::term(c, r);
            match tail {
                None => break,
                Some(t) => {
                    sign = if t.starts_with(" - ") { -1 } else { 1 };
                    rest = &t[3..];
                }
            }
        }
        Ok(out)
    }
}
