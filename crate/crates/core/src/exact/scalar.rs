use std::fmt;

use super::{Coeff, Decimal, Rational, SurdRational, TruncPoly};
use crate::error::{Error, Result};

macro_rules! same_backend {
    ($a:expr, $b:expr, $op:ident) => {
        match ($a, $b) {
            (Scalar::Rational(x), Scalar::Rational(y)) => Ok(Scalar::Rational(x.$op(y))),
            (Scalar::Surd(x), Scalar::Surd(y)) => Ok(Scalar::Surd(x.$op(y))),
            (Scalar::Poly(x), Scalar::Poly(y)) => Ok(Scalar::Poly(x.$op(y))),
            (Scalar::Decimal(x), Scalar::Decimal(y)) => Ok(Scalar::Decimal(x.$op(y))),
            (x, y) => Err(Error::MixedBackend(x.backend(), y.backend())),
        }
    };
}

/// A coefficient tagged with its backend.
///
/// Arithmetic between different backends is rejected rather than coerced.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Rational(Rational),
    Surd(SurdRational),
    Poly(TruncPoly),
    Decimal(Decimal),
}

impl Scalar {
    pub fn backend(&self) -> &'static str {
        match self {
            Scalar::Rational(_) => Rational::BACKEND,
            Scalar::Surd(_) => SurdRational::BACKEND,
            Scalar::Poly(_) => TruncPoly::BACKEND,
            Scalar::Decimal(_) => Decimal::BACKEND,
        }
    }

    pub fn add(&self, rhs: &Self) -> Result<Scalar> {
        same_backend!(self, rhs, plus)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Scalar> {
        same_backend!(self, rhs, minus)
    }

    pub fn mul(&self, rhs: &Self) -> Result<Scalar> {
        same_backend!(self, rhs, times)
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(a.negated()),
            Scalar::Surd(a) => Scalar::Surd(a.negated()),
            Scalar::Poly(a) => Scalar::Poly(a.negated()),
            Scalar::Decimal(a) => Scalar::Decimal(a.negated()),
        }
    }

    pub fn div_rational(&self, r: &Rational) -> Result<Scalar> {
        Ok(match self {
            Scalar::Rational(a) => Scalar::Rational(a.div_rational(r)?),
            Scalar::Surd(a) => Scalar::Surd(a.div_rational(r)?),
            Scalar::Poly(a) => Scalar::Poly(a.div_rational(r)?),
            Scalar::Decimal(a) => Scalar::Decimal(Coeff::div_rational(a, r)?),
        })
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(a) => a.vanishes(),
            Scalar::Surd(a) => a.is_zero(),
            Scalar::Poly(a) => a.vanishes(),
            Scalar::Decimal(a) => a.is_zero(),
        }
    }

    /// Fixed-point rendering with `digits` fractional digits. Polynomials must
    /// be substituted first.
    pub fn to_decimal(&self, digits: usize) -> Result<String> {
        match self {
            Scalar::Rational(a) => Ok(SurdRational::from(a.clone()).to_decimal(digits)),
            Scalar::Surd(a) => Ok(a.to_decimal(digits)),
            Scalar::Poly(p) => match p.to_rational() {
                Some(r) => Ok(SurdRational::from(r).to_decimal(digits)),
                None => Err(Error::UnboundVariable("eps")),
            },
            Scalar::Decimal(a) => Ok(a.to_fixed(digits)),
        }
    }

    /// Approximation with `prec` significant digits.
    pub fn to_decimal_value(&self, prec: u32) -> Result<Decimal> {
        match self {
            Scalar::Rational(a) => Ok(Decimal::from_rational(a, prec)),
            Scalar::Surd(a) => Ok(a.to_decimal_value(prec)),
            Scalar::Poly(p) => match p.to_rational() {
                Some(r) => Ok(Decimal::from_rational(&r, prec)),
                None => Err(Error::UnboundVariable("eps")),
            },
            Scalar::Decimal(a) => Ok(a.clone()),
        }
    }

    /// Exact rendering; `None` for the decimal backend.
    pub fn exact_string(&self) -> Option<String> {
        match self {
            Scalar::Rational(a) => Some(SurdRational::from(a.clone()).to_string()),
            Scalar::Surd(a) => Some(a.to_string()),
            Scalar::Poly(p) => Some(p.to_string()),
            Scalar::Decimal(_) => None,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Decimal(d) => write!(f, "{d}"),
            other => f.write_str(&other.exact_string().unwrap_or_default()),
        }
    }
}

impl From<Rational> for Scalar {
    fn from(v: Rational) -> Self {
        Scalar::Rational(v)
    }
}

impl From<SurdRational> for Scalar {
    fn from(v: SurdRational) -> Self {
        Scalar::Surd(v)
    }
}

impl From<TruncPoly> for Scalar {
    fn from(v: TruncPoly) -> Self {
        Scalar::Poly(v)
    }
}

impl From<Decimal> for Scalar {
    fn from(v: Decimal) -> Self {
        Scalar::Decimal(v)
    }
}
