use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use super::{Coeff, Rational, SurdRational};
use crate::error::{Error, Result};

/// The formal deviations a [`TruncPoly`] may carry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    /// `ε = q - 1`
    Eps,
    /// `μ̃`
    Mu,
}

impl Var {
    pub fn name(self) -> &'static str {
        match self {
            Var::Eps => "eps",
            Var::Mu => "mu",
        }
    }
}

/// Maximum retained degree in each variable. A bound of zero means the
/// variable is absent.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct PolyBounds {
    pub eps: u32,
    pub mu: u32,
}

impl PolyBounds {
    pub fn eps_only(order: u32) -> Self {
        Self { eps: order, mu: 0 }
    }

    pub fn new(eps: u32, mu: u32) -> Self {
        Self { eps, mu }
    }

    fn min(self, other: Self) -> Self {
        Self {
            eps: self.eps.min(other.eps),
            mu: self.mu.min(other.mu),
        }
    }

    fn admits(self, (i, j): (u32, u32)) -> bool {
        i <= self.eps && j <= self.mu
    }
}

/// Polynomial in `ε` and `μ̃` with surd coefficients, truncated at fixed
/// degree bounds. Arithmetic between different bounds keeps the smaller ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncPoly {
    bounds: PolyBounds,
    terms: BTreeMap<(u32, u32), SurdRational>,
}

impl TruncPoly {
    pub fn zero(bounds: PolyBounds) -> Self {
        Self {
            bounds,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: SurdRational, bounds: PolyBounds) -> Self {
        let mut p = Self::zero(bounds);
        p.insert((0, 0), c);
        p
    }

    /// The bare variable, or zero when its bound is zero.
    pub fn var(v: Var, bounds: PolyBounds) -> Self {
        let mut p = Self::zero(bounds);
        let exps = match v {
            Var::Eps => (1, 0),
            Var::Mu => (0, 1),
        };
        p.insert(exps, SurdRational::one());
        p
    }

    /// Builds from `(eps power, mu power) → coefficient` entries, dropping
    /// those beyond `bounds`.
    pub fn from_terms(
        bounds: PolyBounds,
        terms: impl IntoIterator<Item = ((u32, u32), SurdRational)>,
    ) -> Self {
        let mut p = Self::zero(bounds);
        for (e, c) in terms {
            p.insert(e, c);
        }
        p
    }

    fn insert(&mut self, e: (u32, u32), c: SurdRational) {
        if !self.bounds.admits(e) || c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_default();
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn bounds(&self) -> PolyBounds {
        self.bounds
    }

    pub fn coefficient(&self, eps_pow: u32, mu_pow: u32) -> SurdRational {
        self.terms
            .get(&(eps_pow, mu_pow))
            .cloned()
            .unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &SurdRational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    /// Coefficient of `ε^i` at `μ̃⁰`, for `i = 0..=bounds.eps`.
    pub fn eps_coefficients(&self) -> Vec<SurdRational> {
        (0..=self.bounds.eps)
            .map(|i| self.coefficient(i, 0))
            .collect()
    }

    /// Evaluates at rational values of the variables.
    pub fn substitute(&self, eps: &Rational, mu: &Rational) -> SurdRational {
        let mut acc = SurdRational::zero();
        for (&(i, j), c) in &self.terms {
            let w = num_traits::Pow::pow(eps, i) * num_traits::Pow::pow(mu, j);
            acc = &acc + &c.scale(&w);
        }
        acc
    }

    fn combine(&self, rhs: &Self, sign: i64) -> Self {
        let mut out = Self::zero(self.bounds.min(rhs.bounds));
        for (&e, c) in &self.terms {
            out.insert(e, c.clone());
        }
        for (&e, c) in &rhs.terms {
            out.insert(e, if sign < 0 { -c } else { c.clone() });
        }
        out
    }

    fn product(&self, rhs: &Self) -> Self {
        let mut out = Self::zero(self.bounds.min(rhs.bounds));
        for (&(i1, j1), a) in &self.terms {
            for (&(i2, j2), b) in &rhs.terms {
                let e = (i1 + i2, j1 + j2);
                if out.bounds.admits(e) {
                    out.insert(e, a * b);
                }
            }
        }
        out
    }
}

impl Coeff for TruncPoly {
    type Ctx = PolyBounds;

    const BACKEND: &'static str = "exact-poly";

    fn ctx(&self) -> PolyBounds {
        self.bounds
    }

    fn from_rational(r: &Rational, ctx: &PolyBounds) -> Self {
        Self::constant(SurdRational::from(r.clone()), *ctx)
    }

    fn vanishes(&self) -> bool {
        self.terms.is_empty()
    }

    fn plus(&self, rhs: &Self) -> Self {
        self.combine(rhs, 1)
    }

    fn minus(&self, rhs: &Self) -> Self {
        self.combine(rhs, -1)
    }

    fn times(&self, rhs: &Self) -> Self {
        self.product(rhs)
    }

    fn negated(&self) -> Self {
        Self {
            bounds: self.bounds,
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    fn div_rational(&self, r: &Rational) -> Result<Self> {
        if r.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let inv = r.recip();
        Ok(Self {
            bounds: self.bounds,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (*e, c.scale(&inv)))
                .collect(),
        })
    }

    fn half_power(n: u64, k: u32, ctx: &PolyBounds) -> Option<Self> {
        Some(Self::constant(SurdRational::half_power(n, k), *ctx))
    }

    fn eps(ctx: &PolyBounds) -> Option<Self> {
        Some(Self::var(Var::Eps, *ctx))
    }

    fn to_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&(0, 0)).and_then(|c| c.to_rational()),
            _ => None,
        }
    }

    fn scale(&self, r: &Rational) -> Self {
        Self {
            bounds: self.bounds,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (*e, c.scale(r)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }
}

impl fmt::Display for TruncPoly {
    /// `(c00) + (c10)*eps + (c01)*mu + (c21)*eps^2*mu`, ascending in `ε` then `μ̃`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (&(i, j), c)) in self.terms.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})")?;
            for (v, p) in [(Var::Eps, i), (Var::Mu, j)] {
                match p {
                    0 => {}
                    1 => write!(f, "*{}", v.name())?,
                    _ => write!(f, "*{}^{p}", v.name())?,
                }
            }
        }
        Ok(())
    }
}
