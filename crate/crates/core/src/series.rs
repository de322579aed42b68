//! Truncated formal power series over a [`Coeff`] ring.
//!
//! A series of order `K` stores exactly `K + 1` coefficients, zeros included.
//! Binary operations on series of different orders truncate to the smaller
//! order; nothing ever extends `K`.

use std::fmt;

use num_traits::One;

use crate::error::{Error, Result};
use crate::exact::{int, Coeff, Rational};
use crate::structfn::StructureFunction;

/// The formal variable a series is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SeriesVar {
    /// Fugacity.
    Z,
    /// Reduced density `λ³/v`.
    X,
}

impl fmt::Display for SeriesVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SeriesVar::Z => "z",
            SeriesVar::X => "x",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PowerSeries<T: Coeff> {
    var: SeriesVar,
    coeffs: Vec<T>,
}

impl<T: Coeff> PowerSeries<T> {
    /// # Panics
    /// Panics on an empty coefficient vector.
    pub fn new(var: SeriesVar, coeffs: Vec<T>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least c_0");
        Self { var, coeffs }
    }

    pub fn from_fn(var: SeriesVar, order: usize, f: impl FnMut(usize) -> T) -> Self {
        Self::new(var, (0..=order).map(f).collect())
    }

    pub fn zero_series(var: SeriesVar, order: usize, ctx: &T::Ctx) -> Self {
        Self::from_fn(var, order, |_| T::zero_in(ctx))
    }

    /// The identity series `var` itself.
    pub fn identity(var: SeriesVar, order: usize, ctx: &T::Ctx) -> Self {
        Self::from_fn(var, order, |n| {
            if n == 1 {
                T::one_in(ctx)
            } else {
                T::zero_in(ctx)
            }
        })
    }

    pub fn var(&self) -> SeriesVar {
        self.var
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &T {
        &self.coeffs[n]
    }

    fn ctx(&self) -> T::Ctx {
        self.coeffs[0].ctx()
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.var, self.coeffs[..=order.min(self.order())].to_vec())
    }

    pub fn with_var(mut self, var: SeriesVar) -> Self {
        self.var = var;
        self
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let k = self.order().min(rhs.order());
        Self::from_fn(self.var, k, |n| self.coeffs[n].plus(&rhs.coeffs[n]))
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let k = self.order().min(rhs.order());
        Self::from_fn(self.var, k, |n| self.coeffs[n].minus(&rhs.coeffs[n]))
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.var, self.coeffs.iter().map(|a| a.times(c)).collect())
    }

    /// Cauchy product truncated at the smaller order.
    pub fn mul(&self, rhs: &Self) -> Self {
        let k = self.order().min(rhs.order());
        let ctx = self.ctx();
        Self::from_fn(self.var, k, |n| {
            let mut acc = T::zero_in(&ctx);
            for i in 0..=n {
                let (a, b) = (&self.coeffs[i], &rhs.coeffs[n - i]);
                if !a.vanishes() && !b.vanishes() {
                    acc = acc.plus(&a.times(b));
                }
            }
            acc
        })
    }

    /// `outer(inner(·))`, written in `inner`'s variable. Needs `inner(0) = 0`.
    pub fn compose(outer: &Self, inner: &Self) -> Result<Self> {
        if !inner.coeffs[0].vanishes() {
            return Err(Error::NonzeroConstantTerm);
        }
        let k = outer.order().min(inner.order());
        let inner = inner.truncate(k);
        let ctx = inner.ctx();
        // Horner: ((o_K·g + o_{K-1})·g + …)·g + o_0
        let mut acc = Self::zero_series(inner.var, k, &ctx);
        for j in (0..=k).rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0] = acc.coeffs[0].plus(&outer.coeffs[j]);
        }
        Ok(acc)
    }

    /// Compositional inverse `g` with `f(g(y)) = y`, written in `var`.
    ///
    /// Solved order by order: the unknown `g_k` enters `[y^k] f(g(y))` only
    /// through `a_1·g_k`, every other contribution comes from the powers
    /// `g^j` (`j ≥ 2`) built from `g_1..g_{k-1}`.
    pub fn revert(&self, var: SeriesVar) -> Result<Self> {
        if !self.coeffs[0].vanishes() {
            return Err(Error::NonzeroConstantTerm);
        }
        let k_max = self.order();
        let ctx = self.ctx();
        if k_max == 0 {
            return Ok(Self::zero_series(var, 0, &ctx));
        }
        let a1 = &self.coeffs[1];
        if a1.vanishes() {
            return Err(Error::ZeroLinearCoefficient);
        }
        let a1 = a1.to_rational().ok_or_else(|| {
            Error::InvalidParameter("reversion needs a rational linear coefficient".into())
        })?;
        let inv_a1 = a1.recip();

        let mut g = vec![T::zero_in(&ctx); k_max + 1];
        g[1] = T::from_rational(&inv_a1, &ctx);
        // powers[j][n] = [y^n] g^j
        let mut powers: Vec<Vec<T>> = vec![vec![T::zero_in(&ctx); k_max + 1]; k_max + 1];
        powers[1][1] = g[1].clone();
        for k in 2..=k_max {
            let mut s = T::zero_in(&ctx);
            for j in 2..=k {
                let mut c = T::zero_in(&ctx);
                for m in 1..=(k + 1 - j) {
                    let (x, y) = (&g[m], &powers[j - 1][k - m]);
                    if !x.vanishes() && !y.vanishes() {
                        c = c.plus(&x.times(y));
                    }
                }
                if !self.coeffs[j].vanishes() && !c.vanishes() {
                    s = s.plus(&self.coeffs[j].times(&c));
                }
                powers[j][k] = c;
            }
            g[k] = s.negated().scale(&inv_a1);
            powers[1][k] = g[k].clone();
        }
        Ok(Self::new(var, g))
    }

    /// The z-multiplied generalised Jackson derivative: `c_n ↦ φ(n)·c_n`.
    pub fn jackson_apply(&self, sf: &StructureFunction) -> Result<Self> {
        let ctx = self.ctx();
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| {
                if c.vanishes() {
                    Ok(c.clone())
                } else {
                    Ok(sf.eval::<T>(n as u64, &ctx)?.times(c))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(self.var, coeffs))
    }

    /// The undeformed Euler operator `z·d/dz`: `c_n ↦ n·c_n`.
    pub fn euler(&self) -> Self {
        Self::new(
            self.var,
            self.coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| c.scale(&int(n as i64)))
                .collect(),
        )
    }

    /// Inverse of `z·d/dz` on series without constant term: `c_n ↦ c_n / n`.
    pub fn euler_inverse(&self) -> Result<Self> {
        if !self.coeffs[0].vanishes() {
            return Err(Error::NonzeroConstantTerm);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| {
                if n == 0 {
                    Ok(c.clone())
                } else {
                    c.div_rational(&int(n as i64))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(self.var, coeffs))
    }

    /// Drops `c_0` and shifts every coefficient down one power (exact
    /// division by the variable). Needs `c_0 = 0`.
    pub fn shift_down(&self) -> Result<Self> {
        if !self.coeffs[0].vanishes() {
            return Err(Error::NonzeroConstantTerm);
        }
        let ctx = self.ctx();
        if self.order() == 0 {
            return Ok(Self::zero_series(self.var, 0, &ctx));
        }
        Ok(Self::new(self.var, self.coeffs[1..].to_vec()))
    }

    /// Whether this is `var` to its order.
    pub fn is_identity(&self) -> bool {
        self.coeffs.iter().enumerate().all(|(n, c)| match n {
            1 => c.to_rational().is_some_and(|r| r.is_one()),
            _ => c.vanishes(),
        })
    }

    pub fn map<U: Coeff>(&self, f: impl FnMut(&T) -> U) -> PowerSeries<U> {
        PowerSeries::new(self.var, self.coeffs.iter().map(f).collect())
    }
}

impl<T: Coeff + fmt::Display> fmt::Display for PowerSeries<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.vanishes() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match n {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*{}", self.var)?,
                _ => write!(f, "({c})*{}^{n}", self.var)?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O({}^{})", self.var, self.order() + 1)
    }
}

/// Reversion of `f` as a convenience over rationals, mostly for tests and
/// diagnostics.
pub fn revert_rational(coeffs: &[Rational]) -> Result<Vec<Rational>> {
    PowerSeries::new(SeriesVar::X, coeffs.to_vec())
        .revert(SeriesVar::X)
        .map(PowerSeries::into_coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, SurdRational};

    fn ps(c: &[i64]) -> PowerSeries<Rational> {
        PowerSeries::new(SeriesVar::Z, c.iter().map(|&v| int(v)).collect())
    }

    #[test]
    fn products_and_composition() {
        assert_eq!(ps(&[1, 1, 0]).mul(&ps(&[1, -1, 0])), ps(&[1, 0, -1]));
        let id = PowerSeries::identity(SeriesVar::Z, 2, &());
        assert_eq!(
            PowerSeries::compose(&ps(&[0, 1, 1]), &id).unwrap(),
            ps(&[0, 1, 1])
        );
        assert_eq!(
            PowerSeries::compose(&ps(&[0, 0, 1, 0]), &ps(&[0, 2, 0, 0])).unwrap(),
            ps(&[0, 0, 4, 0])
        );
        assert_eq!(
            PowerSeries::compose(&ps(&[0, 1]), &ps(&[1, 1])),
            Err(Error::NonzeroConstantTerm)
        );
        // orders truncate to the smaller one
        assert_eq!(ps(&[1, 1, 1, 1]).mul(&ps(&[1, 1])).order(), 1);
    }

    #[test]
    fn reversion_examples() {
        let id = PowerSeries::<Rational>::identity(SeriesVar::Z, 5, &());
        assert!(id.revert(SeriesVar::X).unwrap().is_identity());
        // Catalan numbers
        let g = ps(&[0, 1, -1, 0, 0]).revert(SeriesVar::X).unwrap();
        assert_eq!(g.coeffs(), &[int(0), int(1), int(1), int(2), int(5)]);
        assert_eq!(
            ps(&[0, 0, 1]).revert(SeriesVar::X),
            Err(Error::ZeroLinearCoefficient)
        );
        assert_eq!(
            ps(&[1, 1]).revert(SeriesVar::X),
            Err(Error::NonzeroConstantTerm)
        );
        // nonunit linear coefficient: f = 2z ⇒ g = x/2
        let g = ps(&[0, 2, 0]).revert(SeriesVar::X).unwrap();
        assert_eq!(g.coeffs(), &[int(0), rat(1, 2), int(0)]);
    }

    #[test]
    fn undeformed_density_reversion() {
        // x = Σ z^n / n^(3/2)
        let f = PowerSeries::<SurdRational>::from_fn(SeriesVar::Z, 2, |n| {
            if n == 0 {
                SurdRational::zero()
            } else {
                SurdRational::half_power(n as u64, 3)
            }
        });
        let g = f.revert(SeriesVar::X).unwrap();
        assert_eq!(g.coeff(2), &-SurdRational::half_power(2, 3));
    }

    #[test]
    fn jackson_and_euler() {
        let sf = StructureFunction::QBasic { q: int(3) };
        let mono = PowerSeries::<Rational>::from_fn(SeriesVar::Z, 4, |n| int((n == 3) as i64));
        let j = mono.jackson_apply(&sf).unwrap();
        assert_eq!(j.coeff(3), &int(13));
        let half = StructureFunction::QuadraticMu { mu: rat(1, 2) };
        assert!(mono
            .jackson_apply(&half)
            .unwrap()
            .coeffs()
            .iter()
            .all(|c| c.vanishes()));
        let undeformed = StructureFunction::QBasic { q: int(1) };
        let f = ps(&[5, 1, 2, 3]);
        assert_eq!(f.jackson_apply(&undeformed).unwrap(), f.euler());
        assert_eq!(f.euler().euler_inverse().unwrap(), ps(&[0, 1, 2, 3]));
        assert_eq!(f.euler_inverse(), Err(Error::NonzeroConstantTerm));
        assert_eq!(ps(&[0, 1]).euler_inverse().unwrap(), ps(&[0, 1]));
    }

    #[test]
    fn display() {
        assert_eq!(ps(&[0, 1, -2]).to_string(), "(1)*z + (-2)*z^2 + O(z^3)");
    }
}
