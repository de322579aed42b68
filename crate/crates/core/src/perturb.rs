//! Single-mode Hamiltonian `H = ½(φ(N+1) + φ(N))` (with `ω = 1`) expanded in
//! the deformation deviations. The zeroth-order piece is `H₀ = N + ½`; every
//! higher term is read as an interaction.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};

use crate::exact::{fmt_rational, int, rat, Rational};

/// Polynomial in the number operator `N` with rational coefficients,
/// lowest degree first.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NPoly(Vec<Rational>);

impl NPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self(coeffs)
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `N`
    pub fn n() -> Self {
        Self::new(vec![Rational::zero(), Rational::one()])
    }

    /// `N(N-1)…(N-m+1)`
    pub fn falling(m: u32) -> Self {
        (0..m).fold(Self::constant(Rational::one()), |acc, j| {
            acc.mul(&Self::new(vec![int(-(j as i64)), Rational::one()]))
        })
    }

    /// `C(N, m)` as a polynomial in `N`.
    pub fn binomial(m: u32) -> Self {
        let fact: BigInt = (1..=m as u64).map(BigInt::from).product();
        Self::falling(m).scale(&Rational::from_integer(fact).recip())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.0.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `-1` for the zero polynomial.
    pub fn degree(&self) -> isize {
        self.0.len() as isize - 1
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.0.len().max(rhs.0.len());
        Self::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.scale(&int(-1)))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.0.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::default();
        }
        let mut out = vec![Rational::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// `p(N + 1)`
    pub fn shift(&self) -> Self {
        let step = Self::new(vec![Rational::one(), Rational::one()]);
        self.0.iter().rev().fold(Self::default(), |acc, c| {
            acc.mul(&step).add(&Self::constant(c.clone()))
        })
    }

    pub fn eval(&self, n: &Rational) -> Rational {
        self.0
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * n + c)
    }

    /// `½(p(N+1) + p(N))`
    fn symmetric_average(&self) -> Self {
        self.shift().add(self).scale(&rat(1, 2))
    }
}

impl fmt::Display for NPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c < &Rational::zero();
            match (first, negative) {
                (true, true) => f.write_str("-")?,
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
                (true, false) => {}
            }
            first = false;
            let mag = if negative { -c } else { c.clone() };
            let unit = mag.is_one() && k > 0;
            if !unit {
                f.write_str(&fmt_rational(&mag))?;
                if k > 0 {
                    f.write_str("*")?;
                }
            }
            match k {
                0 => {}
                1 => f.write_str("N")?,
                _ => write!(f, "N^{k}")?,
            }
        }
        Ok(())
    }
}

/// `H_ε = Σ_i εⁱ·term_i(N)`, truncated at `ε^order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HamiltonianSplit {
    pub order: u32,
    pub terms: Vec<NPoly>,
}

impl HamiltonianSplit {
    /// `H₀ = N + ½`
    pub fn free(&self) -> &NPoly {
        &self.terms[0]
    }

    pub fn eval(&self, n: &Rational, eps: &Rational) -> Rational {
        self.terms
            .iter()
            .enumerate()
            .map(|(i, t)| t.eval(n) * Pow::pow(eps, i))
            .sum()
    }
}

/// Closed form: `term_i = (2N + 1 - i)/(2(i+1)!) · N(N-1)…(N-i+1)`.
pub fn hamiltonian_split(order: u32) -> HamiltonianSplit {
    let terms: Vec<NPoly> = (0..=order)
        .map(|i| {
            let fact: BigInt = (1..=i as u64 + 1).map(BigInt::from).product();
            let lin = NPoly::new(vec![int(1 - i as i64), int(2)]);
            lin.mul(&NPoly::falling(i))
                .scale(&Rational::new(BigInt::one(), fact * 2))
        })
        .collect();
    let split = HamiltonianSplit { order, terms };
    debug_assert_eq!(split, hamiltonian_direct(order));
    split
}

/// Same expansion obtained from `½([N+1]_q + [N]_q)` with
/// `[N]_q = Σ_i εⁱ·C(N, i+1)`.
pub fn hamiltonian_direct(order: u32) -> HamiltonianSplit {
    HamiltonianSplit {
        order,
        terms: (0..=order)
            .map(|i| NPoly::binomial(i + 1).symmetric_average())
            .collect(),
    }
}

/// `H_{μ̃,ε} = ½(φ_{μ̃,q}(N+1) + φ_{μ̃,q}(N))` as a double series: entry
/// `(i, j)` multiplies `εⁱ μ̃ʲ`. `φ_{μ̃,q}` is linear in `μ̃`, so nothing
/// beyond `j = 1` is ever nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoParamSplit {
    pub order_eps: u32,
    pub order_mu: u32,
    pub terms: BTreeMap<(u32, u32), NPoly>,
}

impl TwoParamSplit {
    pub fn term(&self, eps_pow: u32, mu_pow: u32) -> NPoly {
        self.terms
            .get(&(eps_pow, mu_pow))
            .cloned()
            .unwrap_or_default()
    }

    /// `H₀`, the `(0, 0)` entry.
    pub fn free(&self) -> NPoly {
        self.term(0, 0)
    }

    /// Everything except `H₀`.
    pub fn interaction(&self) -> BTreeMap<(u32, u32), NPoly> {
        self.terms
            .iter()
            .filter(|(k, _)| **k != (0, 0))
            .map(|(k, v)| (*k, v.clone()))
            .collect()
    }

    pub fn eval(&self, n: &Rational, eps: &Rational, mu: &Rational) -> Rational {
        self.terms
            .iter()
            .map(|(&(i, j), p)| p.eval(n) * Pow::pow(eps, i) * Pow::pow(mu, j))
            .sum()
    }
}

pub fn two_param_split(order_eps: u32, order_mu: u32) -> TwoParamSplit {
    // [N]_q = Σ εⁱ B_i(N), truncated
    let b: Vec<NPoly> = (0..=order_eps).map(|i| NPoly::binomial(i + 1)).collect();
    let mut b_sq = vec![NPoly::default(); b.len()];
    for (i, x) in b.iter().enumerate() {
        for (j, y) in b.iter().enumerate().take(b.len() - i) {
            b_sq[i + j] = b_sq[i + j].add(&x.mul(y));
        }
    }
    let mut terms = BTreeMap::new();
    for i in 0..=order_eps as usize {
        let base = b[i].symmetric_average();
        if !base.is_zero() {
            terms.insert((i as u32, 0), base);
        }
        if order_mu >= 1 {
            let lin = b[i].sub(&b_sq[i]).symmetric_average();
            if !lin.is_zero() {
                terms.insert((i as u32, 1), lin);
            }
        }
    }
    TwoParamSplit {
        order_eps,
        order_mu,
        terms,
    }
}
