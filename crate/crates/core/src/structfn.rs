//! Deformation structure functions `φ(n)`.
//!
//! Every variant satisfies `φ(0) = 0` and `φ(1) = 1`. The q-basic number is
//! always evaluated as the geometric sum `1 + q + … + q^(n-1)`, so `q = 1`
//! needs no special handling.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Pow, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{
    as_small_integer, int, Coeff, Decimal, PolyBounds, Rational, SurdRational, TruncPoly,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StructureFunction {
    /// `[n]_q = (1 - qⁿ)/(1 - q)`.
    QBasic { q: Rational },
    /// `[n]_μ̃ = (1 + μ̃)n - μ̃n²`.
    QuadraticMu { mu: Rational },
    /// `(1 + μ̃)[n]_q - μ̃([n]_q)²`.
    MuThenQ { mu: Rational, q: Rational },
    /// `(1 - q^([n]_μ̃))/(1 - q)`; the exponent is rational, so exact rings
    /// only handle it when `[n]_μ̃` is an integer.
    QThenMu { q: Rational, mu: Rational },
    /// `t·φ_{μ̃,q} + (1 - t)·φ_{q,μ̃}`.
    TInterp {
        t: Rational,
        mu: Rational,
        q: Rational,
    },
    /// `[n]_q` with `q = 1 + ε` kept as a truncated polynomial in `ε`.
    QBasicEps { order: u32 },
}

/// `1 + q + … + q^(n-1)`.
pub fn q_number(q: &Rational, n: u64) -> Rational {
    let mut acc = Rational::zero();
    let mut p = Rational::one();
    for _ in 0..n {
        acc += &p;
        p *= q;
    }
    acc
}

/// `(1 + μ̃)n - μ̃n²`.
pub fn mu_number(mu: &Rational, n: u64) -> Rational {
    let n = int(n as i64);
    (Rational::one() + mu) * &n - mu * &n * &n
}

fn mu_q_number(mu: &Rational, q: &Rational, n: u64) -> Rational {
    let b = q_number(q, n);
    (Rational::one() + mu) * &b - mu * &b * &b
}

impl StructureFunction {
    /// The undeformed structure function `φ(n) = n`.
    pub fn undeformed() -> Self {
        StructureFunction::QuadraticMu {
            mu: Rational::zero(),
        }
    }

    pub fn mu(&self) -> Option<&Rational> {
        match self {
            Self::QuadraticMu { mu } | Self::MuThenQ { mu, .. } | Self::QThenMu { mu, .. } => {
                Some(mu)
            }
            Self::TInterp { mu, .. } => Some(mu),
            _ => None,
        }
    }

    /// Whether `μ̃ = 1/m` for a positive integer `m` (the composite-boson
    /// regime); `None` for families without `μ̃`.
    pub fn composite_admissible(&self) -> Option<bool> {
        self.mu().map(|mu| mu.is_positive() && mu.numer().is_one())
    }

    /// φ(n) as a rational, when it is one.
    pub fn eval_rational(&self, n: u64) -> Option<Rational> {
        match self {
            Self::QBasic { q } => Some(q_number(q, n)),
            Self::QuadraticMu { mu } => Some(mu_number(mu, n)),
            Self::MuThenQ { mu, q } => Some(mu_q_number(mu, q, n)),
            Self::QThenMu { q, mu } => q_then_mu_rational(q, mu, n),
            Self::TInterp { t, mu, q } => {
                let a = || mu_q_number(mu, q, n);
                if t.is_one() {
                    return Some(a());
                }
                let b = q_then_mu_rational(q, mu, n)?;
                if t.is_zero() {
                    return Some(b);
                }
                Some(t * a() + (Rational::one() - t) * b)
            }
            Self::QBasicEps { .. } => None,
        }
    }

    /// φ(n) in the ring `T`.
    pub fn eval<T: Coeff>(&self, n: u64, ctx: &T::Ctx) -> Result<T> {
        if let Some(r) = self.eval_rational(n) {
            return Ok(T::from_rational(&r, ctx));
        }
        let unsupported = || Error::BackendUnsupported {
            backend: T::BACKEND,
            what: format!("{self} at n = {n}"),
        };
        match self {
            Self::QThenMu { q, mu } => q_then_mu::<T>(q, mu, n, ctx).ok_or_else(unsupported),
            Self::TInterp { t, mu, q } => {
                let a = T::from_rational(&mu_q_number(mu, q, n), ctx);
                let b = q_then_mu::<T>(q, mu, n, ctx).ok_or_else(unsupported)?;
                Ok(a.scale(t).plus(&b.scale(&(Rational::one() - t))))
            }
            Self::QBasicEps { .. } => {
                let eps = T::eps(ctx).ok_or_else(unsupported)?;
                let base = T::one_in(ctx).plus(&eps);
                let mut acc = T::zero_in(ctx);
                let mut p = T::one_in(ctx);
                for _ in 0..n {
                    acc = acc.plus(&p);
                    p = p.times(&base);
                }
                Ok(acc)
            }
            _ => unreachable!("rational variants handled above"),
        }
    }

    /// The first `n` in `1..=max_n` with `φ(n) ≤ 0`.
    pub fn first_nonpositive(&self, max_n: u64) -> Option<u64> {
        (1..=max_n).find(|&n| self.sign_at(n).is_some_and(|s| s <= 0))
    }

    fn sign_at(&self, n: u64) -> Option<i32> {
        if let Some(r) = self.eval_rational(n) {
            return Some(if r.is_zero() {
                0
            } else if r.is_positive() {
                1
            } else {
                -1
            });
        }
        match self {
            Self::QBasicEps { .. } => None,
            _ => self.eval::<Decimal>(n, &40).ok().map(|d| d.signum()),
        }
    }

    /// A copy with the named parameter (`q`, `mu` or `t`) replaced.
    pub fn with_param(&self, name: &str, value: Rational) -> Result<Self> {
        let mut out = self.clone();
        let slot = match (&mut out, name) {
            (Self::QBasic { q }, "q")
            | (Self::MuThenQ { q, .. }, "q")
            | (Self::QThenMu { q, .. }, "q")
            | (Self::TInterp { q, .. }, "q") => q,
            (Self::QuadraticMu { mu }, "mu")
            | (Self::MuThenQ { mu, .. }, "mu")
            | (Self::QThenMu { mu, .. }, "mu")
            | (Self::TInterp { mu, .. }, "mu") => mu,
            (Self::TInterp { t, .. }, "t") => t,
            _ => {
                return Err(Error::Parse(format!(
                    "structure function `{self}` has no parameter `{name}`"
                )))
            }
        };
        *slot = value;
        out.validate()?;
        Ok(out)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Self::QThenMu { q, .. } | Self::TInterp { q, .. } if !q.is_positive() => Err(
                Error::InvalidParameter(format!("q must be positive for q^[n]_mu, got {q}")),
            ),
            _ => Ok(()),
        }
    }
}

fn q_then_mu_rational(q: &Rational, mu: &Rational, n: u64) -> Option<Rational> {
    let e = mu_number(mu, n);
    if q.is_one() {
        // removable singularity: (1 - q^e)/(1 - q) → e
        return Some(e);
    }
    let e = as_small_integer(&e)?;
    let pow = crate::exact::rational_powi(q, e).ok()?;
    Some((Rational::one() - pow) / (Rational::one() - q))
}

fn q_then_mu<T: Coeff>(q: &Rational, mu: &Rational, n: u64, ctx: &T::Ctx) -> Option<T> {
    if let Some(r) = q_then_mu_rational(q, mu, n) {
        return Some(T::from_rational(&r, ctx));
    }
    let e = mu_number(mu, n);
    let pow = T::rational_power(q, &e, ctx)?;
    T::one_in(ctx)
        .minus(&pow)
        .div_rational(&(Rational::one() - q))
        .ok()
}

/// `[n]_q` with `q = 1 + ε`: `Σ_{i=0}^{min(order, n-1)} C(n, i+1) εⁱ`.
pub fn eval_eps(n: u64, order: u32) -> TruncPoly {
    let bounds = PolyBounds::eps_only(order);
    let mut terms = Vec::new();
    let mut binom = BigInt::from(n); // C(n, 1)
    for i in 0..=order as u64 {
        if i + 1 > n {
            break;
        }
        terms.push((
            (i as u32, 0),
            SurdRational::from(Rational::from_integer(binom.clone())),
        ));
        // C(n, i+2) = C(n, i+1)·(n-i-1)/(i+2)
        binom = binom * BigInt::from(n - i - 1) / BigInt::from(i + 2);
    }
    TruncPoly::from_terms(bounds, terms)
}

/// Signed Stirling numbers of the first kind `s(n, k)` for `n, k ≤ max`,
/// defined by `N(N-1)…(N-n+1) = Σ_k s(n, k) N^k`.
pub fn stirling_first(max: usize) -> Vec<Vec<BigInt>> {
    let mut s = vec![vec![BigInt::zero(); max + 1]; max + 1];
    s[0][0] = BigInt::one();
    for n in 0..max {
        for k in 1..=n + 1 {
            s[n + 1][k] = &s[n][k - 1] - BigInt::from(n) * &s[n][k];
        }
    }
    s
}

/// Coefficients of `[N]_q` in the monomial basis: `(power of N, power of ε)`
/// to a rational, for `N`-powers `1..=order_n` and `ε`-powers `0..=order_eps`.
/// Zero entries are omitted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialTable {
    pub order_eps: u32,
    pub order_n: u32,
    pub entries: BTreeMap<(u32, u32), Rational>,
}

impl MonomialTable {
    pub fn get(&self, n_pow: u32, eps_pow: u32) -> Rational {
        self.entries
            .get(&(n_pow, eps_pow))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Evaluates the truncated table at an integer `N`, as a polynomial in `ε`.
    pub fn at(&self, n: u64) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.order_eps as usize + 1];
        for (&(k, i), c) in &self.entries {
            out[i as usize] += c * Pow::pow(int(n as i64), k);
        }
        out
    }
}

/// Falling-factorial form of `[N]_q` rewritten in powers of `N`: the
/// coefficient of `N^k εⁱ` is `s(i+1, k)/(i+1)!`.
pub fn monomial_expansion(order_eps: u32, order_n: u32) -> MonomialTable {
    let s = stirling_first(order_eps as usize + 1);
    let mut fact = BigInt::one();
    let mut entries = BTreeMap::new();
    for i in 0..=order_eps as usize {
        fact *= BigInt::from(i + 1);
        for k in 1..=(order_n as usize).min(i + 1) {
            let c = &s[i + 1][k];
            if !c.is_zero() {
                entries.insert((k as u32, i as u32), Rational::new(c.clone(), fact.clone()));
            }
        }
    }
    MonomialTable {
        order_eps,
        order_n,
        entries,
    }
}

fn fmt_r(r: &Rational) -> String {
    crate::exact::fmt_rational(r)
}

impl fmt::Display for StructureFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::QBasic { q } => write!(f, "q:{}", fmt_r(q)),
            Self::QuadraticMu { mu } => write!(f, "mu:{}", fmt_r(mu)),
            Self::MuThenQ { mu, q } => write!(f, "mu-q:{},{}", fmt_r(mu), fmt_r(q)),
            Self::QThenMu { q, mu } => write!(f, "q-mu:{},{}", fmt_r(q), fmt_r(mu)),
            Self::TInterp { t, mu, q } => {
                write!(f, "t:{};mu:{};q:{}", fmt_r(t), fmt_r(mu), fmt_r(q))
            }
            Self::QBasicEps { order } => write!(f, "q-eps:order={order}"),
        }
    }
}

impl FromStr for StructureFunction {
    type Err = Error;

    /// Parses `q:3/2`, `mu:1/4`, `mu-q:1/4,3/2`, `q-mu:3/2,1/4`,
    /// `t:1/2;mu:1/4;q:3/2` or `q-eps:order=6`.
    fn from_str(s: &str) -> Result<Self> {
        use crate::exact::parse_rational as rat;
        let s = s.trim();
        let bad = |why: &str| Error::Parse(format!("bad structure function `{s}`: {why}"));
        let pair = |body: &str| -> Result<(Rational, Rational)> {
            let (a, b) = body
                .split_once(',')
                .ok_or_else(|| bad("expected two parameters"))?;
            Ok((rat(a)?, rat(b)?))
        };
        let sf = if s.contains(';') {
            let mut t = None;
            let mut mu = None;
            let mut q = None;
            for part in s.split(';') {
                let (k, v) = part
                    .split_once(':')
                    .ok_or_else(|| bad("expected key:value"))?;
                let slot = match k.trim() {
                    "t" => &mut t,
                    "mu" => &mut mu,
                    "q" => &mut q,
                    other => return Err(bad(&format!("unknown key `{other}`"))),
                };
                if slot.replace(rat(v)?).is_some() {
                    return Err(bad("duplicate key"));
                }
            }
            match (t, mu, q) {
                (Some(t), Some(mu), Some(q)) => Self::TInterp { t, mu, q },
                _ => return Err(bad("need t, mu and q")),
            }
        } else {
            let (kind, body) = s
                .split_once(':')
                .ok_or_else(|| bad("expected kind:params"))?;
            match kind.trim() {
                "q" => Self::QBasic { q: rat(body)? },
                "mu" => Self::QuadraticMu { mu: rat(body)? },
                "mu-q" => {
                    let (mu, q) = pair(body)?;
                    Self::MuThenQ { mu, q }
                }
                "q-mu" => {
                    let (q, mu) = pair(body)?;
                    Self::QThenMu { q, mu }
                }
                "q-eps" => {
                    let order = body
                        .trim()
                        .strip_prefix("order=")
                        .and_then(|o| o.parse::<u32>().ok())
                        .ok_or_else(|| bad("expected order=<int>"))?;
                    Self::QBasicEps { order }
                }
                other => return Err(bad(&format!("unknown kind `{other}`"))),
            }
        };
        sf.validate()?;
        Ok(sf)
    }
}

/// Whether `eval` on the exact ring succeeds for every `n ≤ max_n`.
pub fn exact_evaluable(sf: &StructureFunction, max_n: usize) -> bool {
    match sf {
        StructureFunction::QBasicEps { .. } => true,
        _ => (0..=max_n as u64).all(|n| sf.eval_rational(n).is_some()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn r(s: &str) -> Rational {
        crate::exact::parse_rational(s).unwrap()
    }

    fn sr(v: Rational) -> SurdRational {
        SurdRational::from(v)
    }

    #[test]
    fn eval_examples() {
        let all = [
            StructureFunction::QBasic { q: r("2") },
            StructureFunction::QuadraticMu { mu: r("1/2") },
            StructureFunction::MuThenQ {
                mu: r("1/2"),
                q: r("2"),
            },
            StructureFunction::QThenMu {
                q: r("3/2"),
                mu: r("1/4"),
            },
        ];
        for sf in &all {
            assert_eq!(sf.eval::<Decimal>(0, &30).unwrap().signum(), 0);
        }
        assert_eq!(all[0].eval::<Rational>(3, &()).unwrap(), int(7));
        assert_eq!(all[1].eval::<Rational>(3, &()).unwrap(), int(0));
        assert_eq!(all[2].eval::<Rational>(2, &()).unwrap(), int(0));
    }

    #[test]
    fn q_then_mu_on_exact_ring() {
        // [2]_{1/4} = 3/2, non-integer exponent
        let sf = StructureFunction::QThenMu {
            q: r("3/2"),
            mu: r("1/4"),
        };
        let err = sf.eval::<SurdRational>(2, &()).unwrap_err();
        assert!(matches!(err, Error::BackendUnsupported { .. }));
        // μ̃ = 1 gives integer exponents 2n - n²
        let sf = StructureFunction::QThenMu {
            q: r("2"),
            mu: r("1"),
        };
        // n = 3: exponent -3, (1 - 1/8)/(1 - 2) = -7/8
        assert_eq!(sf.eval::<SurdRational>(3, &()).unwrap(), sr(rat(-7, 8)));
        let d = StructureFunction::QThenMu {
            q: r("3/2"),
            mu: r("1/4"),
        }
        .eval::<Decimal>(2, &40)
        .unwrap();
        // (1 - 1.5^1.5)/(1 - 1.5) = 2(1.5^1.5 - 1) = 1.674234614174767...
        assert_eq!(d.to_fixed(15), "1.674234614174767");
    }

    #[test]
    fn eps_polynomials() {
        assert_eq!(eval_eps(1, 5).to_string(), "(1)");
        assert_eq!(eval_eps(2, 5).to_string(), "(2) + (1)*eps");
        assert_eq!(eval_eps(3, 5).to_string(), "(3) + (3)*eps + (1)*eps^2");
        assert_eq!(eval_eps(3, 1).to_string(), "(3) + (3)*eps");
        assert_eq!(eval_eps(0, 3).to_string(), "0");
        let sf = StructureFunction::QBasicEps { order: 4 };
        let b = PolyBounds::eps_only(4);
        for n in 0..9 {
            assert_eq!(
                sf.eval::<TruncPoly>(n, &b).unwrap(),
                eval_eps(n, 4),
                "n = {n}"
            );
        }
        assert!(sf.eval::<SurdRational>(2, &()).is_err());
    }

    #[test]
    fn eps_form_matches_geometric_sum() {
        for q in ["3/2", "-1/3", "2", "1"] {
            let q = r(q);
            let eps = &q - Rational::one();
            for n in 0..12u64 {
                let p = eval_eps(n, 12);
                assert_eq!(
                    p.substitute(&eps, &Rational::zero()),
                    sr(q_number(&q, n)),
                    "q = {q}, n = {n}"
                );
            }
        }
    }

    #[test]
    fn printed_monomial_coefficients() {
        let t = monomial_expansion(3, 3);
        let row = |k| (0..=3).map(|i| t.get(k, i)).collect::<Vec<_>>();
        assert_eq!(row(1), vec![int(1), rat(-1, 2), rat(1, 3), rat(-1, 4)]);
        assert_eq!(row(2), vec![int(0), rat(1, 2), rat(-1, 2), rat(11, 24)]);
        assert_eq!(row(3), vec![int(0), int(0), rat(1, 6), rat(-1, 4)]);
    }

    #[test]
    fn monomial_table_resums_to_eps_form() {
        let order = 7;
        let t = monomial_expansion(order, order + 1);
        for n in 0..=(order as u64 + 1) {
            let p = eval_eps(n, order);
            let direct: Vec<Rational> = p
                .eps_coefficients()
                .into_iter()
                .map(|c| c.to_rational().unwrap())
                .collect();
            assert_eq!(t.at(n), direct, "n = {n}");
        }
    }

    #[test]
    fn stirling_oracle() {
        // expand N(N-1)…(N-m+1) by repeated polynomial multiplication
        let s = stirling_first(8);
        for m in 0..=8usize {
            let mut poly = vec![BigInt::one()];
            for j in 0..m {
                let mut next = vec![BigInt::zero(); poly.len() + 1];
                for (k, c) in poly.iter().enumerate() {
                    next[k + 1] += c;
                    next[k] -= c * BigInt::from(j);
                }
                poly = next;
            }
            for (k, c) in poly.iter().enumerate() {
                assert_eq!(&s[m][k], c, "s({m},{k})");
            }
        }
    }

    #[test]
    fn cutoff_at_one_over_m() {
        for m in 1..30i64 {
            let sf = StructureFunction::QuadraticMu { mu: rat(1, m) };
            assert_eq!(sf.eval_rational(m as u64 + 1), Some(int(0)));
            assert_eq!(sf.first_nonpositive(100), Some(m as u64 + 1));
            assert_eq!(sf.composite_admissible(), Some(true));
        }
        assert_eq!(
            StructureFunction::QuadraticMu { mu: rat(2, 3) }.composite_admissible(),
            Some(false)
        );
        assert_eq!(
            StructureFunction::QBasic { q: int(2) }.composite_admissible(),
            None
        );
    }

    #[test]
    fn descriptor_grammar() {
        for d in [
            "q:3/2",
            "mu:1/4",
            "mu-q:1/4,3/2",
            "q-mu:3/2,1/4",
            "t:1/2;mu:1/4;q:3/2",
            "q-eps:order=6",
            "mu:-1/3",
        ] {
            let sf: StructureFunction = d.parse().unwrap();
            assert_eq!(sf.to_string(), d);
        }
        assert_eq!(
            "q:3/2;mu:1/4;t:1/2"
                .parse::<StructureFunction>()
                .unwrap()
                .to_string(),
            "t:1/2;mu:1/4;q:3/2"
        );
        for bad in [
            "",
            "q",
            "q:",
            "z:1",
            "mu-q:1/4",
            "q-eps:6",
            "t:1;mu:0",
            "q:1/0",
            "q-mu:-2,1/4",
        ] {
            assert!(bad.parse::<StructureFunction>().is_err(), "{bad}");
        }
    }

    #[test]
    fn parameter_override() {
        let sf: StructureFunction = "mu-q:1/4,3/2".parse().unwrap();
        assert_eq!(
            sf.with_param("q", int(2)).unwrap().to_string(),
            "mu-q:1/4,2"
        );
        assert!(sf.with_param("t", int(2)).is_err());
    }
}
