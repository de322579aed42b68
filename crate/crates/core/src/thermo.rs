//! Deformed Bose gas equation of state in reduced units.
//!
//! All series are per `V/λ³`:
//!
//! * `ln Z = Σ zⁿ / n^(5/2)`,
//! * density `x = λ³/v = Σ φ(n) zⁿ / n^(5/2)` (deformed derivative of `ln Z`),
//! * pressure `PV/(k_B T) = Σ φ(n) zⁿ / n^(7/2)` (inverse Euler operator),
//! * `z(x)` by reversion, and `Pv/(k_B T) = Σ V_k x^(k-1)` by composition.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exact::{
    decimal::GUARD_DIGITS, int, Coeff, Decimal, PolyBounds, Rational, Scalar, SurdRational,
    TruncPoly,
};
use crate::series::{PowerSeries, SeriesVar};
use crate::structfn::StructureFunction;

pub const DEFAULT_ORDER: usize = 8;
pub const DEFAULT_DIGITS: u32 = 50;

/// Coefficient ring selected at run time.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Backend {
    /// Surd rationals, or truncated `ε`-polynomials for `q-eps` models.
    Exact,
    /// Decimal floats with a significant-digit budget.
    Decimal { digits: u32 },
}

impl Default for Backend {
    fn default() -> Self {
        Backend::Decimal {
            digits: DEFAULT_DIGITS,
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Backend::Exact => f.write_str("exact"),
            Backend::Decimal { digits } => write!(f, "decimal:{digits}"),
        }
    }
}

impl FromStr for Backend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "exact" => Ok(Backend::Exact),
            "decimal" => Ok(Backend::default()),
            other => {
                let digits = other
                    .strip_prefix("decimal:")
                    .and_then(|d| d.parse::<u32>().ok())
                    .filter(|&d| d >= 1)
                    .ok_or_else(|| {
                        Error::Parse(format!(
                            "backend must be `exact` or `decimal:<digits>`, got `{s}`"
                        ))
                    })?;
                Ok(Backend::Decimal { digits })
            }
        }
    }
}

/// Where a virial coefficient came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Provenance {
    /// Series reversion and composition.
    Engine,
    /// Closed-form polynomial in `φ(2..5)`, sign and exponent corrected.
    ClosedFormCorrected,
    /// Closed form exactly as originally printed, kept for errata reports.
    AsPrinted,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Engine => "engine",
            Provenance::ClosedFormCorrected => "closed-form-corrected",
            Provenance::AsPrinted => "paper-verbatim",
        }
    }
}

/// Which closed form to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClosedFormMode {
    Corrected,
    /// Reproduces two known misprints: `-2φ(3)³/3⁵` in `V₅` and `φ(2)³/2⁴`
    /// in the `x³` term of `z(x)`.
    AsPrinted,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VirialEntry<T> {
    pub k: usize,
    pub value: T,
    pub provenance: Provenance,
}

/// Virial coefficients `V_1..V_K`.
#[derive(Clone, Debug, PartialEq)]
pub struct VirialTable<T> {
    pub entries: Vec<VirialEntry<T>>,
}

impl<T> VirialTable<T> {
    pub fn get(&self, k: usize) -> Option<&T> {
        self.entries.iter().find(|e| e.k == k).map(|e| &e.value)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn values(&self) -> impl Iterator<Item = &T> {
        self.entries.iter().map(|e| &e.value)
    }

    pub fn map<U>(self, mut f: impl FnMut(T) -> U) -> VirialTable<U> {
        VirialTable {
            entries: self
                .entries
                .into_iter()
                .map(|e| VirialEntry {
                    k: e.k,
                    value: f(e.value),
                    provenance: e.provenance,
                })
                .collect(),
        }
    }
}

/// The three series of the pipeline in one backend.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesSet<T: Coeff> {
    pub particle: PowerSeries<T>,
    pub pressure: PowerSeries<T>,
    pub fugacity: PowerSeries<T>,
}

/// `ln Z / (V/λ³) = Σ zⁿ / n^(5/2)` to order `order`.
pub fn log_partition_series<T: Coeff>(order: usize, ctx: &T::Ctx) -> Result<PowerSeries<T>> {
    let coeffs = (0..=order)
        .map(|n| match n {
            0 => Ok(T::zero_in(ctx)),
            n => T::half_power(n as u64, 5, ctx).ok_or_else(|| Error::BackendUnsupported {
                backend: T::BACKEND,
                what: format!("{n}^(-5/2)"),
            }),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PowerSeries::new(SeriesVar::Z, coeffs))
}

/// A deformed Bose gas truncated at order `K` in fugacity and density.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GasModel {
    pub sf: StructureFunction,
    pub order: usize,
}

impl GasModel {
    pub fn new(sf: StructureFunction, order: usize) -> Result<Self> {
        if order < 2 {
            return Err(Error::InvalidParameter(format!(
                "truncation order must be at least 2, got {order}"
            )));
        }
        sf.validate()?;
        Ok(Self { sf, order })
    }

    /// `λ³/v = Σ φ(n) zⁿ / n^(5/2)`.
    pub fn particle_series<T: Coeff>(&self, ctx: &T::Ctx) -> Result<PowerSeries<T>> {
        log_partition_series::<T>(self.order, ctx)?.jackson_apply(&self.sf)
    }

    /// `PV/(k_B T)/(V/λ³) = Σ φ(n) zⁿ / n^(7/2)`.
    pub fn pressure_series<T: Coeff>(&self, ctx: &T::Ctx) -> Result<PowerSeries<T>> {
        self.particle_series::<T>(ctx)?.euler_inverse()
    }

    /// `z` as a series in `x = λ³/v`.
    pub fn fugacity_of_density<T: Coeff>(&self, ctx: &T::Ctx) -> Result<PowerSeries<T>> {
        self.particle_series::<T>(ctx)?.revert(SeriesVar::X)
    }

    pub fn series_set<T: Coeff>(&self, ctx: &T::Ctx) -> Result<SeriesSet<T>> {
        let particle = self.particle_series::<T>(ctx)?;
        let pressure = particle.euler_inverse()?;
        let fugacity = particle.revert(SeriesVar::X)?;
        Ok(SeriesSet {
            particle,
            pressure,
            fugacity,
        })
    }

    /// `V_1..V_K` by reversion and composition.
    pub fn virial_coefficients<T: Coeff>(&self, ctx: &T::Ctx) -> Result<VirialTable<T>> {
        let set = self.series_set::<T>(ctx)?;
        let pv = PowerSeries::compose(&set.pressure, &set.fugacity)?.shift_down()?;
        Ok(VirialTable {
            entries: pv
                .into_coeffs()
                .into_iter()
                .enumerate()
                .map(|(i, value)| VirialEntry {
                    k: i + 1,
                    value,
                    provenance: Provenance::Engine,
                })
                .collect(),
        })
    }

    /// Runs the pipeline in the ring `backend` selects.
    pub fn virial_table(&self, backend: Backend) -> Result<VirialTable<Scalar>> {
        dispatch(&self.sf, backend, |ring| match ring {
            Ring::Surd => Ok(self
                .virial_coefficients::<SurdRational>(&())?
                .map(Scalar::from)),
            Ring::Poly(b) => Ok(self.virial_coefficients::<TruncPoly>(&b)?.map(Scalar::from)),
            Ring::Decimal(p) => Ok(self.virial_coefficients::<Decimal>(&p)?.map(Scalar::from)),
        })
    }

    /// The particle, pressure and fugacity series in the ring `backend` selects.
    pub fn series_table(&self, backend: Backend) -> Result<SeriesSet<ScalarCoeff>> {
        fn wrap<T: Coeff + Into<Scalar>>(s: SeriesSet<T>) -> SeriesSet<ScalarCoeff> {
            let conv = |p: &PowerSeries<T>| p.map(|c| ScalarCoeff(c.clone().into()));
            SeriesSet {
                particle: conv(&s.particle),
                pressure: conv(&s.pressure),
                fugacity: conv(&s.fugacity),
            }
        }
        dispatch(&self.sf, backend, |ring| match ring {
            Ring::Surd => Ok(wrap(self.series_set::<SurdRational>(&())?)),
            Ring::Poly(b) => Ok(wrap(self.series_set::<TruncPoly>(&b)?)),
            Ring::Decimal(p) => Ok(wrap(self.series_set::<Decimal>(&p)?)),
        })
    }

    /// Metadata flags: `μ̃ = 1/m` admissibility and the first `n ≤ K` with
    /// `φ(n) ≤ 0`.
    pub fn report(&self) -> ModelReport {
        ModelReport {
            composite_admissible: self.sf.composite_admissible(),
            first_nonpositive: self.sf.first_nonpositive(self.order as u64),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModelReport {
    pub composite_admissible: Option<bool>,
    pub first_nonpositive: Option<u64>,
}

enum Ring {
    Surd,
    Poly(PolyBounds),
    Decimal(u32),
}

fn dispatch<R>(
    sf: &StructureFunction,
    backend: Backend,
    run: impl FnOnce(Ring) -> Result<R>,
) -> Result<R> {
    match (backend, sf) {
        (Backend::Exact, StructureFunction::QBasicEps { order }) => {
            run(Ring::Poly(PolyBounds::eps_only(*order)))
        }
        (Backend::Exact, _) => run(Ring::Surd),
        (Backend::Decimal { digits }, _) => run(Ring::Decimal(digits + GUARD_DIGITS)),
    }
}

/// A [`Scalar`] that can sit inside a [`PowerSeries`] for reporting. It only
/// exists on the output side; arithmetic between backends panics.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalarCoeff(pub Scalar);

impl Coeff for ScalarCoeff {
    type Ctx = ();

    const BACKEND: &'static str = "scalar";

    fn ctx(&self) {}

    fn from_rational(r: &Rational, _: &()) -> Self {
        ScalarCoeff(Scalar::Rational(r.clone()))
    }

    fn vanishes(&self) -> bool {
        self.0.is_zero()
    }

    fn plus(&self, rhs: &Self) -> Self {
        ScalarCoeff(self.0.add(&rhs.0).expect("same backend"))
    }

    fn minus(&self, rhs: &Self) -> Self {
        ScalarCoeff(self.0.sub(&rhs.0).expect("same backend"))
    }

    fn times(&self, rhs: &Self) -> Self {
        ScalarCoeff(self.0.mul(&rhs.0).expect("same backend"))
    }

    fn negated(&self) -> Self {
        ScalarCoeff(self.0.neg())
    }

    fn div_rational(&self, r: &Rational) -> Result<Self> {
        self.0.div_rational(r).map(ScalarCoeff)
    }

    fn half_power(_: u64, _: u32, _: &()) -> Option<Self> {
        None
    }

    fn to_rational(&self) -> Option<Rational> {
        match &self.0 {
            Scalar::Rational(r) => Some(r.clone()),
            Scalar::Surd(s) => s.to_rational(),
            Scalar::Poly(p) => p.to_rational(),
            Scalar::Decimal(d) => Some(d.to_rational()),
        }
    }
}

fn h<T: Coeff>(n: u64, k: u32, ctx: &T::Ctx) -> Result<T> {
    T::half_power(n, k, ctx).ok_or_else(|| Error::BackendUnsupported {
        backend: T::BACKEND,
        what: format!("{n}^(-{k}/2)"),
    })
}

fn phis<T: Coeff>(sf: &StructureFunction, ctx: &T::Ctx) -> Result<[T; 4]> {
    Ok([
        sf.eval::<T>(2, ctx)?,
        sf.eval::<T>(3, ctx)?,
        sf.eval::<T>(4, ctx)?,
        sf.eval::<T>(5, ctx)?,
    ])
}

fn q(n: i64, d: i64) -> Rational {
    crate::exact::rat(n, d)
}

/// `V_k` for `k = 2..=5` as an explicit polynomial in `φ(2)..φ(5)`.
pub fn closed_form_virial<T: Coeff>(
    sf: &StructureFunction,
    k: usize,
    mode: ClosedFormMode,
    ctx: &T::Ctx,
) -> Result<T> {
    if !(2..=5).contains(&k) {
        return Err(Error::UnsupportedOrder(k));
    }
    let [f2, f3, f4, f5] = phis::<T>(sf, ctx)?;
    let v = match k {
        // -φ₂/2^(7/2)
        2 => f2.times(&h(2, 7, ctx)?).negated(),
        // φ₂²/2⁵ - 2φ₃/3^(7/2)
        3 => f2
            .pow(2)
            .scale(&q(1, 32))
            .minus(&f3.times(&h(3, 7, ctx)?).scale(&int(2))),
        // -3φ₄/4^(7/2) + φ₂φ₃/(2^(5/2)·3^(3/2)) - 5φ₂³/2^(17/2)
        4 => f4
            .scale(&q(-3, 128))
            .plus(&f2.times(&f3).times(&h(2, 5, ctx)?).times(&h(3, 3, ctx)?))
            .minus(&f2.pow(3).times(&h(2, 17, ctx)?).scale(&int(5))),
        // -4φ₅/5^(7/2) + φ₂φ₄/2^(11/2) ± … - φ₂²φ₃/(2³·3^(3/2)) + 7φ₂⁴/2¹⁰
        _ => {
            let third = match mode {
                ClosedFormMode::Corrected => f3.pow(2).scale(&q(2, 243)),
                ClosedFormMode::AsPrinted => f3.pow(3).scale(&q(-2, 243)),
            };
            f5.times(&h(5, 7, ctx)?)
                .scale(&int(-4))
                .plus(&f2.times(&f4).times(&h(2, 11, ctx)?))
                .plus(&third)
                .minus(&f2.pow(2).times(&f3).times(&h(3, 3, ctx)?).scale(&q(1, 8)))
                .plus(&f2.pow(4).scale(&q(7, 1024)))
        }
    };
    Ok(v)
}

/// Coefficient of `x^k` in `z(x)` for `k = 1..=5` as a closed form in
/// `φ(2)..φ(5)` (with `φ(1) = 1`).
pub fn closed_form_fugacity<T: Coeff>(
    sf: &StructureFunction,
    k: usize,
    mode: ClosedFormMode,
    ctx: &T::Ctx,
) -> Result<T> {
    if !(1..=5).contains(&k) {
        return Err(Error::UnsupportedOrder(k));
    }
    let [f2, f3, f4, f5] = phis::<T>(sf, ctx)?;
    let v = match k {
        1 => T::one_in(ctx),
        2 => f2.times(&h(2, 5, ctx)?).negated(),
        3 => {
            let lead = match mode {
                ClosedFormMode::Corrected => f2.pow(2),
                ClosedFormMode::AsPrinted => f2.pow(3),
            };
            lead.scale(&q(1, 16)).minus(&f3.times(&h(3, 5, ctx)?))
        }
        4 => f4
            .scale(&q(-1, 32))
            .plus(
                &f2.times(&f3)
                    .times(&h(2, 5, ctx)?)
                    .times(&h(3, 5, ctx)?)
                    .scale(&int(5)),
            )
            .minus(&f2.pow(3).times(&h(2, 15, ctx)?).scale(&int(5))),
        _ => f5
            .times(&h(5, 5, ctx)?)
            .negated()
            .plus(&f2.times(&f4).times(&h(2, 13, ctx)?).scale(&int(3)))
            .plus(&f3.pow(2).scale(&q(1, 81)))
            .minus(&f2.pow(2).times(&f3).times(&h(3, 3, ctx)?).scale(&q(7, 32)))
            .plus(&f2.pow(4).scale(&q(7, 512))),
    };
    Ok(v)
}

/// Closed-form table `V_1..V_min(K,5)`.
pub fn closed_form_table<T: Coeff>(
    sf: &StructureFunction,
    order: usize,
    mode: ClosedFormMode,
    ctx: &T::Ctx,
) -> Result<VirialTable<T>> {
    let provenance = match mode {
        ClosedFormMode::Corrected => Provenance::ClosedFormCorrected,
        ClosedFormMode::AsPrinted => Provenance::AsPrinted,
    };
    let mut entries = vec![VirialEntry {
        k: 1,
        value: T::one_in(ctx),
        provenance,
    }];
    for k in 2..=order.min(5) {
        entries.push(VirialEntry {
            k,
            value: closed_form_virial::<T>(sf, k, mode, ctx)?,
            provenance,
        });
    }
    Ok(VirialTable { entries })
}

/// `ΔV₂ = V₂(sf) - V₂(undeformed)`, the shift of the second virial
/// coefficient caused by the deformation.
pub fn second_virial_deviation<T: Coeff>(sf: &StructureFunction, ctx: &T::Ctx) -> Result<T> {
    let v2 = |sf: &StructureFunction| -> Result<T> {
        let table = GasModel::new(sf.clone(), 2)?.virial_coefficients::<T>(ctx)?;
        Ok(table.get(2).cloned().expect("order 2 table has V_2"))
    };
    Ok(v2(sf)?.minus(&v2(&StructureFunction::undeformed())?))
}
