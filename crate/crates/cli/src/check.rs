//! Recomputes each published identity and reports PASS or DISCREPANCY. Two
//! published forms are known misprints; the report is healthy when those two,
//! and only those two, disagree.

use std::fmt::Write;

use bosegas_core::exact::{half_power, int, rat};
use bosegas_core::perturb::hamiltonian_direct;
use bosegas_core::structfn::{eval_eps, monomial_expansion, mu_number, q_number};
use bosegas_core::thermo::{closed_form_fugacity, closed_form_virial, second_virial_deviation};
use bosegas_core::{
    hamiltonian_split, ClosedFormMode, Decimal, GasModel, Rational, Result, StructureFunction,
    SurdRational,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckLine {
    pub id: &'static str,
    pub what: &'static str,
    pub printed: String,
    pub computed: String,
    pub agrees: bool,
    /// A known misprint: the expected outcome is DISCREPANCY.
    pub erratum: bool,
}

impl CheckLine {
    pub fn status(&self) -> &'static str {
        if self.agrees {
            "PASS"
        } else {
            "DISCREPANCY"
        }
    }

    pub fn as_catalogued(&self) -> bool {
        self.agrees != self.erratum
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub lines: Vec<CheckLine>,
}

impl Report {
    pub fn ok(&self) -> bool {
        self.lines.iter().all(CheckLine::as_catalogued)
    }

    pub fn discrepancies(&self) -> Vec<&'static str> {
        self.lines
            .iter()
            .filter(|l| !l.agrees)
            .map(|l| l.id)
            .collect()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for l in &self.lines {
            let note = match (l.agrees, l.erratum) {
                (false, true) => " [known misprint]",
                (true, true) => " [expected a misprint here]",
                (false, false) => " [UNEXPECTED]",
                (true, false) => "",
            };
            let _ = writeln!(
                out,
                "{:<11} {}: {}{note}\n            printed:  {}\n            computed: {}",
                l.status(),
                l.id,
                l.what,
                l.printed,
                l.computed
            );
        }
        let pass = self.lines.iter().filter(|l| l.agrees).count();
        let flagged = self.lines.len() - pass;
        let unexpected = self.lines.iter().filter(|l| !l.as_catalogued()).count();
        let _ = writeln!(
            out,
            "summary: {pass} pass, {flagged} discrepancies, {unexpected} not as catalogued -> {}",
            if self.ok() { "OK" } else { "FAILED" }
        );
        out
    }
}

fn show(s: &SurdRational) -> String {
    format!("{s} (~ {})", s.to_decimal_value(30).to_scientific(6))
}

fn show_list<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(", ")
}

fn exact(
    id: &'static str,
    what: &'static str,
    printed: SurdRational,
    computed: SurdRational,
    erratum: bool,
) -> CheckLine {
    CheckLine {
        id,
        what,
        agrees: printed == computed,
        printed: show(&printed),
        computed: show(&computed),
        erratum,
    }
}

fn lists<T: PartialEq + ToString>(
    id: &'static str,
    what: &'static str,
    printed: &[T],
    computed: &[T],
) -> CheckLine {
    CheckLine {
        id,
        what,
        agrees: printed == computed,
        printed: show_list(printed),
        computed: show_list(computed),
        erratum: false,
    }
}

fn sf(s: &str) -> StructureFunction {
    s.parse().expect("built-in descriptor")
}

fn virial(sf: &StructureFunction, k: usize) -> Result<SurdRational> {
    let t = GasModel::new(sf.clone(), k.max(2))?.virial_coefficients::<SurdRational>(&())?;
    Ok(t.get(k).cloned().expect("k within order"))
}

fn fugacity(sf: &StructureFunction, k: usize) -> Result<SurdRational> {
    let z = GasModel::new(sf.clone(), k.max(2))?.fugacity_of_density::<SurdRational>(&())?;
    Ok(z.coeff(k).clone())
}

fn surd(r: Rational) -> SurdRational {
    SurdRational::from(r)
}

pub fn run() -> Result<Report> {
    let mut lines = Vec::new();
    let mono = monomial_expansion(3, 3);
    lines.push(lists(
        "basic-number-N",
        "coefficients of N in [N]_q, eps^0..eps^3",
        &[int(1), rat(-1, 2), rat(1, 3), rat(-1, 4)],
        &(0..=3).map(|i| mono.get(1, i)).collect::<Vec<_>>(),
    ));
    lines.push(lists(
        "basic-number-N2",
        "coefficients of N^2 in [N]_q, eps^1..eps^3",
        &[rat(1, 2), rat(-1, 2), rat(11, 24)],
        &(1..=3).map(|i| mono.get(2, i)).collect::<Vec<_>>(),
    ));
    lines.push(lists(
        "basic-number-N3",
        "coefficients of N^3 in [N]_q, eps^2..eps^3",
        &[rat(1, 6), rat(-1, 4)],
        &(2..=3).map(|i| mono.get(3, i)).collect::<Vec<_>>(),
    ));
    let q = rat(3, 2);
    lines.push(lists(
        "basic-number-falling",
        "falling-factorial eps form of [n]_q at q = 3/2, n = 0..8",
        &(0..=8).map(|n| q_number(&q, n)).collect::<Vec<_>>(),
        &(0..=8)
            .map(|n| {
                eval_eps(n, 8)
                    .substitute(&rat(1, 2), &int(0))
                    .to_rational()
                    .expect("rational substitution")
            })
            .collect::<Vec<_>>(),
    ));
    let split = hamiltonian_split(6);
    lines.push(lists(
        "hamiltonian-free",
        "eps^0 term of the single-mode Hamiltonian",
        &["N + 1/2".to_string()],
        &[split.free().to_string()],
    ));
    lines.push(lists(
        "hamiltonian-terms",
        "eps^i terms (2N+1-i)/(2(i+1)!) N(N-1)..(N-i+1) vs 1/2([N+1]_q + [N]_q), i <= 6",
        &split.terms,
        &hamiltonian_direct(6).terms,
    ));

    let mu = rat(1, 3);
    let quad = StructureFunction::QuadraticMu { mu: mu.clone() };
    let pressure = GasModel::new(quad.clone(), 5)?.pressure_series::<SurdRational>(&())?;
    lines.push(exact(
        "pressure-z2",
        "z^2 coefficient of the pressure series, [2]/2^(7/2) at mu = 1/3",
        half_power(2, 7).scale(&mu_number(&mu, 2)),
        pressure.coeff(2).clone(),
        false,
    ));
    lines.push(exact(
        "pressure-z5",
        "z^5 coefficient of the pressure series, [5]/5^(7/2) at mu = 1/3",
        half_power(5, 7).scale(&mu_number(&mu, 5)),
        pressure.coeff(5).clone(),
        false,
    ));

    let und = StructureFunction::undeformed();
    lines.push(exact(
        "ideal-V2",
        "undeformed V2 = -1/(4 sqrt 2)",
        half_power(2, 1).scale(&rat(-1, 4)),
        virial(&und, 2)?,
        false,
    ));
    lines.push(exact(
        "ideal-V3",
        "undeformed V3 = -(2/(9 sqrt 3) - 1/8)",
        &surd(rat(1, 8)) - &half_power(3, 1).scale(&rat(2, 9)),
        virial(&und, 3)?,
        false,
    ));
    lines.push(exact(
        "quadratic-V2",
        "V2 = -[2]/2^(7/2) = -(1 - mu)/2^(5/2) at mu = 1/3",
        half_power(2, 5).scale(&(mu.clone() - int(1))),
        virial(&quad, 2)?,
        false,
    ));
    lines.push(exact(
        "compensation",
        "V2 vanishes at mu = 1",
        SurdRational::zero(),
        virial(&sf("mu:1"), 2)?,
        false,
    ));

    let fug_printed =
        |k| closed_form_fugacity::<SurdRational>(&und, k, ClosedFormMode::AsPrinted, &());
    for (id, what, k) in [
        ("fugacity-x2", "x^2 coefficient of z(x), undeformed", 2),
        ("fugacity-x4", "x^4 coefficient of z(x), undeformed", 4),
        ("fugacity-x5", "x^5 coefficient of z(x), undeformed", 5),
    ] {
        lines.push(exact(id, what, fug_printed(k)?, fugacity(&und, k)?, false));
    }
    lines.push(exact(
        "fugacity-x3",
        "x^3 coefficient of z(x), undeformed; printed [2]^3/2^4 where reversion gives [2]^2/2^4",
        fug_printed(3)?,
        fugacity(&und, 3)?,
        true,
    ));

    for (id, model) in [
        ("virial-V2..V4-mu", sf("mu:1/3")),
        ("virial-V2..V4-mu-q", sf("mu-q:1/3,3/2")),
    ] {
        let printed = (2..=4)
            .map(|k| closed_form_virial::<SurdRational>(&model, k, ClosedFormMode::AsPrinted, &()))
            .collect::<Result<Vec<_>>>()?;
        let engine = (2..=4)
            .map(|k| virial(&model, k))
            .collect::<Result<Vec<_>>>()?;
        lines.push(CheckLine {
            id,
            what: if id.ends_with("-q") {
                "closed-form V2, V3, V4 vs reversion at mu = 1/3, q = 3/2"
            } else {
                "closed-form V2, V3, V4 vs reversion at mu = 1/3"
            },
            agrees: printed == engine,
            printed: printed.iter().map(show).collect::<Vec<_>>().join("; "),
            computed: engine.iter().map(show).collect::<Vec<_>>().join("; "),
            erratum: false,
        });
    }
    lines.push(t_family()?);
    lines.push(exact(
        "virial-V5",
        "closed-form V5, undeformed; printed third term -2[3]^3/3^5 where reversion gives +2[3]^2/3^5",
        closed_form_virial::<SurdRational>(&und, 5, ClosedFormMode::AsPrinted, &())?,
        virial(&und, 5)?,
        true,
    ));

    lines.push(exact(
        "delta-V2-q",
        "V2 shift at mu = 0, (1 - q)/2^(7/2) at q = 3/2",
        half_power(2, 7).scale(&(int(1) - &q)),
        second_virial_deviation::<SurdRational>(&sf("mu-q:0,3/2"), &())?,
        false,
    ));
    lines.push(exact(
        "delta-V2-mu",
        "V2 shift at q = 1, mu/2^(5/2) at mu = 1/3",
        half_power(2, 5).scale(&mu),
        second_virial_deviation::<SurdRational>(&sf("mu-q:1/3,1"), &())?,
        false,
    ));

    let phis = |s: &StructureFunction| (0..=8).map(|n| s.eval_rational(n)).collect::<Vec<_>>();
    let show_phi = |v: Vec<Option<Rational>>| {
        v.into_iter()
            .map(|x| x.map_or("?".to_string(), |r| r.to_string()))
            .collect::<Vec<_>>()
    };
    lines.push(lists(
        "limits",
        "phi(0..8): mu-q at q = 1, mu-q at mu = 0, q-mu at q = 1, q-mu at mu = 0",
        &[
            show_phi(phis(&sf("mu:1/3"))).join(" "),
            show_phi(phis(&sf("q:3/2"))).join(" "),
            show_phi(phis(&sf("mu:1/3"))).join(" "),
            show_phi(phis(&sf("q:3/2"))).join(" "),
        ],
        &[
            show_phi(phis(&sf("mu-q:1/3,1"))).join(" "),
            show_phi(phis(&sf("mu-q:0,3/2"))).join(" "),
            show_phi(phis(&sf("q-mu:1,1/3"))).join(" "),
            show_phi(phis(&sf("q-mu:3/2,0"))).join(" "),
        ],
    ));
    Ok(Report { lines })
}

/// The interpolated family needs non-integer powers of `q`, so this check runs
/// at 60 digits and asks for 45 digits of agreement.
fn t_family() -> Result<CheckLine> {
    let model = sf("t:1/2;mu:1/4;q:3/2");
    let ctx = 60u32;
    let table = GasModel::new(model.clone(), 4)?.virial_coefficients::<Decimal>(&ctx)?;
    let mut printed = Vec::new();
    let mut engine = Vec::new();
    let mut agrees = true;
    for k in 2..=4 {
        let p = closed_form_virial::<Decimal>(&model, k, ClosedFormMode::AsPrinted, &ctx)?;
        let e = table.get(k).cloned().expect("k within order");
        agrees &= p.agreement_digits(&e).is_none_or(|d| d >= 45.0);
        printed.push(p.to_scientific(25));
        engine.push(e.to_scientific(25));
    }
    Ok(CheckLine {
        id: "virial-V2..V4-t",
        what: "closed-form V2, V3, V4 vs reversion for the t family at t = 1/2, mu = 1/4, q = 3/2",
        printed: printed.join("; "),
        computed: engine.join("; "),
        agrees,
        erratum: false,
    })
}
