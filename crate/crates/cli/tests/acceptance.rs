//! Acceptance suite: one line per criterion, with the tolerance and time budget
//! each criterion states. Exits nonzero if any non-waived criterion fails.

use std::process::Command;
use std::time::{Duration, Instant};

use bosegas_core::exact::{half_power, int, rat};
use bosegas_core::perturb::hamiltonian_split;
use bosegas_core::structfn::{eval_eps, monomial_expansion};
use bosegas_core::thermo::{closed_form_virial, second_virial_deviation};
use bosegas_core::{
    Backend, ClosedFormMode, Decimal, GasModel, PowerSeries, Rational, Scalar, SeriesVar,
    StructureFunction, SurdRational,
};
use num_traits::One;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Reference fifth virial coefficient of the ideal Bose gas, from an
/// independent 80-digit floating-point series reversion.
const IDEAL_V5: &str = "-0.00000354050409519736538278305009323346261760464643967796481083377";

/// Decimal budget for every decimal-backend criterion.
const DIGITS: u32 = 50;
/// Significant digits of agreement demanded between exact and decimal paths.
const AGREE_DIGITS: f64 = 40.0;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

struct Line {
    id: &'static str,
    title: &'static str,
    pass: bool,
    waived: Option<&'static str>,
}

fn criterion(
    lines: &mut Vec<Line>,
    id: &'static str,
    title: &'static str,
    budget: Duration,
    run: impl FnOnce() -> Verdict,
) {
    let start = Instant::now();
    let v = run();
    let elapsed = start.elapsed();
    let pass = v.pass && elapsed < budget;
    println!(
        "criterion {id:<3} {:<4} {title} ({:.3} s, budget {} s): {}",
        if pass { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        budget.as_secs(),
        v.detail
    );
    lines.push(Line {
        id,
        title,
        pass,
        waived: None,
    });
}

fn random_rational(rng: &mut StdRng, lo: i64, hi: i64) -> Rational {
    let d = rng.gen_range(1..=12);
    rat(rng.gen_range(lo * d..=hi * d), d)
}

fn positive_rational(rng: &mut StdRng) -> Rational {
    rat(rng.gen_range(1..=36), rng.gen_range(1..=12))
}

fn parse_decimal(s: &str) -> Rational {
    let (sign, body) = s.strip_prefix('-').map_or(("", s), |b| ("-", b));
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    format!("{sign}{whole}{frac}/1{}", "0".repeat(frac.len()))
        .parse()
        .unwrap()
}

/// Significant digits on which two values agree; infinite when identical.
fn agreement(a: &Decimal, b: &Decimal) -> f64 {
    a.agreement_digits(b).unwrap_or(f64::INFINITY)
}

fn exact_virial(sf: &StructureFunction, order: usize) -> Vec<SurdRational> {
    GasModel::new(sf.clone(), order)
        .unwrap()
        .virial_coefficients::<SurdRational>(&())
        .unwrap()
        .entries
        .into_iter()
        .map(|e| e.value)
        .collect()
}

fn c1_ideal_limit() -> Verdict {
    let v = exact_virial(&StructureFunction::undeformed(), 3);
    let a2 = half_power(2, 1).scale(&rat(-1, 4));
    let a3 = -(&half_power(3, 1).scale(&rat(2, 9)) - &SurdRational::from(rat(1, 8)));
    let dec = GasModel::new(StructureFunction::undeformed(), 3)
        .unwrap()
        .virial_table(Backend::Decimal { digits: DIGITS })
        .unwrap();
    let sig10 = |s: &Scalar| s.to_decimal_value(80).unwrap().to_scientific(10);
    let d2 = sig10(dec.get(2).unwrap());
    let d3 = sig10(dec.get(3).unwrap());
    let e2 = a2.to_decimal_value(80).to_scientific(10);
    let e3 = a3.to_decimal_value(80).to_scientific(10);
    verdict(
        v[1] == a2 && v[2] == a3 && d2 == e2 && d3 == e3,
        format!("V2 = {} = {d2}, V3 = {} = {d3}", v[1], v[2]),
    )
}

fn c2_quadratic_v2() -> Verdict {
    let mut rng = StdRng::seed_from_u64(2);
    let mut ok = 0;
    for _ in 0..20 {
        let mu = random_rational(&mut rng, -3, 3);
        let v = exact_virial(&StructureFunction::QuadraticMu { mu: mu.clone() }, 2);
        ok += (v[1] == half_power(2, 5).scale(&(mu - int(1)))) as usize;
    }
    let zero = exact_virial(&StructureFunction::QuadraticMu { mu: int(1) }, 2)[1].is_zero();
    verdict(
        ok == 20 && zero,
        format!("{ok}/20 exact matches of -(1-mu)/2^(5/2); V2(mu = 1) = 0: {zero}"),
    )
}

fn c3_closed_forms() -> Verdict {
    let mut rng = StdRng::seed_from_u64(3);
    let (mut exact_ok, mut exact_n, mut dec_ok, mut dec_n) = (0, 0, 0, 0);
    let mut worst = f64::INFINITY;
    for i in 0..100 {
        let mu = random_rational(&mut rng, -2, 2);
        let q = positive_rational(&mut rng);
        let t = if i % 3 == 0 {
            int(1)
        } else {
            random_rational(&mut rng, -1, 2)
        };
        let sf = StructureFunction::TInterp {
            t: t.clone(),
            mu,
            q,
        };
        if t.is_one() {
            exact_n += 1;
            let v = exact_virial(&sf, 5);
            let all = (2..=5).all(|k| {
                closed_form_virial::<SurdRational>(&sf, k, ClosedFormMode::Corrected, &()).unwrap()
                    == v[k - 1]
            });
            exact_ok += all as usize;
        } else {
            dec_n += 1;
            let ctx = DIGITS + bosegas_core::GUARD_DIGITS;
            let table = GasModel::new(sf.clone(), 5)
                .unwrap()
                .virial_coefficients::<Decimal>(&ctx)
                .unwrap();
            let mut all = true;
            for k in 2..=5 {
                let cf =
                    closed_form_virial::<Decimal>(&sf, k, ClosedFormMode::Corrected, &ctx).unwrap();
                let a = agreement(&cf, table.get(k).unwrap());
                worst = worst.min(a);
                all &= a >= AGREE_DIGITS;
            }
            dec_ok += all as usize;
        }
    }
    verdict(
        exact_ok == exact_n && dec_ok == dec_n,
        format!(
            "t = 1: {exact_ok}/{exact_n} exact; t != 1: {dec_ok}/{dec_n} within {AGREE_DIGITS} digits (worst {worst:.1})"
        ),
    )
}

fn c4_delta_v2() -> Verdict {
    let mut rng = StdRng::seed_from_u64(4);
    let (mut q_ok, mut mu_ok) = (0, 0);
    for _ in 0..20 {
        let q = random_rational(&mut rng, -3, 3);
        let d = second_virial_deviation::<SurdRational>(
            &StructureFunction::MuThenQ {
                mu: int(0),
                q: q.clone(),
            },
            &(),
        )
        .unwrap();
        q_ok += (d == half_power(2, 7).scale(&(int(1) - q))) as usize;
        let mu = random_rational(&mut rng, -3, 3);
        let d = second_virial_deviation::<SurdRational>(
            &StructureFunction::MuThenQ {
                mu: mu.clone(),
                q: int(1),
            },
            &(),
        )
        .unwrap();
        mu_ok += (d == half_power(2, 5).scale(&mu)) as usize;
    }
    verdict(
        q_ok == 20 && mu_ok == 20,
        format!("(1-q)/2^(7/2): {q_ok}/20, mu/2^(5/2): {mu_ok}/20"),
    )
}

fn c5_monomials() -> Verdict {
    let t = monomial_expansion(3, 3);
    let n1: Vec<Rational> = (0..=3).map(|i| t.get(1, i)).collect();
    let n2: Vec<Rational> = (1..=3).map(|i| t.get(2, i)).collect();
    let n3: Vec<Rational> = (2..=3).map(|i| t.get(3, i)).collect();
    let ok = n1 == [int(1), rat(-1, 2), rat(1, 3), rat(-1, 4)]
        && n2 == [rat(1, 2), rat(-1, 2), rat(11, 24)]
        && n3 == [rat(1, 6), rat(-1, 4)];
    let show = |v: &[Rational]| {
        v.iter()
            .map(|r| r.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    verdict(
        ok,
        format!("N: {}; N^2: {}; N^3: {}", show(&n1), show(&n2), show(&n3)),
    )
}

fn c6_hamiltonian() -> Verdict {
    let mut checked = 0;
    let mut bad = 0;
    for order in 0..=6u32 {
        let h = hamiltonian_split(order);
        for n in 0..=12u64 {
            let a = eval_eps(n + 1, order).eps_coefficients();
            let b = eval_eps(n, order).eps_coefficients();
            for i in 0..=order as usize {
                let avg = (&a[i] + &b[i]).scale(&rat(1, 2)).to_rational().unwrap();
                checked += 1;
                bad += (h.terms[i].eval(&int(n as i64)) != avg) as usize;
            }
        }
    }
    verdict(
        bad == 0,
        format!("{checked} eps-coefficients compared, {bad} mismatches"),
    )
}

fn c7_errata(lines: &mut Vec<Line>) {
    let start = Instant::now();
    let und = StructureFunction::undeformed();
    let printed =
        closed_form_virial::<SurdRational>(&und, 5, ClosedFormMode::AsPrinted, &()).unwrap();
    let printed4 = printed.to_decimal_value(40).to_scientific(4);
    let engine = exact_virial(&und, 5)[4].clone();
    let engine_dec = engine.to_decimal_value(80);
    let literature = Decimal::from_rational(&parse_decimal(IDEAL_V5), 80);
    let lit_digits = agreement(&engine_dec, &literature);

    let out = Command::new(env!("CARGO_BIN_EXE_bosegas"))
        .arg("check-paper")
        .output()
        .expect("binary runs");
    let report = String::from_utf8_lossy(&out.stdout);
    let flagged: Vec<&str> = report
        .lines()
        .filter(|l| l.starts_with("DISCREPANCY"))
        .filter_map(|l| l.split_whitespace().nth(1))
        .map(|id| id.trim_end_matches(':'))
        .collect();
    let elapsed = start.elapsed();
    let pass = printed4 == "-2.963e-1"
        && lit_digits >= AGREE_DIGITS
        && out.status.success()
        && flagged == ["fugacity-x3", "virial-V5"]
        && elapsed < Duration::from_secs(5);
    println!(
        "criterion 7   {:<4} errata reproduction ({:.3} s, budget 5 s): printed V5 = {printed4}, engine V5 = {} \
         (literature value to {} digits), check-paper flags {:?}",
        if pass { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        engine_dec.to_scientific(8),
        if lit_digits.is_infinite() { "all".to_string() } else { format!("{lit_digits:.0}") },
        flagged
    );
    lines.push(Line {
        id: "7",
        title: "errata reproduction",
        pass,
        waived: None,
    });

    // The criterion also quotes the engine value as about -3.66e-6. The
    // literature value it names is -3.5405e-6; at the three significant
    // figures quoted the two disagree, and matching -3.66e-6 would require a
    // wrong engine. Checked as stated and reported, but waived.
    let three = engine_dec.to_scientific(3);
    let stated = three == "-3.66e-6";
    println!(
        "criterion 7b  {:<4} engine V5 ~ -3.66e-6 at 3 significant figures: engine gives {three} \
         (literature -3.54e-6); waived, the quoted figure is not the ideal-Bose value",
        if stated { "PASS" } else { "FAIL" }
    );
    lines.push(Line {
        id: "7b",
        title: "engine V5 equals the quoted -3.66e-6",
        pass: stated,
        waived: Some("quoted figure contradicts the literature value it names"),
    });
}

fn random_series(rng: &mut StdRng, order: usize) -> PowerSeries<SurdRational> {
    const RADICANDS: [u64; 6] = [1, 2, 3, 5, 6, 7];
    let mut c = vec![SurdRational::zero(), SurdRational::one()];
    for _ in 2..=order {
        let mut s = SurdRational::zero();
        for _ in 0..rng.gen_range(0..=2) {
            let r = RADICANDS[rng.gen_range(0..RADICANDS.len())];
            s = &s + &SurdRational::term(random_rational(rng, -2, 2), r);
        }
        c.push(s);
    }
    PowerSeries::new(SeriesVar::Z, c)
}

fn c8_round_trip() -> Verdict {
    let mut rng = StdRng::seed_from_u64(8);
    let mut ok = 0;
    for _ in 0..50 {
        let f = random_series(&mut rng, 12);
        let g = f.revert(SeriesVar::X).unwrap();
        ok += PowerSeries::compose(&f, &g).unwrap().is_identity() as usize;
    }
    verdict(
        ok == 50,
        format!("{ok}/50 series with compose(f, revert(f)) = x to order 12"),
    )
}

fn c9_backends() -> Verdict {
    let mus = [rat(-1, 2), int(0), rat(1, 4), rat(1, 2), int(1)];
    let qs = [rat(1, 2), rat(3, 4), int(1), rat(3, 2), int(2)];
    let mut worst = f64::INFINITY;
    let mut cells = 0;
    for mu in &mus {
        for q in &qs {
            let m = GasModel::new(
                StructureFunction::MuThenQ {
                    mu: mu.clone(),
                    q: q.clone(),
                },
                8,
            )
            .unwrap();
            let exact = m.virial_table(Backend::Exact).unwrap();
            let dec = m.virial_table(Backend::Decimal { digits: DIGITS }).unwrap();
            for (e, d) in exact.values().zip(dec.values()) {
                let a = e.to_decimal_value(80).unwrap();
                let b = d.to_decimal_value(80).unwrap();
                let digits = if e.is_zero() {
                    if b.is_zero() {
                        f64::INFINITY
                    } else {
                        0.0
                    }
                } else {
                    agreement(&a, &b)
                };
                worst = worst.min(digits);
                cells += 1;
            }
        }
    }
    verdict(
        worst >= AGREE_DIGITS,
        format!("{cells} coefficients, worst agreement {worst:.1} significant digits"),
    )
}

fn timed_table(order: usize) -> (Duration, Scalar) {
    let sf = StructureFunction::MuThenQ {
        mu: rat(1, 4),
        q: rat(3, 2),
    };
    let start = Instant::now();
    let t = GasModel::new(sf, order)
        .unwrap()
        .virial_table(Backend::Exact)
        .unwrap();
    (start.elapsed(), t.entries.last().unwrap().value.clone())
}

fn main() {
    let mut lines = Vec::new();
    let s = Duration::from_secs;
    criterion(
        &mut lines,
        "1",
        "undeformed ideal Bose limit",
        s(1),
        c1_ideal_limit,
    );
    criterion(
        &mut lines,
        "2",
        "quadratic V2 and compensation",
        s(1),
        c2_quadratic_v2,
    );
    criterion(
        &mut lines,
        "3",
        "engine vs corrected closed forms",
        s(30),
        c3_closed_forms,
    );
    criterion(
        &mut lines,
        "4",
        "second virial shift limits",
        s(1),
        c4_delta_v2,
    );
    criterion(
        &mut lines,
        "5",
        "basic-number monomial table",
        s(1),
        c5_monomials,
    );
    criterion(
        &mut lines,
        "6",
        "Hamiltonian split identity",
        s(1),
        c6_hamiltonian,
    );
    c7_errata(&mut lines);
    criterion(
        &mut lines,
        "8",
        "reversion round trip",
        s(10),
        c8_round_trip,
    );
    criterion(
        &mut lines,
        "9",
        "exact vs decimal backends",
        s(30),
        c9_backends,
    );
    criterion(&mut lines, "10", "performance envelope", s(130), || {
        let (t12, v12) = timed_table(12);
        let (t20, v20) = timed_table(20);
        verdict(
            t12 < s(10) && t20 < s(120),
            format!(
                "K = 12 in {:.2} s (limit 10), K = 20 in {:.2} s (limit 120); V12 = {}, V20 = {}",
                t12.as_secs_f64(),
                t20.as_secs_f64(),
                v12.to_decimal_value(30).unwrap().to_scientific(8),
                v20.to_decimal_value(30).unwrap().to_scientific(8)
            ),
        )
    });

    let failed: Vec<&Line> = lines
        .iter()
        .filter(|l| !l.pass && l.waived.is_none())
        .collect();
    let waived: Vec<&Line> = lines
        .iter()
        .filter(|l| !l.pass && l.waived.is_some())
        .collect();
    let passed = lines.iter().filter(|l| l.pass).count();
    println!(
        "acceptance: {passed}/{} lines pass, {} waived, {} failed",
        lines.len(),
        waived.len(),
        failed.len()
    );
    for l in &waived {
        println!(
            "  waived {} ({}): {}",
            l.id,
            l.title,
            l.waived.unwrap_or_default()
        );
    }
    if !failed.is_empty() {
        for l in &failed {
            println!("  FAILED {}: {}", l.id, l.title);
        }
        std::process::exit(1);
    }
}
