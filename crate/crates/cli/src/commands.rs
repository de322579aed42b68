use std::fmt;

use bosegas_core::structfn::{eval_eps, monomial_expansion};
use bosegas_core::thermo::{closed_form_table, SeriesSet};
use bosegas_core::{
    hamiltonian_split, two_param_split, Backend, ClosedFormMode, Decimal, Error, GasModel,
    PolyBounds, Scalar, StructureFunction, SurdRational, TruncPoly, VirialTable, GUARD_DIGITS,
};

use crate::args::{Command, ModelArgs, Source};
use crate::sweep::{self, SweepJob};
use crate::table::Table;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Usage(String),
    Io(std::io::Error),
}

impl CliError {
    /// 2 for malformed input, 3 for a backend that cannot represent the
    /// model, 1 for anything else.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_)
            | CliError::Core(
                Error::Parse(_) | Error::InvalidParameter(_) | Error::UnsupportedOrder(_),
            ) => 2,
            CliError::Core(Error::BackendUnsupported { .. }) => 3,
            CliError::Core(_) | CliError::Io(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Usage(m) => f.write_str(m),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

/// Rendered output; `success` is false when the command ran but its verdict
/// is negative (a failing consistency report).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub success: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Self {
            text,
            success: true,
        }
    }
}

pub fn execute(cmd: &Command) -> Result<Outcome, CliError> {
    match cmd {
        Command::Virial {
            model,
            source,
            output,
        } => Ok(Outcome::ok(virial(model, *source)?.render(output.format))),
        Command::Series { model, output } => Ok(Outcome::ok(series(model)?.render(output.format))),
        Command::EpsExpand {
            order_eps,
            order_n,
            output,
        } => Ok(Outcome::ok(
            eps_expand(*order_eps, *order_n).render(output.format),
        )),
        Command::Hamiltonian {
            order_eps,
            order_mu,
            output,
        } => Ok(Outcome::ok(
            hamiltonian(*order_eps, *order_mu).render(output.format),
        )),
        Command::Sweep {
            model,
            ranges,
            only_k,
            output,
        } => {
            let job = SweepJob {
                base: &model.sf,
                ranges,
                order: model.order,
                backend: model.backend,
                only_k,
                digits: model.digits,
            };
            let mut table = sweep::run(&job)?;
            let mut meta = Table::default();
            describe(
                &mut meta,
                &GasModel::new(model.sf.clone(), model.order)?,
                model,
                "engine",
            );
            meta.meta(
                "sweep",
                ranges
                    .iter()
                    .map(|r| format!("{}={}:{}:{}", r.param, r.start, r.stop, r.step))
                    .collect::<Vec<_>>()
                    .join(" "),
            );
            table.metadata = meta.metadata;
            Ok(Outcome::ok(table.render(output.format)))
        }
        Command::CheckPaper { .. } => {
            let report = crate::check::run()?;
            Ok(Outcome {
                text: report.render(),
                success: report.ok(),
            })
        }
    }
}

/// Significant-digit scientific rendering, empty for symbolic values.
pub fn decimal_cell(v: &Scalar, digits: u32) -> String {
    v.to_decimal_value(digits + GUARD_DIGITS)
        .map(|d| d.to_scientific(digits))
        .unwrap_or_default()
}

fn describe(t: &mut Table, model: &GasModel, args: &ModelArgs, provenance: &str) {
    let report = model.report();
    t.meta("tool", format!("bosegas {VERSION}"));
    t.meta("sf", &model.sf);
    t.meta("K", model.order);
    t.meta("backend", args.backend);
    t.meta("digits", args.digits);
    t.meta("provenance", provenance);
    t.meta(
        "composite_admissible",
        report
            .composite_admissible
            .map_or("n/a".to_string(), |b| b.to_string()),
    );
    t.meta(
        "first_nonpositive",
        report
            .first_nonpositive
            .map_or("none".to_string(), |n| n.to_string()),
    );
}

fn closed_forms(
    sf: &StructureFunction,
    order: usize,
    backend: Backend,
    mode: ClosedFormMode,
) -> Result<VirialTable<Scalar>, Error> {
    match (backend, sf) {
        (Backend::Exact, StructureFunction::QBasicEps { order: e }) => {
            Ok(
                closed_form_table::<TruncPoly>(sf, order, mode, &PolyBounds::eps_only(*e))?
                    .map(Scalar::from),
            )
        }
        (Backend::Exact, _) => {
            Ok(closed_form_table::<SurdRational>(sf, order, mode, &())?.map(Scalar::from))
        }
        (Backend::Decimal { digits }, _) => {
            Ok(
                closed_form_table::<Decimal>(sf, order, mode, &(digits + GUARD_DIGITS))?
                    .map(Scalar::from),
            )
        }
    }
}

fn virial(args: &ModelArgs, source: Source) -> Result<Table, CliError> {
    let model = GasModel::new(args.sf.clone(), args.order)?;
    let table = match source {
        Source::Engine => model.virial_table(args.backend)?,
        Source::Corrected => closed_forms(
            &model.sf,
            model.order,
            args.backend,
            ClosedFormMode::Corrected,
        )?,
        Source::Printed => closed_forms(
            &model.sf,
            model.order,
            args.backend,
            ClosedFormMode::AsPrinted,
        )?,
    };
    let provenance = table
        .entries
        .first()
        .map_or("engine", |e| e.provenance.as_str());
    let exact = args.backend == Backend::Exact;
    let mut columns = vec!["k", "V_k_decimal"];
    if exact {
        columns.push("V_k_exact");
    }
    let mut out = Table::new(&columns);
    describe(&mut out, &model, args, provenance);
    for e in &table.entries {
        let mut row = vec![e.k.to_string(), decimal_cell(&e.value, args.digits)];
        if exact {
            row.push(e.value.exact_string().unwrap_or_default());
        }
        out.push(row);
    }
    Ok(out)
}

fn series(args: &ModelArgs) -> Result<Table, CliError> {
    let model = GasModel::new(args.sf.clone(), args.order)?;
    let SeriesSet {
        particle,
        pressure,
        fugacity,
    } = model.series_table(args.backend)?;
    let exact = args.backend == Backend::Exact;
    let mut columns = vec!["series", "var", "n", "c_n_decimal"];
    if exact {
        columns.push("c_n_exact");
    }
    let mut out = Table::new(&columns);
    describe(&mut out, &model, args, "engine");
    for (name, s) in [
        ("particle", particle),
        ("pressure", pressure),
        ("fugacity", fugacity),
    ] {
        for (n, c) in s.coeffs().iter().enumerate() {
            let mut row = vec![
                name.to_string(),
                s.var().to_string(),
                n.to_string(),
                decimal_cell(&c.0, args.digits),
            ];
            if exact {
                row.push(c.0.exact_string().unwrap_or_default());
            }
            out.push(row);
        }
    }
    Ok(out)
}

fn eps_expand(order_eps: u32, order_n: u32) -> Table {
    let mut out = Table::new(&["form", "index", "eps_power", "coefficient"]);
    out.meta("tool", format!("bosegas {VERSION}"));
    out.meta("order_eps", order_eps);
    out.meta("order_n", order_n);
    out.meta(
        "forms",
        "value: [n]_q at integer n; monomial: coefficient of N^index",
    );
    for n in 0..=order_n as u64 {
        for (i, c) in eval_eps(n, order_eps).eps_coefficients().iter().enumerate() {
            if !c.is_zero() {
                out.push(vec![
                    "value".into(),
                    n.to_string(),
                    i.to_string(),
                    c.to_string(),
                ]);
            }
        }
    }
    let table = monomial_expansion(order_eps, order_n);
    for (&(p, i), c) in &table.entries {
        out.push(vec![
            "monomial".into(),
            p.to_string(),
            i.to_string(),
            c.to_string(),
        ]);
    }
    out
}

fn hamiltonian(order_eps: u32, order_mu: u32) -> Table {
    let mut out = Table::new(&["eps_power", "mu_power", "N_power", "coefficient"]);
    out.meta("tool", format!("bosegas {VERSION}"));
    out.meta("order_eps", order_eps);
    out.meta("order_mu", order_mu);
    out.meta("hamiltonian", "1/2 (phi(N+1) + phi(N)), omega = 1");
    let terms: Vec<((u32, u32), bosegas_core::NPoly)> = if order_mu == 0 {
        hamiltonian_split(order_eps)
            .terms
            .into_iter()
            .enumerate()
            .map(|(i, p)| ((i as u32, 0), p))
            .collect()
    } else {
        two_param_split(order_eps, order_mu)
            .terms
            .into_iter()
            .collect()
    };
    for ((i, j), p) in terms {
        for (k, c) in p.coeffs().iter().enumerate() {
            if !num_traits::Zero::is_zero(c) {
                out.push(vec![
                    i.to_string(),
                    j.to_string(),
                    k.to_string(),
                    c.to_string(),
                ]);
            }
        }
    }
    out
}
