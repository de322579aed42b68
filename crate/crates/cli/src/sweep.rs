use std::str::FromStr;

use bosegas_core::{Backend, GasModel, Rational, Scalar, StructureFunction};
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::commands::{decimal_cell, CliError};
use crate::table::Table;

/// Largest grid a single sweep may request.
pub const MAX_POINTS: usize = 100_000;

/// `param=start:stop:step`, inclusive of `stop` when the step lands on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepRange {
    pub param: String,
    pub start: Rational,
    pub stop: Rational,
    pub step: Rational,
}

impl FromStr for SweepRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (param, range) = s
            .split_once('=')
            .ok_or_else(|| format!("sweep `{s}`: expected <param>=<start>:<stop>:<step>"))?;
        let param = param.trim();
        if !matches!(param, "q" | "mu" | "t") {
            return Err(format!(
                "sweep `{s}`: unknown parameter `{param}` (q, mu or t)"
            ));
        }
        let parts: Vec<&str> = range.split(':').collect();
        let [a, b, h] = parts.as_slice() else {
            return Err(format!("sweep `{s}`: expected <start>:<stop>:<step>"));
        };
        let num = |v: &str| {
            Rational::from_str(v.trim())
                .map_err(|_| format!("sweep `{s}`: `{v}` is not a rational like 3/2"))
        };
        let range = SweepRange {
            param: param.to_string(),
            start: num(a)?,
            stop: num(b)?,
            step: num(h)?,
        };
        if range.step.is_zero() {
            return Err(format!("sweep `{s}`: step must be nonzero"));
        }
        Ok(range)
    }
}

impl SweepRange {
    pub fn values(&self) -> Result<Vec<Rational>, CliError> {
        let span = (&self.stop - &self.start) / &self.step;
        if span.is_negative() {
            return Err(CliError::Usage(format!(
                "sweep over `{}` is empty: {} does not reach {} in steps of {}",
                self.param, self.start, self.stop, self.step
            )));
        }
        let count = span.floor().to_integer();
        if count >= MAX_POINTS.into() {
            return Err(CliError::Usage(format!(
                "sweep over `{}` has more than {MAX_POINTS} points",
                self.param
            )));
        }
        let count: usize = count.try_into().expect("bounded above");
        Ok((0..=count)
            .map(|i| &self.start + &self.step * Rational::from_integer(i.into()))
            .collect())
    }
}

/// Cartesian product in lexicographic order, first range slowest.
pub fn grid(ranges: &[SweepRange]) -> Result<Vec<Vec<Rational>>, CliError> {
    let mut points: Vec<Vec<Rational>> = vec![Vec::new()];
    for r in ranges {
        let values = r.values()?;
        if points.len().saturating_mul(values.len()) > MAX_POINTS {
            return Err(CliError::Usage(format!(
                "sweep grid has more than {MAX_POINTS} points"
            )));
        }
        points = points
            .into_iter()
            .flat_map(|p| {
                values.iter().map(move |v| {
                    let mut next = p.clone();
                    next.push(v.clone());
                    next
                })
            })
            .collect();
    }
    Ok(points)
}

pub struct SweepJob<'a> {
    pub base: &'a StructureFunction,
    pub ranges: &'a [SweepRange],
    pub order: usize,
    pub backend: Backend,
    pub only_k: &'a [usize],
    pub digits: u32,
}

/// Evaluates every grid point in parallel; rows come back in grid order.
pub fn run(job: &SweepJob) -> Result<Table, CliError> {
    let mut seen = Vec::new();
    for r in job.ranges {
        if seen.contains(&r.param) {
            return Err(CliError::Usage(format!(
                "parameter `{}` swept twice",
                r.param
            )));
        }
        seen.push(r.param.clone());
    }
    let points = grid(job.ranges)?;
    let tables: Vec<Result<Vec<Scalar>, CliError>> = points
        .par_iter()
        .map(|point| {
            let mut sf = job.base.clone();
            for (r, v) in job.ranges.iter().zip(point) {
                sf = sf.with_param(&r.param, v.clone())?;
            }
            let table = GasModel::new(sf, job.order)?.virial_table(job.backend)?;
            Ok(table.entries.into_iter().map(|e| e.value).collect())
        })
        .collect();

    let exact = job.backend == Backend::Exact;
    let mut columns: Vec<&str> = job.ranges.iter().map(|r| r.param.as_str()).collect();
    columns.extend(["k", "V_k_decimal"]);
    if exact {
        columns.push("V_k_exact");
    }
    let mut out = Table::new(&columns);
    for (point, values) in points.iter().zip(tables) {
        for (i, v) in values?.iter().enumerate() {
            let k = i + 1;
            if !job.only_k.is_empty() && !job.only_k.contains(&k) {
                continue;
            }
            let mut row: Vec<String> = point.iter().map(|p| p.to_string()).collect();
            row.push(k.to_string());
            row.push(decimal_cell(v, job.digits));
            if exact {
                row.push(v.exact_string().unwrap_or_default());
            }
            out.push(row);
        }
    }
    Ok(out)
}
