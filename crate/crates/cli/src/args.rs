use std::path::PathBuf;

use bosegas_core::thermo::DEFAULT_ORDER;
use bosegas_core::{Backend, StructureFunction};
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::sweep::SweepRange;
use crate::table::Format;

#[derive(Debug, Parser)]
#[command(
    name = "bosegas",
    version,
    about = "Virial coefficients of deformed Bose gases in exact arithmetic"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Virial coefficients V_1..V_K.
    Virial {
        #[command(flatten)]
        model: ModelArgs,
        /// Reversion engine, or the explicit closed forms (k <= 5).
        #[arg(long, value_enum, default_value_t = Source::Engine)]
        source: Source,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Particle-number, pressure and fugacity series.
    Series {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// [n]_q as a polynomial in eps = q - 1, and its monomial form in N.
    EpsExpand {
        #[arg(long, default_value_t = 6)]
        order_eps: u32,
        #[arg(long = "order-n", default_value_t = 4)]
        order_n: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Single-mode Hamiltonian expanded in eps (and mu with --order-mu 1).
    Hamiltonian {
        #[arg(long, default_value_t = 4)]
        order_eps: u32,
        #[arg(long, default_value_t = 0)]
        order_mu: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Virial coefficients over a grid of parameter values.
    Sweep {
        #[command(flatten)]
        model: ModelArgs,
        /// `<param>=<start>:<stop>:<step>` with rational bounds; repeatable.
        #[arg(long = "sweep", required = true)]
        ranges: Vec<SweepRange>,
        /// Emit only these k (comma separated).
        #[arg(long, value_delimiter = ',')]
        only_k: Vec<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Recompute every published identity and report discrepancies.
    CheckPaper {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

impl Command {
    pub fn out_path(&self) -> Option<&PathBuf> {
        match self {
            Command::Virial { output, .. }
            | Command::Series { output, .. }
            | Command::EpsExpand { output, .. }
            | Command::Hamiltonian { output, .. }
            | Command::Sweep { output, .. } => output.out.as_ref(),
            Command::CheckPaper { out } => out.as_ref(),
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    /// Structure function, e.g. `mu:1/4`, `mu-q:1/4,3/2`, `t:1/2;mu:1/4;q:3/2`.
    #[arg(long, default_value = "mu:0")]
    pub sf: StructureFunction,
    /// Truncation order.
    #[arg(long = "K", default_value_t = DEFAULT_ORDER)]
    pub order: usize,
    /// `exact` or `decimal:<digits>`.
    #[arg(long, default_value = "decimal:50")]
    pub backend: Backend,
    /// Significant digits in the decimal column.
    #[arg(long, default_value_t = 20)]
    pub digits: u32,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Source {
    Engine,
    Corrected,
    Printed,
}
