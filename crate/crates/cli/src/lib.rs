//! Library side of the `bosegas` command: argument types, table rendering,
//! parameter sweeps and the consistency report against the published forms.

pub mod args;
pub mod check;
pub mod commands;
pub mod sweep;
pub mod table;

pub use args::{Cli, Command};
pub use commands::{execute, CliError, Outcome};
