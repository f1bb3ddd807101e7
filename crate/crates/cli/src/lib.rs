//! Command-line front end for `kakeya-core`.
//!
//! Exit codes: 0 success, 1 a verification check failed, 2 usage or domain
//! error, 3 Case II infeasible or empty feasible set.

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;
use kakeya_core::Error as CoreError;

pub mod args;
pub mod commands;
pub mod config;
pub mod output;

use args::{Cli, Command};
use config::Config;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Domain(String),
    #[error("{0}")]
    Infeasible(String),
    #[error("{0} check(s) failed")]
    VerifyFailed(usize),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::VerifyFailed(_) => 1,
            CliError::Infeasible(_) => 3,
            CliError::Usage(_) | CliError::Domain(_) | CliError::Io(_) | CliError::Internal(_) => 2,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::CaseIIInfeasible { .. } | CoreError::EmptyFeasibleSet => {
                CliError::Infeasible(e.to_string())
            }
            CoreError::Domain(_) | CoreError::Quadrature { .. } | CoreError::Bracket { .. } => {
                CliError::Domain(e.to_string())
            }
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I, env_seed: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    match dispatch(&cli, env_seed, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cli: &Cli, env_seed: Option<&str>, out: &mut dyn Write) -> Result<(), CliError> {
    let cfg = Config::resolve(&cli.global, env_seed)?;
    match &cli.command {
        Command::Bound => commands::cmd_bound(&cfg, out),
        Command::Optimize(a) => commands::cmd_optimize(&cfg, a, out),
        Command::Verify(a) => commands::cmd_verify(&cfg, a, out),
        Command::Scan(a) => commands::cmd_scan(&cfg, a, out),
    }
}
