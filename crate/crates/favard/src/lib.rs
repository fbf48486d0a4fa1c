//! Command-line surface over `favard-core`.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod args;
pub mod commands;
pub mod config;
pub mod error;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

use args::{Cli, Command, SpectralCommand};
use error::{CliError, CliResult};

/// Worker count from `FAVARD_THREADS`, if set.
fn configure_threads() -> CliResult<()> {
    let Ok(raw) = std::env::var("FAVARD_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| CliError::usage(format!("FAVARD_THREADS must be a positive integer, got {raw:?}")))?;
    // A second call in the same process keeps the first pool.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    Ok(())
}

fn execute(cli: Cli, stdout: &mut dyn Write) -> CliResult<()> {
    configure_threads()?;
    let file = cli.config.as_deref().map(config::load).transpose()?;
    let file = file.as_ref();
    match cli.command {
        Command::Project(a) => commands::project(config::merge(a, file)?, stdout),
        Command::Favard(a) => commands::favard(config::merge(a, file)?, stdout),
        Command::Tiling(a) => commands::tiling(config::merge(a, file)?, stdout),
        Command::XLambda(a) => commands::x_lambda(config::merge(a, file)?, stdout),
        Command::Spectral { command } => {
            let command = match command {
                SpectralCommand::NuHat(a) => SpectralCommand::NuHat(config::merge(a, file)?),
                SpectralCommand::FHat(a) => SpectralCommand::FHat(config::merge(a, file)?),
                SpectralCommand::Chi(a) => SpectralCommand::Chi(config::merge(a, file)?),
                SpectralCommand::Spectrum(a) => SpectralCommand::Spectrum(config::merge(a, file)?),
                SpectralCommand::Integral(a) => SpectralCommand::Integral(config::merge(a, file)?),
                SpectralCommand::Plancherel(a) => {
                    SpectralCommand::Plancherel(config::merge(a, file)?)
                }
                SpectralCommand::Zeros(a) => SpectralCommand::Zeros(config::merge(a, file)?),
            };
            commands::spectral(command, stdout)
        }
    }
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(stderr, "{text}")
            } else {
                write!(stdout, "{text}")
            };
            return code;
        }
    };
    match execute(cli, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
