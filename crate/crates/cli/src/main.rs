//! `walshdisc`: exact Walsh Lebesgue constants and van der Corput
//! discrepancy from the command line.
//!
//! Exit codes: 0 on success, 1 when a verification finds a mismatch, 2 on
//! bad arguments, exceeded guards and I/O errors. The worker count comes
//! from `WALSHDISC_THREADS` and defaults to the available parallelism.

mod args;
mod commands;
mod method;
mod output;

use std::process::ExitCode;

use clap::Parser;

use crate::args::Cli;
use crate::commands::Status;

const THREADS_VAR: &str = "WALSHDISC_THREADS";

fn init_threads() -> anyhow::Result<()> {
    let threads = match std::env::var(THREADS_VAR) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map_err(|e| anyhow::anyhow!("{THREADS_VAR}={v:?}: {e}"))?,
        Err(std::env::VarError::NotPresent) => 0,
        Err(e) => anyhow::bail!("{THREADS_VAR}: {e}"),
    };
    rayon::ThreadPoolBuilder::new().num_threads(threads).build_global()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = init_threads().and_then(|()| commands::run(cli));
    match result {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Mismatch) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
