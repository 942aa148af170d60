use std::process::ExitCode;

use clap::Parser;

use starkres_cli::cli::{job_from, Cli};
use starkres_cli::error::CliError;
use starkres_cli::report::{markdown, render, trace_csv, write_file};
use starkres_cli::{exit_status, run};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("starkres: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn execute(cli: Cli) -> Result<u8, CliError> {
    let job = job_from(cli.command)?;
    let report = run(&job)?;
    print!("{}", markdown(&report));
    if let Some(path) = &job.output.path {
        write_file(path, &render(&report, job.output.format)?)?;
    }
    if let (Some(path), Some(trace)) = (&job.output.trace, &report.trace) {
        write_file(path, &trace_csv(trace))?;
    }
    Ok(exit_status(&job, &report))
}
