//! Command-line driver: job configuration, the reference catalog, engine
//! dispatch, cross-validation and report output.

pub mod catalog;
pub mod check;
pub mod cli;
pub mod compare;
pub mod config;
pub mod engines;
pub mod error;
pub mod report;

use starkres_core::StateLabel;

use crate::catalog::lookup;
use crate::compare::{cross_validate, Outcome, ToleranceSpec};
use crate::config::{JobConfig, Method};
use crate::engines::{run_asymptotic, run_crlm, run_pt, run_rpm, Computed};
use crate::error::CliError;
use crate::report::{trace_rows, Report, Row};

pub use crate::error::exit;

fn new_report(job: &JobConfig) -> Report {
    Report {
        method: job.method.name().into(),
        state: job.state.to_string(),
        field: job.field.clone(),
        ..Report::default()
    }
}

fn add_checks(report: &mut Report, job: &JobConfig, c: &Computed) -> Result<(), CliError> {
    if job.output.check {
        report.checks.extend(check::check(c, job.state, &job.field, job.orders)?);
    }
    Ok(())
}

fn push(report: &mut Report, c: &Computed) {
    report.rows.push(Row::computed(c));
    report.details.push(format!("{}: {}", c.method.name(), c.detail));
}

/// Runs `job` and assembles its report. Engine failures of a single-method
/// job are errors; `compare` records them as verdicts instead.
pub fn run(job: &JobConfig) -> Result<Report, CliError> {
    let mut report = new_report(job);
    match job.method {
        Method::Rpm | Method::Converge => {
            let (c, trace) = run_rpm(job)?;
            push(&mut report, &c);
            add_checks(&mut report, job, &c)?;
            if job.method == Method::Converge || job.output.trace.is_some() {
                report.trace = Some(trace_rows(&trace, c.working_digits as usize));
            }
        }
        Method::Pt => {
            let c = run_pt(job)?;
            push(&mut report, &c);
            add_checks(&mut report, job, &c)?;
        }
        Method::Crlm => {
            let c = run_crlm(job)?;
            push(&mut report, &c);
            add_checks(&mut report, job, &c)?;
        }
        Method::Asymptotic => {
            let c = run_asymptotic(job)?;
            push(&mut report, &c);
            add_checks(&mut report, job, &c)?;
        }
        Method::Compare => {
            let outcomes = compare_outcomes(job);
            for (m, o) in &outcomes {
                match o {
                    Ok(c) => {
                        push(&mut report, c);
                        add_checks(&mut report, job, c)?;
                    }
                    Err(msg) if msg.starts_with("n/a") => {}
                    Err(msg) => report.rows.push(Row::failed(m.name(), msg)),
                }
            }
            report.rows.extend(lookup(job.state, &job.field).into_iter().map(Row::reference));
            report.verdicts = cross_validate(&outcomes, &ToleranceSpec::default());
        }
    }
    Ok(report)
}

/// Runs every engine that applies to the job's state, in a fixed order.
pub fn compare_outcomes(job: &JobConfig) -> Vec<(Method, Outcome)> {
    let f = job.field_f64();
    let asymptotic = if job.state != StateLabel::ground() {
        Err("n/a: ground state only".to_string())
    } else if !(f > 0.0 && f <= 0.05) {
        Err("n/a: needs 0 < F <= 0.05".to_string())
    } else {
        run_asymptotic(job).map_err(|e| e.to_string())
    };
    vec![
        (Method::Rpm, run_rpm(job).map(|(c, _)| c).map_err(|e| e.to_string())),
        (Method::Pt, run_pt(job).map_err(|e| e.to_string())),
        (Method::Crlm, run_crlm(job).map_err(|e| e.to_string())),
        (Method::Asymptotic, asymptotic),
    ]
}

/// Exit status for a finished run.
pub fn exit_status(job: &JobConfig, report: &Report) -> u8 {
    if job.output.check && (report.check_failed() || report.verdict_failed()) {
        exit::CHECK
    } else {
        exit::OK
    }
}
