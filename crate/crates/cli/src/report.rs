//! Tables and files produced by a run. Every number is a decimal string.

use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use starkres_core::decimal::format_sig;
use starkres_core::rpm::ConvergenceTrace;
use starkres_core::Float;

use crate::catalog::ReferenceEntry;
use crate::check::CheckResult;
use crate::compare::Verdict;
use crate::config::Format;
use crate::engines::Computed;
use crate::error::CliError;

/// One line of a comparison table: `method,ReE,Gamma,source`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Row {
    pub method: String,
    #[serde(rename = "ReE")]
    pub re_e: String,
    #[serde(rename = "Gamma")]
    pub gamma: String,
    pub source: String,
}

/// `format_sig` without trailing zeros in the mantissa.
pub fn decimal(x: &Float, sig: usize) -> String {
    let s = format_sig(x, sig);
    let (mant, exp) = match s.split_once('e') {
        Some((m, e)) => (m, Some(e)),
        None => (s.as_str(), None),
    };
    let mant = if mant.contains('.') { mant.trim_end_matches('0').trim_end_matches('.') } else { mant };
    let mant = if mant == "-0" { "0" } else { mant };
    match exp {
        Some(e) => format!("{mant}e{e}"),
        None => mant.to_string(),
    }
}

impl Row {
    pub fn computed(c: &Computed) -> Self {
        let re_e = c.re.as_ref().map(|x| decimal(x, c.re_digits)).unwrap_or_default();
        let gamma = match (c.gamma_bound, &c.gamma) {
            (Some(b), _) => format!("<{b:e}"),
            (None, Some(g)) => decimal(g, c.gamma_digits),
            (None, None) => String::new(),
        };
        Row { method: c.method.name().into(), re_e, gamma, source: "computed".into() }
    }

    pub fn failed(method: &str, msg: &str) -> Self {
        Row { method: method.into(), re_e: String::new(), gamma: String::new(), source: format!("error: {msg}") }
    }

    pub fn reference(e: &ReferenceEntry) -> Self {
        let gamma = match e.gamma {
            Some(g) if e.gamma_is_bound => format!("<{g}"),
            Some(g) => g.to_string(),
            None => String::new(),
        };
        Row {
            method: e.source.method().into(),
            re_e: e.re_e.unwrap_or("").to_string(),
            gamma,
            source: e.source.label().into(),
        }
    }
}

/// Everything a run produced, in a fixed order.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub method: String,
    pub state: String,
    #[serde(rename = "F")]
    pub field: String,
    pub rows: Vec<Row>,
    pub details: Vec<String>,
    pub verdicts: Vec<Verdict>,
    pub checks: Vec<CheckResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<TraceRow>>,
}

impl Report {
    pub fn check_failed(&self) -> bool {
        self.checks.iter().any(|c| !c.pass)
    }

    pub fn verdict_failed(&self) -> bool {
        self.verdicts.iter().any(|v| v.status.is_failure())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TraceRow {
    #[serde(rename = "D")]
    pub dim: usize,
    #[serde(rename = "ReE")]
    pub re_e: String,
    #[serde(rename = "ImE")]
    pub im_e: String,
    pub log10_rel_d_re: Option<f64>,
    pub log10_rel_d_im: Option<f64>,
}

/// Trace rows at `sig` significant digits.
pub fn trace_rows(trace: &ConvergenceTrace, sig: usize) -> Vec<TraceRow> {
    trace
        .points
        .iter()
        .map(|p| TraceRow {
            dim: p.dim,
            re_e: decimal(&p.estimate.e.re, sig),
            im_e: decimal(&p.estimate.e.im, sig),
            log10_rel_d_re: p.log10_rel_re.map(round3),
            log10_rel_d_im: p.log10_rel_im.map(round3),
        })
        .collect()
}

fn round3(x: f64) -> f64 {
    (x * 1000.0).round() / 1000.0
}

fn opt(x: Option<f64>) -> String {
    x.map(|v| format!("{v:.3}")).unwrap_or_default()
}

pub const TRACE_HEADER: &str = "D,ReE,ImE,log10_rel_dRe,log10_rel_dIm";

pub fn trace_csv(rows: &[TraceRow]) -> String {
    let mut s = String::from(TRACE_HEADER);
    s.push('\n');
    for r in rows {
        let _ = writeln!(s, "{},{},{},{},{}", r.dim, r.re_e, r.im_e, opt(r.log10_rel_d_re), opt(r.log10_rel_d_im));
    }
    s
}

pub const TABLE_HEADER: &str = "method,ReE,Gamma,source";

pub fn rows_csv(rows: &[Row]) -> String {
    let mut s = String::from(TABLE_HEADER);
    s.push('\n');
    for r in rows {
        let _ = writeln!(s, "{},{},{},{}", r.method, r.re_e, r.gamma, csv_field(&r.source));
    }
    s
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn md_table(out: &mut String, header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) {
    let _ = writeln!(out, "| {} |", header.join(" | "));
    let _ = writeln!(out, "|{}", "---|".repeat(header.len()));
    for r in rows {
        let _ = writeln!(out, "| {} |", r.join(" | "));
    }
}

/// Human-readable report; also the `md` file format.
pub fn markdown(report: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "## {} {} at F = {}\n", report.method, report.state, report.field);
    if !report.rows.is_empty() {
        md_table(
            &mut out,
            &["method", "ReE", "Gamma", "source"],
            report.rows.iter().map(|r| vec![r.method.clone(), r.re_e.clone(), r.gamma.clone(), r.source.clone()]),
        );
        out.push('\n');
    }
    for d in &report.details {
        let _ = writeln!(out, "- {d}");
    }
    if !report.details.is_empty() {
        out.push('\n');
    }
    if let Some(trace) = &report.trace {
        md_table(
            &mut out,
            &["D", "ReE", "ImE", "log10_rel_dRe", "log10_rel_dIm"],
            trace.iter().map(|r| {
                vec![r.dim.to_string(), r.re_e.clone(), r.im_e.clone(), opt(r.log10_rel_d_re), opt(r.log10_rel_d_im)]
            }),
        );
        out.push('\n');
    }
    if !report.verdicts.is_empty() {
        md_table(
            &mut out,
            &["pair", "quantity", "difference", "tolerance", "verdict"],
            report.verdicts.iter().map(|v| {
                vec![v.pair.clone(), v.quantity.into(), v.difference.clone(), v.tolerance.clone(), v.status.label().into()]
            }),
        );
        out.push('\n');
    }
    if !report.checks.is_empty() {
        md_table(
            &mut out,
            &["check", "quantity", "reference", "required", "agreement", "result"],
            report.checks.iter().map(|c| {
                vec![
                    format!("{} vs {}", c.method, c.source),
                    c.quantity.into(),
                    c.reference.into(),
                    c.requirement.clone(),
                    match c.agreement {
                        a if a.is_nan() => "-".into(),
                        a if a.is_finite() => format!("{a:.1} digits"),
                        _ => "exact".into(),
                    },
                    if c.pass { "PASS" } else { "FAIL" }.into(),
                ]
            }),
        );
        out.push('\n');
    }
    out
}

/// Renders the report for `--out`. The `converge` method writes its trace
/// as the CSV body.
pub fn render(report: &Report, format: Format) -> Result<String, CliError> {
    Ok(match format {
        Format::Csv => match &report.trace {
            Some(t) if report.method == "converge" => trace_csv(t),
            _ => rows_csv(&report.rows),
        },
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).map_err(|e| CliError::Config(e.to_string()))?;
            s.push('\n');
            s
        }
        Format::Md => markdown(report),
    })
}

pub fn write_file(path: &Path, body: &str) -> Result<(), CliError> {
    std::fs::write(path, body).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

#[cfg(test)]
mod tests {
    use super::*;
    use starkres_core::PrecisionContext;

    #[test]
    fn trailing_zeros_dropped() {
        let c = PrecisionContext::new(40).unwrap();
        assert_eq!(decimal(&c.parse("-0.5").unwrap(), 30), "-0.5");
        assert_eq!(decimal(&c.parse("9.5e-56").unwrap(), 10), "9.5e-56");
        assert_eq!(decimal(&c.parse("0").unwrap(), 10), "0");
        assert_eq!(decimal(&c.parse("120").unwrap(), 5), "120");
    }

    #[test]
    fn single_row_trace_has_empty_log_columns() {
        let rows = vec![TraceRow { dim: 4, re_e: "-0.5".into(), im_e: "0".into(), log10_rel_d_re: None, log10_rel_d_im: None }];
        assert_eq!(trace_csv(&rows), "D,ReE,ImE,log10_rel_dRe,log10_rel_dIm\n4,-0.5,0,,\n");
    }

    #[test]
    fn quoted_csv_sources() {
        let rows = vec![Row::failed("crlm", "bad, worse")];
        assert_eq!(rows_csv(&rows), "method,ReE,Gamma,source\ncrlm,,,\"error: bad, worse\"\n");
    }
}
