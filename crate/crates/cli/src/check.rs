//! `--check`: computed values against catalog strings, digit by digit.

use serde::Serialize;

use starkres_core::decimal::{agreement_digits, last_place_exponent, printed_digits};
use starkres_core::numerics::precision::log10_abs;
use starkres_core::{Float, PrecisionContext, StateLabel};

use crate::catalog::{find, Source};
use crate::config::Method;
use crate::engines::Computed;
use crate::error::CliError;

/// How closely a computed value must reproduce a reference string.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum Requirement {
    /// At least this many leading significant digits.
    Digits(usize),
    /// Within one unit of the last printed digit.
    AllPrinted,
    /// Below the reference bound, up to this factor.
    BelowBound(f64),
}

impl Requirement {
    pub fn describe(&self) -> String {
        match self {
            Requirement::Digits(k) => format!(">= {k} digits"),
            Requirement::AllPrinted => "all printed digits".into(),
            Requirement::BelowBound(k) if *k == 1.0 => "below bound".into(),
            Requirement::BelowBound(k) => format!("below {k} x bound"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub method: &'static str,
    pub source: &'static str,
    pub quantity: &'static str,
    pub reference: &'static str,
    pub requirement: String,
    /// Leading significant digits reproduced; NaN for bounds.
    pub agreement: f64,
    pub pass: bool,
}

/// One comparison rule: which reference, which quantity, how strict.
struct Rule {
    source: Source,
    quantity: Quantity,
    requirement: Requirement,
}

#[derive(Clone, Copy, PartialEq)]
enum Quantity {
    Re,
    Gamma,
}

fn rules(method: Method, orders: Option<usize>, pt_digits: usize) -> Vec<Rule> {
    use Quantity::*;
    use Requirement::*;
    let r = |source, quantity, requirement| Rule { source, quantity, requirement };
    match method {
        Method::Rpm | Method::Converge => vec![
            r(Source::RpmFull, Re, Digits(40)),
            r(Source::Rpm, Re, AllPrinted),
            r(Source::Rpm, Gamma, Digits(6)),
        ],
        Method::Pt => {
            let mut v = vec![r(Source::RpmFull, Re, Digits(pt_digits.min(50)))];
            if orders == Some(130) {
                v.push(r(Source::Pt130, Re, AllPrinted));
            }
            v
        }
        Method::Asymptotic => vec![r(Source::Asymptotic, Gamma, Digits(4))],
        Method::Crlm => vec![
            r(Source::CrlmRefined, Re, Digits(12)),
            r(Source::CrlmRefined, Gamma, Digits(6)),
            r(Source::CrlmBound, Re, Digits(11)),
            r(Source::CrlmBound, Gamma, BelowBound(10.0)),
        ],
        Method::Compare => Vec::new(),
    }
}

/// Compares `computed` with every catalog entry its method is checked
/// against. Entries missing for this state or field are skipped.
pub fn check(
    computed: &Computed,
    state: StateLabel,
    field: &str,
    orders: Option<usize>,
) -> Result<Vec<CheckResult>, CliError> {
    let ctx = PrecisionContext::new(computed.working_digits.max(80))?;
    let mut out = Vec::new();
    for rule in rules(computed.method, orders, computed.re_digits.saturating_sub(1)) {
        let Some(entry) = find(rule.source, state) else { continue };
        let entry_field = ctx.parse(entry.field)?;
        if entry_field != ctx.parse(field)? {
            continue;
        }
        let (reference, value) = match rule.quantity {
            Quantity::Re => (entry.re_e, computed.re.as_ref()),
            Quantity::Gamma => (entry.gamma, computed.gamma.as_ref()),
        };
        let (Some(reference), Some(value)) = (reference, value) else { continue };
        let b = ctx.parse(reference)?;
        let x = Float::with_val(ctx.bits(), value);
        let agreement = agreement_digits(&x, &b);
        let pass = match rule.requirement {
            Requirement::Digits(k) => agreement > k as f64,
            Requirement::AllPrinted => {
                let diff = Float::with_val(ctx.bits(), &x - &b);
                log10_abs(&diff) < last_place_exponent(reference) as f64
            }
            Requirement::BelowBound(factor) => {
                computed.gamma_bound.is_some() || log10_abs(&x) < log10_abs(&b) + factor.log10()
            }
        };
        let requirement = match rule.requirement {
            Requirement::AllPrinted => format!("all {} printed digits", printed_digits(reference)),
            other => other.describe(),
        };
        out.push(CheckResult {
            method: computed.method.name(),
            source: rule.source.label(),
            quantity: if rule.quantity == Quantity::Re { "ReE" } else { "Gamma" },
            reference,
            requirement,
            agreement: match rule.requirement {
                Requirement::BelowBound(_) => f64::NAN,
                _ if agreement.is_finite() => (agreement * 10.0).floor() / 10.0,
                _ => f64::INFINITY,
            },
            pass,
        });
    }
    Ok(out)
}
