//! Pairwise agreement between engines run on the same state.

use serde::Serialize;

use starkres_core::numerics::precision::log10_abs;
use starkres_core::Float;

use crate::config::Method;
use crate::engines::Computed;

/// Tolerances used when the engines' own error estimates are tighter.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ToleranceSpec {
    /// Floor on `|ΔRe E|`.
    pub re_abs: f64,
    /// Floor on the relative width difference.
    pub gamma_rel: f64,
}

impl Default for ToleranceSpec {
    fn default() -> Self {
        Self { re_abs: 1e-12, gamma_rel: 1e-6 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    BoundConsistent,
    BoundViolated,
    NotApplicable,
    Error,
}

impl Status {
    pub fn label(&self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::BoundConsistent => "bound consistent",
            Status::BoundViolated => "bound violated",
            Status::NotApplicable => "n/a",
            Status::Error => "error",
        }
    }

    pub fn is_failure(&self) -> bool {
        matches!(self, Status::Fail | Status::BoundViolated)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub pair: String,
    pub quantity: &'static str,
    pub difference: String,
    pub tolerance: String,
    pub status: Status,
}

/// An engine's outcome: a result or the reason it has none.
pub type Outcome = Result<Computed, String>;

fn sci(x: f64) -> String {
    if x == 0.0 {
        "0".into()
    } else {
        format!("{x:.2e}")
    }
}

fn diff(a: &Float, b: &Float) -> Float {
    Float::with_val(a.prec().max(b.prec()), a - b).abs()
}

/// Compares every pair of engines that produced the same quantity.
/// Failed engines yield `error` verdicts rather than disappearing.
pub fn cross_validate(outcomes: &[(Method, Outcome)], tol: &ToleranceSpec) -> Vec<Verdict> {
    let mut verdicts = Vec::new();
    for (method, outcome) in outcomes {
        if let Err(msg) = outcome {
            verdicts.push(Verdict {
                pair: method.name().into(),
                quantity: "-",
                difference: msg.clone(),
                tolerance: "-".into(),
                status: if msg.starts_with("n/a") { Status::NotApplicable } else { Status::Error },
            });
        }
    }
    let ok: Vec<&Computed> = outcomes.iter().filter_map(|(_, o)| o.as_ref().ok()).collect();
    for (i, a) in ok.iter().enumerate() {
        for b in &ok[i + 1..] {
            let pair = format!("{} vs {}", a.method.name(), b.method.name());
            if let (Some(x), Some(y)) = (&a.re, &b.re) {
                let t = a.re_tol.max(b.re_tol).max(tol.re_abs);
                let d = diff(x, y).to_f64();
                verdicts.push(Verdict {
                    pair: pair.clone(),
                    quantity: "ReE",
                    difference: sci(d),
                    tolerance: sci(t),
                    status: if d <= t { Status::Pass } else { Status::Fail },
                });
            }
            if let (Some(x), Some(y)) = (&a.gamma, &b.gamma) {
                verdicts.push(width_verdict(pair, a, x, b, y, tol));
            }
        }
    }
    verdicts
}

fn width_verdict(pair: String, a: &Computed, x: &Float, b: &Computed, y: &Float, tol: &ToleranceSpec) -> Verdict {
    // A bound on one side is compared against the other side's value.
    let bound = match (a.gamma_bound, b.gamma_bound) {
        (Some(bd), None) => Some((bd, y)),
        (None, Some(bd)) => Some((bd, x)),
        _ => None,
    };
    if let Some((bd, value)) = bound {
        let v = value.to_f64();
        return Verdict {
            pair,
            quantity: "Gamma",
            difference: sci(v),
            tolerance: format!("< {}", sci(bd)),
            status: if v.abs() < bd { Status::BoundConsistent } else { Status::BoundViolated },
        };
    }
    let t = a.gamma_rel_tol.max(b.gamma_rel_tol).max(tol.gamma_rel);
    let scale = x.clone().abs().max(&y.clone().abs());
    let rel = if scale.is_zero() { 0.0 } else { 10f64.powf(log10_abs(&diff(x, y)) - log10_abs(&scale)) };
    Verdict {
        pair,
        quantity: "Gamma",
        difference: sci(rel),
        tolerance: sci(t),
        status: if rel <= t { Status::Pass } else { Status::Fail },
    }
}
