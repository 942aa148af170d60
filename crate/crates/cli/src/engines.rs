//! Thin drivers that turn a [`JobConfig`] into engine calls.

use starkres_core::crlm::{assemble_blocks, assemble_blocks_degraded, select_resonance, CrlmOptions};
use starkres_core::numerics::precision::{log10_abs, precision_rule};
use starkres_core::pt::{asymptotic_width, optimal_truncation, pt_series, PtSeries};
use starkres_core::rpm::{converge_scan, ConvergenceTrace, RpmOptions};
use starkres_core::seed::{crlm_seed, pt_order_for, pt_seed, Seed};
use starkres_core::{c64, Float, PrecisionContext, StateLabel};

use crate::config::{JobConfig, Method};
use crate::error::CliError;

/// Result of one engine run, with the digits it can vouch for.
#[derive(Clone, Debug)]
pub struct Computed {
    pub method: Method,
    pub re: Option<Float>,
    pub gamma: Option<Float>,
    /// Set when the width is only known to lie below this value.
    pub gamma_bound: Option<f64>,
    pub re_digits: usize,
    pub gamma_digits: usize,
    /// Absolute uncertainty of `Re E` used in cross-validation.
    pub re_tol: f64,
    /// Relative uncertainty of `Γ` used in cross-validation.
    pub gamma_rel_tol: f64,
    pub working_digits: u32,
    pub detail: String,
}

fn round_up_10(d: u32) -> u32 {
    d.div_ceil(10) * 10
}

/// Working digits for the Riccati-Pade engine.
pub fn rpm_digits(job: &JobConfig) -> u32 {
    job.digits.unwrap_or_else(|| round_up_10(precision_rule(job.field_f64())))
}

fn context(digits: u32) -> Result<PrecisionContext, CliError> {
    Ok(PrecisionContext::new(digits)?)
}

fn clamp_digits(x: f64, lo: usize, hi: usize) -> usize {
    if x.is_finite() {
        (x.floor().max(0.0) as usize).clamp(lo, hi.max(lo))
    } else if x > 0.0 {
        hi.max(lo)
    } else {
        lo
    }
}

/// Seed for the Riccati-Pade scan: perturbation theory for the ground state
/// and at zero field, a coarse mesh calculation for excited states.
pub fn rpm_seed(job: &JobConfig, f: &Float, ctx: &PrecisionContext) -> Result<Seed, CliError> {
    if job.state == StateLabel::ground() || f.is_zero() {
        Ok(pt_seed(job.state, f, ctx)?)
    } else {
        Ok(crlm_seed(job.state, f, job.rpm.seed_mesh, ctx)?)
    }
}

/// Tracked Riccati-Pade scan over the configured dimensions.
pub fn run_rpm(job: &JobConfig) -> Result<(Computed, ConvergenceTrace), CliError> {
    let digits = rpm_digits(job);
    let ctx = context(digits)?;
    let f = ctx.parse(&job.field)?;
    let seed = rpm_seed(job, &f, &ctx)?;
    let opts = RpmOptions::for_context(&ctx);
    let trace = converge_scan(
        &f,
        job.state.m,
        (seed.e, seed.a),
        job.rpm.d_min..=job.rpm.d_max,
        job.rpm.disp,
        &ctx,
        &opts,
    )?;
    let last = trace.points.last().expect("nonempty scan");
    let est = &last.estimate;
    let hi = digits as usize - 15;
    let floor = 15.0 - digits as f64;
    let lre = last.log10_rel_re.map(|x| x.max(floor));
    let re_digits = lre.map_or(10, |l| clamp_digits(-l, 6, hi));
    let lim = last.log10_rel_im.map(|x| x.max(floor));
    let gamma_digits = lim.map_or(6, |l| clamp_digits(-l, 3, hi));
    let re_scale = 10f64.powf(log10_abs(&est.e.re).max(-300.0));
    let re_tol = 10f64.powf(lre.unwrap_or(-10.0)) * re_scale;
    let detail = format!("D={} d={} digits={digits}", est.d_used, est.d_disp);
    let computed = Computed {
        method: Method::Rpm,
        re: Some(est.e.re.clone()),
        gamma: Some(est.gamma.clone()),
        gamma_bound: None,
        re_digits,
        gamma_digits,
        re_tol,
        gamma_rel_tol: 10f64.powf(lim.unwrap_or(-6.0)),
        working_digits: digits,
        detail,
    };
    Ok((computed, trace))
}

/// Number of series orders needed for the default run.
fn pt_nominal_order(job: &JobConfig) -> usize {
    match job.orders {
        Some(k) => k,
        None => pt_order_for(job.state, job.field_f64(), 430),
    }
}

pub fn pt_digits(job: &JobConfig) -> u32 {
    job.digits.unwrap_or_else(|| round_up_10((pt_nominal_order(job) as u32 / 2 + 40).max(60)))
}

/// Perturbation series, either summed over `orders` terms or truncated at
/// its smallest term.
pub fn run_pt(job: &JobConfig) -> Result<Computed, CliError> {
    let digits = pt_digits(job);
    let ctx = context(digits)?;
    let f = ctx.parse(&job.field)?;
    let hi = digits as usize - 10;
    let (sum, err, detail) = if f.is_zero() {
        (job.state.e0(ctx.bits()), ctx.zero(), "F=0".to_string())
    } else {
        match job.orders {
            Some(terms) => {
                // `terms` terms are orders 0..terms-1; the next live order
                // estimates the error.
                let series = pt_series(job.state, (terms + 1).min(200), &ctx)?;
                let sum = PtSeries::partial_sum(&series.e_coeffs, &f, terms - 1);
                let next = (terms..=series.order).find(|&k| !series.structurally_zero(k));
                let err = match next {
                    Some(k) => {
                        let upto = PtSeries::partial_sum(&series.e_coeffs, &f, k);
                        Float::with_val(ctx.bits(), &upto - &sum).abs()
                    }
                    None => ctx.zero(),
                };
                (sum, err, format!("{terms} terms, digits={digits}"))
            }
            None => {
                let series = pt_series(job.state, pt_order_for(job.state, f.to_f64(), digits), &ctx)?;
                let rep = optimal_truncation(&series, &f)?;
                let detail = format!(
                    "smallest term at order {}{}, digits={digits}",
                    rep.k_opt,
                    if rep.divergent { "" } else { " (not yet divergent)" }
                );
                (rep.partial_sum, rep.error_estimate, detail)
            }
        }
    };
    let re_digits = if err.is_zero() { hi } else { clamp_digits(log10_abs(&sum) - log10_abs(&err), 4, hi) };
    Ok(Computed {
        method: Method::Pt,
        re_tol: if err.is_zero() { 10f64.powi(15 - digits as i32) } else { 3.0 * err.to_f64() },
        re: Some(sum),
        gamma: None,
        gamma_bound: None,
        re_digits,
        gamma_digits: 0,
        gamma_rel_tol: 0.0,
        working_digits: digits,
        detail,
    })
}

/// Ground-state width from the asymptotic formula.
pub fn run_asymptotic(job: &JobConfig) -> Result<Computed, CliError> {
    let digits = job.digits.unwrap_or(40);
    let ctx = context(digits)?;
    let f = ctx.parse(&job.field)?;
    if job.state != StateLabel::ground() {
        return Err(CliError::Config("the asymptotic width formula covers the ground state only".into()));
    }
    let g = asymptotic_width(&f, &ctx)?;
    Ok(Computed {
        method: Method::Asymptotic,
        re: None,
        gamma: Some(g),
        gamma_bound: None,
        re_digits: 0,
        gamma_digits: 5,
        re_tol: 0.0,
        gamma_rel_tol: 1e-4,
        working_digits: digits,
        detail: "ground state, leading asymptotics".into(),
    })
}

/// Complex-rotated Laguerre-mesh resonance nearest the perturbative energy.
pub fn run_crlm(job: &JobConfig) -> Result<Computed, CliError> {
    let p = &job.crlm;
    let actx = context(p.assembly_digits)?;
    let blocks = match p.degrade {
        Some(sig) => assemble_blocks_degraded(p.mesh, job.state.m, &actx, p.quad_order, sig)?,
        None => assemble_blocks(p.mesh, job.state.m, &actx, p.quad_order)?,
    };
    let sctx = context(60)?;
    let f = sctx.parse(&job.field)?;
    let guess = pt_seed(job.state, &f, &sctx)?.e.re.to_f64();
    let opts = CrlmOptions { theta_scan: p.theta.clone(), ..CrlmOptions::default() };
    let cand = select_resonance(&blocks, c64::new(guess, 0.0), f.to_f64(), &opts, &actx)?;
    let (re_digits, gamma_digits, re_tol, gamma_rel_tol) = match p.degrade {
        Some(sig) => (sig as usize, sig as usize, 10f64.powi(-(sig as i32)), 10f64.powi(1 - sig as i32)),
        None => (16, 12, 1e-12, 1e-6),
    };
    let gamma_bound = cand.below_resolution.then_some(opts.resolution);
    let detail = format!(
        "N={} quad={} theta={} digits={}{}",
        p.mesh,
        p.quad_order,
        cand.theta_used,
        p.assembly_digits,
        p.degrade.map(|s| format!(" degraded to {s}")).unwrap_or_default()
    );
    Ok(Computed {
        method: Method::Crlm,
        re: Some(cand.e.re.clone()),
        gamma: Some(cand.gamma()),
        gamma_bound,
        re_digits,
        gamma_digits,
        re_tol,
        gamma_rel_tol,
        working_digits: p.assembly_digits,
        detail,
    })
}
