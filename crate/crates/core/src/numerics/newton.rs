//! Two-variable complex Newton iteration.

use super::complex::HpComplex;
use super::linalg::{cond2, solve2};
use super::precision::{log10_abs, PrecisionContext};
use crate::error::LastIterate;
use crate::{Error, Result};

/// Residual vector and Jacobian at one point.
pub type Eval2 = ([HpComplex; 2], [[HpComplex; 2]; 2]);

#[derive(Clone, Debug)]
pub struct NewtonOptions {
    /// Stop once the normalized residual is at most `10^tol_log10`. Each
    /// `|r_i|` is divided by `|dr_i/dE| max(|E|,1) + |dr_i/dA| max(|A|,1)`,
    /// which makes the test blind to any rescaling of the equations.
    pub tol_log10: f64,
    /// Stop once the relative step falls below `10^step_tol_log10`.
    pub step_tol_log10: f64,
    pub max_iter: usize,
    /// Scale the step by the estimated root multiplicity when the iteration
    /// is converging linearly onto a cluster of roots.
    pub accelerate: bool,
    /// Iterations without a new smallest step after which a run whose step
    /// has fallen below `10^noise_floor_log10` is declared converged.
    pub stall_window: usize,
    pub noise_floor_log10: f64,
}

impl NewtonOptions {
    /// Defaults tied to the working precision: residual and step tolerances
    /// of `10^(5 - digits)`.
    pub fn for_context(ctx: &PrecisionContext) -> Self {
        let d = ctx.digits() as f64;
        Self {
            tol_log10: 5.0 - d,
            step_tol_log10: 5.0 - d,
            max_iter: 100,
            accelerate: false,
            stall_window: 12,
            noise_floor_log10: -d / 3.0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StopReason {
    Residual,
    Step,
    /// Steps stopped shrinking at a level consistent with rounding noise.
    NoiseFloor,
}

#[derive(Clone, Debug)]
pub struct NewtonOutcome {
    pub e: HpComplex,
    pub a: HpComplex,
    pub iterations: usize,
    pub last_step_log10: f64,
    pub residual_log10: f64,
    pub stop: StopReason,
}

fn normalized_residual_log10(r: &[HpComplex; 2], jac: &[[HpComplex; 2]; 2], e: &HpComplex, a: &HpComplex) -> f64 {
    let se = log10_abs(&e.abs1()).max(0.0);
    let sa = log10_abs(&a.abs1()).max(0.0);
    (0..2)
        .map(|i| {
            let lhs = log10_abs(&r[i].abs1());
            let d0 = log10_abs(&jac[i][0].abs1()) + se;
            let d1 = log10_abs(&jac[i][1].abs1()) + sa;
            let big = d0.max(d1);
            let den = if big.is_finite() { big + (1.0 + 10f64.powf(d0.min(d1) - big)).log10() } else { big };
            if lhs == f64::NEG_INFINITY { lhs } else { lhs - den }
        })
        .fold(f64::NEG_INFINITY, f64::max)
}

fn norm_log10(v: &[&HpComplex]) -> f64 {
    v.iter().map(|z| log10_abs(&z.abs1())).fold(f64::NEG_INFINITY, f64::max)
}

/// Complex inner product of two 2-vectors reduced to the cosine of their angle.
fn alignment(u: &[HpComplex; 2], v: &[HpComplex; 2]) -> f64 {
    let (u0, u1, v0, v1) = (u[0].to_f64(), u[1].to_f64(), v[0].to_f64(), v[1].to_f64());
    let dot = u0.0 * v0.0 + u0.1 * v0.1 + u1.0 * v1.0 + u1.1 * v1.1;
    let nu = (u0.0 * u0.0 + u0.1 * u0.1 + u1.0 * u1.0 + u1.1 * u1.1).sqrt();
    let nv = (v0.0 * v0.0 + v0.1 * v0.1 + v1.0 * v1.0 + v1.1 * v1.1).sqrt();
    if nu == 0.0 || nv == 0.0 || !dot.is_finite() {
        // Components outside f64 range: fall back on exponent bookkeeping.
        return 0.0;
    }
    dot / (nu * nv)
}

/// Solves `r(E, A) = 0` for two complex unknowns.
///
/// `f` returns the residual and its Jacobian `[[dr1/dE, dr1/dA], [dr2/dE, dr2/dA]]`.
pub fn newton2(
    mut f: impl FnMut(&HpComplex, &HpComplex) -> Result<Eval2>,
    seed: (HpComplex, HpComplex),
    opts: &NewtonOptions,
    ctx: &PrecisionContext,
) -> Result<NewtonOutcome> {
    let prec = ctx.bits();
    let (mut e, mut a) = (seed.0.with_prec(prec), seed.1.with_prec(prec));
    let mut prev: Option<([HpComplex; 2], f64)> = None;
    let mut prev_ratio: Option<f64> = None;
    let mut best_step = f64::INFINITY;
    let mut since_best = 0usize;
    let mut last_step = f64::INFINITY;
    let mut residual = f64::INFINITY;

    for it in 0..opts.max_iter {
        let (r, jac) = f(&e, &a)?;
        residual = normalized_residual_log10(&r, &jac, &e, &a);
        if residual <= opts.tol_log10 {
            return Ok(NewtonOutcome {
                e, a, iterations: it, last_step_log10: last_step, residual_log10: residual,
                stop: StopReason::Residual,
            });
        }
        let rhs = [-&r[0], -&r[1]];
        let Some(mut delta) = solve2(&jac, &rhs) else {
            return Err(Error::SingularJacobian {
                condition: cond2(&jac),
                last: Box::new(LastIterate {
                    e, a, iterations: it, last_step_log10: last_step, residual_log10: residual,
                }),
            });
        };
        let step = norm_log10(&[&delta[0], &delta[1]]);
        let scale = norm_log10(&[&e, &a]).max(0.0);

        if opts.accelerate {
            if let Some((pd, pstep)) = &prev {
                let ratio = 10f64.powf(step - pstep);
                let aligned = alignment(&delta, pd) > 0.95;
                let steady = prev_ratio.is_some_and(|pr| (ratio - pr).abs() < 0.05 * ratio);
                if aligned && steady && ratio > 0.3 && ratio < 0.99 {
                    let p = (1.0 / (1.0 - ratio)).round().max(1.0);
                    let pf = ctx.real(p);
                    delta = [delta[0].scale(&pf), delta[1].scale(&pf)];
                    prev = None;
                    prev_ratio = None;
                    e += &delta[0];
                    a += &delta[1];
                    last_step = step + p.log10() - scale;
                    continue;
                }
                prev_ratio = Some(ratio);
            }
            prev = Some((delta.clone(), step));
        }

        e += &delta[0];
        a += &delta[1];
        if !e.is_finite() || !a.is_finite() {
            return Err(Error::Overflow("newton2"));
        }
        last_step = step - scale;
        if last_step <= opts.step_tol_log10 {
            return Ok(NewtonOutcome {
                e, a, iterations: it + 1, last_step_log10: last_step, residual_log10: residual,
                stop: StopReason::Step,
            });
        }
        if last_step < best_step {
            best_step = last_step;
            since_best = 0;
        } else {
            since_best += 1;
            if since_best >= opts.stall_window && best_step <= opts.noise_floor_log10 {
                return Ok(NewtonOutcome {
                    e, a, iterations: it + 1, last_step_log10: last_step, residual_log10: residual,
                    stop: StopReason::NoiseFloor,
                });
            }
        }
    }
    Err(Error::MaxIterations {
        last: Box::new(LastIterate {
            e, a, iterations: opts.max_iter, last_step_log10: last_step, residual_log10: residual,
        }),
    })
}

/// Variant with separate residual and Jacobian callbacks.
pub fn newton2_split(
    mut residual: impl FnMut(&HpComplex, &HpComplex) -> Result<[HpComplex; 2]>,
    mut jacobian: impl FnMut(&HpComplex, &HpComplex) -> Result<[[HpComplex; 2]; 2]>,
    seed: (HpComplex, HpComplex),
    opts: &NewtonOptions,
    ctx: &PrecisionContext,
) -> Result<NewtonOutcome> {
    newton2(|e, a| Ok((residual(e, a)?, jacobian(e, a)?)), seed, opts, ctx)
}
