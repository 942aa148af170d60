use rug::Float;

use super::{hankel_det_scaled, riccati_coefficients, Channel, HankelSpec};
use crate::numerics::complex::HpComplex;
use crate::numerics::newton::{newton2, Eval2, NewtonOptions, NewtonOutcome};
use crate::numerics::precision::{log10_abs, precision_rule, PrecisionContext};
use crate::state::ResonanceEstimate;
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct RpmOptions {
    pub newton: NewtonOptions,
    /// Relative distance from the seed beyond which a root is flagged.
    pub jump_threshold: f64,
    /// Refuse to run below the digits required by [`precision_rule`].
    pub enforce_precision_rule: bool,
}

impl RpmOptions {
    /// Tolerances of `10^(15 - digits)` on the row-scaled determinants and on
    /// the relative step, with multiplicity-adaptive steps.
    pub fn for_context(ctx: &PrecisionContext) -> Self {
        let d = ctx.digits() as f64;
        Self {
            newton: NewtonOptions {
                tol_log10: 15.0 - d,
                step_tol_log10: 15.0 - d,
                max_iter: 600,
                accelerate: true,
                stall_window: 12,
                noise_floor_log10: -d / 2.0,
            },
            jump_threshold: 1e-3,
            enforce_precision_rule: true,
        }
    }
}

/// Residuals and Jacobian of the two-channel quantization conditions.
pub(crate) fn channel_system<'a>(
    f: &'a Float,
    m: i32,
    spec: &'a HankelSpec,
    ctx: &'a PrecisionContext,
) -> impl FnMut(&HpComplex, &HpComplex) -> Result<Eval2> + 'a {
    let len = spec.series_len();
    move |e: &HpComplex, a: &HpComplex| {
        let sx = riccati_coefficients(e, a, f, Channel::xi(m), len, ctx)?;
        let se = riccati_coefficients(e, a, f, Channel::eta(m), len, ctx)?;
        let hx = hankel_det_scaled(&sx, spec, ctx)?;
        let he = hankel_det_scaled(&se, spec, ctx)?;
        Ok(([hx.value, he.value], [[hx.d_e, hx.d_a], [he.d_e, he.d_a]]))
    }
}

fn relative_distance(x: &HpComplex, y: &HpComplex) -> f64 {
    let d = log10_abs(&(x - y).abs());
    let s = log10_abs(&y.abs());
    10f64.powf(d - s)
}

/// Solves both channel conditions for `(E, A)` from `seed`.
pub fn solve_resonance(
    f: &Float,
    m: i32,
    seed: (HpComplex, HpComplex),
    spec: HankelSpec,
    ctx: &PrecisionContext,
    opts: &RpmOptions,
) -> Result<ResonanceEstimate> {
    ctx.require_engine()?;
    if opts.enforce_precision_rule {
        ctx.require(precision_rule(f.to_f64()))?;
    }
    if f.is_sign_negative() && !f.is_zero() {
        return Err(Error::InvalidArgument("field strength must be non-negative".into()));
    }
    let seed_e = seed.0.clone();
    let out: NewtonOutcome = newton2(channel_system(f, m, &spec, ctx), seed, &opts.newton, ctx)?;
    let spurious = relative_distance(&out.e, &seed_e) > opts.jump_threshold;
    let gamma = ResonanceEstimate::width(&out.e);
    Ok(ResonanceEstimate {
        gamma,
        a: out.a,
        e: out.e,
        d_used: spec.dim,
        d_disp: spec.disp,
        conv_log10: None,
        iterations: out.iterations,
        spurious,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unperturbed_ground_state() {
        let ctx = PrecisionContext::new(60).unwrap();
        let p = ctx.bits();
        let seed = (HpComplex::with_val(p, -0.49, 0.0), HpComplex::with_val(p, 0.51, 0.0));
        let r = solve_resonance(&Float::new(p), 0, seed, HankelSpec::new(4, 0).unwrap(), &ctx, &RpmOptions::for_context(&ctx))
            .unwrap();
        let half = Float::with_val(p, 0.5);
        assert!(Float::with_val(p, &r.e.re + &half).abs() < ctx.tol(15));
        assert!(Float::with_val(p, &r.a.re - &half).abs() < ctx.tol(15));
        // A 2% move from the seed exceeds the tracking threshold.
        assert!(r.spurious);
    }
}
