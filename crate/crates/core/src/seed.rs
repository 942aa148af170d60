//! Starting points for the Riccati-Pade and mesh solvers.

use faer::c64;
use rug::Float;

use crate::crlm::{assemble_blocks, select_resonance, CrlmOptions};
use crate::numerics::complex::HpComplex;
use crate::numerics::precision::PrecisionContext;
use crate::pt::{asymptotic_width, optimal_truncation, pt_series, TruncationReport};
use crate::state::StateLabel;
use crate::Result;

#[derive(Clone, Debug)]
pub struct Seed {
    pub e: HpComplex,
    pub a: HpComplex,
    pub truncation: Option<TruncationReport>,
}

/// Imaginary part used for excited states when nothing better is known.
pub const DEFAULT_EXCITED_IM: f64 = -1e-8;

/// Perturbation order sufficient to reach the smallest term at field `f`,
/// limited by what `digits` can carry.
pub fn pt_order_for(state: StateLabel, f: f64, digits: u32) -> usize {
    let n3 = (state.n() as f64).powi(3);
    let want = if f > 0.0 { (1.2 / (n3 * f)).ceil() + 20.0 } else { 8.0 };
    let cap = 2 * digits.saturating_sub(30) as usize;
    (want.min(200.0) as usize).clamp(4, cap.clamp(4, 200))
}

/// Real part and separation constant from optimally truncated perturbation
/// theory; imaginary part from the asymptotic formula (ground state) or a
/// small fixed value.
pub fn pt_seed(state: StateLabel, f: &Float, ctx: &PrecisionContext) -> Result<Seed> {
    let prec = ctx.bits();
    if f.is_zero() {
        return Ok(Seed {
            e: HpComplex::from_real(state.e0(prec)),
            a: HpComplex::from_real(state.a0(prec)),
            truncation: None,
        });
    }
    let order = pt_order_for(state, f.to_f64(), ctx.digits());
    let series = pt_series(state, order, ctx)?;
    let rep = optimal_truncation(&series, f)?;
    let im = if state == StateLabel::ground() && *f <= 0.05 {
        Float::with_val(prec, asymptotic_width(f, ctx)? / -2i32)
    } else {
        Float::with_val(prec, DEFAULT_EXCITED_IM)
    };
    Ok(Seed {
        e: HpComplex::new(rep.partial_sum.clone(), im),
        a: HpComplex::from_real(rep.a_partial_sum.clone()),
        truncation: Some(rep),
    })
}

/// Complex energy from a mesh calculation of size `mesh`, separation
/// constant from perturbation theory.
pub fn crlm_seed(state: StateLabel, f: &Float, mesh: usize, ctx: &PrecisionContext) -> Result<Seed> {
    let base = pt_seed(state, f, ctx)?;
    let actx = PrecisionContext::new(30)?;
    let blocks = assemble_blocks(mesh, state.m, &actx, 2 * mesh + 2 * state.abs_m() as usize + 6)?;
    let guess = c64::new(base.e.re.to_f64(), 0.0);
    let cand = select_resonance(&blocks, guess, f.to_f64(), &CrlmOptions::default(), &actx)?;
    let e = cand.e.with_prec(ctx.bits());
    Ok(Seed { e, a: base.a, truncation: base.truncation })
}
