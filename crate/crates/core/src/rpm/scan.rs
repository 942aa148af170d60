use std::ops::RangeInclusive;

use rug::Float;

use super::{solve_resonance, HankelSpec, RpmOptions};
use crate::numerics::complex::HpComplex;
use crate::numerics::precision::{log10_abs, PrecisionContext};
use crate::state::ResonanceEstimate;
use crate::{Error, Result};

/// One row of a convergence trace.
#[derive(Clone, Debug)]
pub struct TracePoint {
    pub dim: usize,
    pub estimate: ResonanceEstimate,
    /// `log10 |ΔRe E / Re E|` relative to the previous dimension.
    pub log10_rel_re: Option<f64>,
    /// `log10 |ΔIm E / Im E|`; absent while `Im E` vanishes.
    pub log10_rel_im: Option<f64>,
}

#[derive(Clone, Debug, Default)]
pub struct ConvergenceTrace {
    pub points: Vec<TracePoint>,
}

impl ConvergenceTrace {
    /// The estimate at the largest dimension.
    pub fn last(&self) -> Option<&ResonanceEstimate> {
        self.points.last().map(|p| &p.estimate)
    }
}

fn rel_change(new: &Float, old: &Float, floor: f64) -> Option<f64> {
    if new.is_zero() {
        return None;
    }
    let d = Float::with_val(new.prec(), new - old);
    Some((log10_abs(&d) - log10_abs(new)).max(floor))
}

/// Solves for every `D` in `dims`, seeding each dimension from the root at
/// the previous one.
///
/// While the tracked root is still real (small `D` cannot resolve widths
/// far below the real-part error), the imaginary part of the original seed
/// is reinstated. A root that moves by more than the jump threshold is
/// retried from the original seed; if it still jumps, the point is kept with
/// its `spurious` flag set and tracking continues from the last good root.
/// A spurious root at the final dimension is an error.
pub fn converge_scan(
    f: &Float,
    m: i32,
    seed: (HpComplex, HpComplex),
    dims: RangeInclusive<usize>,
    disp: usize,
    ctx: &PrecisionContext,
    opts: &RpmOptions,
) -> Result<ConvergenceTrace> {
    if dims.is_empty() {
        return Err(Error::InvalidArgument("empty dimension range".into()));
    }
    let floor = -(ctx.digits() as f64);
    let seed_im = seed.0.im.clone();
    let im_floor = Float::with_val(ctx.bits(), seed_im.abs_ref()) * 1e-3;
    let mut trace = ConvergenceTrace::default();
    let mut current = seed.clone();
    for dim in dims {
        let spec = HankelSpec::new(dim, disp)?;
        let wrap = |e: Error| Error::Tracking { d: dim, source: Box::new(e) };
        let mut start = current.clone();
        if Float::with_val(ctx.bits(), start.0.im.abs_ref()) < im_floor {
            start.0.im = seed_im.clone();
        }
        let mut est = solve_resonance(f, m, start, spec, ctx, opts);
        if est.as_ref().map(|r| r.spurious).unwrap_or(true) && current != seed {
            est = solve_resonance(f, m, seed.clone(), spec, ctx, opts);
        }
        let mut est = est.map_err(wrap)?;
        if est.spurious {
            // Kept in the trace but never used as a tracking seed.
            trace.points.push(TracePoint { dim, estimate: est, log10_rel_re: None, log10_rel_im: None });
            continue;
        }
        let (lre, lim) = match trace.points.iter().rev().find(|p| !p.estimate.spurious) {
            Some(prev) => (
                rel_change(&est.e.re, &prev.estimate.e.re, floor),
                rel_change(&est.e.im, &prev.estimate.e.im, floor),
            ),
            None => (None, None),
        };
        est.conv_log10 = lre;
        current = (est.e.clone(), est.a.clone());
        trace.points.push(TracePoint { dim, estimate: est, log10_rel_re: lre, log10_rel_im: lim });
    }
    if let Some(p) = trace.points.last().filter(|p| p.estimate.spurious) {
        return Err(Error::Tracking {
            d: p.dim,
            source: Box::new(Error::InvalidArgument(format!(
                "root jumped to {} (seed {})",
                p.estimate.e, seed.0
            ))),
        });
    }
    Ok(trace)
}
