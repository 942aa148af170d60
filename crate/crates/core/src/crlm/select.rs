use faer::c64;

use super::blocks::SecularBlocks;
use super::refine::rayleigh_refine;
use super::solve::RotatedProblem;
use super::DEFAULT_THETA_SCAN;
use crate::numerics::complex::HpComplex;
use crate::numerics::precision::PrecisionContext;
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct CrlmOptions {
    pub theta_scan: Vec<f64>,
    /// Polish each selected eigenvalue at working precision.
    pub refine: bool,
    /// Largest allowed change of the tracked eigenvalue between adjacent angles.
    pub jump_limit: f64,
    /// `|Im E|` below which the width is reported as unresolved.
    pub resolution: f64,
}

impl Default for CrlmOptions {
    fn default() -> Self {
        Self { theta_scan: DEFAULT_THETA_SCAN.to_vec(), refine: true, jump_limit: 1e-2, resolution: 1e-13 }
    }
}

/// Tracked eigenvalue at one rotation angle.
#[derive(Clone, Debug)]
pub struct ThetaPoint {
    pub theta: f64,
    /// Eigenvalue from the dense `f64` solve.
    pub raw: c64,
    /// Refined value (equal to `raw` when refinement is off or fails).
    pub e: HpComplex,
}

#[derive(Clone, Debug)]
pub struct ResonanceCandidate {
    pub e: HpComplex,
    pub theta_used: f64,
    pub n_used: usize,
    /// `|dE/dθ|` by finite differences over the scan.
    pub stability: f64,
    pub seed_distance: f64,
    pub scan: Vec<ThetaPoint>,
    /// `|Im E|` is below the method's resolution.
    pub below_resolution: bool,
}

impl ResonanceCandidate {
    pub fn gamma(&self) -> rug::Float {
        rug::Float::with_val(self.e.im.prec(), &self.e.im * -2i32)
    }
}

fn to_c64(z: &HpComplex) -> c64 {
    let (re, im) = z.to_f64();
    c64::new(re, im)
}

/// Diff of two high-precision values, reduced to `f64`.
fn distance(a: &HpComplex, b: &HpComplex) -> f64 {
    to_c64(&(a - b)).norm()
}

/// For each angle, takes the eigenvalue nearest `seed`; reports the angle
/// where the tracked value is most stationary.
pub fn select_resonance(
    blocks: &SecularBlocks,
    seed: c64,
    f: f64,
    opts: &CrlmOptions,
    ctx: &PrecisionContext,
) -> Result<ResonanceCandidate> {
    if opts.theta_scan.len() < 2 {
        return Err(Error::InvalidArgument("at least two rotation angles are required".into()));
    }
    let prec = ctx.bits();
    let mut scan: Vec<ThetaPoint> = Vec::with_capacity(opts.theta_scan.len());
    for &theta in &opts.theta_scan {
        let problem = RotatedProblem::new(blocks, theta, f)?;
        let eigs = problem.eigenvalues()?;
        let mut order: Vec<usize> = (0..eigs.len()).collect();
        order.sort_by(|&i, &j| (eigs[i] - seed).norm().total_cmp(&(eigs[j] - seed).norm()));
        let raw = eigs[order[0]];
        if let Some(prev) = scan.last() {
            if (raw - prev.raw).norm() > opts.jump_limit {
                let contenders: Vec<String> = order.iter().take(3).map(|&i| format!("{}", eigs[i])).collect();
                return Err(Error::Ambiguous(format!(
                    "tracked eigenvalue jumps from {} to {} between θ={} and θ={theta}; nearest: {}",
                    prev.raw,
                    raw,
                    prev.theta,
                    contenders.join(", ")
                )));
            }
        }
        let e = if opts.refine && blocks.degraded_to.is_none() {
            rayleigh_refine(&problem, raw, ctx)
                .filter(|z| (to_c64(z) - raw).norm() < 1e-8 * raw.norm().max(1.0))
                .unwrap_or_else(|| HpComplex::with_val(prec, raw.re, raw.im))
        } else {
            HpComplex::with_val(prec, raw.re, raw.im)
        };
        scan.push(ThetaPoint { theta, raw, e });
    }

    let n = scan.len();
    let slope = |i: usize, j: usize| distance(&scan[j].e, &scan[i].e) / (scan[j].theta - scan[i].theta).abs();
    let stability: Vec<f64> = (0..n)
        .map(|i| {
            if i == 0 {
                slope(0, 1)
            } else if i == n - 1 {
                slope(n - 2, n - 1)
            } else {
                slope(i - 1, i + 1)
            }
        })
        .collect();
    let best = (0..n).min_by(|&i, &j| stability[i].total_cmp(&stability[j])).expect("nonempty scan");
    let chosen = &scan[best];
    let e = chosen.e.clone();
    let seed_distance = (to_c64(&e) - seed).norm();
    let below_resolution = e.im.to_f64().abs() < opts.resolution;
    Ok(ResonanceCandidate {
        theta_used: chosen.theta,
        n_used: blocks.n,
        stability: stability[best],
        seed_distance,
        below_resolution,
        e,
        scan,
    })
}
