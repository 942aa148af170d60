//! Gauss-Laguerre quadrature at arbitrary precision.

use rug::ops::Pow;
use rug::Float;

use super::precision::PrecisionContext;
use crate::{Error, Result};

/// Nodes and weights for `∫_0^∞ e^{-x} p(x) dx`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureRule {
    pub order: usize,
    pub nodes: Vec<Float>,
    pub weights: Vec<Float>,
}

impl QuadratureRule {
    /// Applies the rule to `f`, which receives each node.
    pub fn integrate(&self, mut f: impl FnMut(&Float) -> Float) -> Float {
        let prec = self.nodes.first().map(Float::prec).unwrap_or(64);
        let mut s = Float::new(prec);
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            s += f(x) * w;
        }
        s
    }
}

/// `(L_n(x), L_{n-1}(x))` by the three-term recurrence, computed at the
/// precision of `x`.
pub fn laguerre_pair(n: usize, x: &Float) -> (Float, Float) {
    let prec = x.prec();
    let mut prev = Float::with_val(prec, 1);
    if n == 0 {
        return (prev, Float::new(prec));
    }
    let mut cur = Float::with_val(prec, 1 - x);
    for k in 1..n {
        // (k+1) L_{k+1} = (2k+1-x) L_k - k L_{k-1}
        let mut next = Float::with_val(prec, (2 * k + 1) as u32 - x);
        next *= &cur;
        next -= Float::with_val(prec, &prev * k as u32);
        next /= (k + 1) as u32;
        prev = std::mem::replace(&mut cur, next);
    }
    (cur, prev)
}

/// `(L_n(x), L_n'(x))`, using `x L_n' = n (L_n - L_{n-1})`.
pub fn laguerre_with_derivative(n: usize, x: &Float) -> (Float, Float) {
    let (ln, lm) = laguerre_pair(n, x);
    let mut d = Float::with_val(x.prec(), &ln - &lm);
    d *= n as u32;
    d /= x;
    (ln, d)
}

fn initial_guess(i: usize, n: usize, found: &[f64]) -> f64 {
    let nf = n as f64;
    match i {
        0 => 3.0 / (1.0 + 2.4 * nf),
        1 => found[0] + 15.0 / (1.0 + 2.5 * nf),
        _ => {
            let ai = (i - 1) as f64;
            let z = found[i - 1];
            z + (1.0 + 2.55 * ai) / (1.9 * ai) * (z - found[i - 2])
        }
    }
}

const MAX_REFINE: usize = 400;

/// Sign of `L_M` just to the left of its `i`-th zero.
fn left_sign(i: usize) -> bool {
    i % 2 == 0
}

/// Gauss-Laguerre nodes (zeros of `L_M`, ascending) and weights.
///
/// Initial guesses come from the usual asymptotic node estimates. Each guess
/// is turned into a bracket `[lo, hi]` holding exactly the next zero, using
/// the known sign pattern of `L_M` between consecutive zeros, and refined by
/// Newton steps that fall back to bisection whenever they leave the bracket.
pub fn laguerre_nodes(m: usize, ctx: &PrecisionContext) -> Result<QuadratureRule> {
    if !(1..=512).contains(&m) {
        return Err(Error::InvalidArgument(format!("quadrature order must lie in 1..=512, got {m}")));
    }
    let work = ctx.bits() + 32;
    let step_tol = Float::with_val(work, 10).pow(-(ctx.digits() as i32) - 4);
    let mut roots: Vec<Float> = Vec::with_capacity(m);
    let mut approx: Vec<f64> = Vec::with_capacity(m);
    for i in 0..m {
        let fail = || Error::NodeRefinement { index: i, order: m };
        let positive_left = left_sign(i);
        let is_left = |x: &Float| {
            let (l, _) = laguerre_pair(m, x);
            (l > 0) == positive_left && !l.is_zero()
        };
        let floor = roots.last().cloned().unwrap_or_else(|| Float::new(work));
        let prev = floor.to_f64();
        let mut guess = initial_guess(i, m, &approx);
        if !(guess > prev) {
            guess = prev + 1e-3 * (1.0 + prev);
        }
        let mut lo = floor.clone();
        let mut hi = Float::with_val(work, guess);
        // March right until the sign flips past the wanted zero.
        let mut width = (guess - prev).max(1e-6);
        let mut marched = 0;
        while is_left(&hi) {
            lo = hi.clone();
            width *= 0.5;
            hi += width.max(1e-12 * hi.to_f64());
            marched += 1;
            if marched > 4000 {
                return Err(fail());
            }
        }
        // If the march never moved, the bracket starts at the previous zero;
        // pull the left end in until it sits on the correct sign.
        if lo == floor && !roots.is_empty() {
            let mut probe = Float::with_val(work, &floor + &hi) / 2u32;
            let mut tries = 0;
            while !is_left(&probe) {
                hi = probe.clone();
                probe = Float::with_val(work, &floor + &hi) / 2u32;
                tries += 1;
                if tries > 200 {
                    return Err(fail());
                }
            }
            lo = probe;
        }
        let mut z = Float::with_val(work, &lo + &hi) / 2u32;
        let mut converged = false;
        for _ in 0..MAX_REFINE {
            let (l, dl) = laguerre_with_derivative(m, &z);
            if l.is_zero() {
                converged = true;
                break;
            }
            if (l > 0) == positive_left {
                lo = z.clone();
            } else {
                hi = z.clone();
            }
            let step = Float::with_val(work, &l / &dl);
            let mut next = Float::with_val(work, &z - &step);
            if !(next.is_finite() && next > lo && next < hi) {
                next = Float::with_val(work, &lo + &hi) / 2u32;
            }
            let moved = Float::with_val(work, &next - &z).abs() / Float::with_val(work, next.abs_ref());
            z = next;
            if moved < step_tol {
                converged = true;
                break;
            }
        }
        let ok = converged && z.is_finite() && z > 0 && roots.last().is_none_or(|r| z > *r);
        if !ok {
            return Err(fail());
        }
        approx.push(z.to_f64());
        roots.push(z);
    }

    let prec = ctx.bits();
    let resid_tol = ctx.tol(1);
    let mut nodes = Vec::with_capacity(m);
    let mut weights = Vec::with_capacity(m);
    let mp1 = (m + 1) as u32;
    for (i, z) in roots.into_iter().enumerate() {
        let (l, dl) = laguerre_with_derivative(m, &z);
        let bound = Float::with_val(work, &dl * &z).abs() * &resid_tol;
        if l.abs() >= bound {
            return Err(Error::NodeRefinement { index: i, order: m });
        }
        let (lnext, _) = laguerre_pair(m + 1, &z);
        let mut w = Float::with_val(work, lnext.square_ref());
        w *= mp1 * mp1;
        w = Float::with_val(work, &z / &w);
        nodes.push(Float::with_val(prec, z));
        weights.push(Float::with_val(prec, w));
    }
    Ok(QuadratureRule { order: m, nodes, weights })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_order_rule() {
        let ctx = PrecisionContext::new(40).unwrap();
        let q = laguerre_nodes(1, &ctx).unwrap();
        assert_eq!(q.nodes[0], 1);
        assert_eq!(q.weights[0], 1);
    }

    #[test]
    fn second_order_nodes_closed_form() {
        let ctx = PrecisionContext::new(60).unwrap();
        let q = laguerre_nodes(2, &ctx).unwrap();
        let s2 = ctx.real(2).sqrt();
        let lo = Float::with_val(ctx.bits(), 2 - &s2);
        let hi = Float::with_val(ctx.bits(), 2 + &s2);
        let tol = ctx.tol(2);
        assert!(Float::with_val(ctx.bits(), &q.nodes[0] - &lo).abs() < tol);
        assert!(Float::with_val(ctx.bits(), &q.nodes[1] - &hi).abs() < tol);
    }

    #[test]
    fn cubic_moment_exact() {
        let ctx = PrecisionContext::new(50).unwrap();
        let q = laguerre_nodes(2, &ctx).unwrap();
        let v = q.integrate(|x| Float::with_val(x.prec(), x.pow(3u32)));
        assert!(Float::with_val(ctx.bits(), v - 6u32).abs() < ctx.tol(2));
    }

    #[test]
    fn rejects_order_out_of_range() {
        let ctx = PrecisionContext::new(30).unwrap();
        assert!(laguerre_nodes(0, &ctx).is_err());
        assert!(laguerre_nodes(513, &ctx).is_err());
    }
}
