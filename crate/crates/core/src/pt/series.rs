use rug::Float;

use crate::numerics::precision::PrecisionContext;
use crate::state::StateLabel;
use crate::{Error, Result};

/// Perturbation coefficients `E_k` and `A_k`, `0 <= k <= order`.
#[derive(Clone, Debug)]
pub struct PtSeries {
    pub state: StateLabel,
    pub order: usize,
    pub e_coeffs: Vec<Float>,
    /// Coefficients of the ξ-channel constant `A`; the η channel carries `1 - A`.
    pub a_coeffs: Vec<Float>,
}

impl PtSeries {
    /// Coefficients of the η-channel constant `1 - A`.
    pub fn a_minus_coeffs(&self) -> Vec<Float> {
        self.a_coeffs
            .iter()
            .enumerate()
            .map(|(k, a)| if k == 0 { Float::with_val(a.prec(), 1 - a) } else { Float::with_val(a.prec(), -a) })
            .collect()
    }

    /// `Σ_{k<=upto} c_k F^k` for the given coefficient list.
    pub fn partial_sum(coeffs: &[Float], f: &Float, upto: usize) -> Float {
        let prec = coeffs.first().map(Float::prec).unwrap_or(64);
        let mut s = Float::new(prec);
        for c in coeffs[..=upto.min(coeffs.len() - 1)].iter().rev() {
            s *= f;
            s += c;
        }
        s
    }

    /// `true` when `E_k` vanishes by symmetry (odd order, `n1 = n2`).
    pub fn structurally_zero(&self, k: usize) -> bool {
        self.state.n1 == self.state.n2 && k % 2 == 1
    }
}

struct ChannelPoly {
    ni: usize,
    two_s: u32,
    n: u32,
}

impl ChannelPoly {
    /// Solves `L₀ P = rhs` downward from the top degree with the coefficient
    /// of `x^{n_i}` set to zero. Returns `P` and the solvability defect
    /// `(n_i+1)(n_i+2s) p_{n_i+1} - rhs_{n_i}`.
    fn solve(&self, rhs: &[Float], prec: u32) -> (Vec<Float>, Float) {
        let top = rhs.len().max(self.ni + 1);
        let mut p = vec![Float::new(prec); top + 1];
        let mut defect = Float::new(prec);
        for j in (0..top).rev() {
            let r = rhs.get(j).cloned().unwrap_or_else(|| Float::new(prec));
            let mut t = Float::with_val(prec, &p[j + 1] * ((j as u32 + 1) * (j as u32 + self.two_s)));
            if j == self.ni {
                t -= &r;
                defect = t;
                continue;
            }
            t = r - t;
            t *= self.n;
            t /= self.ni as i32 - j as i32;
            p[j] = t;
        }
        while p.len() > 1 && p.last().is_some_and(Float::is_zero) {
            p.pop();
        }
        (p, defect)
    }

    /// Zeroth-order polynomial with unit coefficient at `x^{n_i}`.
    fn ground(&self, prec: u32) -> Vec<Float> {
        let mut p = vec![Float::new(prec); self.ni + 1];
        p[self.ni] = Float::with_val(prec, 1);
        for j in (0..self.ni).rev() {
            let mut t = Float::with_val(prec, &p[j + 1] * ((j as u32 + 1) * (j as u32 + self.two_s)));
            t *= self.n;
            t /= -(self.ni as i32 - j as i32);
            p[j] = t;
        }
        p
    }
}

fn axpy(acc: &mut Vec<Float>, c: &Float, p: &[Float], shift: usize) {
    if acc.len() < p.len() + shift {
        let prec = c.prec();
        acc.resize(p.len() + shift, Float::new(prec));
    }
    for (j, v) in p.iter().enumerate() {
        acc[j + shift] += c * v;
    }
}

/// Perturbation series through order `order`.
///
/// Coefficients are computed in floating point at working precision; the
/// closed forms of `E_1` and `E_2` are checked to detect precision loss.
pub fn pt_series(state: StateLabel, order: usize, ctx: &PrecisionContext) -> Result<PtSeries> {
    if order > 200 {
        return Err(Error::InvalidArgument(format!("order must not exceed 200, got {order}")));
    }
    ctx.require(order as u32 / 2 + 30)?;
    let prec = ctx.bits();
    let n = state.n();
    let two_s = state.abs_m() + 1;
    let chans = [
        ChannelPoly { ni: state.n1 as usize, two_s, n },
        ChannelPoly { ni: state.n2 as usize, two_s, n },
    ];
    let sigma = [1i32, -1];
    let half = Float::with_val(prec, 0.5);

    let p0: Vec<Vec<Float>> = chans.iter().map(|c| c.ground(prec)).collect();
    // Responses to unit E_k and unit channel-constant shifts.
    let mut unit_e = Vec::new();
    let mut unit_c = Vec::new();
    for (c, p) in chans.iter().zip(&p0) {
        let mut rhs_e = vec![Float::new(prec)];
        axpy(&mut rhs_e, &Float::with_val(prec, -&half), p, 1);
        let mut rhs_c = Vec::new();
        axpy(&mut rhs_c, &Float::with_val(prec, -1), p, 0);
        unit_e.push(c.solve(&rhs_e, prec));
        unit_c.push(c.solve(&rhs_c, prec));
    }

    let mut e_coeffs = vec![state.e0(prec)];
    let mut a_coeffs = vec![state.a0(prec)];
    let mut polys: [Vec<Vec<Float>>; 2] = [vec![p0[0].clone()], vec![p0[1].clone()]];

    for k in 1..=order {
        let mut base = Vec::with_capacity(2);
        for ch in 0..2 {
            let mut rhs = vec![Float::new(prec)];
            let quarter = Float::with_val(prec, sigma[ch]) / 4u32;
            axpy(&mut rhs, &quarter, &polys[ch][k - 1], 2);
            for l in 1..k {
                let el = -Float::with_val(prec, &e_coeffs[l] * &half);
                axpy(&mut rhs, &el, &polys[ch][k - l], 1);
                let dc = if ch == 0 { -a_coeffs[l].clone() } else { a_coeffs[l].clone() };
                axpy(&mut rhs, &dc, &polys[ch][k - l], 0);
            }
            base.push(chans[ch].solve(&rhs, prec));
        }
        // defect_ch + E_k * de_ch + dC_ch * dc_ch = 0, dC_+ = A_k, dC_- = -A_k.
        let (d0p, dep, dcp) = (&base[0].1, &unit_e[0].1, &unit_c[0].1);
        let (d0m, dem, dcm) = (&base[1].1, &unit_e[1].1, &unit_c[1].1);
        let det = -Float::with_val(prec, dep * dcm) - Float::with_val(prec, dcp * dem);
        if det.is_zero() {
            return Err(Error::PrecisionExhausted(format!("singular solvability system at order {k}")));
        }
        let ek = (Float::with_val(prec, d0p * dcm) + Float::with_val(prec, dcp * d0m)) / &det;
        let ak = (-Float::with_val(prec, dep * d0m) + Float::with_val(prec, d0p * dem)) / &det;
        for ch in 0..2 {
            let mut p = base[ch].0.clone();
            axpy(&mut p, &ek, &unit_e[ch].0, 0);
            let dc = if ch == 0 { ak.clone() } else { Float::with_val(prec, -&ak) };
            axpy(&mut p, &dc, &unit_c[ch].0, 0);
            polys[ch].push(p);
        }
        if !ek.is_finite() || !ak.is_finite() {
            return Err(Error::Overflow("pt_series"));
        }
        e_coeffs.push(ek);
        a_coeffs.push(ak);
    }

    let series = PtSeries { state, order, e_coeffs, a_coeffs };
    spot_check(&series, ctx)?;
    Ok(series)
}

/// `E_1 = 3nq/2` and `E_2 = -n^4 (17n² - 3q² - 9m² + 19)/16`.
fn spot_check(series: &PtSeries, ctx: &PrecisionContext) -> Result<()> {
    let prec = ctx.bits();
    let s = series.state;
    let n = s.n() as i64;
    let q = s.q() as i64;
    let m = s.m as i64;
    let mut exact = Vec::new();
    if series.order >= 1 {
        exact.push((1, Float::with_val(prec, 3 * n * q) / 2u32));
    }
    if series.order >= 2 {
        let num = -(n.pow(4)) * (17 * n * n - 3 * q * q - 9 * m * m + 19);
        exact.push((2, Float::with_val(prec, num) / 16u32));
    }
    let tol = ctx.tol(10);
    for (k, v) in exact {
        let diff = Float::with_val(prec, &series.e_coeffs[k] - &v).abs();
        let scale = Float::with_val(prec, v.abs_ref()).max(&Float::with_val(prec, 1));
        if diff > Float::with_val(prec, &tol * &scale) {
            return Err(Error::PrecisionExhausted(format!(
                "E_{k} = {} deviates from its closed form {}; raise the working precision",
                series.e_coeffs[k].to_f64(),
                v.to_f64()
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ground_state_low_orders() {
        let ctx = PrecisionContext::new(40).unwrap();
        let s = pt_series(StateLabel::ground(), 4, &ctx).unwrap();
        let expect = [-0.5, 0.0, -9.0 / 4.0, 0.0, -3555.0 / 64.0];
        for (c, x) in s.e_coeffs.iter().zip(expect) {
            assert!(Float::with_val(ctx.bits(), c - x).abs() < 1e-35, "{c} vs {x}");
        }
    }

    #[test]
    fn linear_stark_shift() {
        let ctx = PrecisionContext::new(40).unwrap();
        let s = pt_series(StateLabel::new(1, 0, 0), 2, &ctx).unwrap();
        assert_eq!(s.e_coeffs[1], 3);
        assert_eq!(s.a_coeffs[0], 0.75);
    }

    #[test]
    fn precision_guard() {
        let ctx = PrecisionContext::new(40).unwrap();
        assert!(pt_series(StateLabel::ground(), 130, &ctx).is_err());
        assert!(pt_series(StateLabel::ground(), 201, &PrecisionContext::new(200).unwrap()).is_err());
    }
}
