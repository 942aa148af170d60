use faer::{Mat, Side};
use rug::ops::Pow;
use rug::Float;

use super::basis::MeshBasis;
use crate::numerics::precision::PrecisionContext;
use crate::numerics::quadrature::{laguerre_nodes, QuadratureRule};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockKind {
    /// `½∫(ξ ∂_ξφ_i ∂_ξφ_j + η ∂_ηφ_i ∂_ηφ_j) + (m²/8)∫φ_iφ_j (1/ξ + 1/η)`.
    Kinetic,
    /// `∫φ_iφ_j`, carrying the Coulomb term.
    Gram,
    /// `⅛∫φ_i (ξ² - η²) φ_j`.
    Field,
    /// `¼∫φ_i (ξ + η) φ_j`.
    Overlap,
}

pub const ALL_BLOCKS: [BlockKind; 4] = [BlockKind::Kinetic, BlockKind::Gram, BlockKind::Field, BlockKind::Overlap];

/// One-dimensional integrals over `g_k g_l` with `g_k = e^{-x/2} x^{|m|/2} Λ_k`.
#[derive(Clone, Debug)]
pub struct OneDimTables {
    pub n: usize,
    pub m: i32,
    /// `∫ g_k g_l`.
    pub i0: Vec<Vec<Float>>,
    /// `∫ x g_k g_l`.
    pub i1: Vec<Vec<Float>>,
    /// `∫ x² g_k g_l`.
    pub i2: Vec<Vec<Float>>,
    /// `∫ x g_k' g_l'`.
    pub t: Vec<Vec<Float>>,
    /// `∫ g_k g_l / x`; identically zero (and unused) for `m = 0`.
    pub im1: Vec<Vec<Float>>,
}

impl OneDimTables {
    pub fn compute(basis: &MeshBasis, quad: &QuadratureRule) -> Self {
        let n = basis.n;
        let am = basis.m.unsigned_abs();
        let prec = quad.nodes[0].prec();
        let zero = || vec![vec![Float::new(prec); n]; n];
        let (mut i0, mut i1, mut i2, mut t, mut im1) = (zero(), zero(), zero(), zero(), zero());
        let half_m = Float::with_val(prec, am) / 2u32;
        for (y, w) in quad.nodes.iter().zip(&quad.weights) {
            let vals = basis.eval_all(y);
            // Weighted derivative factor of g_k: Λ' + (|m|/(2y) - 1/2) Λ.
            let mut shift = Float::with_val(prec, &half_m / y);
            shift -= 0.5;
            let der: Vec<Float> = vals
                .iter()
                .map(|(v, dv)| Float::with_val(prec, v * &shift) + dv)
                .collect();
            let wm = Float::with_val(prec, y.pow(am)) * w;
            let wm1 = Float::with_val(prec, &wm * y);
            let wm2 = Float::with_val(prec, &wm1 * y);
            let wmi = if am > 0 { Float::with_val(prec, &wm / y) } else { Float::new(prec) };
            for k in 0..n {
                for l in k..n {
                    let p = Float::with_val(prec, &vals[k].0 * &vals[l].0);
                    i0[k][l] += Float::with_val(prec, &p * &wm);
                    i1[k][l] += Float::with_val(prec, &p * &wm1);
                    i2[k][l] += Float::with_val(prec, &p * &wm2);
                    if am > 0 {
                        im1[k][l] += Float::with_val(prec, &p * &wmi);
                    }
                    let d = Float::with_val(prec, &der[k] * &der[l]);
                    t[k][l] += d * &wm1;
                }
            }
        }
        for tab in [&mut i0, &mut i1, &mut i2, &mut t, &mut im1] {
            for k in 0..n {
                for l in 0..k {
                    tab[k][l] = tab[l][k].clone();
                }
            }
        }
        Self { n, m: basis.m, i0, i1, i2, t, im1 }
    }

    /// Entry `(i, j)` of a block from its tensor structure, with
    /// `i = k N + l` (`k` indexing ξ, `l` indexing η).
    pub fn entry(&self, kind: BlockKind, i: usize, j: usize) -> Float {
        let n = self.n;
        let (k, l, kp, lp) = (i / n, i % n, j / n, j % n);
        let prec = self.i0[0][0].prec();
        let pair = |x: &Vec<Vec<Float>>, y: &Vec<Vec<Float>>| Float::with_val(prec, &x[k][kp] * &y[l][lp]);
        match kind {
            BlockKind::Gram => pair(&self.i0, &self.i0),
            BlockKind::Overlap => (pair(&self.i1, &self.i0) + pair(&self.i0, &self.i1)) / 4u32,
            BlockKind::Field => (pair(&self.i2, &self.i0) - pair(&self.i0, &self.i2)) / 8u32,
            BlockKind::Kinetic => {
                let mut v = (pair(&self.t, &self.i0) + pair(&self.i0, &self.t)) / 2u32;
                if self.m != 0 {
                    let m2 = (self.m * self.m) as u32;
                    let c = pair(&self.im1, &self.i0) + pair(&self.i0, &self.im1);
                    v += c * m2 / 8u32;
                }
                v
            }
        }
    }
}

/// The four real symmetric `N² x N²` matrices of the secular problem,
/// rounded to `f64` from their high-precision tensor construction.
#[derive(Clone, Debug)]
pub struct SecularBlocks {
    pub n: usize,
    pub m: i32,
    pub assembly_digits: u32,
    /// Significant digits kept per entry when deliberately degraded.
    pub degraded_to: Option<u32>,
    pub tables: OneDimTables,
    pub k: Mat<f64>,
    pub g: Mat<f64>,
    pub w: Mat<f64>,
    pub s: Mat<f64>,
}

impl SecularBlocks {
    pub fn dim(&self) -> usize {
        self.n * self.n
    }

    pub fn block(&self, kind: BlockKind) -> &Mat<f64> {
        match kind {
            BlockKind::Kinetic => &self.k,
            BlockKind::Gram => &self.g,
            BlockKind::Field => &self.w,
            BlockKind::Overlap => &self.s,
        }
    }
}

fn round_sig(x: f64, sig: u32) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{:.*e}", sig.saturating_sub(1) as usize, x).parse().unwrap_or(x)
}

fn build(n: usize, m: i32, ctx: &PrecisionContext, quad_order: usize, degrade: Option<u32>) -> Result<SecularBlocks> {
    ctx.require(20)?;
    let need = 2 * n + 2 * m.unsigned_abs() as usize + 6;
    if quad_order < need {
        return Err(Error::InvalidArgument(format!(
            "quadrature order {quad_order} is below the exactness bound {need}"
        )));
    }
    let basis = MeshBasis::new(n, m, ctx)?;
    let quad = laguerre_nodes(quad_order, ctx)?;
    let tables = OneDimTables::compute(&basis, &quad);
    let dim = n * n;
    let mut mats = [Mat::<f64>::zeros(dim, dim), Mat::zeros(dim, dim), Mat::zeros(dim, dim), Mat::zeros(dim, dim)];
    for (mat, kind) in mats.iter_mut().zip(ALL_BLOCKS) {
        for i in 0..dim {
            for j in i..dim {
                let mut v = tables.entry(kind, i, j).to_f64();
                if let Some(sig) = degrade {
                    v = round_sig(v, sig);
                }
                mat[(i, j)] = v;
                mat[(j, i)] = v;
            }
        }
    }
    let [k, g, w, s] = mats;
    if s.llt(Side::Lower).is_err() {
        return Err(Error::Assembly("overlap matrix is not positive definite".into()));
    }
    Ok(SecularBlocks { n, m, assembly_digits: ctx.digits(), degraded_to: degrade, tables, k, g, w, s })
}

/// Assembles the secular blocks for mesh size `n` and magnetic number `m`
/// with a Gauss-Laguerre rule of order `quad_order >= 2n + 2|m| + 6`.
pub fn assemble_blocks(n: usize, m: i32, ctx: &PrecisionContext, quad_order: usize) -> Result<SecularBlocks> {
    build(n, m, ctx, quad_order, None)
}

/// As [`assemble_blocks`], then rounds every matrix entry to `sig`
/// significant decimal digits to model low-accuracy integrals.
pub fn assemble_blocks_degraded(
    n: usize,
    m: i32,
    ctx: &PrecisionContext,
    quad_order: usize,
    sig: u32,
) -> Result<SecularBlocks> {
    build(n, m, ctx, quad_order, Some(sig))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digit_rounding() {
        assert_eq!(round_sig(0.123456789, 6), 0.123457);
        assert_eq!(round_sig(-98765432.1, 3), -98800000.0);
        assert_eq!(round_sig(0.0, 3), 0.0);
    }

    #[test]
    fn exactness_bound_enforced() {
        let ctx = PrecisionContext::new(30).unwrap();
        assert!(assemble_blocks(4, 1, &ctx, 15).is_err());
    }
}
