use super::series::RiccatiSeries;
use crate::numerics::complex::HpComplex;
use crate::numerics::linalg::{HpLu, HpMatrix};
use crate::numerics::precision::PrecisionContext;
use crate::{Error, Result};

/// Dimension `D` and displacement `d` of the Hankel matrix
/// `H_{ik} = f_{d+i+k+1}`, `0 <= i, k < D`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HankelSpec {
    pub dim: usize,
    pub disp: usize,
}

impl HankelSpec {
    pub fn new(dim: usize, disp: usize) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidArgument(format!("Hankel dimension must be at least 2, got {dim}")));
        }
        Ok(Self { dim, disp })
    }

    /// Number of series coefficients needed: `2D + d`.
    pub fn series_len(&self) -> usize {
        2 * self.dim + self.disp
    }
}

/// Determinant and its `E`, `A` derivatives, all carrying a common factor
/// `2^-exp2` from row scaling.
#[derive(Clone, Debug)]
pub struct HankelValue {
    pub value: HpComplex,
    pub d_e: HpComplex,
    pub d_a: HpComplex,
    pub exp2: i64,
}

impl HankelValue {
    /// `(det, ∂det/∂E, ∂det/∂A)` without the scale factor.
    pub fn unscaled(&self) -> (HpComplex, HpComplex, HpComplex) {
        let k = self.exp2.clamp(i32::MIN as i64, i32::MAX as i64) as i32;
        let mut v = self.value.clone();
        let mut de = self.d_e.clone();
        let mut da = self.d_a.clone();
        v.mul_pow2(k);
        de.mul_pow2(k);
        da.mul_pow2(k);
        (v, de, da)
    }
}

fn hankel_matrix(c: &[HpComplex], spec: &HankelSpec) -> HpMatrix {
    HpMatrix::from_fn(spec.dim, |i, k| c[spec.disp + i + k + 1].clone())
}

/// `tr(X H')` where `H'` is the Hankel matrix built from `g`.
fn trace_with_hankel(x: &HpMatrix, g: &[HpComplex], spec: &HankelSpec, prec: u32) -> HpComplex {
    let n = spec.dim;
    let mut tr = HpComplex::zero(prec);
    for s in 0..2 * n - 1 {
        let mut anti = HpComplex::zero(prec);
        let lo = s.saturating_sub(n - 1);
        let hi = s.min(n - 1);
        for i in lo..=hi {
            anti += &x[(s - i, i)];
        }
        tr.mul_add_assign(&anti, &g[spec.disp + s + 1]);
    }
    tr
}

/// Derivative of the determinant by column replacement, used when the
/// matrix is exactly singular.
fn det_derivative_by_columns(m: &HpMatrix, g: &[HpComplex], spec: &HankelSpec, ctx: &PrecisionContext) -> HpComplex {
    let n = spec.dim;
    let mut acc = HpComplex::zero(ctx.bits());
    for col in 0..n {
        let mk = HpMatrix::from_fn(n, |i, k| {
            if k == col { g[spec.disp + i + k + 1].clone() } else { m[(i, k)].clone() }
        });
        acc += &HpLu::factor(&mk, ctx).det().value();
    }
    acc
}

/// Hankel determinant of `series` with row scaling kept separate.
pub fn hankel_det_scaled(series: &RiccatiSeries, spec: &HankelSpec, ctx: &PrecisionContext) -> Result<HankelValue> {
    if series.len() < spec.series_len() {
        return Err(Error::InvalidArgument(format!(
            "series has {} coefficients, D={} d={} needs {}",
            series.len(),
            spec.dim,
            spec.disp,
            spec.series_len()
        )));
    }
    let prec = ctx.bits();
    let m = hankel_matrix(&series.coeffs, spec);
    let lu = HpLu::factor(&m, ctx);
    let (value, exp2) = lu.det_row_scaled();
    let (d_e, d_a) = match lu.inverse() {
        Some(inv) => {
            let te = trace_with_hankel(&inv, &series.de_coeffs, spec, prec);
            let ta = trace_with_hankel(&inv, &series.da_coeffs, spec, prec);
            (&value * &te, &value * &ta)
        }
        None => {
            let k = -(exp2.clamp(i32::MIN as i64, i32::MAX as i64) as i32);
            let mut de = det_derivative_by_columns(&m, &series.de_coeffs, spec, ctx);
            let mut da = det_derivative_by_columns(&m, &series.da_coeffs, spec, ctx);
            de.mul_pow2(k);
            da.mul_pow2(k);
            (de, da)
        }
    };
    if !value.is_finite() || !d_e.is_finite() || !d_a.is_finite() {
        return Err(Error::Overflow("hankel_det"));
    }
    Ok(HankelValue { value, d_e, d_a, exp2 })
}

/// `(det H, ∂det/∂E, ∂det/∂A)` for `H_{ik} = f_{d+i+k+1}`.
pub fn hankel_det(
    series: &RiccatiSeries,
    spec: &HankelSpec,
    ctx: &PrecisionContext,
) -> Result<(HpComplex, HpComplex, HpComplex)> {
    Ok(hankel_det_scaled(series, spec, ctx)?.unscaled())
}
