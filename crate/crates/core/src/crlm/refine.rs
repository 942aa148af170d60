use faer::prelude::*;
use faer::{c64, Mat};
use rug::Float;

use super::blocks::OneDimTables;
use super::solve::RotatedProblem;
use crate::numerics::complex::HpComplex;
use crate::numerics::precision::PrecisionContext;

/// Eigenvector of `A(θ) - λ S` by a few steps of inverse iteration.
fn inverse_iteration(p: &RotatedProblem<'_>, lambda: c64) -> Option<Vec<c64>> {
    let b = p.blocks;
    let dim = b.dim();
    let a = p.matrix();
    let shifted = Mat::<c64>::from_fn(dim, dim, |i, j| a[(i, j)] - lambda * b.s[(i, j)]);
    let lu = shifted.partial_piv_lu();
    let mut v = Mat::<c64>::from_fn(dim, 1, |i, _| c64::new(1.0, 0.1 * ((i % 7) as f64)));
    for _ in 0..3 {
        let sv = Mat::<c64>::from_fn(dim, 1, |i, _| {
            let mut acc = c64::new(0.0, 0.0);
            for j in 0..dim {
                acc += v[(j, 0)] * b.s[(i, j)];
            }
            acc
        });
        let mut x = lu.solve(&sv);
        let norm = (0..dim).map(|i| x[(i, 0)].norm_sqr()).sum::<f64>().sqrt();
        if !norm.is_finite() || norm == 0.0 {
            return None;
        }
        for i in 0..dim {
            x[(i, 0)] /= norm;
        }
        v = x;
    }
    Some((0..dim).map(|i| v[(i, 0)]).collect())
}

/// `Z = C Y Cᵀ` for the coefficient matrix `C[k][l] = c[kN + l]`.
fn sandwich(c: &[Vec<HpComplex>], y: &[Vec<Float>], prec: u32) -> Vec<Vec<HpComplex>> {
    let n = c.len();
    let cy: Vec<Vec<HpComplex>> = (0..n)
        .map(|k| {
            (0..n)
                .map(|lp| {
                    let mut acc = HpComplex::zero(prec);
                    for l in 0..n {
                        acc.re += &c[k][l].re * &y[l][lp];
                        acc.im += &c[k][l].im * &y[l][lp];
                    }
                    acc
                })
                .collect()
        })
        .collect();
    (0..n)
        .map(|k| {
            (0..n)
                .map(|kp| {
                    let mut acc = HpComplex::zero(prec);
                    for lp in 0..n {
                        acc.mul_add_assign(&cy[k][lp], &c[kp][lp]);
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// `⟨X, Z⟩ = Σ X[k][k'] Z[k][k']`.
fn contract(x: &[Vec<Float>], z: &[Vec<HpComplex>], prec: u32) -> HpComplex {
    let mut acc = HpComplex::zero(prec);
    for (xr, zr) in x.iter().zip(z) {
        for (xv, zv) in xr.iter().zip(zr) {
            acc.re += &zv.re * xv;
            acc.im += &zv.im * xv;
        }
    }
    acc
}

/// Bilinear forms `cᵀ K c, cᵀ G c, cᵀ W c, cᵀ S c` from the 1-D tables.
fn forms(t: &OneDimTables, c: &[Vec<HpComplex>], prec: u32) -> [HpComplex; 4] {
    let z0 = sandwich(c, &t.i0, prec);
    let z1 = sandwich(c, &t.i1, prec);
    let z2 = sandwich(c, &t.i2, prec);
    let zt = sandwich(c, &t.t, prec);
    let g = contract(&t.i0, &z0, prec);
    let s = {
        let v = &contract(&t.i1, &z0, prec) + &contract(&t.i0, &z1, prec);
        v.scale(&Float::with_val(prec, 0.25))
    };
    let w = {
        let v = &contract(&t.i2, &z0, prec) - &contract(&t.i0, &z2, prec);
        v.scale(&Float::with_val(prec, 0.125))
    };
    let mut k = (&contract(&t.t, &z0, prec) + &contract(&t.i0, &zt, prec)).scale(&Float::with_val(prec, 0.5));
    if t.m != 0 {
        let zm = sandwich(c, &t.im1, prec);
        let v = &contract(&t.im1, &z0, prec) + &contract(&t.i0, &zm, prec);
        k += &v.scale(&Float::with_val(prec, (t.m * t.m) as f64 / 8.0));
    }
    [k, g, w, s]
}

/// Refines an `f64` eigenvalue `lambda` by inverse iteration followed by the
/// complex-symmetric Rayleigh quotient `cᵀA(θ)c / cᵀSc` evaluated at working
/// precision from the 1-D tables. Returns `None` if the eigenvector cannot be
/// formed.
pub fn rayleigh_refine(p: &RotatedProblem<'_>, lambda: c64, ctx: &PrecisionContext) -> Option<HpComplex> {
    let v = inverse_iteration(p, lambda)?;
    let prec = ctx.bits();
    let n = p.blocks.n;
    let c: Vec<Vec<HpComplex>> = (0..n)
        .map(|k| (0..n).map(|l| HpComplex::with_val(prec, v[k * n + l].re, v[k * n + l].im)).collect())
        .collect();
    let [qk, qg, qw, qs] = forms(&p.blocks.tables, &c, prec);
    let theta = Float::with_val(prec, p.theta);
    let pk = HpComplex::cis(&Float::with_val(prec, &theta * -2i32));
    let pg = HpComplex::cis(&Float::with_val(prec, -&theta)).scale(&Float::with_val(prec, -0.5));
    let pw = HpComplex::cis(&theta).scale(&Float::with_val(prec, p.f));
    let mut num = &pk * &qk;
    num.mul_add_assign(&pg, &qg);
    num.mul_add_assign(&pw, &qw);
    if qs.is_zero() {
        return None;
    }
    let e = &num / &qs;
    e.is_finite().then_some(e)
}

