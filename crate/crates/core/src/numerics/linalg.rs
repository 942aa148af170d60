//! Dense complex linear algebra at working precision.

use std::ops::{Index, IndexMut};

use rug::Float;

use super::complex::HpComplex;
use super::precision::PrecisionContext;

/// Square complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct HpMatrix {
    n: usize,
    data: Vec<HpComplex>,
}

impl HpMatrix {
    pub fn zeros(n: usize, prec: u32) -> Self {
        Self { n, data: vec![HpComplex::zero(prec); n * n] }
    }

    pub fn identity(n: usize, prec: u32) -> Self {
        let mut m = Self::zeros(n, prec);
        for i in 0..n {
            m[(i, i)] = HpComplex::one(prec);
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> HpComplex) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &[HpComplex] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [HpComplex] {
        &mut self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(HpComplex::is_finite)
    }
}

impl Index<(usize, usize)> for HpMatrix {
    type Output = HpComplex;
    fn index(&self, (i, j): (usize, usize)) -> &HpComplex {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for HpMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut HpComplex {
        &mut self.data[i * self.n + j]
    }
}

/// A determinant held as `mantissa * 2^exp2`.
#[derive(Clone, Debug, PartialEq)]
pub struct ScaledDet {
    pub mantissa: HpComplex,
    pub exp2: i64,
}

impl ScaledDet {
    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    /// Materializes the value. MPFR's exponent range makes this safe for
    /// any determinant met in practice.
    pub fn value(&self) -> HpComplex {
        let mut v = self.mantissa.clone();
        let k = self.exp2.clamp(i32::MIN as i64, i32::MAX as i64) as i32;
        v.mul_pow2(k);
        v
    }
}

fn max_exp(z: &HpComplex) -> Option<i32> {
    match (z.re.get_exp(), z.im.get_exp()) {
        (Some(a), Some(b)) => Some(a.max(b)),
        (a, b) => a.or(b),
    }
}

/// Partially pivoted LU factorization `P R M = L U`, where `R` scales each
/// row of `M` by a power of two so that its largest entry lies in [1/2, 1).
#[derive(Clone, Debug)]
pub struct HpLu {
    n: usize,
    lu: Vec<HpComplex>,
    perm: Vec<usize>,
    odd_swaps: bool,
    row_exp: Vec<i32>,
    singular: bool,
}

impl HpLu {
    pub fn factor(m: &HpMatrix, ctx: &PrecisionContext) -> Self {
        let n = m.dim();
        let prec = ctx.bits();
        let mut lu: Vec<HpComplex> = Vec::with_capacity(n * n);
        let mut row_exp = vec![0i32; n];
        let mut singular = false;
        for i in 0..n {
            let e = m.row(i).iter().filter_map(max_exp).max();
            match e {
                Some(e) => row_exp[i] = e,
                None => singular = true,
            }
            for z in m.row(i) {
                let mut z = z.clone().with_prec(prec);
                z.mul_pow2(-row_exp[i]);
                lu.push(z);
            }
        }
        let mut perm: Vec<usize> = (0..n).collect();
        let mut odd_swaps = false;
        if !singular {
            for k in 0..n {
                let mut best = k;
                let mut best_mag = lu[k * n + k].abs1();
                for r in k + 1..n {
                    let mag = lu[r * n + k].abs1();
                    if mag > best_mag {
                        best = r;
                        best_mag = mag;
                    }
                }
                if best_mag.is_zero() {
                    singular = true;
                    break;
                }
                if best != k {
                    for c in 0..n {
                        lu.swap(k * n + c, best * n + c);
                    }
                    perm.swap(k, best);
                    odd_swaps = !odd_swaps;
                }
                let inv = lu[k * n + k].recip();
                for r in k + 1..n {
                    if lu[r * n + k].is_zero() {
                        continue;
                    }
                    let l = &lu[r * n + k] * &inv;
                    for c in k + 1..n {
                        let (upper, lower) = lu.split_at_mut(r * n);
                        lower[c].mul_sub_assign(&l, &upper[k * n + c]);
                    }
                    lu[r * n + k] = l;
                }
            }
        }
        Self { n, lu, perm, odd_swaps, row_exp, singular }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn is_singular(&self) -> bool {
        self.singular
    }

    pub fn det(&self) -> ScaledDet {
        let prec = self.lu.first().map(HpComplex::prec).unwrap_or(64);
        if self.singular {
            return ScaledDet { mantissa: HpComplex::zero(prec), exp2: 0 };
        }
        let mut d = HpComplex::one(prec);
        let mut exp2: i64 = self.row_exp.iter().map(|&e| e as i64).sum();
        for k in 0..self.n {
            d *= &self.lu[k * self.n + k];
            if let Some(e) = max_exp(&d) {
                d.mul_pow2(-e);
                exp2 += e as i64;
            }
        }
        if self.odd_swaps {
            d = -d;
        }
        ScaledDet { mantissa: d, exp2 }
    }

    /// Determinant of the row-scaled matrix `R M` and `log2 det R^{-1}`,
    /// so that `det M = value * 2^exp2`. The value is small exactly when
    /// `M` is close to singular relative to the size of its rows.
    pub fn det_row_scaled(&self) -> (HpComplex, i64) {
        let prec = self.lu.first().map(HpComplex::prec).unwrap_or(64);
        let exp2 = self.row_exp.iter().map(|&e| e as i64).sum();
        if self.singular {
            return (HpComplex::zero(prec), exp2);
        }
        let mut d = HpComplex::one(prec);
        for k in 0..self.n {
            d *= &self.lu[k * self.n + k];
        }
        if self.odd_swaps {
            d = -d;
        }
        (d, exp2)
    }

    /// Solves `M x = b` for the original (unscaled) matrix.
    pub fn solve(&self, b: &[HpComplex]) -> Option<Vec<HpComplex>> {
        if self.singular || b.len() != self.n {
            return None;
        }
        let n = self.n;
        let mut x: Vec<HpComplex> = self
            .perm
            .iter()
            .map(|&p| {
                let mut v = b[p].clone();
                v.mul_pow2(-self.row_exp[p]);
                v
            })
            .collect();
        for i in 0..n {
            for j in 0..i {
                let (head, tail) = x.split_at_mut(i);
                tail[0].mul_sub_assign(&self.lu[i * n + j], &head[j]);
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                let (head, tail) = x.split_at_mut(j);
                head[i].mul_sub_assign(&self.lu[i * n + j], &tail[0]);
            }
            x[i] = &x[i] / &self.lu[i * n + i];
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<HpMatrix> {
        let n = self.n;
        let prec = self.lu.first().map(HpComplex::prec).unwrap_or(64);
        let mut inv = HpMatrix::zeros(n, prec);
        for j in 0..n {
            let mut e = vec![HpComplex::zero(prec); n];
            e[j] = HpComplex::one(prec);
            let col = self.solve(&e)?;
            for (i, v) in col.into_iter().enumerate() {
                inv[(i, j)] = v;
            }
        }
        Some(inv)
    }

    /// Ratio of largest to smallest pivot magnitude, a cheap condition proxy.
    pub fn pivot_ratio(&self) -> f64 {
        if self.singular {
            return f64::INFINITY;
        }
        let mags: Vec<f64> = (0..self.n)
            .map(|k| super::precision::log10_abs(&self.lu[k * self.n + k].abs1()))
            .collect();
        let hi = mags.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let lo = mags.iter().cloned().fold(f64::INFINITY, f64::min);
        10f64.powf(hi - lo)
    }
}

/// Determinant by partially pivoted LU. A structurally zero pivot column
/// yields an exact zero.
pub fn det_lu(m: &HpMatrix, ctx: &PrecisionContext) -> HpComplex {
    HpLu::factor(m, ctx).det().value()
}

/// Determinant with its binary exponent split off, for values that span
/// hundreds of orders of magnitude.
pub fn det_lu_scaled(m: &HpMatrix, ctx: &PrecisionContext) -> ScaledDet {
    HpLu::factor(m, ctx).det()
}

/// Solves a 2x2 complex system by Cramer's rule. Returns `None` when the
/// determinant vanishes exactly.
pub fn solve2(
    a: &[[HpComplex; 2]; 2],
    b: &[HpComplex; 2],
) -> Option<[HpComplex; 2]> {
    let det = &(&a[0][0] * &a[1][1]) - &(&a[0][1] * &a[1][0]);
    if det.is_zero() {
        return None;
    }
    let x0 = &(&(&b[0] * &a[1][1]) - &(&a[0][1] * &b[1])) / &det;
    let x1 = &(&(&a[0][0] * &b[1]) - &(&b[0] * &a[1][0])) / &det;
    Some([x0, x1])
}

/// Condition estimate of a 2x2 complex matrix in the 1-norm.
pub fn cond2(a: &[[HpComplex; 2]; 2]) -> f64 {
    let det = &(&a[0][0] * &a[1][1]) - &(&a[0][1] * &a[1][0]);
    let l = |z: &HpComplex| super::precision::log10_abs(&z.abs1());
    let col = |j: usize| {
        let x = l(&a[0][j]);
        let y = l(&a[1][j]);
        x.max(y) + (1.0 + 10f64.powf(-(x - y).abs())).log10()
    };
    let norm = col(0).max(col(1));
    let ld = l(&det);
    10f64.powf(2.0 * norm - ld)
}

/// Sum of a slice of reals at the given precision.
pub fn sum(xs: &[Float], prec: u32) -> Float {
    let mut s = Float::new(prec);
    for x in xs {
        s += x;
    }
    s
}
