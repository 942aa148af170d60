use rug::Float;

use super::Channel;
use crate::numerics::complex::HpComplex;
use crate::numerics::precision::PrecisionContext;
use crate::{Error, Result};

/// Taylor coefficients `f_j` of the regularized logarithmic derivative with
/// their partial derivatives in `E` and `A`.
#[derive(Clone, Debug)]
pub struct RiccatiSeries {
    pub coeffs: Vec<HpComplex>,
    pub de_coeffs: Vec<HpComplex>,
    pub da_coeffs: Vec<HpComplex>,
    pub e: HpComplex,
    pub a: HpComplex,
    pub f: Float,
    pub channel: Channel,
}

impl RiccatiSeries {
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `x^j` in `x f' - x f² + (|m|+1) f - A_σ - (E/2) x + (σF/4) x²`
    /// for the truncated series; exact solutions make every order below
    /// `len() - 1` vanish.
    pub fn ode_residual(&self, j: usize) -> HpComplex {
        let prec = self.coeffs[0].prec();
        let two_s = self.channel.two_s();
        let mut r = self.coeffs[j].scale(&Float::with_val(prec, j as u32 + two_s));
        for i in 0..j {
            r.mul_sub_assign(&self.coeffs[i], &self.coeffs[j - 1 - i]);
        }
        match j {
            0 => r -= &self.channel.constant(&self.a),
            1 => r -= &self.e.scale(&Float::with_val(prec, 0.5)),
            2 => {
                let t = Float::with_val(prec, &self.f * self.channel.sigma() as i32) / 4u32;
                r.re += t;
            }
            _ => {}
        }
        r
    }
}

/// Convolution `Σ_{i<j} u_i v_{j-1-i}`.
fn conv(u: &[HpComplex], v: &[HpComplex], j: usize, prec: u32) -> HpComplex {
    let mut acc = HpComplex::zero(prec);
    for i in 0..j {
        acc.mul_add_assign(&u[i], &v[j - 1 - i]);
    }
    acc
}

/// Self-convolution `Σ_{i<j} u_i u_{j-1-i}` using symmetry.
fn self_conv(u: &[HpComplex], j: usize, prec: u32) -> HpComplex {
    let mut acc = HpComplex::zero(prec);
    let half = j / 2;
    for i in 0..half {
        acc.mul_add_assign(&u[i], &u[j - 1 - i]);
    }
    acc.mul_pow2(1);
    if j % 2 == 1 {
        acc.mul_add_assign(&u[half], &u[half]);
    }
    acc
}

/// Generates `J` coefficients of `f` for channel `channel`:
///
/// `f_j = [Σ_{i<j} f_i f_{j-1-i} + A_σ δ_{j0} + (E/2) δ_{j1} - (σF/4) δ_{j2}] / (j + |m| + 1)`.
pub fn riccati_coefficients(
    e: &HpComplex,
    a: &HpComplex,
    f: &Float,
    channel: Channel,
    j_len: usize,
    ctx: &PrecisionContext,
) -> Result<RiccatiSeries> {
    if j_len < 3 {
        return Err(Error::InvalidArgument(format!("series length must be at least 3, got {j_len}")));
    }
    if f.is_sign_negative() && !f.is_zero() {
        return Err(Error::InvalidArgument("field strength must be non-negative".into()));
    }
    let prec = ctx.bits();
    let e = e.clone().with_prec(prec);
    let a = a.clone().with_prec(prec);
    let fld = Float::with_val(prec, f);
    let two_s = channel.two_s();
    let sigma = channel.sigma() as i32;
    let half = Float::with_val(prec, 0.5);

    let mut c = Vec::with_capacity(j_len);
    let mut ce = Vec::with_capacity(j_len);
    let mut ca = Vec::with_capacity(j_len);
    for j in 0..j_len {
        let denom = Float::with_val(prec, j as u32 + two_s);
        let (mut v, mut ve, mut va) = if j == 0 {
            (
                channel.constant(&a),
                HpComplex::zero(prec),
                HpComplex::from_real(Float::with_val(prec, sigma)),
            )
        } else {
            let mut ve = conv(&ce, &c, j, prec);
            ve.mul_pow2(1);
            let mut va = conv(&ca, &c, j, prec);
            va.mul_pow2(1);
            (self_conv(&c, j, prec), ve, va)
        };
        match j {
            1 => {
                v += &e.scale(&half);
                ve.re += &half;
            }
            2 => {
                v.re -= Float::with_val(prec, &fld * sigma) / 4u32;
            }
            _ => {}
        }
        v.re /= &denom;
        v.im /= &denom;
        ve.re /= &denom;
        ve.im /= &denom;
        va.re /= &denom;
        va.im /= &denom;
        if !v.is_finite() {
            return Err(Error::Overflow("riccati_coefficients"));
        }
        c.push(v);
        ce.push(ve);
        ca.push(va);
    }
    Ok(RiccatiSeries { coeffs: c, de_coeffs: ce, da_coeffs: ca, e, a, f: fld, channel })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(60).unwrap()
    }

    #[test]
    fn leading_coefficients_by_hand() {
        let ctx = ctx();
        let p = ctx.bits();
        let e = HpComplex::with_val(p, -0.3, 0.01);
        let a = HpComplex::with_val(p, 0.6, -0.02);
        let f = Float::with_val(p, 0.01);
        let s = riccati_coefficients(&e, &a, &f, Channel::xi(0), 6, &ctx).unwrap();
        assert_eq!(s.coeffs[0], a);
        let f1 = {
            let mut t = &a * &a;
            t += &e.scale(&Float::with_val(p, 0.5));
            t.scale(&Float::with_val(p, 0.5))
        };
        assert!((&s.coeffs[1] - &f1).abs() < 1e-58);
        let f2 = {
            let mut t = (&a * &f1).scale(&Float::with_val(p, 2));
            t.re -= Float::with_val(p, &f / 4u32);
            t.scale(&(Float::with_val(p, 1) / 3u32))
        };
        assert!((&s.coeffs[2] - &f2).abs() < 1e-58);
    }

    #[test]
    fn unperturbed_ground_channel_is_constant() {
        let ctx = ctx();
        let p = ctx.bits();
        let e = HpComplex::with_val(p, -0.5, 0.0);
        let a = HpComplex::with_val(p, 0.5, 0.0);
        let s = riccati_coefficients(&e, &a, &Float::new(p), Channel::xi(0), 12, &ctx).unwrap();
        assert_eq!(s.coeffs[0], HpComplex::with_val(p, 0.5, 0.0));
        for j in 1..12 {
            assert!(s.coeffs[j].is_zero(), "f_{j} = {}", s.coeffs[j]);
            assert!(s.ode_residual(j - 1).is_zero());
        }
    }

    #[test]
    fn eta_channel_uses_complement() {
        let ctx = ctx();
        let p = ctx.bits();
        let e = HpComplex::with_val(p, -0.5, 0.0);
        let a = HpComplex::with_val(p, 0.25, 0.0);
        let s = riccati_coefficients(&e, &a, &Float::new(p), Channel::eta(0), 4, &ctx).unwrap();
        assert_eq!(s.coeffs[0], HpComplex::with_val(p, 0.75, 0.0));
        assert_eq!(s.da_coeffs[0], HpComplex::with_val(p, -1.0, 0.0));
    }
}
