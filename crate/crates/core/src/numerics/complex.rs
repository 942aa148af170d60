use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use rug::{Assign, Float};

/// Complex number with MPFR real and imaginary parts.
///
/// Binary operations produce results at the larger of the operand
/// precisions, rounded to nearest.
#[derive(Clone, Debug, PartialEq)]
pub struct HpComplex {
    pub re: Float,
    pub im: Float,
}

impl HpComplex {
    pub fn new(re: Float, im: Float) -> Self {
        Self { re, im }
    }

    pub fn zero(prec: u32) -> Self {
        Self { re: Float::new(prec), im: Float::new(prec) }
    }

    pub fn one(prec: u32) -> Self {
        Self { re: Float::with_val(prec, 1), im: Float::new(prec) }
    }

    pub fn with_val(prec: u32, re: f64, im: f64) -> Self {
        Self { re: Float::with_val(prec, re), im: Float::with_val(prec, im) }
    }

    pub fn from_real(re: Float) -> Self {
        let im = Float::new(re.prec());
        Self { re, im }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn with_prec(mut self, prec: u32) -> Self {
        self.re.set_prec(prec);
        self.im.set_prec(prec);
        self
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: Float::with_val(self.im.prec(), -&self.im) }
    }

    pub fn norm_sqr(&self) -> Float {
        let mut n = Float::with_val(self.prec(), self.re.square_ref());
        n += Float::with_val(self.prec(), self.im.square_ref());
        n
    }

    pub fn abs(&self) -> Float {
        Float::with_val(self.prec(), self.re.hypot_ref(&self.im))
    }

    /// `|re| + |im|`, a cheap norm for pivoting and step control.
    pub fn abs1(&self) -> Float {
        let mut n = Float::with_val(self.prec(), self.re.abs_ref());
        n += Float::with_val(self.prec(), self.im.abs_ref());
        n
    }

    pub fn scale(&self, s: &Float) -> Self {
        let p = self.prec().max(s.prec());
        Self { re: Float::with_val(p, &self.re * s), im: Float::with_val(p, &self.im * s) }
    }

    /// Multiplies by `2^k` exactly.
    pub fn mul_pow2(&mut self, k: i32) {
        if k >= 0 {
            self.re <<= k as u32;
            self.im <<= k as u32;
        } else {
            self.re >>= k.unsigned_abs();
            self.im >>= k.unsigned_abs();
        }
    }

    /// `self += a * b`.
    pub fn mul_add_assign(&mut self, a: &HpComplex, b: &HpComplex) {
        self.re += &a.re * &b.re;
        self.re -= &a.im * &b.im;
        self.im += &a.re * &b.im;
        self.im += &a.im * &b.re;
    }

    /// `self -= a * b`.
    pub fn mul_sub_assign(&mut self, a: &HpComplex, b: &HpComplex) {
        self.re -= &a.re * &b.re;
        self.re += &a.im * &b.im;
        self.im -= &a.re * &b.im;
        self.im -= &a.im * &b.re;
    }

    pub fn recip(&self) -> Self {
        let p = self.prec();
        let n = self.norm_sqr();
        Self {
            re: Float::with_val(p, &self.re / &n),
            im: Float::with_val(p, -Float::with_val(p, &self.im / &n)),
        }
    }

    /// Unit phase `exp(i t)`.
    pub fn cis(t: &Float) -> Self {
        let mut s = Float::new(t.prec());
        let mut c = Float::new(t.prec());
        (&mut s, &mut c).assign(t.sin_cos_ref());
        Self { re: c, im: s }
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

impl fmt::Display for HpComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.im.is_sign_negative() { '-' } else { '+' };
        let im = Float::with_val(self.im.prec(), self.im.abs_ref());
        write!(f, "{} {} {}i", self.re, sign, im)
    }
}

impl Neg for &HpComplex {
    type Output = HpComplex;
    fn neg(self) -> HpComplex {
        HpComplex {
            re: Float::with_val(self.re.prec(), -&self.re),
            im: Float::with_val(self.im.prec(), -&self.im),
        }
    }
}

impl Neg for HpComplex {
    type Output = HpComplex;
    fn neg(mut self) -> HpComplex {
        self.re = -self.re;
        self.im = -self.im;
        self
    }
}

impl Add for &HpComplex {
    type Output = HpComplex;
    fn add(self, o: &HpComplex) -> HpComplex {
        let p = self.prec().max(o.prec());
        HpComplex { re: Float::with_val(p, &self.re + &o.re), im: Float::with_val(p, &self.im + &o.im) }
    }
}

impl Sub for &HpComplex {
    type Output = HpComplex;
    fn sub(self, o: &HpComplex) -> HpComplex {
        let p = self.prec().max(o.prec());
        HpComplex { re: Float::with_val(p, &self.re - &o.re), im: Float::with_val(p, &self.im - &o.im) }
    }
}

impl Mul for &HpComplex {
    type Output = HpComplex;
    fn mul(self, o: &HpComplex) -> HpComplex {
        let p = self.prec().max(o.prec());
        let mut re = Float::with_val(p, &self.re * &o.re);
        re -= &self.im * &o.im;
        let mut im = Float::with_val(p, &self.re * &o.im);
        im += &self.im * &o.re;
        HpComplex { re, im }
    }
}

impl Div for &HpComplex {
    type Output = HpComplex;
    fn div(self, o: &HpComplex) -> HpComplex {
        let p = self.prec().max(o.prec());
        let n = o.norm_sqr();
        let mut re = Float::with_val(p, &self.re * &o.re);
        re += &self.im * &o.im;
        re /= &n;
        let mut im = Float::with_val(p, &self.im * &o.re);
        im -= &self.re * &o.im;
        im /= &n;
        HpComplex { re, im }
    }
}

impl Mul<&Float> for &HpComplex {
    type Output = HpComplex;
    fn mul(self, s: &Float) -> HpComplex {
        self.scale(s)
    }
}

impl AddAssign<&HpComplex> for HpComplex {
    fn add_assign(&mut self, o: &HpComplex) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

impl SubAssign<&HpComplex> for HpComplex {
    fn sub_assign(&mut self, o: &HpComplex) {
        self.re -= &o.re;
        self.im -= &o.im;
    }
}

impl MulAssign<&HpComplex> for HpComplex {
    fn mul_assign(&mut self, o: &HpComplex) {
        *self = &*self * o;
    }
}

impl MulAssign<&Float> for HpComplex {
    fn mul_assign(&mut self, s: &Float) {
        self.re *= s;
        self.im *= s;
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for HpComplex {
            type Output = HpComplex;
            fn $m(self, o: HpComplex) -> HpComplex {
                (&self).$m(&o)
            }
        }
        impl $tr<&HpComplex> for HpComplex {
            type Output = HpComplex;
            fn $m(self, o: &HpComplex) -> HpComplex {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 200;

    fn c(re: f64, im: f64) -> HpComplex {
        HpComplex::with_val(P, re, im)
    }

    #[test]
    fn product_and_quotient() {
        let a = c(1.5, -2.0);
        let b = c(-0.25, 3.0);
        assert_eq!(&a * &b, c(-0.375 + 6.0, 4.5 + 0.5));
        let q = &(&a * &b) / &b;
        assert!((&q - &a).abs() < 1e-55);
    }

    #[test]
    fn fused_updates() {
        let mut acc = c(1.0, 1.0);
        acc.mul_add_assign(&c(0.0, 1.0), &c(0.0, 1.0));
        assert_eq!(acc, c(0.0, 1.0));
        acc.mul_sub_assign(&c(2.0, 0.0), &c(0.0, 0.5));
        assert!(acc.is_zero());
    }

    #[test]
    fn pow2_scaling_is_exact() {
        let mut a = c(3.0, -5.0);
        a.mul_pow2(-3);
        assert_eq!(a, c(0.375, -0.625));
    }
}
