use std::fmt;

use rug::Float;

use crate::numerics::complex::HpComplex;
use crate::{Error, Result};

/// Parabolic quantum numbers of a Stark state.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct StateLabel {
    pub n1: u32,
    pub n2: u32,
    pub m: i32,
}

impl StateLabel {
    pub fn new(n1: u32, n2: u32, m: i32) -> Self {
        Self { n1, n2, m }
    }

    pub fn ground() -> Self {
        Self::new(0, 0, 0)
    }

    /// Principal quantum number `n1 + n2 + |m| + 1`.
    pub fn n(&self) -> u32 {
        self.n1 + self.n2 + self.m.unsigned_abs() + 1
    }

    /// Electric quantum number `n1 - n2`.
    pub fn q(&self) -> i32 {
        self.n1 as i32 - self.n2 as i32
    }

    pub fn abs_m(&self) -> u32 {
        self.m.unsigned_abs()
    }

    /// Resolves a ket `|n q m>` to parabolic numbers.
    pub fn from_ket(n: u32, q: i32, m: i32) -> Result<Self> {
        let free = n as i64 - m.unsigned_abs() as i64 - 1;
        let twice_n1 = free + q as i64;
        if n == 0 || free < 0 || twice_n1 < 0 || twice_n1 % 2 != 0 || twice_n1 > 2 * free {
            return Err(Error::InvalidArgument(format!("no Stark state |{n} {q} {m}>")));
        }
        let n1 = (twice_n1 / 2) as u32;
        Ok(Self::new(n1, free as u32 - n1, m))
    }

    pub fn ket(&self) -> (u32, i32, i32) {
        (self.n(), self.q(), self.m)
    }

    /// The mirror state `(n2, n1, m)`, reached by reversing the field.
    pub fn mirrored(&self) -> Self {
        Self::new(self.n2, self.n1, self.m)
    }

    /// Zero-field energy `-1/(2 n^2)`.
    pub fn e0(&self, prec: u32) -> Float {
        let n = self.n();
        Float::with_val(prec, -1) / Float::with_val(prec, 2 * n * n)
    }

    /// Zero-field separation constant `(n1 + (|m|+1)/2) / n`.
    pub fn a0(&self, prec: u32) -> Float {
        let num = Float::with_val(prec, 2 * self.n1 + self.abs_m() + 1);
        num / Float::with_val(prec, 2 * self.n())
    }
}

impl fmt::Display for StateLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, q, m) = self.ket();
        write!(f, "|{n} {q} {m}>")
    }
}

/// A converged complex energy together with its separation constant.
#[derive(Clone, Debug)]
pub struct ResonanceEstimate {
    pub e: HpComplex,
    pub a: HpComplex,
    /// Width `-2 Im E`.
    pub gamma: Float,
    pub d_used: usize,
    pub d_disp: usize,
    /// log10 of the last relative change of `E` across `D`, when known.
    pub conv_log10: Option<f64>,
    pub iterations: usize,
    /// Set when the root moved further than the tracking threshold from its seed.
    pub spurious: bool,
}

impl ResonanceEstimate {
    pub fn width(e: &HpComplex) -> Float {
        Float::with_val(e.im.prec(), &e.im * -2i32)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ket_mapping() {
        assert_eq!(StateLabel::from_ket(2, -1, 0).unwrap(), StateLabel::new(0, 1, 0));
        assert_eq!(StateLabel::from_ket(2, 1, 0).unwrap(), StateLabel::new(1, 0, 0));
        assert_eq!(StateLabel::from_ket(2, 0, 1).unwrap(), StateLabel::new(0, 0, 1));
        assert_eq!(StateLabel::from_ket(1, 0, 0).unwrap(), StateLabel::ground());
        assert!(StateLabel::from_ket(2, 0, 0).is_err());
        assert!(StateLabel::from_ket(1, 1, 0).is_err());
    }

    #[test]
    fn zero_field_constants() {
        let s = StateLabel::new(1, 0, 0);
        assert_eq!(s.e0(64), -0.125);
        assert_eq!(s.a0(64), 0.75);
        assert_eq!(StateLabel::new(0, 0, 1).a0(64), 0.5);
    }
}
