//! Riccati-Pade quantization.
//!
//! In parabolic coordinates each channel obeys
//! `Φ'' + [(1-m²)/(4x²) + E/2 - σFx/4 + A_σ/x] Φ = 0`
//! with `A₊ = A` and `A₋ = 1 - A`. The regularized logarithmic derivative
//! `f = s/x - Φ'/Φ`, `s = (|m|+1)/2`, is analytic at the origin; its Taylor
//! coefficients build Hankel determinants whose simultaneous zeros in both
//! channels give `(E, A)`.

mod hankel;
mod scan;
mod series;
mod solve;

use rug::Float;

pub use hankel::{hankel_det, hankel_det_scaled, HankelSpec, HankelValue};
pub use scan::{converge_scan, ConvergenceTrace, TracePoint};
pub use series::{riccati_coefficients, RiccatiSeries};
pub use solve::{solve_resonance, RpmOptions};

use crate::numerics::complex::HpComplex;
use crate::{Error, Result};

/// One of the two separated parabolic equations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Channel {
    sigma: i8,
    m: i32,
}

impl Channel {
    pub fn new(sigma: i8, m: i32) -> Result<Self> {
        if sigma != 1 && sigma != -1 {
            return Err(Error::InvalidArgument(format!("sigma must be +1 or -1, got {sigma}")));
        }
        Ok(Self { sigma, m })
    }

    /// The ξ channel, carrying `A`.
    pub fn xi(m: i32) -> Self {
        Self { sigma: 1, m }
    }

    /// The η channel, carrying `1 - A`.
    pub fn eta(m: i32) -> Self {
        Self { sigma: -1, m }
    }

    pub fn sigma(&self) -> i8 {
        self.sigma
    }

    pub fn m(&self) -> i32 {
        self.m
    }

    /// `|m| + 1 = 2s`.
    pub fn two_s(&self) -> u32 {
        self.m.unsigned_abs() + 1
    }

    pub fn s(&self, prec: u32) -> Float {
        Float::with_val(prec, self.two_s()) / 2u32
    }

    /// Channel constant `A_σ`.
    pub fn constant(&self, a: &HpComplex) -> HpComplex {
        if self.sigma > 0 {
            a.clone()
        } else {
            let one = HpComplex::one(a.prec());
            &one - a
        }
    }
}
