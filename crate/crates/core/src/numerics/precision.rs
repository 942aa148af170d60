use rug::float::Round;
use rug::ops::Pow;
use rug::Float;

use crate::{Error, Result};

const LOG2_10: f64 = std::f64::consts::LOG2_10;
const GUARD_BITS: u32 = 8;

/// Working precision in decimal digits.
///
/// Every multiple-precision value created through a context carries
/// `bits()` bits of mantissa and is rounded to nearest. MPFR is correctly
/// rounded, so equal inputs at equal precision give bit-identical results.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrecisionContext {
    digits: u32,
}

impl PrecisionContext {
    /// Lower bound enforced at every engine entry point.
    pub const MIN_ENGINE_DIGITS: u32 = 30;
    const MAX_DIGITS: u32 = 100_000;

    pub fn new(digits: u32) -> Result<Self> {
        if digits == 0 || digits > Self::MAX_DIGITS {
            return Err(Error::InvalidArgument(format!(
                "digits must lie in 1..={}, got {digits}",
                Self::MAX_DIGITS
            )));
        }
        Ok(Self { digits })
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn bits(&self) -> u32 {
        (self.digits as f64 * LOG2_10).ceil() as u32 + GUARD_BITS
    }

    pub fn rounding(&self) -> Round {
        Round::Nearest
    }

    pub fn require(&self, required: u32) -> Result<()> {
        if self.digits < required {
            return Err(Error::Precision { required, got: self.digits });
        }
        Ok(())
    }

    pub fn require_engine(&self) -> Result<()> {
        self.require(Self::MIN_ENGINE_DIGITS)
    }

    pub fn zero(&self) -> Float {
        Float::new(self.bits())
    }

    pub fn real<T>(&self, v: T) -> Float
    where
        Float: rug::Assign<T>,
    {
        Float::with_val(self.bits(), v)
    }

    /// Parses a decimal string directly at working precision.
    pub fn parse(&self, s: &str) -> Result<Float> {
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let cleaned = cleaned.replace('\u{2212}', "-");
        Float::parse(&cleaned)
            .map(|p| Float::with_val(self.bits(), p))
            .map_err(|e| Error::InvalidArgument(format!("cannot parse {s:?}: {e}")))
    }

    /// `10^e` at working precision.
    pub fn pow10(&self, e: i32) -> Float {
        self.real(10).pow(e)
    }

    /// `10^(k - digits)`, the tolerance scale used throughout.
    pub fn tol(&self, k: i32) -> Float {
        self.pow10(k - self.digits as i32)
    }
}

/// Digits required by the Riccati-Pade engine at field strength `f`:
/// `max(60, ceil(2 (2/(3F)) / ln 10) + 40)`.
pub fn precision_rule(f: f64) -> u32 {
    if f <= 0.0 {
        return 60;
    }
    let need = (2.0 * (2.0 / (3.0 * f)) / std::f64::consts::LN_10).ceil() + 40.0;
    if need.is_finite() {
        (need as u32).max(60)
    } else {
        u32::MAX
    }
}

/// `log10 |x|`, `-inf` for zero. Exact for arguments far outside `f64` range.
pub fn log10_abs(x: &Float) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let (m, e) = x.to_f64_exp();
    m.abs().log10() + e as f64 * std::f64::consts::LOG10_2
}
