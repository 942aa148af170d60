use rug::Float;

use crate::numerics::precision::PrecisionContext;
use crate::{Error, Result};

/// Ground-state width `Γ = -2 Im E` from
/// `Im E = -2 F^{-1} e^{-2/(3F)} (1 - 8.916 F + 25.57 F²)`, valid for
/// `0 < F <= 0.05`.
pub fn asymptotic_width(f: &Float, ctx: &PrecisionContext) -> Result<Float> {
    if !(*f > 0 && *f <= 0.05) {
        return Err(Error::InvalidArgument(format!(
            "asymptotic width formula applies to 0 < F <= 0.05, got {}",
            f.to_f64()
        )));
    }
    let prec = ctx.bits();
    let f = Float::with_val(prec, f);
    let c1 = ctx.parse("8.916")?;
    let c2 = ctx.parse("25.57")?;
    let mut poly = Float::with_val(prec, &c2 * &f);
    poly -= &c1;
    poly *= &f;
    poly += 1u32;
    let mut expo = Float::with_val(prec, -2) / Float::with_val(prec, &f * 3u32);
    expo.exp_mut();
    let mut g = Float::with_val(prec, &expo * &poly);
    g *= 4u32;
    g /= &f;
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn guard() {
        let ctx = PrecisionContext::new(30).unwrap();
        assert!(asymptotic_width(&ctx.real(0), &ctx).is_err());
        assert!(asymptotic_width(&ctx.real(0.06), &ctx).is_err());
    }
}
