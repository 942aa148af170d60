//! Decimal-string formatting and digit-agreement checks.
//!
//! Reference values are kept as strings and compared at working precision,
//! never through `f64`.

use rug::float::Round;
use rug::Float;

use crate::numerics::precision::{log10_abs, PrecisionContext};
use crate::Result;

/// Formats `x` with `sig` significant digits: positional notation for
/// moderate magnitudes, otherwise `d.ddd e-NN`.
pub fn format_sig(x: &Float, sig: usize) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sig = sig.max(1);
    let raw = x.to_string_radix_round(10, Some(sig), Round::Nearest);
    let (neg, body) = match raw.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, raw.as_str()),
    };
    let (mant, exp) = match body.split_once('e') {
        Some((m, e)) => (m, e.parse::<i64>().unwrap_or(0)),
        None => (body, 0),
    };
    let (int_part, frac_part) = mant.split_once('.').unwrap_or((mant, ""));
    let digits: String = format!("{int_part}{frac_part}");
    let point = int_part.len() as i64 + exp;
    let sign = if neg { "-" } else { "" };
    if (-3..=6).contains(&point) {
        let s = if point <= 0 {
            format!("0.{}{}", "0".repeat((-point) as usize), digits)
        } else if point as usize >= digits.len() {
            format!("{}{}", digits, "0".repeat(point as usize - digits.len()))
        } else {
            format!("{}.{}", &digits[..point as usize], &digits[point as usize..])
        };
        format!("{sign}{s}")
    } else {
        let e = point - 1;
        let rest = &digits[1..];
        if rest.is_empty() {
            format!("{sign}{}e{e}", &digits[..1])
        } else {
            format!("{sign}{}.{}e{e}", &digits[..1], rest)
        }
    }
}

fn normalize(s: &str) -> String {
    s.chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| if c == '\u{2212}' { '-' } else { c })
        .collect::<String>()
        .replace('E', "e")
}

/// Number of significant digits printed in a decimal string.
pub fn printed_digits(s: &str) -> usize {
    let s = normalize(s);
    let mant = s.split('e').next().unwrap_or("");
    let digits: String = mant.chars().filter(char::is_ascii_digit).collect();
    digits.trim_start_matches('0').len()
}

/// Decimal exponent of the last printed digit, e.g. `-4` for `"0.1234"`.
pub fn last_place_exponent(s: &str) -> i64 {
    let s = normalize(s);
    let (mant, exp) = match s.split_once('e') {
        Some((m, e)) => (m.to_string(), e.parse::<i64>().unwrap_or(0)),
        None => (s.clone(), 0),
    };
    let frac = mant.split_once('.').map(|(_, f)| f.len()).unwrap_or(0);
    exp - frac as i64
}

/// Number of leading significant digits of `reference` reproduced by `x`:
/// the largest real `k` with `|x - b| < 10^(floor(log10|b|) - k + 1)`.
pub fn agreement_digits(x: &Float, b: &Float) -> f64 {
    let diff = Float::with_val(x.prec().max(b.prec()), x - b);
    let lb = log10_abs(b).floor();
    let ld = log10_abs(&diff);
    if ld == f64::NEG_INFINITY {
        return f64::INFINITY;
    }
    lb + 1.0 - ld
}

/// `true` when `x` matches the decimal string `reference` to `k`
/// significant digits.
pub fn agrees_to(x: &Float, reference: &str, k: usize, ctx: &PrecisionContext) -> Result<bool> {
    let b = ctx.parse(reference)?;
    Ok(agreement_digits(x, &b) > k as f64)
}

/// `true` when `x` lies within one unit of the last printed digit of
/// `reference`.
pub fn agrees_to_printed(x: &Float, reference: &str, ctx: &PrecisionContext) -> Result<bool> {
    let b = ctx.parse(reference)?;
    let diff = Float::with_val(ctx.bits(), x - &b);
    Ok(log10_abs(&diff) < last_place_exponent(reference) as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positional_and_scientific() {
        let ctx = PrecisionContext::new(40).unwrap();
        assert_eq!(format_sig(&ctx.parse("-0.1120619240019936").unwrap(), 16), "-0.1120619240019936");
        assert_eq!(format_sig(&ctx.parse("9.49802741674e-56").unwrap(), 12), "9.49802741674e-56");
        assert_eq!(format_sig(&ctx.parse("-0.5").unwrap(), 3), "-0.500");
        assert_eq!(format_sig(&ctx.parse("1250").unwrap(), 3), "1250");
        assert_eq!(format_sig(&ctx.parse("0").unwrap(), 3), "0");
    }

    #[test]
    fn printed_digit_counts() {
        assert_eq!(printed_digits("-0.1426186075727079"), 16);
        assert_eq!(printed_digits("9.4983e-56"), 5);
        assert_eq!(printed_digits("-0.127 146 612"), 9);
        assert_eq!(last_place_exponent("0.8944475605e-7"), -17);
        assert_eq!(last_place_exponent("-0.127 146 612"), -9);
    }

    #[test]
    fn agreement_rule() {
        let ctx = PrecisionContext::new(40).unwrap();
        let x = ctx.parse("-0.1271466127").unwrap();
        assert!(agrees_to_printed(&x, "-0.127 146 612", &ctx).unwrap());
        assert!(agrees_to(&x, "-0.127146612", 9, &ctx).unwrap());
        assert!(!agrees_to(&x, "-0.127146612", 10, &ctx).unwrap());
    }
}
