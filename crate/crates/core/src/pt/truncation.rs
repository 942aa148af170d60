use rug::ops::Pow;
use rug::Float;

use super::PtSeries;
use crate::numerics::precision::log10_abs;
use crate::{Error, Result};

/// Outcome of summing a divergent series up to its smallest term.
#[derive(Clone, Debug)]
pub struct TruncationReport {
    pub f: Float,
    /// Order of the smallest term `|E_k F^k|`, `k >= 1`.
    pub k_opt: usize,
    /// `Σ_{k<=k_opt} E_k F^k`.
    pub partial_sum: Float,
    /// Separation constant summed to the same order.
    pub a_partial_sum: Float,
    /// Size of the first omitted nonvanishing term, zero if none is available.
    pub error_estimate: Float,
    /// `false` when the terms were still decreasing at the last order.
    pub divergent: bool,
}

fn term_log10(c: &Float, lf: f64, k: usize) -> f64 {
    log10_abs(c) + k as f64 * lf
}

/// Truncates `series` at its smallest term for field `f`. Orders that vanish
/// by symmetry are skipped.
pub fn optimal_truncation(series: &PtSeries, f: &Float) -> Result<TruncationReport> {
    if !(f.is_sign_positive() && !f.is_zero()) {
        return Err(Error::InvalidArgument("optimal truncation needs F > 0".into()));
    }
    let lf = log10_abs(f);
    let live: Vec<usize> = (1..=series.order)
        .filter(|&k| !series.structurally_zero(k) && !series.e_coeffs[k].is_zero())
        .collect();
    if live.is_empty() {
        let prec = series.e_coeffs[0].prec();
        return Ok(TruncationReport {
            f: f.clone(),
            k_opt: series.order,
            partial_sum: series.e_coeffs[0].clone(),
            a_partial_sum: series.a_coeffs[0].clone(),
            error_estimate: Float::new(prec),
            divergent: false,
        });
    }
    let (pos, &k_opt) = live
        .iter()
        .enumerate()
        .min_by(|(_, &i), (_, &j)| {
            term_log10(&series.e_coeffs[i], lf, i).total_cmp(&term_log10(&series.e_coeffs[j], lf, j))
        })
        .expect("nonempty");
    let prec = series.e_coeffs[0].prec();
    let (error_estimate, divergent) = match live.get(pos + 1) {
        Some(&k) => {
            let t = Float::with_val(prec, f.pow(k as u32)) * &series.e_coeffs[k];
            (t.abs(), true)
        }
        None => (Float::new(prec), false),
    };
    Ok(TruncationReport {
        f: f.clone(),
        k_opt,
        partial_sum: PtSeries::partial_sum(&series.e_coeffs, f, k_opt),
        a_partial_sum: PtSeries::partial_sum(&series.a_coeffs, f, k_opt),
        error_estimate,
        divergent,
    })
}
