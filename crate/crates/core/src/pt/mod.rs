//! Perturbation theory in the field strength.
//!
//! Each channel is expanded about its hydrogenic solution
//! `Φ = x^s e^{-x/(2n)} Σ_k F^k P_k(x)` with polynomial `P_k`. Matching
//! powers of `x` order by order gives a triangular recursion for the
//! coefficients of `P_k`; the one equation that does not determine a
//! coefficient is a solvability condition, linear in `E_k` and `A_k`, and the
//! two channels together fix both.

mod asymptotic;
mod series;
mod truncation;

pub use asymptotic::asymptotic_width;
pub use series::{pt_series, PtSeries};
pub use truncation::{optimal_truncation, TruncationReport};
