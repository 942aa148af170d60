//! High-precision resonance solver for the hydrogen atom in a uniform
//! electric field.
//!
//! Three independent engines are provided:
//!
//! * [`rpm`]: Riccati-Pade quantization from Hankel determinants of the
//!   Taylor coefficients of the regularized logarithmic derivative in both
//!   parabolic channels.
//! * [`pt`]: Rayleigh-Schrodinger perturbation series in the field strength,
//!   its optimal truncation, and the asymptotic ground-state width.
//! * [`crlm`]: complex-rotated Laguerre-mesh eigenproblem.
//!
//! All multiple-precision work runs under an explicit [`PrecisionContext`].

pub mod crlm;
pub mod decimal;
mod error;
pub mod numerics;
pub mod pt;
pub mod rpm;
pub mod seed;
mod state;

pub use error::{Error, Result};
pub use numerics::complex::HpComplex;
pub use numerics::precision::PrecisionContext;
pub use state::{ResonanceEstimate, StateLabel};
pub use numerics::quadrature::QuadratureRule;

pub use faer::c64;
pub use rug::Float;
