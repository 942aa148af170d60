//! Complex-rotated Laguerre-mesh eigenproblem.
//!
//! The wave function is expanded in products `g_k(ξ) g_l(η) e^{imφ}` with
//! `g_k(x) = e^{-x/2} x^{|m|/2} Λ_k(x)` and Lagrange-Laguerre functions `Λ_k`.
//! Multiplying `(H - E)ψ = 0` by the volume factor `(ξ+η)/4` leaves only
//! polynomial weights, so every matrix is a sum of tensor products of 1-D
//! tables computed exactly by Gauss-Laguerre quadrature. Under
//! `(ξ, η) -> e^{iθ}(ξ, η)` the pieces pick up the phases
//! `e^{-2iθ}` (kinetic), `e^{-iθ}` (Coulomb) and `e^{iθ}` (field).

mod basis;
mod blocks;
mod refine;
mod select;
mod solve;

pub use basis::MeshBasis;
pub use blocks::{assemble_blocks, assemble_blocks_degraded, BlockKind, OneDimTables, SecularBlocks, ALL_BLOCKS};
pub use refine::rayleigh_refine;
pub use select::{select_resonance, CrlmOptions, ResonanceCandidate};
pub use solve::{rotate_and_solve, RotatedProblem};

/// Default rotation angles scanned when selecting a resonance.
pub const DEFAULT_THETA_SCAN: [f64; 7] = [0.30, 0.35, 0.40, 0.45, 0.50, 0.55, 0.60];
