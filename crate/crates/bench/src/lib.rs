//! Shared inputs for the engine benchmarks.

use starkres_core::seed::pt_seed;
use starkres_core::{Float, HpComplex, PrecisionContext, StateLabel};

pub const FIELD: &str = "0.005";

pub fn context(digits: u32) -> PrecisionContext {
    PrecisionContext::new(digits).expect("valid precision")
}

pub fn field(ctx: &PrecisionContext) -> Float {
    ctx.parse(FIELD).expect("valid field")
}

/// Ground-state `(E, A)` from perturbation theory, used as a fixed
/// evaluation point.
pub fn ground_point(ctx: &PrecisionContext) -> (HpComplex, HpComplex) {
    let seed = pt_seed(StateLabel::ground(), &field(ctx), ctx).expect("seed");
    (seed.e, seed.a)
}
