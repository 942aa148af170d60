use crate::numerics::complex::HpComplex;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Last point reached by a failed Newton run, kept so callers can reseed.
#[derive(Clone, Debug)]
pub struct LastIterate {
    pub e: HpComplex,
    pub a: HpComplex,
    pub iterations: usize,
    /// log10 of the last relative step length.
    pub last_step_log10: f64,
    /// log10 of the residual norm at the last iterate.
    pub residual_log10: f64,
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("working precision of {got} digits is below the required {required}")]
    Precision { required: u32, got: u32 },

    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),

    #[error("non-finite value produced in {0}")]
    Overflow(&'static str),

    #[error("refinement of Laguerre node {index} (order {order}) did not converge")]
    NodeRefinement { index: usize, order: usize },

    #[error("singular Jacobian, condition estimate {condition:.3e}")]
    SingularJacobian { condition: f64, last: Box<LastIterate> },

    #[error("no convergence after {} iterations (step 1e{:.1}, residual 1e{:.1})",
        .last.iterations, .last.last_step_log10, .last.residual_log10)]
    MaxIterations { last: Box<LastIterate> },

    #[error("root tracking broke at D={d}: {source}")]
    Tracking { d: usize, source: Box<Error> },

    #[error("eigen-solver failure: {0}")]
    Eigen(String),

    #[error("assembly failure: {0}")]
    Assembly(String),

    #[error("ambiguous resonance selection: {0}")]
    Ambiguous(String),
}
