//! Multiple-precision kernels shared by the engines.

pub mod complex;
pub mod linalg;
pub mod newton;
pub mod precision;
pub mod quadrature;
