use faer::linalg::triangular_solve::solve_lower_triangular_in_place;
use faer::{c64, Mat, Par, Side};

use super::blocks::SecularBlocks;
use crate::{Error, Result};

/// Rotated pencil `A(θ) - E S` with `A(θ) = e^{-2iθ}K - ½e^{-iθ}G + F e^{iθ}W`.
pub struct RotatedProblem<'a> {
    pub blocks: &'a SecularBlocks,
    pub theta: f64,
    pub f: f64,
}

impl<'a> RotatedProblem<'a> {
    pub fn new(blocks: &'a SecularBlocks, theta: f64, f: f64) -> Result<Self> {
        if !(theta >= 0.0 && theta < std::f64::consts::FRAC_PI_4) {
            return Err(Error::InvalidArgument(format!("rotation angle must lie in [0, π/4), got {theta}")));
        }
        if !(f >= 0.0) {
            return Err(Error::InvalidArgument("field strength must be non-negative".into()));
        }
        Ok(Self { blocks, theta, f })
    }

    pub fn phases(&self) -> (c64, c64, c64) {
        let t = self.theta;
        (c64::cis(-2.0 * t), c64::cis(-t) * -0.5, c64::cis(t) * self.f)
    }

    pub fn matrix(&self) -> Mat<c64> {
        let (pk, pg, pw) = self.phases();
        let b = self.blocks;
        Mat::from_fn(b.dim(), b.dim(), |i, j| pk * b.k[(i, j)] + pg * b.g[(i, j)] + pw * b.w[(i, j)])
    }

    /// All generalized eigenvalues, via `C = L⁻¹ A L⁻ᵀ` with `S = L Lᵀ`.
    pub fn eigenvalues(&self) -> Result<Vec<c64>> {
        let llt = self
            .blocks
            .s
            .llt(Side::Lower)
            .map_err(|_| Error::Eigen("overlap matrix is not positive definite".into()))?;
        let l = llt.L();
        let lc = Mat::<c64>::from_fn(l.nrows(), l.ncols(), |i, j| c64::new(l[(i, j)], 0.0));
        let mut x = self.matrix();
        solve_lower_triangular_in_place(lc.as_ref(), x.as_mut(), Par::Seq);
        let mut y = x.transpose().to_owned();
        solve_lower_triangular_in_place(lc.as_ref(), y.as_mut(), Par::Seq);
        let mut ev = y
            .eigenvalues()
            .map_err(|e| Error::Eigen(format!("dense eigen-solver did not converge: {e:?}")))?;
        if ev.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Eigen("non-finite eigenvalue".into()));
        }
        ev.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        Ok(ev)
    }
}

/// Generalized eigenvalues of the rotated pencil, sorted by real part.
pub fn rotate_and_solve(blocks: &SecularBlocks, theta: f64, f: f64) -> Result<Vec<c64>> {
    RotatedProblem::new(blocks, theta, f)?.eigenvalues()
}
