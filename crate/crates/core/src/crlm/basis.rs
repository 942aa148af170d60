use rug::Float;

use crate::numerics::precision::PrecisionContext;
use crate::numerics::quadrature::{laguerre_nodes, laguerre_with_derivative};
use crate::{Error, Result};

/// Lagrange-Laguerre functions `Λ_k(x) = (-1)^k √x_k L_N(x) / (x - x_k)`
/// on the zeros `x_k` of `L_N`.
#[derive(Clone, Debug)]
pub struct MeshBasis {
    pub n: usize,
    pub m: i32,
    pub nodes: Vec<Float>,
    sqrt_nodes: Vec<Float>,
}

impl MeshBasis {
    pub fn new(n: usize, m: i32, ctx: &PrecisionContext) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!("mesh size must be at least 2, got {n}")));
        }
        let nodes = laguerre_nodes(n, ctx)?.nodes;
        let sqrt_nodes = nodes.iter().map(|x| Float::with_val(x.prec(), x.sqrt_ref())).collect();
        Ok(Self { n, m, nodes, sqrt_nodes })
    }

    fn sign(k: usize) -> i32 {
        if k % 2 == 0 { 1 } else { -1 }
    }

    /// `(Λ_k(y), Λ_k'(y))` for every `k` at a point `y` that is not a mesh node.
    pub fn eval_all(&self, y: &Float) -> Vec<(Float, Float)> {
        let prec = y.prec();
        let (l, dl) = laguerre_with_derivative(self.n, y);
        (0..self.n)
            .map(|k| {
                let c = Float::with_val(prec, &self.sqrt_nodes[k] * Self::sign(k));
                let d = Float::with_val(prec, y - &self.nodes[k]);
                let v = Float::with_val(prec, &l / &d) * &c;
                let mut dv = Float::with_val(prec, &dl * &d);
                dv -= &l;
                dv /= Float::with_val(prec, d.square_ref());
                dv *= &c;
                (v, dv)
            })
            .collect()
    }

    /// `Λ_k(x_j)`; at mesh points this is `(-1)^k √x_k L_N'(x_k) δ_kj`.
    pub fn eval_at_node(&self, k: usize, j: usize) -> Float {
        let x = &self.nodes[j];
        let prec = x.prec();
        if k == j {
            let (_, dl) = laguerre_with_derivative(self.n, x);
            Float::with_val(prec, &dl * &self.sqrt_nodes[k]) * Self::sign(k)
        } else {
            Float::new(prec)
        }
    }
}
