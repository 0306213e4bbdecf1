//! Spatial `ℓ^p` matrix models of finite acyclic Leavitt path algebras.
//!
//! `x ∈ L(F)` acts on `⊕_{v sink} ℓ^p(P_v)` through the matrix units
//! `αβ* ↦ ε_{α,β}`, so its norm is the largest block norm.

mod opnorm;

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

use crate::graph::{Path, VertexId};
use crate::lpa::Element;
use crate::matricial::{acyclic_decompose, MatricialError};

pub use opnorm::{
    column_sum_norm, largest_singular_value, op_norm_p, op_norm_p_with, power_lower_bound, row_sum_norm,
    EstimatorOptions, NormEstimate,
};

pub const ACCEPT_TOL: f64 = 1e-9;
pub const TARGET_TOL: f64 = 1e-12;
pub const MAX_P: f64 = 8.0;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PnormError {
    #[error("the graph has a cycle")]
    NotAcyclic,
    #[error("infinite emitters are not supported here")]
    OmegaUnsupported,
    #[error("p = {0} is outside [1, 8]")]
    InvalidP(f64),
    #[error("empty matrix")]
    EmptyMatrix,
}

impl From<MatricialError> for PnormError {
    fn from(e: MatricialError) -> Self {
        match e {
            MatricialError::OmegaUnsupported => PnormError::OmegaUnsupported,
            _ => PnormError::NotAcyclic,
        }
    }
}

pub(crate) fn check_p(p: f64) -> Result<(), PnormError> {
    if (1.0..=MAX_P).contains(&p) {
        Ok(())
    } else {
        Err(PnormError::InvalidP(p))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpatialBlock {
    pub sink: VertexId,
    pub paths: Vec<Path>,
    pub matrix: DMatrix<Complex64>,
}

/// Float image of the acyclic block decomposition, one block per sink.
#[derive(Clone, Debug, PartialEq)]
pub struct SpatialMatrix {
    pub p: f64,
    pub blocks: Vec<SpatialBlock>,
}

impl SpatialMatrix {
    /// Blockwise product.
    pub fn mul(&self, other: &SpatialMatrix) -> SpatialMatrix {
        assert_eq!(self.blocks.len(), other.blocks.len(), "block structures differ");
        SpatialMatrix {
            p: self.p,
            blocks: self
                .blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| SpatialBlock {
                    sink: a.sink,
                    paths: a.paths.clone(),
                    matrix: &a.matrix * &b.matrix,
                })
                .collect(),
        }
    }

    /// Largest entrywise `|Δ|` against a matrix of the same shape.
    pub fn max_deviation(&self, other: &SpatialMatrix) -> f64 {
        assert_eq!(self.blocks.len(), other.blocks.len(), "block structures differ");
        self.blocks
            .iter()
            .zip(&other.blocks)
            .flat_map(|(a, b)| a.matrix.iter().zip(b.matrix.iter()).map(|(x, y)| (x - y).norm()))
            .fold(0.0, f64::max)
    }

    fn zeros_like(&self) -> SpatialMatrix {
        SpatialMatrix {
            p: self.p,
            blocks: self
                .blocks
                .iter()
                .map(|b| SpatialBlock {
                    sink: b.sink,
                    paths: b.paths.clone(),
                    matrix: DMatrix::zeros(b.matrix.nrows(), b.matrix.ncols()),
                })
                .collect(),
        }
    }

    fn add_scaled(&mut self, other: &SpatialMatrix, z: Complex64) {
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            a.matrix += &b.matrix * z;
        }
    }
}

pub fn spatial_rep_acyclic(x: &Element, p: f64) -> Result<SpatialMatrix, PnormError> {
    check_p(p)?;
    let d = acyclic_decompose(x)?;
    let blocks = d
        .blocks()
        .iter()
        .map(|b| {
            let m = &b.matrix;
            SpatialBlock {
                sink: b.key.vertex,
                paths: b.paths.clone(),
                matrix: DMatrix::from_fn(m.rows(), m.cols(), |i, j| m.get(i, j).to_complex64()),
            }
        })
        .collect();
    Ok(SpatialMatrix { p, blocks })
}

/// `max_v ‖x_v‖_{B(ℓ^p(P_v))}`.
pub fn element_norm_acyclic(x: &Element, p: f64) -> Result<NormEstimate, PnormError> {
    element_norm_acyclic_with(x, p, &EstimatorOptions::default())
}

pub fn element_norm_acyclic_with(x: &Element, p: f64, opts: &EstimatorOptions) -> Result<NormEstimate, PnormError> {
    let s = spatial_rep_acyclic(x, p)?;
    let mut out = NormEstimate {
        p,
        value: 0.0,
        exact: true,
        converged: true,
    };
    for b in &s.blocks {
        let n = op_norm_p_with(&b.matrix, p, opts)?;
        out.value = out.value.max(n.value);
        out.exact &= n.exact;
        out.converged &= n.converged;
    }
    if s.blocks.is_empty() {
        return Err(PnormError::EmptyMatrix);
    }
    Ok(out)
}

/// Trapezoid quadrature of `(1/2π)∫ e^{-inθ} γ_{e^{iθ}}(x) dθ` on the
/// spatial matrices with `K = 2(2·maxdeg + 1)` nodes, compared entrywise
/// with the spatial matrix of the symbolic `Φ_n(x)`.
pub fn phi_n_numeric_check(x: &Element, n: i64, p: f64) -> Result<f64, PnormError> {
    let target = spatial_rep_acyclic(&x.phi(n), p)?;
    let g = x.graph();
    let mut pieces: Vec<(i64, SpatialMatrix)> = Vec::with_capacity(x.len());
    for (m, c) in x.terms() {
        let t = Element::monomial(g, m.clone(), c.clone());
        pieces.push((m.degree(), spatial_rep_acyclic(&t, p)?));
    }
    let maxdeg = pieces.iter().map(|(d, _)| d.unsigned_abs()).max().unwrap_or(0);
    let k = 2 * (2 * maxdeg + 1);
    let mut acc = target.zeros_like();
    for node in 0..k {
        let theta = 2.0 * PI * node as f64 / k as f64;
        let weight = Complex64::from_polar(1.0 / k as f64, -(n as f64) * theta);
        for (d, s) in &pieces {
            acc.add_scaled(s, weight * Complex64::from_polar(1.0, *d as f64 * theta));
        }
    }
    Ok(acc.max_deviation(&target))
}
