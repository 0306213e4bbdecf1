//! Exact arithmetic in Leavitt path algebras over `ℚ(i)`.
//!
//! Elements are kept in the normal form obtained by solving CK2 for the
//! least edge `g` out of each regular vertex: a monomial `αβ*` is reduced
//! iff `α` and `β` do not both end in the same designated edge.

mod basis;
mod coeff;
mod element;
mod json;
mod monomial;
mod normalize;
mod sample;

use thiserror::Error;

use crate::graph::GraphError;

pub use basis::{basis_monomials, rank};
pub use coeff::Coeff;
pub use element::Element;
pub use monomial::Monomial;
pub use normalize::{normalize_terms, RewriteStrategy};
pub use sample::ElementSampler;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LpaError {
    #[error("elements belong to different graphs")]
    GraphMismatch,
    #[error("paths end at different vertices ({alpha} vs {beta})")]
    RangeMismatch { alpha: String, beta: String },
    #[error("bad coefficient: {0}")]
    Coefficient(String),
    #[error("malformed element json: {0}")]
    Json(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}
