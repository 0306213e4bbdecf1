//! Constructive pure infiniteness for simple purely infinite graphs.
//!
//! For a nonzero `a` in `L(E)` the witness builder produces `x, y` with
//! `x·a·y` equal to a vertex, using only exact arithmetic. The helpers here
//! also give incomparable closed paths, families of equal-length closed
//! paths and embeddings of the Cohn relations in a corner `vL(E)v`.

mod closed;
mod sigma;
mod witness;

use thiserror::Error;

use crate::graph::{classify_graph, Graph, GraphError, Verdict};

pub use closed::{cohn_embedding, equal_length_closed_paths, incomparable_pair, ClosedPathFamily, CohnEmbedding};
pub use sigma::sigma_annihilator;
pub use witness::{spi_witness, TraceStep, Witness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpiError {
    #[error("the element is zero")]
    ZeroElement,
    #[error("the graph is not simple purely infinite")]
    NotSPI,
    #[error("the graph has sources; remove them first")]
    HasSources,
    #[error("infinite emitters are not supported here")]
    OmegaUnsupported,
    #[error("vertex `{0}` lies on no cycle")]
    NotCycleBase(String),
    #[error("the element has a nonzero degree-zero component")]
    NotDegreeFree,
    #[error("the count must be positive")]
    InvalidCount,
    #[error("no annihilating path of length at most {cap}")]
    SearchExhausted { cap: usize },
    #[error("graph error: {0}")]
    Graph(#[from] GraphError),
    #[error("invalid witness json: {0}")]
    Json(String),
    #[error("internal error: {0}")]
    Internal(String),
}

/// Row-finite and simple purely infinite.
pub(crate) fn require_spi(g: &Graph) -> Result<(), SpiError> {
    if !g.is_row_finite() {
        return Err(SpiError::OmegaUnsupported);
    }
    match classify_graph(g)?.verdict {
        Verdict::SimplePurelyInfinite => Ok(()),
        _ => Err(SpiError::NotSPI),
    }
}
