//! Matrix models of the degree-zero filtration `L(E)_{0,n}` and of finite
//! acyclic Leavitt path algebras.
//!
//! At stage `n` a row-finite graph gives one block `M_{P_{r,v}}` for every
//! sink `v` and `r = 0..=n`, and one block `M_{P_{n,v}}` for every regular
//! `v`; the matrix unit `ε_{α,β}` corresponds to `αβ*`. Empty blocks are
//! omitted.

mod acyclic;
mod matrix;
mod witness;

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_traits::Zero;
use serde_json::{json, Value};
use thiserror::Error;

use crate::graph::{explicit_paths, Graph, GraphError, Path, VertexId};
use crate::lpa::{Coeff, Element, Monomial};

pub use acyclic::acyclic_decompose;
pub use matrix::CoeffMatrix;
pub use witness::{degree_zero_witness, degree_zero_witness_at_stage, DegreeZeroWitness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatricialError {
    #[error("element is not in the degree-zero filtration at stage {stage}: {reason}")]
    NotInFiltration { stage: usize, reason: String },
    #[error("the graph has a cycle")]
    NotAcyclic,
    #[error("operation needs a graph without infinite emitters")]
    OmegaUnsupported,
    #[error("the element is zero")]
    ZeroElement,
    #[error("block decompositions have different shapes")]
    ShapeMismatch,
}

impl From<GraphError> for MatricialError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::OmegaUnsupported => MatricialError::OmegaUnsupported,
            other => MatricialError::NotInFiltration {
                stage: 0,
                reason: other.to_string(),
            },
        }
    }
}

/// Block kinds, in scan order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BlockKind {
    Sink,
    Regular,
    /// A sink of a finite acyclic graph indexed by all paths ending there.
    Acyclic,
}

impl BlockKind {
    pub fn as_str(self) -> &'static str {
        match self {
            BlockKind::Sink => "sink",
            BlockKind::Regular => "regular",
            BlockKind::Acyclic => "acyclic",
        }
    }
}

/// Ordered by `(kind, vertex id, stage)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BlockKey {
    pub kind: BlockKind,
    pub vertex: VertexId,
    /// `None` for acyclic blocks, which mix path lengths.
    pub stage: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub key: BlockKey,
    pub paths: Vec<Path>,
    pub matrix: CoeffMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockDecomposition {
    graph: Arc<Graph>,
    stage: Option<usize>,
    blocks: Vec<Block>,
}

impl BlockDecomposition {
    pub fn graph(&self) -> &Arc<Graph> {
        &self.graph
    }

    /// The filtration stage, `None` for an acyclic decomposition.
    pub fn stage(&self) -> Option<usize> {
        self.stage
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn block(&self, key: &BlockKey) -> Option<&Block> {
        self.blocks.iter().find(|b| b.key == *key)
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|b| b.matrix.is_zero())
    }

    /// `Σ λ_{α,β} αβ*` over all blocks.
    pub fn recompose(&self) -> Element {
        let mut terms = Vec::new();
        for b in &self.blocks {
            for (i, j, c) in b.matrix.entries() {
                if !c.is_zero() {
                    let m = Monomial::new(b.paths[i].clone(), b.paths[j].clone())
                        .expect("block paths share their range");
                    terms.push((m, c.clone()));
                }
            }
        }
        Element::from_terms(&self.graph, terms)
    }

    /// Blockwise product.
    pub fn mul(&self, other: &BlockDecomposition) -> Result<BlockDecomposition, MatricialError> {
        if self.stage != other.stage || self.blocks.len() != other.blocks.len() {
            return Err(MatricialError::ShapeMismatch);
        }
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| {
                if a.key != b.key || a.paths != b.paths {
                    return Err(MatricialError::ShapeMismatch);
                }
                Ok(Block {
                    key: a.key,
                    paths: a.paths.clone(),
                    matrix: &a.matrix * &b.matrix,
                })
            })
            .collect::<Result<_, _>>()?;
        Ok(BlockDecomposition {
            graph: Arc::clone(&self.graph),
            stage: self.stage,
            blocks,
        })
    }

    /// `{"blocks":[{"vertex","kind","stage","paths":[{"src","edges"}],"matrix":[["p/q+r/s i"]]}]}`
    pub fn to_json_value(&self) -> Value {
        let g = &self.graph;
        let blocks: Vec<Value> = self
            .blocks
            .iter()
            .map(|b| {
                let paths: Vec<Value> = b
                    .paths
                    .iter()
                    .map(|p| json!({"src": g.vertex_name(p.source()), "edges": p.edge_names(g)}))
                    .collect();
                let matrix: Vec<Vec<String>> = (0..b.matrix.rows())
                    .map(|i| b.matrix.row(i).iter().map(Coeff::entry_string).collect())
                    .collect();
                json!({
                    "vertex": g.vertex_name(b.key.vertex),
                    "kind": b.key.kind.as_str(),
                    "stage": b.key.stage,
                    "paths": paths,
                    "matrix": matrix,
                })
            })
            .collect();
        json!({ "blocks": blocks })
    }
}

/// Paths grouped by `(length, range)`, each list in lexicographic order.
fn paths_by_range(g: &Graph, max_len: usize) -> Vec<BTreeMap<VertexId, Vec<Path>>> {
    (0..=max_len)
        .map(|n| {
            let mut by: BTreeMap<VertexId, Vec<Path>> = BTreeMap::new();
            for p in explicit_paths(g, n, None) {
                by.entry(p.range()).or_default().push(p);
            }
            by
        })
        .collect()
}

/// The empty block family of stage `n`.
fn empty_stage(g: &Graph, n: usize) -> Vec<Block> {
    let by = paths_by_range(g, n);
    let mut blocks = Vec::new();
    for v in g.vertices_sorted() {
        if g.is_sink(v) {
            for (r, layer) in by.iter().enumerate() {
                if let Some(paths) = layer.get(&v) {
                    blocks.push((BlockKind::Sink, v, r, paths.clone()));
                }
            }
        } else if let Some(paths) = by[n].get(&v) {
            blocks.push((BlockKind::Regular, v, n, paths.clone()));
        }
    }
    let mut blocks: Vec<Block> = blocks
        .into_iter()
        .map(|(kind, vertex, stage, paths)| Block {
            key: BlockKey {
                kind,
                vertex,
                stage: Some(stage),
            },
            matrix: CoeffMatrix::zeros(paths.len(), paths.len()),
            paths,
        })
        .collect();
    blocks.sort_by_key(|b| b.key);
    blocks
}

/// Nonzero entries `((block, α, β), λ)` of the stage-`n` image of `x`, in
/// block order and then row-major order.
pub fn stage_entries(x: &Element, n: usize) -> Result<BTreeMap<(BlockKey, Path, Path), Coeff>, MatricialError> {
    let g = x.graph();
    if !g.is_row_finite() {
        return Err(MatricialError::OmegaUnsupported);
    }
    for (m, _) in x.terms() {
        if m.degree() != 0 {
            return Err(MatricialError::NotInFiltration {
                stage: n,
                reason: format!("term {} has degree {}", m.display(g), m.degree()),
            });
        }
        if m.max_len() > n {
            return Err(MatricialError::NotInFiltration {
                stage: n,
                reason: format!("term {} is longer than the stage", m.display(g)),
            });
        }
    }
    let mut out: BTreeMap<(BlockKey, Path, Path), Coeff> = BTreeMap::new();
    // CK2-expand regular-range terms up to stage n
    let mut stack: Vec<(Path, Path, Coeff)> = x
        .terms()
        .map(|(m, c)| (m.alpha().clone(), m.beta().clone(), c.clone()))
        .collect();
    while let Some((a, b, c)) = stack.pop() {
        let w = a.range();
        let kind = if g.is_sink(w) {
            BlockKind::Sink
        } else if a.len() == n {
            BlockKind::Regular
        } else {
            for &e in g.out_edges(w) {
                stack.push((a.push(g, e).unwrap(), b.push(g, e).unwrap(), c.clone()));
            }
            continue;
        };
        let key = BlockKey {
            kind,
            vertex: w,
            stage: Some(a.len()),
        };
        let slot = out.entry((key, a, b)).or_insert_with(Coeff::zero);
        *slot += &c;
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

/// The image of `x ∈ L(E)_{0,n}` in the block algebra of stage `n`.
pub fn decompose_0n(x: &Element, n: usize) -> Result<BlockDecomposition, MatricialError> {
    let entries = stage_entries(x, n)?;
    let g = x.graph();
    let mut blocks = empty_stage(g, n);
    let lookups: Vec<HashMap<Path, usize>> = blocks
        .iter()
        .map(|b| b.paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect())
        .collect();
    let pos: HashMap<BlockKey, usize> = blocks.iter().enumerate().map(|(i, b)| (b.key, i)).collect();
    for ((key, a, b), c) in entries {
        let bi = pos[&key];
        let (i, j) = (lookups[bi][&a], lookups[bi][&b]);
        blocks[bi].matrix.set(i, j, c);
    }
    Ok(BlockDecomposition {
        graph: Arc::clone(g),
        stage: Some(n),
        blocks,
    })
}
