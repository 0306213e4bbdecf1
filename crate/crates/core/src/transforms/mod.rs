//! Graph surgeries: source removal, desingularization of infinite
//! emitters, reachable subgraphs, and the completion of a finite subgraph
//! with its embedding into `L(E)`.

mod desingularize;
mod embed;

use std::collections::BTreeSet;

use thiserror::Error;

use crate::graph::{reachable_from, Graph, GraphError, VertexId};

pub use desingularize::{desingularize, desingularize_with, FrontierMode};
pub use embed::{complete_and_embed, EmbeddingData, Subgraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error("removing sources deleted every vertex")]
    BecameEmpty,
    #[error("the graph has no infinite emitters")]
    NoInfiniteEmitters,
    #[error("depth must be at least 1")]
    InvalidDepth,
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("not a subgraph: {0}")]
    NotASubgraph(String),
    #[error("embedding violates a relation: {0}")]
    RelationFailed(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// The subgraph on `keep`: its vertices, the explicit edges and ω-pairs
/// with both ends kept, input order preserved.
pub(crate) fn induced(g: &Graph, keep: &BTreeSet<VertexId>) -> Result<Graph, GraphError> {
    let name = |v| g.vertex_name(v).to_string();
    Graph::from_parts(
        g.vertices().filter(|v| keep.contains(v)).map(name).collect(),
        g.edges()
            .filter(|&e| keep.contains(&g.source(e)) && keep.contains(&g.range(e)))
            .map(|e| (g.edge_name(e).to_string(), name(g.source(e)), name(g.range(e))))
            .collect(),
        g.omega_pairs()
            .iter()
            .filter(|(s, d)| keep.contains(s) && keep.contains(d))
            .map(|&(s, d)| (name(s), name(d)))
            .collect(),
        g.vertices()
            .filter(|&v| keep.contains(&v) && g.is_frontier(v))
            .map(name)
            .collect(),
    )
}

/// Repeatedly deletes vertices that receive no edges.
pub fn remove_sources(g: &Graph) -> Result<Graph, TransformError> {
    let mut keep: BTreeSet<VertexId> = g.vertices_sorted().collect();
    loop {
        let sources: Vec<VertexId> = keep
            .iter()
            .copied()
            .filter(|&v| {
                let explicit = g.in_edges(v).iter().any(|&e| keep.contains(&g.source(e)));
                let omega = g.omega_pairs().iter().any(|&(s, d)| d == v && keep.contains(&s));
                !explicit && !omega
            })
            .collect();
        if sources.is_empty() {
            break;
        }
        for v in sources {
            keep.remove(&v);
        }
    }
    if keep.is_empty() {
        return Err(TransformError::BecameEmpty);
    }
    Ok(induced(g, &keep)?)
}

/// The vertices reachable from `w` with every edge and ω-pair leaving them.
pub fn reachable_subgraph(g: &Graph, w: &str) -> Result<Graph, TransformError> {
    let start = g
        .vertex(w)
        .ok_or_else(|| TransformError::UnknownVertex(w.to_string()))?;
    // hereditary, so the induced subgraph already has all edges sourced in it
    Ok(induced(g, &reachable_from(g, start))?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tail_loop() -> Graph {
        Graph::builder()
            .vertices(["u", "v"])
            .edge("e", "u", "v")
            .edge("f", "v", "v")
            .build()
            .unwrap()
    }

    #[test]
    fn remove_sources_examples() {
        let r1 = remove_sources(&tail_loop()).unwrap();
        assert_eq!(r1.to_json(), r#"{"vertices":["v"],"edges":[{"id":"f","src":"v","dst":"v"}]}"#);
        let r2 = Graph::builder()
            .vertex("v")
            .edge("e", "v", "v")
            .edge("f", "v", "v")
            .build()
            .unwrap();
        assert_eq!(remove_sources(&r2).unwrap(), r2);
        let a2 = Graph::builder()
            .vertices(["u", "v"])
            .edge("e", "u", "v")
            .build()
            .unwrap();
        assert_eq!(remove_sources(&a2), Err(TransformError::BecameEmpty));
    }

    #[test]
    fn reachable_examples() {
        let g = tail_loop();
        assert_eq!(reachable_subgraph(&g, "u").unwrap(), g);
        let h = reachable_subgraph(&g, "v").unwrap();
        assert_eq!(h.vertex_count(), 1);
        assert_eq!(reachable_subgraph(&h, "v").unwrap(), h);
        assert_eq!(
            reachable_subgraph(&g, "x"),
            Err(TransformError::UnknownVertex("x".into()))
        );
    }
}
