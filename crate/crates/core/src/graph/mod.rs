//! Directed graphs with finitely presented infinite emitters.
//!
//! A [`Graph`] is a finite list of vertices and edges plus a set of
//! *ω-pairs* `(v, w)`, each standing for countably many parallel edges
//! from `v` to `w`. Vertex and edge ids are strings; internally they are
//! interned as [`VertexId`] / [`EdgeId`] whose numeric order is the
//! lexicographic order of the ids, so every derived `Ord` on paths is the
//! lexicographic order on edge-id sequences. Iteration through
//! [`Graph::vertices`] and [`Graph::edges`] follows input order.

mod classify;
mod io;
mod paths;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

pub use classify::{
    classify_graph, classify_vertices, cycle_without_exit, find_cycles,
    hereditary_saturated_closure, is_cycle_cofinal, shortest_cycle_at, Classification,
    ClassificationWitness, Cycle, CycleReport, Step, Verdict, VertexPartition,
};
pub use io::to_dot;
pub use paths::{enumerate_paths, explicit_paths, lex_least_path, paths_up_to, reachable_from, Path};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate edge id `{0}`")]
    DuplicateEdge(String),
    #[error("duplicate omega pair ({0}, {1})")]
    DuplicateOmega(String, String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("edges {0} and {1} are not composable")]
    NotComposable(String, String),
    #[error("the graph has no vertices")]
    EmptyGraph,
    #[error("operation needs a graph without infinite emitters")]
    OmegaUnsupported,
    #[error("malformed graph json: {0}")]
    Json(String),
}

/// Interned vertex handle. Ordered like the vertex ids.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub(crate) u32);

/// Interned edge handle. Ordered like the edge ids.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub(crate) u32);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl EdgeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct EdgeData {
    name: String,
    src: VertexId,
    dst: VertexId,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertex_names: Vec<String>,
    vertex_order: Vec<VertexId>,
    edges: Vec<EdgeData>,
    edge_order: Vec<EdgeId>,
    omega: Vec<(VertexId, VertexId)>,
    frontier: Vec<bool>,
    out_edges: Vec<Vec<EdgeId>>,
    in_edges: Vec<Vec<EdgeId>>,
    omega_out: Vec<Vec<VertexId>>,
    omega_in: Vec<usize>,
}

/// Incremental construction of a [`Graph`] from string ids.
#[derive(Clone, Debug, Default)]
pub struct GraphBuilder {
    vertices: Vec<String>,
    edges: Vec<(String, String, String)>,
    omega: Vec<(String, String)>,
    frontier: Vec<String>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex(mut self, id: impl Into<String>) -> Self {
        self.vertices.push(id.into());
        self
    }

    pub fn vertices<S: Into<String>>(mut self, ids: impl IntoIterator<Item = S>) -> Self {
        self.vertices.extend(ids.into_iter().map(Into::into));
        self
    }

    pub fn edge(
        mut self,
        id: impl Into<String>,
        src: impl Into<String>,
        dst: impl Into<String>,
    ) -> Self {
        self.edges.push((id.into(), src.into(), dst.into()));
        self
    }

    pub fn omega(mut self, src: impl Into<String>, dst: impl Into<String>) -> Self {
        self.omega.push((src.into(), dst.into()));
        self
    }

    pub fn frontier(mut self, id: impl Into<String>) -> Self {
        self.frontier.push(id.into());
        self
    }

    pub fn build(self) -> Result<Graph, GraphError> {
        Graph::from_parts(self.vertices, self.edges, self.omega, self.frontier)
    }
}

impl Graph {
    pub fn builder() -> GraphBuilder {
        GraphBuilder::new()
    }

    /// Builds and validates a graph. Order of `vertices` and `edges` is kept
    /// as the iteration order.
    pub fn from_parts(
        vertices: Vec<String>,
        edges: Vec<(String, String, String)>,
        omega: Vec<(String, String)>,
        frontier: Vec<String>,
    ) -> Result<Graph, GraphError> {
        let mut sorted: Vec<&String> = vertices.iter().collect();
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateVertex(w[0].clone()));
        }
        let vertex_names: Vec<String> = sorted.into_iter().cloned().collect();
        let vindex: HashMap<&str, VertexId> = vertex_names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), VertexId(i as u32)))
            .collect();
        let lookup = |name: &str| {
            vindex
                .get(name)
                .copied()
                .ok_or_else(|| GraphError::UnknownVertex(name.to_string()))
        };
        let vertex_order = vertices
            .iter()
            .map(|n| lookup(n))
            .collect::<Result<Vec<_>, _>>()?;

        let mut sorted_edges: Vec<(usize, &(String, String, String))> =
            edges.iter().enumerate().collect();
        sorted_edges.sort_by(|a, b| a.1 .0.cmp(&b.1 .0));
        if let Some(w) = sorted_edges.windows(2).find(|w| w[0].1 .0 == w[1].1 .0) {
            return Err(GraphError::DuplicateEdge(w[0].1 .0.clone()));
        }
        let mut edge_order = vec![EdgeId(0); edges.len()];
        let mut edge_data = Vec::with_capacity(edges.len());
        for (rank, (input_pos, (name, src, dst))) in sorted_edges.into_iter().enumerate() {
            edge_order[input_pos] = EdgeId(rank as u32);
            edge_data.push(EdgeData {
                name: name.clone(),
                src: lookup(src)?,
                dst: lookup(dst)?,
            });
        }

        let n = vertex_names.len();
        let mut omega_ids = Vec::with_capacity(omega.len());
        let mut seen = BTreeSet::new();
        for (s, d) in &omega {
            let pair = (lookup(s)?, lookup(d)?);
            if !seen.insert(pair) {
                return Err(GraphError::DuplicateOmega(s.clone(), d.clone()));
            }
            omega_ids.push(pair);
        }

        let mut frontier_flags = vec![false; n];
        for f in &frontier {
            frontier_flags[lookup(f)?.index()] = true;
        }

        let mut out_edges = vec![Vec::new(); n];
        let mut in_edges = vec![Vec::new(); n];
        for (i, e) in edge_data.iter().enumerate() {
            out_edges[e.src.index()].push(EdgeId(i as u32));
            in_edges[e.dst.index()].push(EdgeId(i as u32));
        }
        let mut omega_out = vec![Vec::new(); n];
        let mut omega_in = vec![0; n];
        for &(s, d) in &omega_ids {
            omega_out[s.index()].push(d);
            omega_in[d.index()] += 1;
        }
        for list in &mut omega_out {
            list.sort();
        }

        Ok(Graph {
            vertex_names,
            vertex_order,
            edges: edge_data,
            edge_order,
            omega: omega_ids,
            frontier: frontier_flags,
            out_edges,
            in_edges,
            omega_out,
            omega_in,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertex_names.is_empty()
    }

    /// Vertices in input order.
    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertex_order.iter().copied()
    }

    /// Vertices in id order.
    pub fn vertices_sorted(&self) -> impl Iterator<Item = VertexId> {
        (0..self.vertex_names.len() as u32).map(VertexId)
    }

    /// Edges in input order.
    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edge_order.iter().copied()
    }

    pub fn edges_sorted(&self) -> impl Iterator<Item = EdgeId> {
        (0..self.edges.len() as u32).map(EdgeId)
    }

    /// ω-pairs in input order.
    pub fn omega_pairs(&self) -> &[(VertexId, VertexId)] {
        &self.omega
    }

    pub fn vertex(&self, name: &str) -> Option<VertexId> {
        self.vertex_names
            .binary_search_by(|n| n.as_str().cmp(name))
            .ok()
            .map(|i| VertexId(i as u32))
    }

    pub fn edge(&self, name: &str) -> Option<EdgeId> {
        self.edges
            .binary_search_by(|e| e.name.as_str().cmp(name))
            .ok()
            .map(|i| EdgeId(i as u32))
    }

    pub fn require_vertex(&self, name: &str) -> Result<VertexId, GraphError> {
        self.vertex(name)
            .ok_or_else(|| GraphError::UnknownVertex(name.to_string()))
    }

    pub fn require_edge(&self, name: &str) -> Result<EdgeId, GraphError> {
        self.edge(name)
            .ok_or_else(|| GraphError::UnknownEdge(name.to_string()))
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertex_names[v.index()]
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edges[e.index()].name
    }

    pub fn source(&self, e: EdgeId) -> VertexId {
        self.edges[e.index()].src
    }

    pub fn range(&self, e: EdgeId) -> VertexId {
        self.edges[e.index()].dst
    }

    /// Explicit edges leaving `v`, in id order.
    pub fn out_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.out_edges[v.index()]
    }

    pub fn in_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.in_edges[v.index()]
    }

    /// Ranges of the ω-pairs sourced at `v`, in id order.
    pub fn omega_out(&self, v: VertexId) -> &[VertexId] {
        &self.omega_out[v.index()]
    }

    pub fn is_sink(&self, v: VertexId) -> bool {
        self.out_edges[v.index()].is_empty() && self.omega_out[v.index()].is_empty()
    }

    pub fn is_infinite_emitter(&self, v: VertexId) -> bool {
        !self.omega_out[v.index()].is_empty()
    }

    pub fn is_regular(&self, v: VertexId) -> bool {
        !self.is_sink(v) && !self.is_infinite_emitter(v)
    }

    /// No edge (explicit or ω) ends at `v`.
    pub fn is_source(&self, v: VertexId) -> bool {
        self.in_edges[v.index()].is_empty() && self.omega_in[v.index()] == 0
    }

    pub fn is_frontier(&self, v: VertexId) -> bool {
        self.frontier[v.index()]
    }

    pub fn is_row_finite(&self) -> bool {
        self.omega.is_empty()
    }

    pub fn has_sources(&self) -> bool {
        self.vertices_sorted().any(|v| self.is_source(v))
    }

    /// The edge CK2 is solved for in the normal form: the least edge id
    /// leaving a regular vertex.
    pub fn designated_edge(&self, v: VertexId) -> Option<EdgeId> {
        if self.is_regular(v) {
            self.out_edges[v.index()].first().copied()
        } else {
            None
        }
    }

    pub(crate) fn frontier_names(&self) -> Vec<String> {
        self.vertices()
            .filter(|&v| self.is_frontier(v))
            .map(|v| self.vertex_name(v).to_string())
            .collect()
    }

    pub fn vertex_names<I: IntoIterator<Item = VertexId>>(&self, ids: I) -> Vec<String> {
        ids.into_iter()
            .map(|v| self.vertex_name(v).to_string())
            .collect()
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_json())
    }
}
