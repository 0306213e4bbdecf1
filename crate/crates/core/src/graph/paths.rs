use std::collections::BTreeSet;

use super::{EdgeId, Graph, GraphError, VertexId};

/// A finite path of explicit edges. Vertices are the paths of length 0.
///
/// The derived order compares edge sequences lexicographically first, so a
/// proper prefix sorts before its extensions.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    edges: Vec<EdgeId>,
    src: VertexId,
    dst: VertexId,
}

impl Path {
    pub fn vertex(v: VertexId) -> Path {
        Path {
            edges: Vec::new(),
            src: v,
            dst: v,
        }
    }

    pub fn edge(g: &Graph, e: EdgeId) -> Path {
        Path {
            edges: vec![e],
            src: g.source(e),
            dst: g.range(e),
        }
    }

    /// Validates `r(e_i) = s(e_{i+1})`. An empty edge list needs `vertex`.
    pub fn from_edges(g: &Graph, edges: &[EdgeId], vertex: Option<VertexId>) -> Result<Path, GraphError> {
        let Some(&first) = edges.first() else {
            return vertex
                .map(Path::vertex)
                .ok_or_else(|| GraphError::Json("a path of length 0 needs its vertex".into()));
        };
        if let Some(v) = vertex {
            if g.source(first) != v {
                return Err(GraphError::NotComposable(
                    g.vertex_name(v).to_string(),
                    g.edge_name(first).to_string(),
                ));
            }
        }
        for w in edges.windows(2) {
            if g.range(w[0]) != g.source(w[1]) {
                return Err(GraphError::NotComposable(
                    g.edge_name(w[0]).to_string(),
                    g.edge_name(w[1]).to_string(),
                ));
            }
        }
        Ok(Path {
            edges: edges.to_vec(),
            src: g.source(first),
            dst: g.range(*edges.last().unwrap()),
        })
    }

    /// Parses edge names; `vertex` is required for length-0 paths and checked otherwise.
    pub fn from_names(g: &Graph, edges: &[impl AsRef<str>], vertex: Option<&str>) -> Result<Path, GraphError> {
        let ids = edges
            .iter()
            .map(|n| g.require_edge(n.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        let v = vertex.map(|n| g.require_vertex(n)).transpose()?;
        Path::from_edges(g, &ids, v)
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn source(&self) -> VertexId {
        self.src
    }

    pub fn range(&self) -> VertexId {
        self.dst
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    /// True for length-0 paths (vertices).
    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_closed(&self) -> bool {
        self.src == self.dst
    }

    pub fn last_edge(&self) -> Option<EdgeId> {
        self.edges.last().copied()
    }

    /// Concatenation `self · other`, defined when `r(self) = s(other)`.
    pub fn concat(&self, other: &Path) -> Option<Path> {
        if self.dst != other.src {
            return None;
        }
        let mut edges = Vec::with_capacity(self.edges.len() + other.edges.len());
        edges.extend_from_slice(&self.edges);
        edges.extend_from_slice(&other.edges);
        Some(Path {
            edges,
            src: self.src,
            dst: other.dst,
        })
    }

    /// Appends one edge; `None` unless `r(self) = s(e)`.
    pub fn push(&self, g: &Graph, e: EdgeId) -> Option<Path> {
        if g.source(e) != self.dst {
            return None;
        }
        let mut edges = self.edges.clone();
        edges.push(e);
        Some(Path {
            edges,
            src: self.src,
            dst: g.range(e),
        })
    }

    /// Drops the last edge. `None` on vertices.
    pub fn pop(&self, g: &Graph) -> Option<Path> {
        let (&last, rest) = self.edges.split_last()?;
        Some(Path {
            edges: rest.to_vec(),
            src: self.src,
            dst: g.source(last),
        })
    }

    /// `Some(γ)` with `self = prefix · γ`.
    pub fn strip_prefix(&self, prefix: &Path) -> Option<Path> {
        if prefix.edges.is_empty() {
            return (prefix.src == self.src).then(|| self.clone());
        }
        let rest = self.edges.strip_prefix(prefix.edges.as_slice())?;
        Some(Path {
            edges: rest.to_vec(),
            src: prefix.dst,
            dst: self.dst,
        })
    }

    /// Neither path extends the other (the path order relation fails both ways).
    pub fn incomparable(&self, other: &Path) -> bool {
        self.strip_prefix(other).is_none() && other.strip_prefix(self).is_none()
    }

    /// `self^k` for a closed path; `k = 0` gives the base vertex.
    pub fn power(&self, k: usize) -> Option<Path> {
        if !self.is_closed() {
            return None;
        }
        let mut edges = Vec::with_capacity(self.edges.len() * k);
        for _ in 0..k {
            edges.extend_from_slice(&self.edges);
        }
        Some(Path {
            edges,
            src: self.src,
            dst: self.dst,
        })
    }

    /// Vertices visited, `s(e_1), r(e_1), …, r(e_n)`.
    pub fn visited(&self, g: &Graph) -> Vec<VertexId> {
        let mut out = vec![self.src];
        out.extend(self.edges.iter().map(|&e| g.range(e)));
        out
    }

    pub fn edge_names(&self, g: &Graph) -> Vec<String> {
        self.edges.iter().map(|&e| g.edge_name(e).to_string()).collect()
    }

    /// `[e, f]` for a path of positive length, the vertex id otherwise.
    pub fn display(&self, g: &Graph) -> String {
        if self.edges.is_empty() {
            g.vertex_name(self.src).to_string()
        } else {
            format!("[{}]", self.edge_names(g).join(", "))
        }
    }
}

/// `P_n`, or `P_{n,v}` when `end` is given, in lexicographic order.
pub fn enumerate_paths(g: &Graph, n: usize, end: Option<VertexId>) -> Result<Vec<Path>, GraphError> {
    if n > 0 && !g.is_row_finite() {
        return Err(GraphError::OmegaUnsupported);
    }
    Ok(explicit_paths(g, n, end))
}

/// Paths of length `n` through explicit edges only; ω-pairs are ignored.
pub fn explicit_paths(g: &Graph, n: usize, end: Option<VertexId>) -> Vec<Path> {
    let mut layer: Vec<Path> = g.vertices_sorted().map(Path::vertex).collect();
    for _ in 0..n {
        let mut next = Vec::new();
        if layer.first().is_some_and(|p| p.is_empty()) {
            // first step: start from edges directly so the order is by edge id
            next.extend(g.edges_sorted().map(|e| Path::edge(g, e)));
        } else {
            for p in &layer {
                for &e in g.out_edges(p.range()) {
                    next.push(p.push(g, e).expect("out edge composes"));
                }
            }
        }
        layer = next;
    }
    if let Some(v) = end {
        layer.retain(|p| p.range() == v);
    }
    layer
}

/// All paths of length `0..=max_len`, ordered by length and then lexicographically.
pub fn paths_up_to(g: &Graph, max_len: usize) -> Result<Vec<Path>, GraphError> {
    let mut out = Vec::new();
    for n in 0..=max_len {
        out.extend(enumerate_paths(g, n, None)?);
    }
    Ok(out)
}

/// The lexicographically least path of length `len` starting at `from`
/// (any vertex when `None`) and ending in `targets`.
pub fn lex_least_path(
    g: &Graph,
    len: usize,
    from: Option<VertexId>,
    targets: &BTreeSet<VertexId>,
) -> Option<Path> {
    let n = g.vertex_count();
    // reach[k][v]: some path of length k leads from v into targets
    let mut reach = vec![vec![false; n]; len + 1];
    for &t in targets {
        reach[0][t.index()] = true;
    }
    for k in 1..=len {
        for v in g.vertices_sorted() {
            reach[k][v.index()] = g
                .out_edges(v)
                .iter()
                .any(|&e| reach[k - 1][g.range(e).index()]);
        }
    }
    let mut path = match (from, len) {
        (Some(v), _) => {
            if !reach[len][v.index()] {
                return None;
            }
            Path::vertex(v)
        }
        (None, 0) => return targets.iter().next().map(|&v| Path::vertex(v)),
        (None, _) => {
            let e = g
                .edges_sorted()
                .find(|&e| reach[len - 1][g.range(e).index()])?;
            Path::edge(g, e)
        }
    };
    while path.len() < len {
        let remaining = len - path.len() - 1;
        let e = g
            .out_edges(path.range())
            .iter()
            .copied()
            .find(|&e| reach[remaining][g.range(e).index()])
            .expect("reachability table guarantees a continuation");
        path = path.push(g, e).unwrap();
    }
    Some(path)
}

/// Vertices reachable from `start` (including `start`) along explicit and ω edges.
pub fn reachable_from(g: &Graph, start: VertexId) -> BTreeSet<VertexId> {
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        let next = g
            .out_edges(v)
            .iter()
            .map(|&e| g.range(e))
            .chain(g.omega_out(v).iter().copied());
        for w in next {
            if seen.insert(w) {
                stack.push(w);
            }
        }
    }
    seen
}
