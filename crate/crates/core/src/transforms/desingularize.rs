use std::collections::{BTreeMap, HashSet};

use super::TransformError;
use crate::graph::{EdgeId, Graph, VertexId};

/// What the last tail vertex `v_N` keeps.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum FrontierMode {
    /// `v_N` keeps the edges not yet enumerated: explicit edges past depth
    /// and the ω-pairs of `v`. The result is again a graph for the same
    /// algebra up to Morita equivalence.
    #[default]
    Residual,
    /// `v_N` becomes a sink.
    Sink,
}

enum Outgoing {
    Explicit(EdgeId),
    Omega { dst: VertexId, copy: usize },
}

/// Desingularizes every infinite emitter to depth `depth`, keeping the
/// residual ω-pairs at the frontier.
pub fn desingularize(g: &Graph, depth: usize) -> Result<Graph, TransformError> {
    desingularize_with(g, depth, FrontierMode::Residual)
}

/// For each infinite emitter `v`, adds a tail `v = v_0 → v_1 → … → v_N`
/// and moves the `k`-th enumerated edge of `v` to leave `v_{k-1}`.
/// Edges are enumerated explicit ones first (by id), then copies of the
/// ω-pairs round-robin by destination id. `v_N` is flagged as frontier.
pub fn desingularize_with(g: &Graph, depth: usize, mode: FrontierMode) -> Result<Graph, TransformError> {
    if depth == 0 {
        return Err(TransformError::InvalidDepth);
    }
    let emitters: Vec<VertexId> = g.vertices_sorted().filter(|&v| g.is_infinite_emitter(v)).collect();
    if emitters.is_empty() {
        return Err(TransformError::NoInfiniteEmitters);
    }
    let mut taken: HashSet<String> = g
        .vertices()
        .map(|v| g.vertex_name(v).to_string())
        .chain(g.edges().map(|e| g.edge_name(e).to_string()))
        .collect();
    let mut fresh = |base: String| {
        let mut name = base;
        while taken.contains(&name) {
            name.push('\'');
        }
        taken.insert(name.clone());
        name
    };

    let name = |v: VertexId| g.vertex_name(v).to_string();
    let mut vertices: Vec<String> = g.vertices().map(name).collect();
    let mut frontier: Vec<String> = g.frontier_names();
    // new source of each moved explicit edge
    let mut moved: BTreeMap<EdgeId, String> = BTreeMap::new();
    let mut extra_edges: Vec<(String, String, String)> = Vec::new();
    let mut omega: Vec<(String, String)> = Vec::new();

    for &v in &emitters {
        let tail: Vec<String> = std::iter::once(name(v))
            .chain((1..=depth).map(|k| fresh(format!("{}~{k}", name(v)))))
            .collect();
        vertices.extend(tail[1..].iter().cloned());
        let last = tail[depth].clone();
        frontier.push(last.clone());

        let explicit = g.out_edges(v);
        let dsts = g.omega_out(v);
        let enumerated = (0..depth).map(|k| {
            if k < explicit.len() {
                Outgoing::Explicit(explicit[k])
            } else {
                let j = k - explicit.len();
                Outgoing::Omega {
                    dst: dsts[j % dsts.len()],
                    copy: j / dsts.len() + 1,
                }
            }
        });
        for (k, out) in enumerated.enumerate() {
            extra_edges.push((
                fresh(format!("{}~t{}", name(v), k + 1)),
                tail[k].clone(),
                tail[k + 1].clone(),
            ));
            match out {
                Outgoing::Explicit(e) => {
                    moved.insert(e, tail[k].clone());
                }
                Outgoing::Omega { dst, copy } => {
                    extra_edges.push((
                        fresh(format!("{}->{}^({copy})", name(v), name(dst))),
                        tail[k].clone(),
                        name(dst),
                    ));
                }
            }
        }
        if mode == FrontierMode::Residual {
            for &e in explicit.iter().skip(depth) {
                moved.insert(e, last.clone());
            }
            omega.extend(dsts.iter().map(|&d| (last.clone(), name(d))));
        } else {
            for &e in explicit.iter().skip(depth) {
                moved.insert(e, String::new());
            }
        }
    }

    let mut edges: Vec<(String, String, String)> = Vec::new();
    for e in g.edges() {
        let src = match moved.get(&e) {
            Some(s) if s.is_empty() => continue,
            Some(s) => s.clone(),
            None => name(g.source(e)),
        };
        edges.push((g.edge_name(e).to_string(), src, name(g.range(e))));
    }
    edges.extend(extra_edges);
    omega.extend(
        g.omega_pairs()
            .iter()
            .filter(|(s, _)| !emitters.contains(s))
            .map(|&(s, d)| (name(s), name(d))),
    );
    Ok(Graph::from_parts(vertices, edges, omega, frontier)?)
}
