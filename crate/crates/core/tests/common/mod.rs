#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use leavitt_lab::graph::{Graph, VertexId};

pub fn graph(vertices: &[&str], edges: &[(&str, &str, &str)], omega: &[(&str, &str)]) -> Arc<Graph> {
    let mut b = Graph::builder().vertices(vertices.iter().copied());
    for &(id, s, d) in edges {
        b = b.edge(id, s, d);
    }
    for &(s, d) in omega {
        b = b.omega(s, d);
    }
    Arc::new(b.build().expect("fixture graph is valid"))
}

pub fn rose(n: usize) -> Arc<Graph> {
    let names = ["e", "f", "g", "h"];
    let edges: Vec<(&str, &str, &str)> = names[..n].iter().map(|&e| (e, "v", "v")).collect();
    graph(&["v"], &edges, &[])
}

pub fn a2() -> Arc<Graph> {
    graph(&["u", "v"], &[("e", "u", "v")], &[])
}

pub fn a3() -> Arc<Graph> {
    graph(&["u", "v", "w"], &[("e", "u", "v"), ("f", "v", "w")], &[])
}

/// Six vertices on a line: `p0 → p1 → … → p5`.
pub fn path6() -> Arc<Graph> {
    graph(
        &["p0", "p1", "p2", "p3", "p4", "p5"],
        &[
            ("a", "p0", "p1"),
            ("b", "p1", "p2"),
            ("c", "p2", "p3"),
            ("d", "p3", "p4"),
            ("e", "p4", "p5"),
        ],
        &[],
    )
}

/// A triangle `a → b → c → a` with the chord `c → b`.
pub fn triangle() -> Arc<Graph> {
    graph(
        &["a", "b", "c"],
        &[("x", "a", "b"), ("y", "b", "c"), ("z", "c", "a"), ("w", "c", "b")],
        &[],
    )
}

/// A four-cycle with a loop at `a`.
pub fn square() -> Arc<Graph> {
    graph(
        &["a", "b", "c", "d"],
        &[
            ("l", "a", "a"),
            ("p", "a", "b"),
            ("q", "b", "c"),
            ("r", "c", "d"),
            ("s", "d", "a"),
        ],
        &[],
    )
}

/// A source `s` feeding `a ⇄ b`, with a loop at `a`.
pub fn with_source() -> Arc<Graph> {
    graph(
        &["a", "b", "s"],
        &[("x", "s", "a"), ("y", "a", "b"), ("z", "b", "a"), ("w", "a", "a")],
        &[],
    )
}

/// A loop at `u` with no exit, fed from `s`, which also reaches the sink `t`.
pub fn loop_and_sink() -> Arc<Graph> {
    graph(&["s", "t", "u"], &[("e", "u", "u"), ("f", "s", "u"), ("g", "s", "t")], &[])
}

pub fn two_a2() -> Arc<Graph> {
    graph(&["u", "u2", "v", "v2"], &[("e", "u", "v"), ("f", "u2", "v2")], &[])
}

pub fn rose2_and_vertex() -> Arc<Graph> {
    graph(&["v", "z"], &[("e", "v", "v"), ("f", "v", "v")], &[])
}

/// `v` emits infinitely many edges to `w`; `w` has a loop and an edge back.
pub fn omega_graph() -> Arc<Graph> {
    graph(&["v", "w"], &[("f", "w", "v"), ("g", "w", "w")], &[("v", "w")])
}

/// Drawn once from a seeded generator and frozen.
pub fn random_a() -> Arc<Graph> {
    graph(
        &["v0", "v1", "v2", "v3"],
        &[
            ("e0", "v3", "v3"),
            ("e1", "v1", "v1"),
            ("e2", "v3", "v1"),
            ("e3", "v0", "v3"),
            ("e4", "v2", "v1"),
            ("e5", "v0", "v0"),
        ],
        &[],
    )
}

/// Drawn once from a seeded generator and frozen.
pub fn random_b() -> Arc<Graph> {
    graph(
        &["v0", "v1", "v2", "v3"],
        &[
            ("e0", "v2", "v2"),
            ("e1", "v1", "v3"),
            ("e2", "v0", "v2"),
            ("e3", "v3", "v2"),
            ("e4", "v3", "v1"),
            ("e5", "v0", "v1"),
        ],
        &[],
    )
}

/// Subsets of the vertex set, as bit masks over `vertices_sorted`.
pub fn subsets(g: &Graph) -> impl Iterator<Item = BTreeSet<VertexId>> + '_ {
    let vs: Vec<VertexId> = g.vertices_sorted().collect();
    (0u32..(1 << vs.len())).map(move |mask| {
        vs.iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &v)| v)
            .collect()
    })
}

fn successors(g: &Graph, v: VertexId) -> Vec<VertexId> {
    let mut out: Vec<VertexId> = g.out_edges(v).iter().map(|&e| g.range(e)).collect();
    out.extend(g.omega_out(v));
    out
}

pub fn is_hereditary(g: &Graph, h: &BTreeSet<VertexId>) -> bool {
    h.iter().all(|&v| successors(g, v).iter().all(|w| h.contains(w)))
}

pub fn is_saturated(g: &Graph, h: &BTreeSet<VertexId>) -> bool {
    g.vertices_sorted().all(|v| {
        h.contains(&v)
            || !g.is_regular(v)
            || !g.out_edges(v).iter().all(|&e| h.contains(&g.range(e)))
    })
}

/// Some cycle whose vertices all emit exactly one edge.
pub fn has_cycle_without_exit(g: &Graph) -> bool {
    g.vertices_sorted().any(|v| {
        let mut cur = v;
        for _ in 0..g.vertex_count() {
            if g.out_edges(cur).len() != 1 || g.is_infinite_emitter(cur) {
                return false;
            }
            cur = g.range(g.out_edges(cur)[0]);
            if cur == v {
                return true;
            }
        }
        false
    })
}

pub fn has_cycle(g: &Graph) -> bool {
    g.vertices_sorted().any(|v| {
        let mut seen = BTreeSet::new();
        let mut stack = successors(g, v);
        while let Some(w) = stack.pop() {
            if w == v {
                return true;
            }
            if seen.insert(w) {
                stack.extend(successors(g, w));
            }
        }
        false
    })
}

/// `(simple, has a cycle)` by exhausting vertex subsets.
pub fn brute_force_verdict(g: &Graph) -> (bool, bool) {
    let n = g.vertex_count();
    let proper_hs = subsets(g)
        .filter(|h| !h.is_empty() && h.len() < n)
        .any(|h| is_hereditary(g, &h) && is_saturated(g, &h));
    (!proper_hs && !has_cycle_without_exit(g), has_cycle(g))
}

/// A graph on `v0..v{n-1}` with edges `e0, e1, …` in the given order.
pub fn numbered(n: usize, edges: &[(usize, usize)], omega: &[(usize, usize)]) -> Arc<Graph> {
    let vs: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut b = Graph::builder().vertices(vs.iter().cloned());
    for (k, &(s, d)) in edges.iter().enumerate() {
        b = b.edge(format!("e{k}"), vs[s % n].clone(), vs[d % n].clone());
    }
    let pairs: BTreeSet<(usize, usize)> = omega.iter().map(|&(s, d)| (s % n, d % n)).collect();
    for (s, d) in pairs {
        b = b.omega(vs[s].clone(), vs[d].clone());
    }
    Arc::new(b.build().expect("numbered graph is valid"))
}

pub mod strategies {
    use std::sync::Arc;

    use proptest::prelude::*;

    use leavitt_lab::graph::Graph;

    /// Row-finite graphs with up to `max_v` vertices and `max_e` edges.
    pub fn row_finite(max_v: usize, max_e: usize) -> impl Strategy<Value = Arc<Graph>> {
        (1..=max_v).prop_flat_map(move |n| {
            prop::collection::vec((0..n, 0..n), 0..=max_e).prop_map(move |es| super::numbered(n, &es, &[]))
        })
    }

    /// Graphs that may carry ω-pairs.
    pub fn any_graph(max_v: usize, max_e: usize) -> impl Strategy<Value = Arc<Graph>> {
        (1..=max_v).prop_flat_map(move |n| {
            (
                prop::collection::vec((0..n, 0..n), 0..=max_e),
                prop::collection::vec((0..n, 0..n), 0..=2),
            )
                .prop_map(move |(es, om)| super::numbered(n, &es, &om))
        })
    }
}
