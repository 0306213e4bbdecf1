use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_integer::Integer;

use super::{require_spi, SpiError};
use crate::graph::{lex_least_path, shortest_cycle_at, Graph, Path, VertexId};
use crate::lpa::Element;

/// The lexicographically least shortest path from `from` into `targets`.
pub(crate) fn shortest_path_into(g: &Graph, from: VertexId, targets: &BTreeSet<VertexId>) -> Option<Path> {
    (0..=g.vertex_count()).find_map(|len| lex_least_path(g, len, Some(from), targets))
}

/// Closed paths at `v` of length `n`, lexicographically ordered.
pub(crate) fn closed_paths_at(g: &Graph, v: VertexId, n: usize) -> Vec<Path> {
    let mut paths = paths_from(g, v, n);
    paths.retain(|p| p.range() == v);
    paths
}

pub(crate) fn cycle_bases(g: &Graph) -> BTreeSet<VertexId> {
    g.vertices_sorted()
        .filter(|&v| shortest_cycle_at(g, v).is_some())
        .collect()
}

/// Two closed paths `α, β` at a cycle base `v` with `α*β = β*α = 0`.
///
/// `α` is the lexicographically least shortest cycle at `v`; `β` leaves `α`
/// through an exit and returns to `v` by a shortest path, the shortest such
/// choice and then the lexicographically least.
pub fn incomparable_pair(g: &Graph, v: VertexId) -> Result<(Path, Path), SpiError> {
    let cycle = shortest_cycle_at(g, v).ok_or_else(|| SpiError::NotCycleBase(g.vertex_name(v).to_string()))?;
    let alpha = cycle
        .to_path(g)
        .ok_or(SpiError::OmegaUnsupported)?;
    let home = BTreeSet::from([v]);
    let mut best: Option<Path> = None;
    let mut prefix = Path::vertex(v);
    for &e in alpha.edges() {
        for &f in g.out_edges(prefix.range()) {
            if f == e {
                continue;
            }
            let Some(back) = shortest_path_into(g, g.range(f), &home) else {
                continue;
            };
            let beta = prefix.push(g, f).unwrap().concat(&back).unwrap();
            if best
                .as_ref()
                .map_or(true, |b| (beta.len(), &beta) < (b.len(), b))
            {
                best = Some(beta);
            }
        }
        prefix = prefix.push(g, e).unwrap();
    }
    best.map(|b| (alpha, b)).ok_or(SpiError::NotSPI)
}

/// `m` distinct closed paths of one common length `ℓ` at each vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedPathFamily {
    pub length: usize,
    pub paths: BTreeMap<VertexId, Vec<Path>>,
}

/// For each `v`: `δ_i = α^i β α^{m-i}` (`i = 1..m`) from an incomparable
/// pair at `v`, of length `n_v = m|α| + |β|`; then `ℓ = lcm(n_v)` and
/// `γ_i = δ_i^{ℓ/n_v}`.
pub fn equal_length_closed_paths(
    g: &Graph,
    vertices: &BTreeSet<VertexId>,
    m: usize,
) -> Result<ClosedPathFamily, SpiError> {
    if m == 0 {
        return Err(SpiError::InvalidCount);
    }
    require_spi(g)?;
    let mut deltas: BTreeMap<VertexId, Vec<Path>> = BTreeMap::new();
    for &v in vertices {
        let (alpha, beta) = incomparable_pair(g, v)?;
        let list = (1..=m)
            .map(|i| {
                alpha
                    .power(i)
                    .unwrap()
                    .concat(&beta)
                    .unwrap()
                    .concat(&alpha.power(m - i).unwrap())
                    .unwrap()
            })
            .collect();
        deltas.insert(v, list);
    }
    let length = deltas.values().map(|d| d[0].len()).fold(1, |l, n| l.lcm(&n));
    let paths = deltas
        .into_iter()
        .map(|(v, ds)| {
            let k = length / ds[0].len();
            (v, ds.into_iter().map(|d| d.power(k).unwrap()).collect())
        })
        .collect();
    Ok(ClosedPathFamily { length, paths })
}

/// `s_1, s_2, t_1, t_2 ∈ vL(E)v` with `t_i s_j = δ_{ij} v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohnEmbedding {
    pub v: VertexId,
    pub s: [Element; 2],
    pub t: [Element; 2],
}

impl CohnEmbedding {
    /// The products `t_i s_j`.
    pub fn relations(&self) -> [[Element; 2]; 2] {
        let prod = |i: usize, j: usize| &self.t[i] * &self.s[j];
        [[prod(0, 0), prod(0, 1)], [prod(1, 0), prod(1, 1)]]
    }

    pub fn verify(&self) -> bool {
        let g = self.s[0].graph();
        let v = Element::vertex(g, self.v);
        let zero = Element::zero(g);
        let rel = self.relations();
        rel[0][0] == v && rel[1][1] == v && rel[0][1] == zero && rel[1][0] == zero
    }
}

/// At a cycle base: `s_1 = α`, `s_2 = β`, `t_i = s_i*` for an incomparable
/// pair. Elsewhere, with `n` least such that every path of length `n` from
/// `v` ends at a cycle base: `s_i = Σ_γ γ s_i^{r(γ)} γ*` over those paths.
pub fn cohn_embedding(g: &Arc<Graph>, v: VertexId) -> Result<CohnEmbedding, SpiError> {
    require_spi(g)?;
    let bases = cycle_bases(g);
    let at_base = |w: VertexId| -> Result<[Element; 2], SpiError> {
        let (a, b) = incomparable_pair(g, w)?;
        Ok([Element::path(g, &a), Element::path(g, &b)])
    };
    let s = if bases.contains(&v) {
        at_base(v)?
    } else {
        let paths = (1..=g.vertex_count())
            .map(|n| paths_from(g, v, n))
            .find(|ps| ps.iter().all(|p| bases.contains(&p.range())))
            .ok_or(SpiError::NotSPI)?;
        let mut acc = [Element::zero(g), Element::zero(g)];
        for gamma in &paths {
            let inner = at_base(gamma.range())?;
            let ge = Element::path(g, gamma);
            let gs = ge.involute();
            for i in 0..2 {
                acc[i] = &acc[i] + &(&(&ge * &inner[i]) * &gs);
            }
        }
        acc
    };
    let t = [s[0].involute(), s[1].involute()];
    let out = CohnEmbedding { v, s, t };
    debug_assert!(out.verify());
    Ok(out)
}

/// Paths of length `n` starting at `v`, lexicographically ordered.
pub(crate) fn paths_from(g: &Graph, v: VertexId, n: usize) -> Vec<Path> {
    let mut layer = vec![Path::vertex(v)];
    for _ in 0..n {
        layer = layer
            .iter()
            .flat_map(|p| g.out_edges(p.range()).iter().map(move |&e| p.push(g, e).unwrap()))
            .collect();
    }
    layer
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r2() -> Arc<Graph> {
        Arc::new(
            Graph::builder()
                .vertex("v")
                .edge("e", "v", "v")
                .edge("f", "v", "v")
                .build()
                .unwrap(),
        )
    }

    fn word(g: &Graph, p: &Path) -> String {
        p.edge_names(g).concat()
    }

    #[test]
    fn r2_pairs_and_families() {
        let g = r2();
        let v = g.vertex("v").unwrap();
        let (a, b) = incomparable_pair(&g, v).unwrap();
        assert_eq!((word(&g, &a), word(&g, &b)), ("e".into(), "f".into()));

        let fam = equal_length_closed_paths(&g, &BTreeSet::from([v]), 2).unwrap();
        assert_eq!(fam.length, 3);
        let words: Vec<String> = fam.paths[&v].iter().map(|p| word(&g, p)).collect();
        assert_eq!(words, ["efe", "eef"]);

        let fam1 = equal_length_closed_paths(&g, &BTreeSet::from([v]), 1).unwrap();
        assert_eq!(fam1.length, 2);
        assert_eq!(word(&g, &fam1.paths[&v][0]), "ef");
    }

    #[test]
    fn cohn_at_base_and_off_base() {
        let g = r2();
        let c = cohn_embedding(&g, g.vertex("v").unwrap()).unwrap();
        assert!(c.verify());
        assert!((&(&c.s[0] * &c.t[0]) * &(&c.s[1] * &c.t[1])).is_zero());

        // the source s lies on no cycle
        let h = Arc::new(
            Graph::builder()
                .vertices(["a", "b", "s"])
                .edge("x", "s", "a")
                .edge("y", "a", "b")
                .edge("z", "b", "a")
                .edge("w", "a", "a")
                .build()
                .unwrap(),
        );
        let c = cohn_embedding(&h, h.vertex("s").unwrap()).unwrap();
        assert!(c.verify());
    }

    #[test]
    fn not_a_cycle_base() {
        let h = Graph::builder()
            .vertices(["a", "s"])
            .edge("x", "s", "a")
            .edge("w", "a", "a")
            .edge("w2", "a", "a")
            .build()
            .unwrap();
        let s = h.vertex("s").unwrap();
        assert!(matches!(incomparable_pair(&h, s), Err(SpiError::NotCycleBase(_))));
    }
}
