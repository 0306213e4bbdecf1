use std::collections::HashMap;
use std::sync::Arc;

use super::{Block, BlockDecomposition, BlockKey, BlockKind, CoeffMatrix, MatricialError};
use crate::graph::{explicit_paths, find_cycles, Path, VertexId};
use crate::lpa::Element;

/// `L(F) ≅ ⊕_{v sink} M_{P_v}` for a finite acyclic graph, `P_v` being all
/// paths ending at `v`, ordered by length and then lexicographically.
pub fn acyclic_decompose(x: &Element) -> Result<BlockDecomposition, MatricialError> {
    let g = x.graph();
    if !g.is_row_finite() {
        return Err(MatricialError::OmegaUnsupported);
    }
    if !find_cycles(g).is_empty() {
        return Err(MatricialError::NotAcyclic);
    }
    let mut blocks: Vec<Block> = Vec::new();
    let mut pos: HashMap<VertexId, usize> = HashMap::new();
    for v in g.vertices_sorted().filter(|&v| g.is_sink(v)) {
        pos.insert(v, blocks.len());
        blocks.push(Block {
            key: BlockKey {
                kind: BlockKind::Acyclic,
                vertex: v,
                stage: None,
            },
            paths: Vec::new(),
            matrix: CoeffMatrix::zeros(0, 0),
        });
    }
    // acyclic: paths have length < |E^0|
    for n in 0..g.vertex_count() {
        for p in explicit_paths(g, n, None) {
            if let Some(&i) = pos.get(&p.range()) {
                blocks[i].paths.push(p);
            }
        }
    }
    let lookups: Vec<HashMap<Path, usize>> = blocks
        .iter()
        .map(|b| b.paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect())
        .collect();
    for b in &mut blocks {
        b.matrix = CoeffMatrix::zeros(b.paths.len(), b.paths.len());
    }
    let mut stack: Vec<_> = x
        .terms()
        .map(|(m, c)| (m.alpha().clone(), m.beta().clone(), c.clone()))
        .collect();
    while let Some((a, b, c)) = stack.pop() {
        let w = a.range();
        match pos.get(&w) {
            Some(&bi) => {
                let (i, j) = (lookups[bi][&a], lookups[bi][&b]);
                blocks[bi].matrix.add_to(i, j, &c);
            }
            None => {
                for &e in g.out_edges(w) {
                    stack.push((a.push(g, e).unwrap(), b.push(g, e).unwrap(), c.clone()));
                }
            }
        }
    }
    Ok(BlockDecomposition {
        graph: Arc::clone(g),
        stage: None,
        blocks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::lpa::Coeff;

    #[test]
    fn a2_matrix_units() {
        let g = Arc::new(
            Graph::builder()
                .vertices(["u", "v"])
                .edge("e", "u", "v")
                .build()
                .unwrap(),
        );
        let e = Element::path(&g, &Path::from_names(&g, &["e"], None).unwrap());
        let d = acyclic_decompose(&e).unwrap();
        assert_eq!(d.blocks().len(), 1);
        let b = &d.blocks()[0];
        assert_eq!(b.paths.len(), 2);
        assert!(b.paths[0].is_empty());
        // ε_{e,v}
        assert_eq!(*b.matrix.get(1, 0), Coeff::from_int(1));
        assert_eq!(d.recompose(), e);
        let u = Element::vertex(&g, g.vertex("u").unwrap());
        let du = acyclic_decompose(&u).unwrap();
        assert_eq!(*du.blocks()[0].matrix.get(1, 1), Coeff::from_int(1));
    }

    #[test]
    fn cycles_are_rejected() {
        let g = Arc::new(Graph::builder().vertex("v").edge("e", "v", "v").build().unwrap());
        assert_eq!(acyclic_decompose(&Element::unit(&g)), Err(MatricialError::NotAcyclic));
    }
}
