mod common;

use std::sync::Arc;

use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;
use leavitt_lab::graph::Graph;
use leavitt_lab::lpa::{Element, ElementSampler};
use leavitt_lab::matricial::{
    acyclic_decompose, decompose_0n, degree_zero_witness, stage_entries, BlockKind, MatricialError,
};

fn rng(s: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(s)
}

fn stage_fixture() -> impl Strategy<Value = Arc<Graph>> {
    prop::sample::select(vec![rose(2), a3(), triangle(), loop_and_sink(), with_source()])
}

#[test]
fn block_sizes_count_paths() {
    // A_2 at stage 1: sink blocks P_{0,v} = {v} and P_{1,v} = {e}
    let g = a2();
    let d = decompose_0n(&Element::unit(&g), 1).unwrap();
    let sizes: Vec<usize> = d.blocks().iter().map(|b| b.paths.len()).collect();
    assert_eq!(sizes, [1, 1]);
    assert!(d.blocks().iter().all(|b| b.key.kind == BlockKind::Sink));

    let g = rose(2);
    let d = decompose_0n(&Element::unit(&g), 3).unwrap();
    assert_eq!(d.blocks().len(), 1);
    assert_eq!(d.blocks()[0].paths.len(), 8);
}

#[test]
fn filtration_errors() {
    let g = rose(2);
    let e = Element::path(&g, &leavitt_lab::graph::Path::from_names(&g, &["e"], None).unwrap());
    assert!(matches!(decompose_0n(&e, 2), Err(MatricialError::NotInFiltration { .. })));
    let ee = &e * &e.involute();
    assert!(matches!(decompose_0n(&ee, 0), Err(MatricialError::NotInFiltration { .. })));
    assert!(matches!(acyclic_decompose(&ee), Err(MatricialError::NotAcyclic)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn stage_decomposition_is_multiplicative(g in stage_fixture(), n in 0usize..=3, s in any::<u64>()) {
        let mut r = rng(s);
        let sampler = ElementSampler::new(4, n).equal_lengths(true);
        let x = sampler.sample(&g, &mut r);
        let y = sampler.sample(&g, &mut r);
        let dx = decompose_0n(&x, n).unwrap();
        let dy = decompose_0n(&y, n).unwrap();
        prop_assert_eq!(decompose_0n(&(&x * &y), n).unwrap(), dx.mul(&dy).unwrap());
        prop_assert_eq!(dx.recompose(), x.clone());
        prop_assert_eq!(decompose_0n(&(&x + &y), n).unwrap().recompose(), &x + &y);
    }

    #[test]
    fn sparse_entries_match_dense_blocks(g in stage_fixture(), n in 0usize..=3, s in any::<u64>()) {
        let x = ElementSampler::new(4, n).equal_lengths(true).sample(&g, &mut rng(s));
        let d = decompose_0n(&x, n).unwrap();
        let sparse = stage_entries(&x, n).unwrap();
        let mut dense_nonzero = 0;
        for b in d.blocks() {
            for (i, j, c) in b.matrix.entries().filter(|(_, _, c)| !c.is_zero()) {
                let key = (b.key.clone(), b.paths[i].clone(), b.paths[j].clone());
                prop_assert_eq!(sparse.get(&key), Some(c));
                dense_nonzero += 1;
            }
        }
        prop_assert_eq!(dense_nonzero, sparse.len());
    }

    #[test]
    fn acyclic_decomposition_is_faithful(idx in 0usize..3, s in any::<u64>()) {
        let g = [a2(), a3(), path6()][idx].clone();
        let mut r = rng(s);
        let sampler = ElementSampler::new(5, g.vertex_count() - 1);
        let x = sampler.sample(&g, &mut r);
        let y = sampler.sample(&g, &mut r);
        let dx = acyclic_decompose(&x).unwrap();
        prop_assert_eq!(dx.is_zero(), x.is_zero());
        prop_assert_eq!(dx.recompose(), x.clone());
        prop_assert_eq!(acyclic_decompose(&(&x * &y)).unwrap(), dx.mul(&acyclic_decompose(&y).unwrap()).unwrap());
    }

    #[test]
    fn degree_zero_witness_is_exact(g in stage_fixture(), s in any::<u64>()) {
        let sampler = ElementSampler::new(5, 3).equal_lengths(true);
        if let Some(a) = sampler.sample_nonzero(&g, &mut rng(s)) {
            let w = degree_zero_witness(&a).unwrap();
            prop_assert_eq!(&(&w.x * &a) * &w.y, Element::vertex(&g, w.v));
            prop_assert_eq!(w.x.degrees().into_iter().collect::<Vec<_>>(), vec![-(w.h as i64)]);
        }
    }
}
