use std::collections::BTreeMap;

use num_traits::Zero;

use super::{Coeff, Element, Monomial};
use crate::graph::{explicit_paths, Graph};

/// Normal-form monomials `αβ*` with `|α|, |β| ≤ max_len`, in monomial order.
pub fn basis_monomials(g: &Graph, max_len: usize) -> Vec<Monomial> {
    let paths: Vec<_> = (0..=max_len).flat_map(|n| explicit_paths(g, n, None)).collect();
    let mut out = Vec::new();
    for a in &paths {
        for b in paths.iter().filter(|b| b.range() == a.range()) {
            let m = Monomial::new(a.clone(), b.clone()).unwrap();
            if !m.is_reducible(g) {
                out.push(m);
            }
        }
    }
    out.sort();
    out
}

/// Dimension of the span of `elements`, by exact Gaussian elimination on
/// normal-form coordinates.
pub fn rank(elements: &[Element]) -> usize {
    let mut columns: BTreeMap<&Monomial, usize> = BTreeMap::new();
    for x in elements {
        for (m, _) in x.terms() {
            let next = columns.len();
            columns.entry(m).or_insert(next);
        }
    }
    let width = columns.len();
    let mut rows: Vec<Vec<Coeff>> = elements
        .iter()
        .map(|x| {
            let mut row = vec![Coeff::zero(); width];
            for (m, c) in x.terms() {
                row[columns[m]] = c.clone();
            }
            row
        })
        .collect();
    let mut r = 0;
    for col in 0..width {
        let Some(pivot) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, pivot);
        let inv = rows[r][col].inv().unwrap();
        for i in r + 1..rows.len() {
            if rows[i][col].is_zero() {
                continue;
            }
            let factor = &rows[i][col] * &inv;
            for j in col..width {
                let delta = &factor * &rows[r][j];
                rows[i][j] -= &delta;
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}
