use std::collections::BTreeMap;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Coeff, Monomial};
use crate::graph::Graph;

/// Order in which CK2 rewrites are applied. Every strategy reaches the same
/// normal form; the choice only matters for testing confluence.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum RewriteStrategy {
    /// Reduce each term fully, innermost edge first.
    #[default]
    LeftmostInnermost,
    /// Rewrite a uniformly chosen reducible term at each step.
    Random { seed: u64 },
}

pub(crate) fn add_term(map: &mut BTreeMap<Monomial, Coeff>, m: Monomial, c: &Coeff) {
    if c.is_zero() {
        return;
    }
    match map.get_mut(&m) {
        Some(slot) => {
            *slot += c;
            if slot.is_zero() {
                map.remove(&m);
            }
        }
        None => {
            map.insert(m, c.clone());
        }
    }
}

/// One CK2 step on a reducible `(α'g)(β'g)*`: pushes `α'β'*` with `c` and
/// `(α'h)(β'h)*` with `-c` for the other edges `h` out of `s(g)`.
fn rewrite_once(g: &Graph, m: Monomial, c: &Coeff, mut emit: impl FnMut(Monomial, Coeff)) {
    let (alpha, beta) = m.into_parts();
    let last = alpha.last_edge().expect("reducible term has an edge");
    let a = alpha.pop(g).unwrap();
    let b = beta.pop(g).unwrap();
    let neg = -c;
    for &h in g.out_edges(g.source(last)) {
        if h != last {
            let m = Monomial::new(a.push(g, h).unwrap(), b.push(g, h).unwrap()).unwrap();
            emit(m, neg.clone());
        }
    }
    emit(Monomial::new(a, b).unwrap(), c.clone());
}

fn reduce_into(g: &Graph, m: Monomial, c: &Coeff, out: &mut BTreeMap<Monomial, Coeff>) {
    if !m.is_reducible(g) {
        add_term(out, m, c);
        return;
    }
    // only the shortened term can be reducible again
    let mut shortened = None;
    rewrite_once(g, m, c, |m, c| {
        if m.is_reducible(g) {
            shortened = Some((m, c));
        } else {
            add_term(out, m, &c);
        }
    });
    if let Some((m, c)) = shortened {
        reduce_into(g, m, &c, out);
    }
}

/// Combines like terms and rewrites to the normal form of `g`.
pub fn normalize_terms(
    g: &Graph,
    terms: impl IntoIterator<Item = (Monomial, Coeff)>,
    strategy: RewriteStrategy,
) -> BTreeMap<Monomial, Coeff> {
    match strategy {
        RewriteStrategy::LeftmostInnermost => {
            let mut out = BTreeMap::new();
            for (m, c) in terms {
                reduce_into(g, m, &c, &mut out);
            }
            out
        }
        RewriteStrategy::Random { seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut cur = BTreeMap::new();
            for (m, c) in terms {
                add_term(&mut cur, m, &c);
            }
            loop {
                let reducible: Vec<&Monomial> = cur.keys().filter(|m| m.is_reducible(g)).collect();
                if reducible.is_empty() {
                    return cur;
                }
                let pick = reducible[rng.gen_range(0..reducible.len())].clone();
                let c = cur.remove(&pick).unwrap();
                let mut emitted = Vec::new();
                rewrite_once(g, pick, &c, |m, c| emitted.push((m, c)));
                for (m, c) in emitted {
                    add_term(&mut cur, m, &c);
                }
            }
        }
    }
}
