use std::sync::Arc;

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;

use super::{Coeff, Element, Monomial};
use crate::graph::{explicit_paths, Graph, Path};

/// Random elements of `L(E)` built from monomials `αβ*` over explicit edges.
#[derive(Clone, Debug)]
pub struct ElementSampler {
    pub max_terms: usize,
    pub max_len: usize,
    /// Only monomials with `|α| = |β|` (degree zero).
    pub equal_lengths: bool,
    /// Only monomials with `s(α) = s(β)`.
    pub same_source: bool,
    /// Integer coefficients in `[-3, 3]` instead of small fractions.
    pub integer_coefficients: bool,
    pub real_coefficients: bool,
}

impl ElementSampler {
    pub fn new(max_terms: usize, max_len: usize) -> ElementSampler {
        ElementSampler {
            max_terms: max_terms.max(1),
            max_len,
            equal_lengths: false,
            same_source: false,
            integer_coefficients: false,
            real_coefficients: false,
        }
    }

    pub fn equal_lengths(mut self, on: bool) -> Self {
        self.equal_lengths = on;
        self
    }

    pub fn same_source(mut self, on: bool) -> Self {
        self.same_source = on;
        self
    }

    pub fn integer_coefficients(mut self, on: bool) -> Self {
        self.integer_coefficients = on;
        self
    }

    pub fn real_coefficients(mut self, on: bool) -> Self {
        self.real_coefficients = on;
        self
    }

    fn coefficient<R: Rng>(&self, rng: &mut R) -> Coeff {
        let part = |rng: &mut R| {
            if self.integer_coefficients {
                Coeff::from_int(rng.gen_range(-3..=3))
            } else {
                Coeff::from_ratio(rng.gen_range(-4..=4), rng.gen_range(1..=3))
            }
        };
        loop {
            let re = part(rng);
            let c = if self.real_coefficients || rng.gen_bool(0.5) {
                re
            } else {
                &re + &(&part(rng) * &Coeff::i())
            };
            if !c.is_zero() {
                return c;
            }
        }
    }

    /// A random element; may be zero after normalization.
    pub fn sample<R: Rng>(&self, g: &Arc<Graph>, rng: &mut R) -> Element {
        let paths: Vec<Path> = (0..=self.max_len)
            .flat_map(|n| explicit_paths(g, n, None))
            .collect();
        let count = rng.gen_range(1..=self.max_terms);
        let mut terms = Vec::with_capacity(count);
        for _ in 0..count {
            let alpha = paths.choose(rng).expect("a graph has vertices").clone();
            let partners: Vec<&Path> = paths
                .iter()
                .filter(|b| {
                    b.range() == alpha.range()
                        && (!self.equal_lengths || b.len() == alpha.len())
                        && (!self.same_source || b.source() == alpha.source())
                })
                .collect();
            let beta = (*partners.choose(rng).expect("alpha partners itself")).clone();
            terms.push((Monomial::new(alpha, beta).unwrap(), self.coefficient(rng)));
        }
        Element::from_terms(g, terms)
    }

    /// Resamples until the element is nonzero (at most 64 tries).
    pub fn sample_nonzero<R: Rng>(&self, g: &Arc<Graph>, rng: &mut R) -> Option<Element> {
        (0..64).map(|_| self.sample(g, rng)).find(|x| !x.is_zero())
    }
}
