use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::normalize::{add_term, normalize_terms, RewriteStrategy};
use super::{Coeff, LpaError, Monomial};
use crate::graph::{enumerate_paths, Graph, Path, VertexId};

/// An element of `L(E)` over the Gaussian rationals, stored in normal form.
#[derive(Clone, Debug)]
pub struct Element {
    graph: Arc<Graph>,
    terms: BTreeMap<Monomial, Coeff>,
}

impl Element {
    pub fn zero(g: &Arc<Graph>) -> Element {
        Element {
            graph: Arc::clone(g),
            terms: BTreeMap::new(),
        }
    }

    /// Normalizes an arbitrary linear combination of monomials of `g`.
    pub fn from_terms(g: &Arc<Graph>, terms: impl IntoIterator<Item = (Monomial, Coeff)>) -> Element {
        Element::from_terms_with(g, terms, RewriteStrategy::default())
    }

    pub fn from_terms_with(
        g: &Arc<Graph>,
        terms: impl IntoIterator<Item = (Monomial, Coeff)>,
        strategy: RewriteStrategy,
    ) -> Element {
        Element {
            graph: Arc::clone(g),
            terms: normalize_terms(g, terms, strategy),
        }
    }

    pub fn monomial(g: &Arc<Graph>, m: Monomial, c: Coeff) -> Element {
        Element::from_terms(g, [(m, c)])
    }

    pub fn vertex(g: &Arc<Graph>, v: VertexId) -> Element {
        Element::monomial(g, Monomial::vertex(v), Coeff::one())
    }

    pub fn path(g: &Arc<Graph>, p: &Path) -> Element {
        Element::monomial(g, Monomial::path(p.clone()), Coeff::one())
    }

    pub fn ghost(g: &Arc<Graph>, p: &Path) -> Element {
        Element::monomial(g, Monomial::ghost(p.clone()), Coeff::one())
    }

    /// `Σ_{v ∈ vs} v`.
    pub fn vertex_sum(g: &Arc<Graph>, vs: impl IntoIterator<Item = VertexId>) -> Element {
        let terms: BTreeMap<Monomial, Coeff> = vs
            .into_iter()
            .map(|v| (Monomial::vertex(v), Coeff::one()))
            .collect();
        Element {
            graph: Arc::clone(g),
            terms,
        }
    }

    /// The unit `Σ_v v`.
    pub fn unit(g: &Arc<Graph>) -> Element {
        Element::vertex_sum(g, g.vertices_sorted())
    }

    pub fn graph(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, Coeff> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Coeff {
        self.terms.get(m).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn same_graph(&self, other: &Element) -> bool {
        Arc::ptr_eq(&self.graph, &other.graph) || *self.graph == *other.graph
    }

    fn check(&self, other: &Element) -> Result<(), LpaError> {
        if self.same_graph(other) {
            Ok(())
        } else {
            Err(LpaError::GraphMismatch)
        }
    }

    pub fn try_add(&self, other: &Element) -> Result<Element, LpaError> {
        self.check(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            add_term(&mut terms, m.clone(), c);
        }
        Ok(Element {
            graph: Arc::clone(&self.graph),
            terms,
        })
    }

    pub fn try_sub(&self, other: &Element) -> Result<Element, LpaError> {
        self.try_add(&-other)
    }

    /// Product followed by normalization.
    pub fn multiply(&self, other: &Element) -> Result<Element, LpaError> {
        self.multiply_with(other, RewriteStrategy::default())
    }

    pub fn multiply_with(&self, other: &Element, strategy: RewriteStrategy) -> Result<Element, LpaError> {
        self.check(other)?;
        let mut raw = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                if let Some(m) = m1.mul(m2) {
                    add_term(&mut raw, m, &(c1 * c2));
                }
            }
        }
        Ok(Element {
            graph: Arc::clone(&self.graph),
            terms: normalize_terms(&self.graph, raw, strategy),
        })
    }

    pub fn scale(&self, c: &Coeff) -> Element {
        if c.is_zero() {
            return Element::zero(&self.graph);
        }
        Element {
            graph: Arc::clone(&self.graph),
            terms: self.terms.iter().map(|(m, d)| (m.clone(), c * d)).collect(),
        }
    }

    /// The involution `(λαβ*)* = λ̄βα*`. Normal forms are preserved.
    pub fn involute(&self) -> Element {
        Element {
            graph: Arc::clone(&self.graph),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.adjoint(), c.conj()))
                .collect(),
        }
    }

    /// The homogeneous component of degree `n`.
    pub fn phi(&self, n: i64) -> Element {
        Element {
            graph: Arc::clone(&self.graph),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == n)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// `ψ_r(a) = Σ_{γ ∈ P_r} γ a γ*`.
    pub fn psi(&self, r: usize) -> Result<Element, LpaError> {
        let g = &self.graph;
        let paths = enumerate_paths(g, r, None)?;
        let mut by_range: BTreeMap<VertexId, Vec<&Path>> = BTreeMap::new();
        for p in &paths {
            by_range.entry(p.range()).or_default().push(p);
        }
        let mut raw = BTreeMap::new();
        for (m, c) in &self.terms {
            if m.source() != m.right_vertex() {
                continue;
            }
            for gamma in by_range.get(&m.source()).into_iter().flatten() {
                let a = gamma.concat(m.alpha()).unwrap();
                let b = gamma.concat(m.beta()).unwrap();
                add_term(&mut raw, Monomial::new(a, b).unwrap(), c);
            }
        }
        Ok(Element {
            graph: Arc::clone(g),
            terms: normalize_terms(g, raw, RewriteStrategy::default()),
        })
    }

    pub fn degrees(&self) -> BTreeSet<i64> {
        self.terms.keys().map(Monomial::degree).collect()
    }

    /// Largest `max(|α|, |β|)` over the terms; 0 for the zero element.
    pub fn max_len(&self) -> usize {
        self.terms.keys().map(Monomial::max_len).max().unwrap_or(0)
    }

    /// Largest `|α|` and `|β|` separately.
    pub fn max_lens(&self) -> (usize, usize) {
        self.terms.keys().fold((0, 0), |(a, b), m| {
            (a.max(m.alpha().len()), b.max(m.beta().len()))
        })
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degrees().len() <= 1
    }

    pub fn display(&self) -> String {
        self.to_string()
    }
}

impl PartialEq for Element {
    fn eq(&self, other: &Element) -> bool {
        self.same_graph(other) && self.terms == other.terms
    }
}

impl Eq for Element {}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        self.try_add(rhs).expect("elements of the same algebra")
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        self.try_sub(rhs).expect("elements of the same algebra")
    }
}

impl Mul for &Element {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        self.multiply(rhs).expect("elements of the same algebra")
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element {
            graph: Arc::clone(&self.graph),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let minus_one = -Coeff::one();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            let mono = m.display(&self.graph);
            if c.is_one() {
                f.write_str(&mono)?;
            } else if *c == minus_one {
                write!(f, "-{mono}")?;
            } else {
                write!(f, "{c}·{mono}")?;
            }
        }
        Ok(())
    }
}
