use std::cmp::Ordering;

use crate::graph::{Graph, Path, VertexId};

/// `αβ*` with `r(α) = r(β)`.
///
/// Ordered by degree, then `α`, then `β`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    alpha: Path,
    beta: Path,
}

impl Monomial {
    /// `None` when the ranges differ.
    pub fn new(alpha: Path, beta: Path) -> Option<Monomial> {
        (alpha.range() == beta.range()).then_some(Monomial { alpha, beta })
    }

    pub fn vertex(v: VertexId) -> Monomial {
        Monomial {
            alpha: Path::vertex(v),
            beta: Path::vertex(v),
        }
    }

    /// The real path `α = α·r(α)*`.
    pub fn path(alpha: Path) -> Monomial {
        let beta = Path::vertex(alpha.range());
        Monomial { alpha, beta }
    }

    /// The ghost path `β*`.
    pub fn ghost(beta: Path) -> Monomial {
        let alpha = Path::vertex(beta.range());
        Monomial { alpha, beta }
    }

    pub fn alpha(&self) -> &Path {
        &self.alpha
    }

    pub fn beta(&self) -> &Path {
        &self.beta
    }

    pub fn into_parts(self) -> (Path, Path) {
        (self.alpha, self.beta)
    }

    pub fn degree(&self) -> i64 {
        self.alpha.len() as i64 - self.beta.len() as i64
    }

    /// `max(|α|, |β|)`.
    pub fn max_len(&self) -> usize {
        self.alpha.len().max(self.beta.len())
    }

    pub fn source(&self) -> VertexId {
        self.alpha.source()
    }

    /// `s(β)`, the right-hand vertex: `αβ* = (αβ*)·s(β)`.
    pub fn right_vertex(&self) -> VertexId {
        self.beta.source()
    }

    pub fn is_vertex(&self) -> bool {
        self.alpha.is_empty() && self.beta.is_empty()
    }

    pub fn adjoint(&self) -> Monomial {
        Monomial {
            alpha: self.beta.clone(),
            beta: self.alpha.clone(),
        }
    }

    /// Product of monomials in the path algebra relations (CK1 only):
    /// `(αβ*)(γδ*)` is `αγ'δ*` if `γ = βγ'`, `α(δβ')*` if `β = γβ'`, else 0.
    pub fn mul(&self, other: &Monomial) -> Option<Monomial> {
        if let Some(rest) = other.alpha.strip_prefix(&self.beta) {
            let alpha = self.alpha.concat(&rest)?;
            return Some(Monomial {
                alpha,
                beta: other.beta.clone(),
            });
        }
        if let Some(rest) = self.beta.strip_prefix(&other.alpha) {
            let beta = other.beta.concat(&rest)?;
            return Some(Monomial {
                alpha: self.alpha.clone(),
                beta,
            });
        }
        None
    }

    /// `α` and `β` both end in the designated edge of its source.
    pub fn is_reducible(&self, g: &Graph) -> bool {
        match (self.alpha.last_edge(), self.beta.last_edge()) {
            (Some(a), Some(b)) => a == b && g.designated_edge(g.source(a)) == Some(a),
            _ => false,
        }
    }

    /// `α` as edge ids joined by `.`, `β*` as `(β)*`; a vertex prints as its id.
    pub fn display(&self, g: &Graph) -> String {
        let word = |p: &Path| p.edge_names(g).join(".");
        match (self.alpha.is_empty(), self.beta.is_empty()) {
            (true, true) => g.vertex_name(self.alpha.source()).to_string(),
            (false, true) => word(&self.alpha),
            (true, false) => format!("({})*", word(&self.beta)),
            (false, false) => format!("{}·({})*", word(&self.alpha), word(&self.beta)),
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Monomial) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.alpha.cmp(&other.alpha))
            .then_with(|| self.beta.cmp(&other.beta))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Monomial) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
