use super::{stage_entries, MatricialError};
use crate::graph::VertexId;
use crate::lpa::{Element, Monomial};

/// `x·a·y = v` with `x = λ⁻¹α*` of degree `-h` and `y = β` of degree `h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeZeroWitness {
    pub x: Element,
    pub y: Element,
    pub v: VertexId,
    pub h: usize,
}

/// Witness at stage `max(1, longest term)`.
pub fn degree_zero_witness(a: &Element) -> Result<DegreeZeroWitness, MatricialError> {
    degree_zero_witness_at_stage(a, a.max_len().max(1))
}

/// Reads the first nonzero entry `λ` at `(α, β)` of the stage-`n`
/// decomposition, scanning blocks in key order and entries row-major.
/// Only the nonzero entries are materialized.
pub fn degree_zero_witness_at_stage(a: &Element, n: usize) -> Result<DegreeZeroWitness, MatricialError> {
    if a.is_zero() {
        return Err(MatricialError::ZeroElement);
    }
    let entries = stage_entries(a, n)?;
    let g = a.graph();
    let ((_, alpha, beta), lambda) = entries
        .into_iter()
        .next()
        .expect("a nonzero element has a nonzero block entry");
    let inv = lambda.inv().expect("nonzero entry");
    let x = Element::monomial(g, Monomial::ghost(alpha.clone()), inv);
    let y = Element::path(g, &beta);
    let v = alpha.range();
    debug_assert_eq!(&(&x * a) * &y, Element::vertex(g, v));
    Ok(DegreeZeroWitness {
        x,
        y,
        v,
        h: alpha.len(),
    })
}
