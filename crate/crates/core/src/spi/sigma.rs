use super::closed::{closed_paths_at, incomparable_pair};
use super::{require_spi, SpiError};
use crate::graph::{Path, VertexId};
use crate::lpa::Element;

fn annihilates(b: &Element, sigma: &Path) -> bool {
    let g = b.graph();
    let s = Element::path(g, sigma);
    (&(&s.involute() * b) * &s).is_zero()
}

/// A closed path `σ` at `v` with `σ*bσ = 0`, for `b` with `Φ_0(b) = 0`.
///
/// Closed paths at `v` of length up to `|α| + |β|` are tried first, in
/// length-then-lexicographic order; then the prefixes of
/// `θ = α β α² β α³ β …` ending at a word boundary, up to length
/// `(maxlen(b) + 2)·(|α| + |β|)·4`.
pub fn sigma_annihilator(b: &Element, v: VertexId) -> Result<Path, SpiError> {
    let g = b.graph();
    require_spi(g)?;
    if !b.phi(0).is_zero() {
        return Err(SpiError::NotDegreeFree);
    }
    let (alpha, beta) = incomparable_pair(g, v)?;
    let period = alpha.len() + beta.len();
    for n in 1..=period {
        if let Some(sigma) = closed_paths_at(g, v, n).into_iter().find(|s| annihilates(b, s)) {
            return Ok(sigma);
        }
    }
    let cap = (b.max_len() + 2) * period * 4;
    let mut theta = Path::vertex(v);
    let mut k = 1;
    loop {
        for word in std::iter::repeat(&alpha).take(k).chain(std::iter::once(&beta)) {
            theta = theta.concat(word).unwrap();
            if theta.len() > cap {
                return Err(SpiError::SearchExhausted { cap });
            }
            if annihilates(b, &theta) {
                return Ok(theta);
            }
        }
        k += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use std::sync::Arc;

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

    #[test]
    fn examples() {
        let g = r2();
        let v = g.vertex("v").unwrap();
        let e = Element::path(&g, &Path::from_names(&g, &["e"], None).unwrap());
        let word = |p: Path| p.edge_names(&g).concat();
        assert_eq!(word(sigma_annihilator(&e, v).unwrap()), "f");
        let both = &e + &e.involute();
        assert_eq!(word(sigma_annihilator(&both, v).unwrap()), "f");
        assert_eq!(word(sigma_annihilator(&Element::zero(&g), v).unwrap()), "e");
        assert_eq!(sigma_annihilator(&Element::unit(&g), v), Err(SpiError::NotDegreeFree));
    }

    #[test]
    fn annihilator_for_mixed_degrees() {
        let g = r2();
        let v = g.vertex("v").unwrap();
        let p = |n: &[&str]| Element::path(&g, &Path::from_names(&g, n, None).unwrap());
        let b = &(&(&p(&["e"]) + &p(&["f"])) + &(&p(&["e"]).involute() + &p(&["f"]).involute()))
            + &(&p(&["e", "e"]) + &p(&["f", "f"]));
        let sigma = sigma_annihilator(&b, v).unwrap();
        let s = Element::path(&g, &sigma);
        assert!((&(&s.involute() * &b) * &s).is_zero());
    }
}
