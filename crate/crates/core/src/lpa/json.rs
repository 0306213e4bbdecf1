use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{Coeff, Element, LpaError, Monomial};
use crate::graph::{Graph, Path};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermJson {
    alpha: Vec<String>,
    alpha_src: String,
    beta: Vec<String>,
    beta_src: String,
    re: String,
    im: String,
}

impl Element {
    /// `[{"alpha":[..],"alpha_src":..,"beta":[..],"beta_src":..,"re":"p/q","im":"r/s"}, ..]`
    /// in normal-form term order.
    pub fn to_json_value(&self) -> Value {
        let g = self.graph();
        let terms: Vec<TermJson> = self
            .terms()
            .map(|(m, c)| {
                let (re, im) = c.to_strings();
                TermJson {
                    alpha: m.alpha().edge_names(g),
                    alpha_src: g.vertex_name(m.alpha().source()).to_string(),
                    beta: m.beta().edge_names(g),
                    beta_src: g.vertex_name(m.beta().source()).to_string(),
                    re,
                    im,
                }
            })
            .collect();
        serde_json::to_value(terms).expect("element json serializes")
    }

    pub fn to_json(&self) -> String {
        self.to_json_value().to_string()
    }

    /// Parses a term list; terms need not be normalized or combined.
    pub fn from_json(g: &Arc<Graph>, text: &str) -> Result<Element, LpaError> {
        let v: Value = serde_json::from_str(text).map_err(|e| LpaError::Json(e.to_string()))?;
        Element::from_json_value(g, v)
    }

    pub fn from_json_value(g: &Arc<Graph>, v: Value) -> Result<Element, LpaError> {
        let raw: Vec<TermJson> = serde_json::from_value(v).map_err(|e| LpaError::Json(e.to_string()))?;
        let mut terms = Vec::with_capacity(raw.len());
        for t in raw {
            let alpha = Path::from_names(g, &t.alpha, Some(&t.alpha_src))?;
            let beta = Path::from_names(g, &t.beta, Some(&t.beta_src))?;
            let (a_end, b_end) = (alpha.range(), beta.range());
            let m = Monomial::new(alpha, beta).ok_or_else(|| LpaError::RangeMismatch {
                alpha: g.vertex_name(a_end).to_string(),
                beta: g.vertex_name(b_end).to_string(),
            })?;
            let c = Coeff::parse(&t.re, &t.im).map_err(LpaError::Coefficient)?;
            terms.push((m, c));
        }
        Ok(Element::from_terms(g, terms))
    }
}
