use std::collections::BTreeSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::closed::{cycle_bases, shortest_path_into};
use super::sigma::sigma_annihilator;
use super::{require_spi, SpiError};
use crate::graph::{lex_least_path, Graph, Path, VertexId};
use crate::lpa::Element;
use crate::matricial::degree_zero_witness_at_stage;

pub const Z_NOTE: &str = "omitted (exact)";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TraceStep {
    /// `a` was moved to degree zero by `a·α*` (`n > 0`) or `α·a` (`n < 0`).
    Step4 { n: i64, alpha: Path, a: Element },
    /// `x0·Φ_0(a)·y0 = u` from a block entry of degree `h`.
    Step3 { h: usize, x0: Element, y0: Element, u: VertexId },
    /// `σ*(η* a η)σ = r(η)` with `b = η* a η − r(η)` and `σ*bσ = 0`.
    Step2 { eta: Path, sigma: Path, b: Element },
    Normalize { x_terms: usize, y_terms: usize },
}

/// `x·a·y = v`, re-checked when built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub x: Element,
    pub y: Element,
    pub v: VertexId,
    pub trace: Vec<TraceStep>,
}

impl Witness {
    pub fn verify(&self, a: &Element) -> bool {
        match self.x.multiply(a).and_then(|xa| xa.multiply(&self.y)) {
            Ok(p) => p == Element::vertex(a.graph(), self.v),
            Err(_) => false,
        }
    }
}

/// Finds `x, y` with `x·a·y = v` for a vertex `v`, following the reduction
/// degree `n` → degree 0 → a vertex corner.
pub fn spi_witness(a: &Element) -> Result<Witness, SpiError> {
    let g = a.graph();
    if a.is_zero() {
        return Err(SpiError::ZeroElement);
    }
    if !g.is_row_finite() {
        return Err(SpiError::OmegaUnsupported);
    }
    if g.has_sources() {
        return Err(SpiError::HasSources);
    }
    require_spi(g)?;
    let mut trace = Vec::new();
    let mut left: Option<Element> = None;
    let mut right: Option<Element> = None;
    let mut cur = a.clone();

    if cur.phi(0).is_zero() {
        let n = cur
            .degrees()
            .into_iter()
            .min_by_key(|&n| (n.abs(), n))
            .expect("nonzero element");
        let comp = cur.phi(n);
        let w = g
            .vertices_sorted()
            .find(|&w| {
                let wv = Element::vertex(g, w);
                let side = if n > 0 { &comp * &wv } else { &wv * &comp };
                !side.is_zero()
            })
            .expect("some vertex supports a nonzero component");
        let alpha = lex_least_path(g, n.unsigned_abs() as usize, None, &BTreeSet::from([w]))
            .ok_or(SpiError::HasSources)?;
        let ae = Element::path(g, &alpha);
        if n > 0 {
            let ghost = ae.involute();
            cur = &cur * &ghost;
            right = Some(ghost);
        } else {
            cur = &ae * &cur;
            left = Some(ae);
        }
        trace.push(TraceStep::Step4 {
            n,
            alpha,
            a: cur.clone(),
        });
    }

    let a0 = cur.phi(0);
    let d = degree_zero_witness_at_stage(&a0, a0.max_len()).map_err(|e| SpiError::Internal(e.to_string()))?;
    let a2 = &(&d.x * &cur) * &d.y;
    trace.push(TraceStep::Step3 {
        h: d.h,
        x0: d.x.clone(),
        y0: d.y.clone(),
        u: d.v,
    });

    let eta = shortest_path_into(g, d.v, &cycle_bases(g)).ok_or(SpiError::NotSPI)?;
    let w = eta.range();
    let eta_e = Element::path(g, &eta);
    let b = &(&(&eta_e.involute() * &a2) * &eta_e) - &Element::vertex(g, w);
    let sigma = if b.is_zero() {
        Path::vertex(w)
    } else {
        sigma_annihilator(&b, w)?
    };
    let es = Element::path(g, &eta.concat(&sigma).expect("σ starts where η ends"));
    let mut x = &es.involute() * &d.x;
    if let Some(l) = &left {
        x = &x * l;
    }
    let mut y = d.y.clone();
    if let Some(r) = &right {
        y = r * &y;
    }
    y = &y * &es;
    trace.push(TraceStep::Step2 { eta, sigma, b });
    trace.push(TraceStep::Normalize {
        x_terms: x.len(),
        y_terms: y.len(),
    });
    let out = Witness { x, y, v: w, trace };
    if !out.verify(a) {
        return Err(SpiError::Internal("witness failed its exact re-check".into()));
    }
    Ok(out)
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "step", deny_unknown_fields)]
enum StepJson {
    Step4 {
        n: i64,
        alpha: Vec<String>,
        a: Value,
    },
    Step3 {
        h: usize,
        x0: Value,
        y0: Value,
        u: String,
    },
    Step2 {
        eta: Vec<String>,
        eta_src: String,
        sigma: Vec<String>,
        sigma_src: String,
        b: Value,
        z: String,
    },
    Normalize {
        x_terms: usize,
        y_terms: usize,
    },
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WitnessJson {
    x: Value,
    y: Value,
    v: String,
    trace: Vec<StepJson>,
}

impl Witness {
    /// `{"x":<Element>,"y":<Element>,"v":"<vertex>","trace":[{"step":"Step4","n":1,"alpha":["e"],..},..]}`
    pub fn to_json_value(&self) -> Value {
        let g = self.x.graph();
        let trace = self
            .trace
            .iter()
            .map(|s| match s {
                TraceStep::Step4 { n, alpha, a } => StepJson::Step4 {
                    n: *n,
                    alpha: alpha.edge_names(g),
                    a: a.to_json_value(),
                },
                TraceStep::Step3 { h, x0, y0, u } => StepJson::Step3 {
                    h: *h,
                    x0: x0.to_json_value(),
                    y0: y0.to_json_value(),
                    u: g.vertex_name(*u).to_string(),
                },
                TraceStep::Step2 { eta, sigma, b } => StepJson::Step2 {
                    eta: eta.edge_names(g),
                    eta_src: g.vertex_name(eta.source()).to_string(),
                    sigma: sigma.edge_names(g),
                    sigma_src: g.vertex_name(sigma.source()).to_string(),
                    b: b.to_json_value(),
                    z: Z_NOTE.to_string(),
                },
                TraceStep::Normalize { x_terms, y_terms } => StepJson::Normalize {
                    x_terms: *x_terms,
                    y_terms: *y_terms,
                },
            })
            .collect();
        serde_json::to_value(WitnessJson {
            x: self.x.to_json_value(),
            y: self.y.to_json_value(),
            v: g.vertex_name(self.v).to_string(),
            trace,
        })
        .expect("witness json serializes")
    }

    pub fn from_json(g: &Arc<Graph>, text: &str) -> Result<Witness, SpiError> {
        let raw: WitnessJson = serde_json::from_str(text).map_err(|e| SpiError::Json(e.to_string()))?;
        let el = |v: Value| Element::from_json_value(g, v).map_err(|e| SpiError::Json(e.to_string()));
        let vertex = |s: &str| g.require_vertex(s).map_err(|e| SpiError::Json(e.to_string()));
        let path = |edges: &[String], src: Option<&str>| {
            Path::from_names(g, edges, src).map_err(|e| SpiError::Json(e.to_string()))
        };
        let mut trace = Vec::with_capacity(raw.trace.len());
        for s in raw.trace {
            trace.push(match s {
                StepJson::Step4 { n, alpha, a } => TraceStep::Step4 {
                    n,
                    alpha: path(&alpha, None)?,
                    a: el(a)?,
                },
                StepJson::Step3 { h, x0, y0, u } => TraceStep::Step3 {
                    h,
                    x0: el(x0)?,
                    y0: el(y0)?,
                    u: vertex(&u)?,
                },
                StepJson::Step2 {
                    eta,
                    eta_src,
                    sigma,
                    sigma_src,
                    b,
                    ..
                } => TraceStep::Step2 {
                    eta: path(&eta, Some(&eta_src))?,
                    sigma: path(&sigma, Some(&sigma_src))?,
                    b: el(b)?,
                },
                StepJson::Normalize { x_terms, y_terms } => TraceStep::Normalize { x_terms, y_terms },
            });
        }
        Ok(Witness {
            x: el(raw.x)?,
            y: el(raw.y)?,
            v: vertex(&raw.v)?,
            trace,
        })
    }
}
