use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::{Classification, ClassificationWitness, Graph, GraphError};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphJson {
    vertices: Vec<VertexJson>,
    edges: Vec<EdgeJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    omega: Vec<OmegaJson>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum VertexJson {
    Plain(String),
    Flagged {
        id: String,
        #[serde(default)]
        frontier: bool,
    },
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeJson {
    id: String,
    src: String,
    dst: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct OmegaJson {
    src: String,
    dst: String,
}

impl Graph {
    /// Parses `{"vertices":[..],"edges":[{"id","src","dst"}..],"omega":[{"src","dst"}..]}`.
    /// A vertex may be written `{"id":"v","frontier":true}` to carry the
    /// truncation flag.
    pub fn from_json(text: &str) -> Result<Graph, GraphError> {
        let raw: GraphJson =
            serde_json::from_str(text).map_err(|e| GraphError::Json(e.to_string()))?;
        let mut vertices = Vec::with_capacity(raw.vertices.len());
        let mut frontier = Vec::new();
        for v in raw.vertices {
            match v {
                VertexJson::Plain(id) => vertices.push(id),
                VertexJson::Flagged { id, frontier: flag } => {
                    if flag {
                        frontier.push(id.clone());
                    }
                    vertices.push(id);
                }
            }
        }
        Graph::from_parts(
            vertices,
            raw.edges.into_iter().map(|e| (e.id, e.src, e.dst)).collect(),
            raw.omega.into_iter().map(|o| (o.src, o.dst)).collect(),
            frontier,
        )
    }

    /// Compact JSON, vertices and edges in input order.
    pub fn to_json(&self) -> String {
        let raw = GraphJson {
            vertices: self
                .vertices()
                .map(|v| {
                    let id = self.vertex_name(v).to_string();
                    if self.is_frontier(v) {
                        VertexJson::Flagged { id, frontier: true }
                    } else {
                        VertexJson::Plain(id)
                    }
                })
                .collect(),
            edges: self
                .edges()
                .map(|e| EdgeJson {
                    id: self.edge_name(e).to_string(),
                    src: self.vertex_name(self.source(e)).to_string(),
                    dst: self.vertex_name(self.range(e)).to_string(),
                })
                .collect(),
            omega: self
                .omega_pairs()
                .iter()
                .map(|&(s, d)| OmegaJson {
                    src: self.vertex_name(s).to_string(),
                    dst: self.vertex_name(d).to_string(),
                })
                .collect(),
        };
        serde_json::to_string(&raw).expect("graph json serializes")
    }
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Graphviz rendering; edges are labelled by id, ω-pairs by `ω`.
pub fn to_dot(g: &Graph) -> String {
    let mut out = String::from("digraph E {\n");
    for v in g.vertices() {
        let name = quote(g.vertex_name(v));
        if g.is_frontier(v) {
            let _ = writeln!(out, "  {name} [shape=doublecircle];");
        } else {
            let _ = writeln!(out, "  {name};");
        }
    }
    for e in g.edges() {
        let _ = writeln!(
            out,
            "  {} -> {} [label={}];",
            quote(g.vertex_name(g.source(e))),
            quote(g.vertex_name(g.range(e))),
            quote(g.edge_name(e))
        );
    }
    for &(s, d) in g.omega_pairs() {
        let _ = writeln!(
            out,
            "  {} -> {} [label=\"ω\", style=bold];",
            quote(g.vertex_name(s)),
            quote(g.vertex_name(d))
        );
    }
    out.push_str("}\n");
    out
}

impl Classification {
    pub fn to_json_value(&self, g: &Graph) -> Value {
        let witness = match &self.witness {
            ClassificationWitness::CycleWithoutExit(p) => {
                json!({"cycle_without_exit": p.edge_names(g)})
            }
            ClassificationWitness::HereditarySaturated(h) => {
                json!({"hereditary_saturated": g.vertex_names(h.iter().copied())})
            }
            ClassificationWitness::Cycle(c) => json!({"cycle": c.step_names(g)}),
            ClassificationWitness::Acyclic => json!("acyclic"),
        };
        json!({"verdict": self.verdict.as_str(), "witness": witness})
    }
}
