use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::TransformError;
use crate::graph::{EdgeId, Graph, VertexId};
use crate::lpa::{Element, LpaError};

/// A finite subgraph given by vertex and edge ids.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Subgraph {
    pub vertices: Vec<String>,
    pub edges: Vec<String>,
}

impl Subgraph {
    pub fn from_json(text: &str) -> Result<Subgraph, TransformError> {
        serde_json::from_str(text).map_err(|e| TransformError::NotASubgraph(e.to_string()))
    }

    /// The whole of a graph without ω-pairs.
    pub fn full(g: &Graph) -> Subgraph {
        Subgraph {
            vertices: g.vertices().map(|v| g.vertex_name(v).to_string()).collect(),
            edges: g.edges().map(|e| g.edge_name(e).to_string()).collect(),
        }
    }
}

/// The completion `F̃` of a subgraph and the images of its generators in
/// `L(E)`.
#[derive(Clone, Debug)]
pub struct EmbeddingData {
    pub domain: Arc<Graph>,
    pub codomain: Arc<Graph>,
    vertex_images: BTreeMap<VertexId, Element>,
    edge_images: BTreeMap<EdgeId, Element>,
}

impl EmbeddingData {
    pub fn vertex_image(&self, v: VertexId) -> &Element {
        &self.vertex_images[&v]
    }

    pub fn edge_image(&self, e: EdgeId) -> &Element {
        &self.edge_images[&e]
    }

    /// Extends the generator images multiplicatively: `αβ* ↦ ι(α)ι(β)*`.
    pub fn image_of(&self, x: &Element) -> Result<Element, LpaError> {
        if *x.graph() != self.domain {
            return Err(LpaError::GraphMismatch);
        }
        let mut out = Element::zero(&self.codomain);
        for (m, c) in x.terms() {
            let path_image = |p: &crate::graph::Path| -> Result<Element, LpaError> {
                let mut acc = self.vertex_images[&p.source()].clone();
                for &e in p.edges() {
                    acc = acc.multiply(&self.edge_images[&e])?;
                }
                Ok(acc)
            };
            let a = path_image(m.alpha())?;
            let b = path_image(m.beta())?.involute();
            out = out.try_add(&a.multiply(&b)?.scale(c))?;
        }
        Ok(out)
    }

    /// Checks every relation of `L(F̃)` on the images; the first failure is
    /// described in the error.
    pub fn verify(&self) -> Result<(), String> {
        let d = &self.domain;
        let zero = Element::zero(&self.codomain);
        for (&v, p) in &self.vertex_images {
            for (&w, q) in &self.vertex_images {
                let expect = if v == w { p } else { &zero };
                if &(p * q) != expect {
                    return Err(format!("vertex images of {} and {}", d.vertex_name(v), d.vertex_name(w)));
                }
            }
        }
        for (&e, x) in &self.edge_images {
            let s = &self.vertex_images[&d.source(e)];
            let r = &self.vertex_images[&d.range(e)];
            if &(s * x) != x || &(x * r) != x {
                return Err(format!("endpoints of {}", d.edge_name(e)));
            }
            for (&f, y) in &self.edge_images {
                let expect = if e == f { r } else { &zero };
                if &(&x.involute() * y) != expect {
                    return Err(format!("{}*{} relation", d.edge_name(e), d.edge_name(f)));
                }
            }
        }
        for v in d.vertices_sorted().filter(|&v| d.is_regular(v)) {
            let mut sum = zero.clone();
            for &e in d.out_edges(v) {
                let x = &self.edge_images[&e];
                sum = &sum + &(x * &x.involute());
            }
            if &sum != &self.vertex_images[&v] {
                return Err(format!("CK2 at {}", d.vertex_name(v)));
            }
        }
        Ok(())
    }

    /// `{"domain":<graph>,"vertex_images":[{"id","image"}],"edge_images":[{"id","image"}]}`
    pub fn to_json_value(&self) -> Value {
        let d = &self.domain;
        let graph: Value = serde_json::from_str(&d.to_json()).expect("graph json");
        let vertices: Vec<Value> = d
            .vertices()
            .map(|v| json!({"id": d.vertex_name(v), "image": self.vertex_images[&v].to_json_value()}))
            .collect();
        let edges: Vec<Value> = d
            .edges()
            .map(|e| json!({"id": d.edge_name(e), "image": self.edge_images[&e].to_json_value()}))
            .collect();
        json!({"domain": graph, "vertex_images": vertices, "edge_images": edges})
    }
}

/// Builds `F̃` with `Y^F = {v ∈ F^0 regular in F : s_F⁻¹(v) ⊊ s_E⁻¹(v)}` and
/// `ι(v) = m_v` (`v ∈ Y^F`) or `v`, `ι(v') = q_v = v − m_v`,
/// `ι(e) = e·ι(r(e))`, `ι(e') = e·q_{r(e)}`, where `m_v = Σ_{e∈F, s(e)=v} ee*`.
pub fn complete_and_embed(g: &Arc<Graph>, f: &Subgraph) -> Result<EmbeddingData, TransformError> {
    let mut fv: Vec<VertexId> = Vec::new();
    for name in &f.vertices {
        let v = g
            .vertex(name)
            .ok_or_else(|| TransformError::NotASubgraph(format!("unknown vertex `{name}`")))?;
        if fv.contains(&v) {
            return Err(TransformError::NotASubgraph(format!("vertex `{name}` listed twice")));
        }
        fv.push(v);
    }
    let fv_set: BTreeSet<VertexId> = fv.iter().copied().collect();
    let mut fe: Vec<EdgeId> = Vec::new();
    for name in &f.edges {
        let e = g
            .edge(name)
            .ok_or_else(|| TransformError::NotASubgraph(format!("unknown edge `{name}`")))?;
        if fe.contains(&e) {
            return Err(TransformError::NotASubgraph(format!("edge `{name}` listed twice")));
        }
        if !fv_set.contains(&g.source(e)) || !fv_set.contains(&g.range(e)) {
            return Err(TransformError::NotASubgraph(format!(
                "edge `{name}` has an endpoint outside the subgraph"
            )));
        }
        fe.push(e);
    }
    let out_f = |v: VertexId| fe.iter().copied().filter(move |&e| g.source(e) == v);
    let y: BTreeSet<VertexId> = fv
        .iter()
        .copied()
        .filter(|&v| {
            let k = out_f(v).count();
            k > 0 && (g.is_infinite_emitter(v) || k < g.out_edges(v).len())
        })
        .collect();

    let mut taken: HashSet<String> = g
        .vertices()
        .map(|v| g.vertex_name(v).to_string())
        .chain(g.edges().map(|e| g.edge_name(e).to_string()))
        .collect();
    let mut prime = |base: &str| {
        let mut name = format!("{base}'");
        while taken.contains(&name) {
            name.push('\'');
        }
        taken.insert(name.clone());
        name
    };
    let vname = |v: VertexId| g.vertex_name(v).to_string();
    let ename = |e: EdgeId| g.edge_name(e).to_string();

    let mut vertices: Vec<String> = fv.iter().map(|&v| vname(v)).collect();
    let mut vprime: BTreeMap<VertexId, String> = BTreeMap::new();
    for &v in &fv {
        if y.contains(&v) {
            let p = prime(&vname(v));
            vertices.push(p.clone());
            vprime.insert(v, p);
        }
    }
    let mut edges: Vec<(String, String, String)> = fe
        .iter()
        .map(|&e| (ename(e), vname(g.source(e)), vname(g.range(e))))
        .collect();
    let mut eprime: Vec<(EdgeId, String)> = Vec::new();
    for &e in &fe {
        if let Some(rp) = vprime.get(&g.range(e)) {
            let p = prime(&ename(e));
            edges.push((p.clone(), vname(g.source(e)), rp.clone()));
            eprime.push((e, p));
        }
    }
    let domain = Arc::new(Graph::from_parts(vertices, edges, Vec::new(), Vec::new())?);

    let m: BTreeMap<VertexId, Element> = y
        .iter()
        .map(|&v| {
            let mut acc = Element::zero(g);
            for e in out_f(v) {
                let x = Element::path(g, &crate::graph::Path::edge(g, e));
                acc = &acc + &(&x * &x.involute());
            }
            (v, acc)
        })
        .collect();
    let q = |v: VertexId| &Element::vertex(g, v) - &m[&v];
    let iota_v = |v: VertexId| m.get(&v).cloned().unwrap_or_else(|| Element::vertex(g, v));

    let mut vertex_images = BTreeMap::new();
    for &v in &fv {
        vertex_images.insert(domain.vertex(&vname(v)).unwrap(), iota_v(v));
    }
    for (&v, p) in &vprime {
        vertex_images.insert(domain.vertex(p).unwrap(), q(v));
    }
    let mut edge_images = BTreeMap::new();
    for &e in &fe {
        let x = Element::path(g, &crate::graph::Path::edge(g, e));
        edge_images.insert(domain.edge(&ename(e)).unwrap(), &x * &iota_v(g.range(e)));
    }
    for (e, p) in &eprime {
        let x = Element::path(g, &crate::graph::Path::edge(g, *e));
        edge_images.insert(domain.edge(p).unwrap(), &x * &q(g.range(*e)));
    }
    let data = EmbeddingData {
        domain,
        codomain: Arc::clone(g),
        vertex_images,
        edge_images,
    };
    data.verify().map_err(TransformError::RelationFailed)?;
    Ok(data)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Path;

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
    fn r2_with_one_loop() {
        let g = r2();
        let f = Subgraph {
            vertices: vec!["v".into()],
            edges: vec!["e".into()],
        };
        let emb = complete_and_embed(&g, &f).unwrap();
        let d = &emb.domain;
        assert_eq!(d.vertex_count(), 2);
        assert_eq!(d.edge_count(), 2);
        let e = Element::path(&g, &Path::from_names(&g, &["e"], None).unwrap());
        let fp = Element::path(&g, &Path::from_names(&g, &["f"], None).unwrap());
        let ee = &e * &e.involute();
        let ff = &fp * &fp.involute();
        let v = d.vertex("v").unwrap();
        let v1 = d.vertex("v'").unwrap();
        assert_eq!(*emb.vertex_image(v), ee);
        assert_eq!(*emb.vertex_image(v1), ff);
        assert!((emb.vertex_image(v1) * emb.vertex_image(v)).is_zero());
        assert_eq!(*emb.edge_image(d.edge("e").unwrap()), &e * &ee);
        assert_eq!(*emb.edge_image(d.edge("e'").unwrap()), &e * &ff);
    }

    #[test]
    fn full_subgraph_is_identity() {
        let g = r2();
        let emb = complete_and_embed(&g, &Subgraph::full(&g)).unwrap();
        assert_eq!(*emb.domain, *g);
        let e = Element::path(&g, &Path::from_names(&g, &["e"], None).unwrap());
        let de = Element::path(&emb.domain, &Path::from_names(&emb.domain, &["e"], None).unwrap());
        assert_eq!(emb.image_of(&de).unwrap(), e);
    }

    #[test]
    fn malformed_subgraphs() {
        let g = Arc::new(
            Graph::builder()
                .vertices(["u", "v"])
                .edge("e", "u", "v")
                .build()
                .unwrap(),
        );
        let bad = Subgraph {
            vertices: vec!["u".into()],
            edges: vec!["e".into()],
        };
        assert!(matches!(complete_and_embed(&g, &bad), Err(TransformError::NotASubgraph(_))));
        let unknown = Subgraph {
            vertices: vec!["w".into()],
            edges: vec![],
        };
        assert!(matches!(complete_and_embed(&g, &unknown), Err(TransformError::NotASubgraph(_))));
    }
}
