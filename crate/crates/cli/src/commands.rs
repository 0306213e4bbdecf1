use std::fs;
use std::path::Path as FsPath;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use leavitt_lab::graph::{classify_graph, to_dot, ClassificationWitness, Graph, GraphError, Verdict};
use leavitt_lab::lpa::{Element, ElementSampler, LpaError};
use leavitt_lab::pnorm::{element_norm_acyclic_with, EstimatorOptions, PnormError};
use leavitt_lab::spi::{spi_witness, SpiError, Witness};
use leavitt_lab::transforms::{
    complete_and_embed, desingularize, reachable_subgraph, remove_sources, Subgraph, TransformError,
};

use crate::{Cli, Command, Format, TransformOp};

pub const EXIT_IO: u8 = 1;
pub const EXIT_PARSE: u8 = 2;
pub const EXIT_EMPTY: u8 = 3;
pub const EXIT_PRECONDITION: u8 = 4;
pub const EXIT_ZERO: u8 = 5;
pub const EXIT_SOURCES: u8 = 6;
pub const EXIT_DESINGULARIZE: u8 = 7;
pub const EXIT_SUBGRAPH: u8 = 8;
pub const EXIT_NORM: u8 = 9;
pub const EXIT_INTERNAL: u8 = 10;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
    pub hint: Option<String>,
}

impl CliError {
    fn new(code: u8, message: impl Into<String>) -> Self {
        CliError {
            code,
            message: message.into(),
            hint: None,
        }
    }

    fn hint(mut self, h: &str) -> Self {
        self.hint = Some(h.to_string());
        self
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::EmptyGraph => CliError::new(EXIT_EMPTY, e.to_string()),
            _ => CliError::new(EXIT_PARSE, e.to_string()),
        }
    }
}

impl From<LpaError> for CliError {
    fn from(e: LpaError) -> Self {
        CliError::new(EXIT_PARSE, e.to_string())
    }
}

impl From<SpiError> for CliError {
    fn from(e: SpiError) -> Self {
        let msg = e.to_string();
        match e {
            SpiError::ZeroElement => CliError::new(EXIT_ZERO, msg),
            SpiError::HasSources => CliError::new(EXIT_PRECONDITION, msg)
                .hint("run `leavitt-lab transform remove-sources` and use the resulting graph"),
            SpiError::OmegaUnsupported => CliError::new(EXIT_PRECONDITION, msg)
                .hint("run `leavitt-lab transform desingularize` and use the resulting graph"),
            SpiError::NotSPI => CliError::new(EXIT_PRECONDITION, msg)
                .hint("witnesses exist only for simple purely infinite graphs; check with `leavitt-lab classify`"),
            SpiError::Graph(g) => g.into(),
            _ => CliError::new(EXIT_INTERNAL, msg),
        }
    }
}

impl From<TransformError> for CliError {
    fn from(e: TransformError) -> Self {
        let msg = e.to_string();
        match e {
            TransformError::BecameEmpty => CliError::new(EXIT_SOURCES, msg),
            TransformError::NoInfiniteEmitters | TransformError::InvalidDepth => CliError::new(EXIT_DESINGULARIZE, msg),
            TransformError::Graph(g) => g.into(),
            _ => CliError::new(EXIT_SUBGRAPH, msg),
        }
    }
}

impl From<PnormError> for CliError {
    fn from(e: PnormError) -> Self {
        CliError::new(EXIT_NORM, e.to_string())
    }
}

fn read(path: &FsPath) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::new(EXIT_IO, format!("{}: {e}", path.display())))
}

fn load_graph(cli: &Cli) -> Result<Arc<Graph>, CliError> {
    let path = cli
        .graph
        .as_deref()
        .ok_or_else(|| CliError::new(EXIT_PARSE, "missing --graph FILE"))?;
    let g = Graph::from_json(&read(path)?)?;
    if g.is_empty() {
        return Err(GraphError::EmptyGraph.into());
    }
    Ok(Arc::new(g))
}

fn load_element(g: &Arc<Graph>, path: &FsPath) -> Result<Element, CliError> {
    Ok(Element::from_json(g, &read(path)?)?)
}

pub fn run(cli: &Cli) -> Result<String, CliError> {
    let g = load_graph(cli)?;
    match &cli.command {
        Command::Classify => classify(cli, &g),
        Command::Witness { element, random } => match (element, random) {
            (Some(path), _) => witness_one(cli, &load_element(&g, path)?),
            (None, Some(n)) => witness_random(cli, &g, *n),
            (None, None) => Err(CliError::new(EXIT_PARSE, "give --element FILE or --random N")),
        },
        Command::Normalize { element } => {
            let x = load_element(&g, element)?;
            Ok(match cli.format {
                Format::Text => x.display(),
                _ => x.to_json(),
            })
        }
        Command::Norm { element } => norm(cli, &load_element(&g, element)?),
        Command::Transform { op } => transform(cli, &g, op),
    }
}

fn label(v: Verdict) -> &'static str {
    match v {
        Verdict::NotSimple => "not simple",
        Verdict::SimpleAcyclic => "simple, almost finite (acyclic)",
        Verdict::SimplePurelyInfinite => "simple purely infinite",
    }
}

fn classify(cli: &Cli, g: &Graph) -> Result<String, CliError> {
    let c = classify_graph(g)?;
    let summary = match (&c.verdict, &c.witness) {
        (Verdict::SimplePurelyInfinite, _) => {
            "E: SPI ⇒ L(E) SPI ⇒ O^p(E) SPI (simple purely infinite)".to_string()
        }
        (Verdict::SimpleAcyclic, _) => "simple, almost finite (acyclic); O^p(E) spatial AF".to_string(),
        (Verdict::NotSimple, ClassificationWitness::CycleWithoutExit(p)) => {
            format!("not simple; witness: cycle [{}] has no exit", p.edge_names(g).join(", "))
        }
        (Verdict::NotSimple, ClassificationWitness::HereditarySaturated(h)) => format!(
            "not simple; witness: proper hereditary saturated set {{{}}}",
            g.vertex_names(h.iter().copied()).join(", ")
        ),
        (Verdict::NotSimple, _) => "not simple".to_string(),
    };
    Ok(match cli.format {
        Format::Text => summary,
        Format::Dot => to_dot(g),
        Format::Json => {
            let mut v = c.to_json_value(g);
            v["label"] = json!(label(c.verdict));
            v["summary"] = json!(summary);
            v.to_string()
        }
    })
}

fn witness_value(w: &Witness, a: &Element) -> Value {
    let mut v = w.to_json_value();
    v["verified"] = json!(w.verify(a));
    v
}

fn witness_one(cli: &Cli, a: &Element) -> Result<String, CliError> {
    let w = spi_witness(a)?;
    Ok(match cli.format {
        Format::Text => format!(
            "x = {}\ny = {}\nv = {}\nverified: {}",
            w.x,
            w.y,
            a.graph().vertex_name(w.v),
            w.verify(a)
        ),
        _ => witness_value(&w, a).to_string(),
    })
}

fn witness_random(cli: &Cli, g: &Arc<Graph>, n: usize) -> Result<String, CliError> {
    let sampler = ElementSampler::new(6, 4);
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    let mut samples = Vec::with_capacity(n);
    for _ in 0..n {
        samples.push(
            sampler
                .sample_nonzero(g, &mut rng)
                .ok_or_else(|| CliError::new(EXIT_INTERNAL, "could not sample a nonzero element"))?,
        );
    }
    // results are collected in sample order, so the thread count is unobservable
    let results: Vec<Result<(Element, Witness), SpiError>> = samples
        .into_par_iter()
        .map(|a| spi_witness(&a).map(|w| (a, w)))
        .collect();
    let mut out = Vec::with_capacity(n);
    for r in results {
        let (a, w) = r?;
        out.push(json!({"element": a.to_json_value(), "witness": witness_value(&w, &a)}));
    }
    Ok(match cli.format {
        Format::Text => {
            let ok = out.iter().filter(|v| v["witness"]["verified"] == json!(true)).count();
            format!("{ok} of {n} witnesses verified")
        }
        _ => Value::Array(out).to_string(),
    })
}

fn norm(cli: &Cli, x: &Element) -> Result<String, CliError> {
    let mut opts = EstimatorOptions {
        seed: cli.seed,
        ..EstimatorOptions::default()
    };
    if let Some(t) = cli.tol {
        opts.tol = t;
    }
    let n = element_norm_acyclic_with(x, cli.p, &opts)?;
    let v = if n.exact {
        json!({"p": cli.p, "norm": n.value, "exact": true})
    } else {
        json!({"p": cli.p, "exact": false, "lower_bound": n.value, "converged": n.converged})
    };
    Ok(match cli.format {
        Format::Text if n.exact => format!("‖x‖_{} = {}", cli.p, n.value),
        Format::Text => format!(
            "‖x‖_{} ≥ {} ({})",
            cli.p,
            n.value,
            if n.converged { "converged" } else { "not converged" }
        ),
        _ => v.to_string(),
    })
}

fn render_graph(cli: &Cli, g: &Graph) -> String {
    match cli.format {
        Format::Json => g.to_json(),
        Format::Dot => to_dot(g),
        Format::Text => format!(
            "{} vertices, {} edges, {} infinite-emitter pairs",
            g.vertex_count(),
            g.edges().count(),
            g.omega_pairs().len()
        ),
    }
}

fn transform(cli: &Cli, g: &Arc<Graph>, op: &TransformOp) -> Result<String, CliError> {
    let out = match op {
        TransformOp::RemoveSources => remove_sources(g)?,
        TransformOp::Desingularize => desingularize(g, cli.depth)?,
        TransformOp::Reachable { from } => reachable_subgraph(g, from)?,
        TransformOp::Complete {
            subgraph,
            emit_embedding,
        } => {
            let f = Subgraph::from_json(&read(subgraph)?)?;
            let emb = complete_and_embed(g, &f)?;
            if let Some(path) = emit_embedding {
                fs::write(path, emb.to_json_value().to_string() + "\n")
                    .map_err(|e| CliError::new(EXIT_IO, format!("{}: {e}", path.display())))?;
            }
            (*emb.domain).clone()
        }
    };
    Ok(render_graph(cli, &out))
}
