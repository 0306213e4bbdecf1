use std::collections::{BTreeSet, VecDeque};

use super::paths::reachable_from;
use super::{EdgeId, Graph, GraphError, Path, VertexId};

/// One step of a cycle: an explicit edge, or one copy of an ω-pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Step {
    Edge(EdgeId),
    Omega { src: VertexId, dst: VertexId },
}

impl Step {
    pub fn source(self, g: &Graph) -> VertexId {
        match self {
            Step::Edge(e) => g.source(e),
            Step::Omega { src, .. } => src,
        }
    }

    pub fn range(self, g: &Graph) -> VertexId {
        match self {
            Step::Edge(e) => g.range(e),
            Step::Omega { dst, .. } => dst,
        }
    }

    pub fn name(self, g: &Graph) -> String {
        match self {
            Step::Edge(e) => g.edge_name(e).to_string(),
            Step::Omega { src, dst } => format!("ω({},{})", g.vertex_name(src), g.vertex_name(dst)),
        }
    }
}

fn steps_from(g: &Graph, v: VertexId) -> impl Iterator<Item = Step> + '_ {
    g.out_edges(v)
        .iter()
        .map(|&e| Step::Edge(e))
        .chain(g.omega_out(v).iter().map(move |&dst| Step::Omega { src: v, dst }))
}

/// A closed path visiting no vertex twice. With ω-pairs, one copy of each
/// pair stands for all of its parallel edges.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cycle {
    steps: Vec<Step>,
}

impl Cycle {
    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn base(&self, g: &Graph) -> VertexId {
        self.steps[0].source(g)
    }

    /// Source vertices of the steps.
    pub fn vertices(&self, g: &Graph) -> Vec<VertexId> {
        self.steps.iter().map(|s| s.source(g)).collect()
    }

    /// Rotation with the lexicographically least step sequence.
    pub fn canonical(&self) -> Cycle {
        let n = self.steps.len();
        (0..n)
            .map(|k| {
                let mut s = self.steps[k..].to_vec();
                s.extend_from_slice(&self.steps[..k]);
                s
            })
            .min()
            .map(|steps| Cycle { steps })
            .unwrap_or_else(|| self.clone())
    }

    /// Rotation starting at `v`, if `v` is on the cycle.
    pub fn rotated_to(&self, g: &Graph, v: VertexId) -> Option<Cycle> {
        let k = self.steps.iter().position(|s| s.source(g) == v)?;
        let mut steps = self.steps[k..].to_vec();
        steps.extend_from_slice(&self.steps[..k]);
        Some(Cycle { steps })
    }

    /// The cycle as a [`Path`]; `None` when it uses an ω-pair.
    pub fn to_path(&self, g: &Graph) -> Option<Path> {
        let edges = self
            .steps
            .iter()
            .map(|s| match s {
                Step::Edge(e) => Some(*e),
                Step::Omega { .. } => None,
            })
            .collect::<Option<Vec<_>>>()?;
        Path::from_edges(g, &edges, None).ok()
    }

    pub fn from_path(path: &Path) -> Cycle {
        Cycle {
            steps: path.edges().iter().map(|&e| Step::Edge(e)).collect(),
        }
    }

    pub fn step_names(&self, g: &Graph) -> Vec<String> {
        self.steps.iter().map(|s| s.name(g)).collect()
    }

    pub fn display(&self, g: &Graph) -> String {
        format!("[{}]", self.step_names(g).join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleReport {
    pub cycle: Cycle,
    pub exits: Vec<Step>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VertexPartition {
    pub sinks: Vec<VertexId>,
    pub infinite_emitters: Vec<VertexId>,
    pub regular: Vec<VertexId>,
}

/// Splits the vertex set (input order within each class).
pub fn classify_vertices(g: &Graph) -> VertexPartition {
    let mut out = VertexPartition::default();
    for v in g.vertices() {
        if g.is_infinite_emitter(v) {
            out.infinite_emitters.push(v);
        } else if g.is_sink(v) {
            out.sinks.push(v);
        } else {
            out.regular.push(v);
        }
    }
    out
}

fn exits_of(g: &Graph, cycle: &Cycle) -> Vec<Step> {
    let mut exits = BTreeSet::new();
    for &step in cycle.steps() {
        let u = step.source(g);
        for &f in g.out_edges(u) {
            if Step::Edge(f) != step {
                exits.insert(Step::Edge(f));
            }
        }
        // other copies of an ω-pair always leave the cycle
        for &dst in g.omega_out(u) {
            exits.insert(Step::Omega { src: u, dst });
        }
    }
    exits.into_iter().collect()
}

/// Every cycle once, in canonical rotation and sorted, with its exits.
pub fn find_cycles(g: &Graph) -> Vec<CycleReport> {
    let mut found = BTreeSet::new();
    let mut on_stack = vec![false; g.vertex_count()];
    for start in g.vertices_sorted() {
        let mut stack = Vec::new();
        cycles_from(g, start, start, &mut stack, &mut on_stack, &mut found);
    }
    found
        .into_iter()
        .map(|cycle| {
            let exits = exits_of(g, &cycle);
            CycleReport { cycle, exits }
        })
        .collect()
}

// Only vertices larger than `start` are visited, so each cycle is found
// from its least vertex.
fn cycles_from(
    g: &Graph,
    start: VertexId,
    at: VertexId,
    stack: &mut Vec<Step>,
    on_stack: &mut [bool],
    found: &mut BTreeSet<Cycle>,
) {
    on_stack[at.index()] = true;
    for step in steps_from(g, at) {
        let next = step.range(g);
        if next == start {
            stack.push(step);
            found.insert(Cycle { steps: stack.clone() }.canonical());
            stack.pop();
        } else if next > start && !on_stack[next.index()] {
            stack.push(step);
            cycles_from(g, start, next, stack, on_stack, found);
            stack.pop();
        }
    }
    on_stack[at.index()] = false;
}

/// The shortest closed path based at `v` (lexicographically least among the
/// shortest), as a cycle starting at `v`.
pub fn shortest_cycle_at(g: &Graph, v: VertexId) -> Option<Cycle> {
    let mut parent: Vec<Option<(VertexId, Step)>> = vec![None; g.vertex_count()];
    let mut seen = vec![false; g.vertex_count()];
    let mut queue = VecDeque::from([v]);
    seen[v.index()] = true;
    let unwind = |parent: &[Option<(VertexId, Step)>], mut at: VertexId, last: Step| {
        let mut steps = vec![last];
        while at != v {
            let (prev, step) = parent[at.index()].expect("bfs tree");
            steps.push(step);
            at = prev;
        }
        steps.reverse();
        Cycle { steps }
    };
    while let Some(u) = queue.pop_front() {
        for step in steps_from(g, u) {
            let w = step.range(g);
            if w == v {
                return Some(unwind(&parent, u, step));
            }
            if !seen[w.index()] {
                seen[w.index()] = true;
                parent[w.index()] = Some((u, step));
                queue.push_back(w);
            }
        }
    }
    None
}

/// A cycle all of whose vertices emit exactly one edge, in canonical rotation.
pub fn cycle_without_exit(g: &Graph) -> Option<Path> {
    let single = |v: VertexId| g.out_edges(v).len() == 1 && g.omega_out(v).is_empty();
    for v in g.vertices_sorted() {
        if !single(v) {
            continue;
        }
        let mut edges = Vec::new();
        let mut cur = v;
        let mut visited = BTreeSet::new();
        while single(cur) && visited.insert(cur) {
            let e = g.out_edges(cur)[0];
            edges.push(e);
            cur = g.range(e);
            if cur == v {
                let cycle = Cycle {
                    steps: edges.iter().map(|&e| Step::Edge(e)).collect(),
                }
                .canonical();
                return cycle.to_path(g);
            }
        }
    }
    None
}

/// Smallest hereditary and saturated vertex set containing `seed`.
pub fn hereditary_saturated_closure(g: &Graph, seed: &BTreeSet<VertexId>) -> BTreeSet<VertexId> {
    let mut set = BTreeSet::new();
    for &v in seed {
        if !set.contains(&v) {
            set.extend(reachable_from(g, v));
        }
    }
    loop {
        let saturated: Vec<VertexId> = g
            .vertices_sorted()
            .filter(|v| !set.contains(v) && g.is_regular(*v))
            .filter(|&v| g.out_edges(v).iter().all(|&e| set.contains(&g.range(e))))
            .collect();
        if saturated.is_empty() {
            return set;
        }
        // ranges of a saturated vertex are already inside, so heredity is kept
        set.extend(saturated);
    }
}

/// Cycle-relative cofinality: every vertex reaches every cycle.
///
/// Vacuous for acyclic graphs; [`classify_graph`] does not use it.
pub fn is_cycle_cofinal(g: &Graph) -> bool {
    let cycles = find_cycles(g);
    g.vertices_sorted().all(|v| {
        let reach = reachable_from(g, v);
        cycles
            .iter()
            .all(|c| c.cycle.vertices(g).iter().any(|w| reach.contains(w)))
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    NotSimple,
    SimpleAcyclic,
    SimplePurelyInfinite,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::NotSimple => "not_simple",
            Verdict::SimpleAcyclic => "simple_acyclic",
            Verdict::SimplePurelyInfinite => "simple_purely_infinite",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassificationWitness {
    CycleWithoutExit(Path),
    HereditarySaturated(BTreeSet<VertexId>),
    Cycle(Cycle),
    Acyclic,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub verdict: Verdict,
    pub witness: ClassificationWitness,
}

/// Simplicity is decided by condition (L) together with the absence of
/// proper nonempty hereditary saturated sets; a simple graph is purely
/// infinite exactly when it has a cycle.
pub fn classify_graph(g: &Graph) -> Result<Classification, GraphError> {
    if g.is_empty() {
        return Err(GraphError::EmptyGraph);
    }
    if let Some(path) = cycle_without_exit(g) {
        return Ok(Classification {
            verdict: Verdict::NotSimple,
            witness: ClassificationWitness::CycleWithoutExit(path),
        });
    }
    for v in g.vertices_sorted() {
        let h = hereditary_saturated_closure(g, &BTreeSet::from([v]));
        if h.len() < g.vertex_count() {
            return Ok(Classification {
                verdict: Verdict::NotSimple,
                witness: ClassificationWitness::HereditarySaturated(h),
            });
        }
    }
    // in a simple graph with a cycle every vertex reaches it, so the
    // least vertex on some cycle is found by scanning in id order
    for v in g.vertices_sorted() {
        if let Some(c) = shortest_cycle_at(g, v) {
            return Ok(Classification {
                verdict: Verdict::SimplePurelyInfinite,
                witness: ClassificationWitness::Cycle(c.canonical()),
            });
        }
    }
    Ok(Classification {
        verdict: Verdict::SimpleAcyclic,
        witness: ClassificationWitness::Acyclic,
    })
}

impl Classification {
    /// Re-validates the witness with the predicates of this module.
    pub fn recheck(&self, g: &Graph) -> bool {
        match (&self.verdict, &self.witness) {
            (Verdict::NotSimple, ClassificationWitness::CycleWithoutExit(p)) => {
                let c = Cycle::from_path(p);
                find_cycles(g)
                    .iter()
                    .any(|r| r.cycle == c.canonical() && r.exits.is_empty())
            }
            (Verdict::NotSimple, ClassificationWitness::HereditarySaturated(h)) => {
                !h.is_empty()
                    && h.len() < g.vertex_count()
                    && &hereditary_saturated_closure(g, h) == h
            }
            (Verdict::SimplePurelyInfinite, ClassificationWitness::Cycle(c)) => {
                find_cycles(g).iter().any(|r| &r.cycle == c)
            }
            (Verdict::SimpleAcyclic, ClassificationWitness::Acyclic) => find_cycles(g).is_empty(),
            _ => false,
        }
    }
}
