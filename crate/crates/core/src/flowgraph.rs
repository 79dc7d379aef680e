// SPDX-License-Identifier: Apache-2.0

//! Iterative radix-2 DIF flow graph.
//!
//! An n-point transform is three stages: stage 1-A holds n/2 butterflies,
//! stage 1-B holds n/2 twiddle multiplications on the butterfly differences,
//! and stage 2 holds two n/2-point transforms (sums into the first, twiddled
//! differences into the second). Each stage is enabled once every node of
//! the previous stage is done.
//!
//! [`build_graph`] keeps the two sub-transforms as opaque [`NodeKind::SubFft`]
//! nodes; [`elaborate`] expands them recursively into scopes until only
//! butterflies and multipliers remain.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::{self, Write as _};

use crate::{checked_log2, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub usize);

/// One level of the recursion: the whole design, or one expanded sub-transform.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ScopeId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Stage {
    Stage1A,
    Stage1B,
    Stage2,
}

impl Stage {
    pub fn label(self) -> &'static str {
        match self {
            Stage::Stage1A => "1A",
            Stage::Stage1B => "1B",
            Stage::Stage2 => "2",
        }
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "stage {}", self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NodeKind {
    Input(usize),
    Output(usize),
    Butterfly,
    /// Multiplication by `W_size^k`.
    ComplexMult {
        size: usize,
        k: usize,
    },
    /// An unexpanded `m`-point sub-transform producing bit-reversed output.
    SubFft(usize),
}

impl NodeKind {
    pub fn is_compute(&self) -> bool {
        matches!(self, NodeKind::Butterfly | NodeKind::ComplexMult { .. } | NodeKind::SubFft(_))
    }

    fn input_ports(&self) -> usize {
        match *self {
            NodeKind::Input(_) => 0,
            NodeKind::Output(_) | NodeKind::ComplexMult { .. } => 1,
            NodeKind::Butterfly => 2,
            NodeKind::SubFft(m) => m,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Node {
    pub id: NodeId,
    pub kind: NodeKind,
    pub scope: ScopeId,
    /// `None` for primary inputs and outputs.
    pub stage: Option<Stage>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Scope {
    pub id: ScopeId,
    pub parent: Option<ScopeId>,
    pub size: usize,
    pub depth: u32,
}

/// A node port. Butterfly outputs are port 0 (sum) and port 1 (difference).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Endpoint {
    pub node: NodeId,
    pub port: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub from: Endpoint,
    pub to: Endpoint,
}

/// "Every node of `after` in `scope` is done" enables `enables` in `scope`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SyncConstraint {
    pub scope: ScopeId,
    pub after: Stage,
    pub enables: Stage,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputOrder {
    /// Bins in natural order; the bit-reversal is applied at the outputs.
    #[default]
    Natural,
    /// Bins as they leave the last stage, in bit-reversed order.
    Raw,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FftGraph {
    pub n: usize,
    pub order: OutputOrder,
    pub scopes: Vec<Scope>,
    pub nodes: Vec<Node>,
    pub edges: Vec<Edge>,
    pub sync: Vec<SyncConstraint>,
}

impl FftGraph {
    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id.0]
    }

    pub fn scope(&self, id: ScopeId) -> &Scope {
        &self.scopes[id.0]
    }

    pub fn root(&self) -> ScopeId {
        ScopeId(0)
    }

    /// Stages present at the top level.
    pub fn stages(&self) -> &'static [Stage] {
        if self.n == 2 {
            &[Stage::Stage1A]
        } else {
            &[Stage::Stage1A, Stage::Stage1B, Stage::Stage2]
        }
    }

    pub fn count(&self, pred: impl Fn(&NodeKind) -> bool) -> usize {
        self.nodes.iter().filter(|n| pred(&n.kind)).count()
    }

    pub fn butterflies(&self) -> usize {
        self.count(|k| *k == NodeKind::Butterfly)
    }

    pub fn complex_mults(&self) -> usize {
        self.count(|k| matches!(k, NodeKind::ComplexMult { .. }))
    }

    pub fn sub_ffts(&self) -> usize {
        self.count(|k| matches!(k, NodeKind::SubFft(_)))
    }

    /// True when only butterflies and multipliers remain.
    pub fn is_primitive(&self) -> bool {
        self.sub_ffts() == 0
    }

    /// Expands any [`NodeKind::SubFft`] nodes, keeping the output order.
    pub fn elaborated(&self) -> FftGraph {
        if self.is_primitive() {
            self.clone()
        } else {
            Builder::run(self.n, true, self.order)
        }
    }

    /// Nodes placed in `stage` of `scope` (not counting nested scopes).
    pub fn stage_members(&self, scope: ScopeId, stage: Stage) -> impl Iterator<Item = &Node> {
        self.nodes.iter().filter(move |n| n.scope == scope && n.stage == Some(stage))
    }

    /// Child scopes of `scope`, in even/odd order.
    pub fn children(&self, scope: ScopeId) -> impl Iterator<Item = &Scope> {
        self.scopes.iter().filter(move |s| s.parent == Some(scope))
    }

    /// Top-level stage a node belongs to: anything inside a nested scope
    /// counts as part of the root's stage 2.
    pub fn top_stage(&self, id: NodeId) -> Option<Stage> {
        let node = self.node(id);
        if node.scope == self.root() {
            node.stage
        } else {
            Some(Stage::Stage2)
        }
    }

    fn is_ancestor(&self, ancestor: ScopeId, mut scope: ScopeId) -> bool {
        loop {
            if scope == ancestor {
                return true;
            }
            match self.scope(scope).parent {
                Some(p) => scope = p,
                None => return false,
            }
        }
    }

    /// Whether `from`'s stage is guaranteed done before `to`'s stage is
    /// enabled under stage chaining.
    fn precedes(&self, from: &Node, to: &Node) -> bool {
        let (Some(fs), Some(ts)) = (from.stage, to.stage) else {
            return true;
        };
        if from.scope == to.scope {
            return fs < ts;
        }
        // everything in a nested scope runs within the ancestor's stage 2
        self.is_ancestor(from.scope, to.scope) && fs < Stage::Stage2
    }

    /// Kahn order over data edges.
    pub fn topological_order(&self) -> Result<Vec<NodeId>> {
        let mut indegree = vec![0usize; self.nodes.len()];
        let mut succ: Vec<Vec<usize>> = vec![Vec::new(); self.nodes.len()];
        for e in &self.edges {
            indegree[e.to.node.0] += 1;
            succ[e.from.node.0].push(e.to.node.0);
        }
        let mut queue: VecDeque<usize> = (0..self.nodes.len()).filter(|&i| indegree[i] == 0).collect();
        let mut order = Vec::with_capacity(self.nodes.len());
        while let Some(i) = queue.pop_front() {
            order.push(NodeId(i));
            for &j in &succ[i] {
                indegree[j] -= 1;
                if indegree[j] == 0 {
                    queue.push_back(j);
                }
            }
        }
        if order.len() == self.nodes.len() {
            Ok(order)
        } else {
            Err(Error::CyclicGraph)
        }
    }

    /// Data edges feeding each node, indexed by node then input port.
    pub fn drivers(&self) -> Vec<Vec<Option<Endpoint>>> {
        let mut drivers: Vec<Vec<Option<Endpoint>>> =
            self.nodes.iter().map(|n| vec![None; n.kind.input_ports()]).collect();
        for e in &self.edges {
            drivers[e.to.node.0][e.to.port] = Some(e.from);
        }
        drivers
    }
}

struct Builder {
    elaborate: bool,
    graph: FftGraph,
}

impl Builder {
    fn run(n: usize, elaborate: bool, order: OutputOrder) -> FftGraph {
        let mut b = Builder {
            elaborate,
            graph: FftGraph { n, order, scopes: Vec::new(), nodes: Vec::new(), edges: Vec::new(), sync: Vec::new() },
        };
        let root = b.new_scope(None, n);
        let inputs: Vec<Endpoint> =
            (0..n).map(|i| Endpoint { node: b.add(NodeKind::Input(i), root, None), port: 0 }).collect();
        let raw = b.transform(root, &inputs);
        let perm = bit_reversal(n);
        for i in 0..n {
            let out = b.add(NodeKind::Output(i), root, None);
            let src = match order {
                OutputOrder::Natural => raw[perm[i]],
                OutputOrder::Raw => raw[i],
            };
            b.connect(src, out, 0);
        }
        b.graph
    }

    fn new_scope(&mut self, parent: Option<ScopeId>, size: usize) -> ScopeId {
        let id = ScopeId(self.graph.scopes.len());
        let depth = parent.map_or(0, |p| self.graph.scope(p).depth + 1);
        self.graph.scopes.push(Scope { id, parent, size, depth });
        id
    }

    fn add(&mut self, kind: NodeKind, scope: ScopeId, stage: Option<Stage>) -> NodeId {
        let id = NodeId(self.graph.nodes.len());
        self.graph.nodes.push(Node { id, kind, scope, stage });
        id
    }

    fn connect(&mut self, from: Endpoint, node: NodeId, port: usize) {
        self.graph.edges.push(Edge { from, to: Endpoint { node, port } });
    }

    /// Wires one scope and returns its outputs in bit-reversed order.
    fn transform(&mut self, scope: ScopeId, inputs: &[Endpoint]) -> Vec<Endpoint> {
        let m = inputs.len();
        if m == 2 {
            let bf = self.add(NodeKind::Butterfly, scope, Some(Stage::Stage1A));
            self.connect(inputs[0], bf, 0);
            self.connect(inputs[1], bf, 1);
            return vec![Endpoint { node: bf, port: 0 }, Endpoint { node: bf, port: 1 }];
        }
        let half = m / 2;
        let mut sums = Vec::with_capacity(half);
        let mut diffs = Vec::with_capacity(half);
        for i in 0..half {
            let bf = self.add(NodeKind::Butterfly, scope, Some(Stage::Stage1A));
            self.connect(inputs[i], bf, 0);
            self.connect(inputs[i + half], bf, 1);
            sums.push(Endpoint { node: bf, port: 0 });
            diffs.push(Endpoint { node: bf, port: 1 });
        }
        let mut twiddled = Vec::with_capacity(half);
        for (k, &d) in diffs.iter().enumerate() {
            let cm = self.add(NodeKind::ComplexMult { size: m, k }, scope, Some(Stage::Stage1B));
            self.connect(d, cm, 0);
            twiddled.push(Endpoint { node: cm, port: 0 });
        }
        self.graph.sync.push(SyncConstraint { scope, after: Stage::Stage1A, enables: Stage::Stage1B });
        self.graph.sync.push(SyncConstraint { scope, after: Stage::Stage1B, enables: Stage::Stage2 });

        let mut outputs = Vec::with_capacity(m);
        for branch in [sums, twiddled] {
            if self.elaborate {
                let child = self.new_scope(Some(scope), half);
                outputs.extend(self.transform(child, &branch));
            } else {
                let sub = self.add(NodeKind::SubFft(half), scope, Some(Stage::Stage2));
                for (i, &src) in branch.iter().enumerate() {
                    self.connect(src, sub, i);
                }
                outputs.extend((0..half).map(|port| Endpoint { node: sub, port }));
            }
        }
        outputs
    }
}

/// One-level graph: stage 1-A, stage 1-B and two opaque sub-transforms.
pub fn build_graph(n: usize) -> Result<FftGraph> {
    build_graph_with_order(n, OutputOrder::Natural)
}

pub fn build_graph_with_order(n: usize, order: OutputOrder) -> Result<FftGraph> {
    checked_log2(n)?;
    Ok(Builder::run(n, false, order))
}

/// Fully expanded graph containing only butterflies and multipliers.
pub fn elaborate(n: usize) -> Result<FftGraph> {
    elaborate_with_order(n, OutputOrder::Natural)
}

pub fn elaborate_with_order(n: usize, order: OutputOrder) -> Result<FftGraph> {
    checked_log2(n)?;
    Ok(Builder::run(n, true, order))
}

fn bit_reversal(n: usize) -> Vec<usize> {
    let bits = n.trailing_zeros();
    (0..n).map(|p| if bits == 0 { p } else { p.reverse_bits() >> (usize::BITS - bits) }).collect()
}

/// `perm[p]` is the frequency bin carried at raw output position `p`.
/// The map is its own inverse, so `natural[i] = raw[perm[i]]` as well.
pub fn output_permutation(n: usize) -> Result<Vec<usize>> {
    checked_log2(n)?;
    Ok(bit_reversal(n))
}

/// Checks the precedence structure and returns the stage-enable constraints.
///
/// Fails on a cycle, or on a data edge whose producer is not guaranteed to
/// finish before its consumer is enabled (which includes any edge between two
/// nodes of the same stage).
pub fn validate_precedence(g: &FftGraph) -> Result<Vec<SyncConstraint>> {
    g.topological_order()?;
    for e in &g.edges {
        let from = g.node(e.from.node);
        let to = g.node(e.to.node);
        if !g.precedes(from, to) {
            return Err(Error::StageOrder { from: from.id.0, to: to.id.0 });
        }
    }
    let mut constraints = Vec::new();
    for scope in &g.scopes {
        if scope.size >= 4 {
            constraints.push(SyncConstraint { scope: scope.id, after: Stage::Stage1A, enables: Stage::Stage1B });
            constraints.push(SyncConstraint { scope: scope.id, after: Stage::Stage1B, enables: Stage::Stage2 });
        }
    }
    Ok(constraints)
}

fn kind_label(kind: &NodeKind) -> String {
    match *kind {
        NodeKind::Input(i) => format!("input {i}"),
        NodeKind::Output(i) => format!("output {i}"),
        NodeKind::Butterfly => String::from("butterfly"),
        NodeKind::ComplexMult { size, k } => format!("cmult W_{size}^{k}"),
        NodeKind::SubFft(m) => format!("subfft {m}"),
    }
}

/// Line-oriented export: header, scopes, nodes, edges, sync constraints.
pub fn render_text(g: &FftGraph) -> String {
    let mut out = String::new();
    let order = match g.order {
        OutputOrder::Natural => "natural",
        OutputOrder::Raw => "raw",
    };
    let _ = writeln!(
        out,
        "fftgraph n={} order={} primitive={} nodes={} edges={} sync={}",
        g.n,
        order,
        g.is_primitive(),
        g.nodes.len(),
        g.edges.len(),
        g.sync.len()
    );
    for s in &g.scopes {
        let parent = s.parent.map_or(String::from("-"), |p| format!("{}", p.0));
        let _ = writeln!(out, "scope {} size={} parent={} depth={}", s.id.0, s.size, parent, s.depth);
    }
    for n in &g.nodes {
        let stage = n.stage.map_or("-", Stage::label);
        let _ = writeln!(out, "node {} {} scope={} stage={}", n.id.0, kind_label(&n.kind), n.scope.0, stage);
    }
    for e in &g.edges {
        let _ = writeln!(out, "edge {}.{} -> {}.{}", e.from.node.0, e.from.port, e.to.node.0, e.to.port);
    }
    for c in &g.sync {
        let _ = writeln!(out, "sync scope={} {} -> {}", c.scope.0, c.after.label(), c.enables.label());
    }
    out
}

/// Graphviz export, one cluster per scope stage.
pub fn render_dot(g: &FftGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph fft{} {{", g.n);
    let _ = writeln!(out, "  rankdir=LR;");
    let _ = writeln!(out, "  node [shape=box, fontname=\"monospace\"];");
    for n in g.nodes.iter().filter(|n| n.stage.is_none()) {
        let _ = writeln!(out, "  n{} [label=\"{}\", shape=ellipse];", n.id.0, kind_label(&n.kind));
    }
    for scope in &g.scopes {
        for &stage in &[Stage::Stage1A, Stage::Stage1B, Stage::Stage2] {
            let members: Vec<&Node> = g.stage_members(scope.id, stage).collect();
            if members.is_empty() {
                continue;
            }
            let _ = writeln!(out, "  subgraph cluster_s{}_{} {{", scope.id.0, stage.label());
            let _ = writeln!(out, "    label=\"scope {} ({}-point) stage {}\";", scope.id.0, scope.size, stage.label());
            for n in members {
                let _ = writeln!(out, "    n{} [label=\"{}\"];", n.id.0, kind_label(&n.kind));
            }
            let _ = writeln!(out, "  }}");
        }
    }
    for e in &g.edges {
        let _ = writeln!(
            out,
            "  n{} -> n{} [taillabel=\"{}\", headlabel=\"{}\"];",
            e.from.node.0, e.to.node.0, e.from.port, e.to.port
        );
    }
    let _ = writeln!(out, "}}");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_level_counts() {
        let g = build_graph(4).unwrap();
        assert_eq!((g.butterflies(), g.complex_mults(), g.sub_ffts()), (2, 2, 2));
        let g = build_graph(2).unwrap();
        assert_eq!((g.butterflies(), g.complex_mults(), g.sub_ffts()), (1, 0, 0));
        let g = build_graph(8).unwrap();
        let ks: Vec<usize> = g
            .stage_members(g.root(), Stage::Stage1B)
            .map(|n| match n.kind {
                NodeKind::ComplexMult { size: 8, k } => k,
                other => panic!("unexpected {other:?}"),
            })
            .collect();
        assert_eq!(ks, [0, 1, 2, 3]);
        assert_eq!(g.stage_members(g.root(), Stage::Stage1A).count(), 4);
        let subs: Vec<NodeKind> = g.stage_members(g.root(), Stage::Stage2).map(|n| n.kind).collect();
        assert_eq!(subs, [NodeKind::SubFft(4), NodeKind::SubFft(4)]);
    }

    #[test]
    fn invalid_sizes() {
        for n in [0, 1, 3, 6, 12] {
            assert_eq!(build_graph(n), Err(Error::InvalidSize(n)));
            assert_eq!(elaborate(n), Err(Error::InvalidSize(n)));
            assert_eq!(output_permutation(n), Err(Error::InvalidSize(n)));
        }
    }

    #[test]
    fn dif_wiring() {
        let n = 8;
        let g = build_graph(n).unwrap();
        let drivers = g.drivers();
        let bfs: Vec<&Node> = g.stage_members(g.root(), Stage::Stage1A).collect();
        for (i, bf) in bfs.iter().enumerate() {
            let d = &drivers[bf.id.0];
            assert_eq!(g.node(d[0].unwrap().node).kind, NodeKind::Input(i));
            assert_eq!(g.node(d[1].unwrap().node).kind, NodeKind::Input(i + n / 2));
        }
        let subs: Vec<&Node> = g.stage_members(g.root(), Stage::Stage2).collect();
        for i in 0..n / 2 {
            let even = drivers[subs[0].id.0][i].unwrap();
            assert_eq!((even.node, even.port), (bfs[i].id, 0));
            let odd = drivers[subs[1].id.0][i].unwrap();
            let cm = g.node(odd.node);
            assert_eq!(cm.kind, NodeKind::ComplexMult { size: 8, k: i });
            let fed = drivers[cm.id.0][0].unwrap();
            assert_eq!((fed.node, fed.port), (bfs[i].id, 1));
        }
    }

    #[test]
    fn elaborated_counts_match_closed_forms() {
        for log in 1..=6u32 {
            let n = 1usize << log;
            let g = elaborate(n).unwrap();
            assert_eq!(g.butterflies(), n / 2 * log as usize, "n={n}");
            assert_eq!(g.complex_mults(), n / 2 * (log as usize - 1), "n={n}");
            assert!(g.is_primitive());
        }
        let g = elaborate(8).unwrap();
        assert_eq!((g.butterflies(), g.complex_mults()), (12, 8));
        let g = elaborate(64).unwrap();
        assert_eq!((g.butterflies(), g.complex_mults()), (192, 160));
    }

    #[test]
    fn permutations() {
        assert_eq!(output_permutation(8).unwrap(), [0, 4, 2, 6, 1, 5, 3, 7]);
        assert_eq!(output_permutation(2).unwrap(), [0, 1]);
        assert_eq!(output_permutation(4).unwrap(), [0, 2, 1, 3]);
    }

    #[test]
    fn precedence_constraint_counts() {
        assert_eq!(validate_precedence(&build_graph(8).unwrap()).unwrap().len(), 2);
        assert_eq!(validate_precedence(&build_graph(2).unwrap()).unwrap().len(), 0);
        assert_eq!(validate_precedence(&elaborate(8).unwrap()).unwrap().len(), 6);
        let c = validate_precedence(&build_graph(8).unwrap()).unwrap();
        assert_eq!((c[0].after, c[0].enables), (Stage::Stage1A, Stage::Stage1B));
        assert_eq!((c[1].after, c[1].enables), (Stage::Stage1B, Stage::Stage2));
    }

    #[test]
    fn rejects_cycles_and_backward_edges() {
        let mut g = build_graph(4).unwrap();
        let cm = g.stage_members(g.root(), Stage::Stage1B).next().unwrap().id;
        let bf = g.stage_members(g.root(), Stage::Stage1A).next().unwrap().id;
        g.edges.push(Edge { from: Endpoint { node: cm, port: 0 }, to: Endpoint { node: bf, port: 0 } });
        assert_eq!(validate_precedence(&g), Err(Error::CyclicGraph));

        let mut g = build_graph(4).unwrap();
        let bfs: Vec<NodeId> = g.stage_members(g.root(), Stage::Stage1A).map(|n| n.id).collect();
        g.edges.push(Edge { from: Endpoint { node: bfs[0], port: 0 }, to: Endpoint { node: bfs[1], port: 0 } });
        assert_eq!(validate_precedence(&g), Err(Error::StageOrder { from: bfs[0].0, to: bfs[1].0 }));
    }

    #[test]
    fn structural_invariants() {
        for log in 1..=6u32 {
            let n = 1usize << log;
            for g in [build_graph(n).unwrap(), elaborate(n).unwrap()] {
                validate_precedence(&g).unwrap();
                // each input feeds exactly one butterfly, each output driven once
                for node in g.nodes.iter() {
                    match node.kind {
                        NodeKind::Input(_) => {
                            let fan: Vec<&Edge> = g.edges.iter().filter(|e| e.from.node == node.id).collect();
                            assert_eq!(fan.len(), 1);
                            assert_eq!(g.node(fan[0].to.node).kind, NodeKind::Butterfly);
                        }
                        NodeKind::Output(_) => {
                            assert_eq!(g.edges.iter().filter(|e| e.to.node == node.id).count(), 1);
                        }
                        NodeKind::ComplexMult { .. } => {
                            let src = g.edges.iter().find(|e| e.to.node == node.id).unwrap().from;
                            assert_eq!(g.node(src.node).kind, NodeKind::Butterfly);
                            assert_eq!(src.port, 1);
                        }
                        _ => {}
                    }
                }
                // every compute input port is driven exactly once
                for (i, ports) in g.drivers().iter().enumerate() {
                    assert!(ports.iter().all(Option::is_some), "node {i}");
                }
            }
        }
    }

    #[test]
    fn one_level_elaborates_to_full_graph() {
        let g = build_graph(16).unwrap().elaborated();
        assert_eq!(g, elaborate(16).unwrap());
    }

    #[test]
    fn exports_mention_every_node() {
        let g = build_graph(4).unwrap();
        let text = render_text(&g);
        assert!(text.starts_with("fftgraph n=4 order=natural primitive=false"));
        assert_eq!(text.lines().filter(|l| l.starts_with("node ")).count(), g.nodes.len());
        assert_eq!(text.lines().filter(|l| l.starts_with("sync ")).count(), 2);
        let dot = render_dot(&elaborate(4).unwrap());
        assert!(dot.starts_with("digraph fft4 {"));
        assert!(dot.trim_end().ends_with('}'));
        assert!(dot.contains("cluster_s1_1A"));
    }
}
