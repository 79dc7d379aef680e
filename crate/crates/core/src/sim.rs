// SPDX-License-Identifier: Apache-2.0

//! Tick-level execution of an FFT graph under enable/done handshaking.
//!
//! Time is an integer tick on one global clock. A node fires on the tick its
//! enable rises and raises `done` `latency` ticks later; an input is valid
//! from the tick its producer is done. With [`SyncMode::StageChained`] a
//! stage is enabled on the tick the last node of the previous stage finishes.
//! With [`SyncMode::Disabled`] every node is enabled at tick 0, reads whatever
//! its input registers hold (zero after reset) and each such premature read
//! is recorded as a violation.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::fixedpoint::{butterfly_fixed, cmult_fixed, FixedComplex, ScalingMode};
use crate::flowgraph::{FftGraph, NodeId, NodeKind, Stage};
use crate::twiddle::{twiddle_table, TwiddleWord};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SyncMode {
    /// Each stage's enable is the conjunction of the previous stage's dones.
    #[default]
    StageChained,
    /// Every enable tied high.
    Disabled,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimConfig {
    pub butterfly_latency: u64,
    /// Mirrors the multiplier's `DELAY` parameter.
    pub cmult_latency: u64,
    pub scaling: ScalingMode,
    pub sync: SyncMode,
    pub seed: u64,
    /// Extra ticks drawn uniformly from `0..=jitter` per node.
    pub jitter: u64,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            butterfly_latency: 1,
            cmult_latency: 1,
            scaling: ScalingMode::PerStageHalving,
            sync: SyncMode::StageChained,
            seed: 0,
            jitter: 0,
        }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        if self.butterfly_latency == 0 || self.cmult_latency == 0 {
            return Err(Error::InvalidConfig("node latencies must be at least one tick"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NodeTiming {
    pub node: NodeId,
    pub kind: NodeKind,
    /// Stage at the top level of the design.
    pub stage: Stage,
    pub enable: u64,
    pub fire: u64,
    pub done: u64,
}

/// An input read before its producer was done.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Violation {
    pub node: NodeId,
    pub port: usize,
    pub stage: Stage,
    pub tick_read: u64,
    pub tick_valid: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SimTrace {
    pub timings: Vec<NodeTiming>,
    pub violations: Vec<Violation>,
    /// Tick at which the top-level done rises and outputs are sampled.
    pub design_done: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StageViolations {
    pub stage: Stage,
    pub count: usize,
    pub first_node: NodeId,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ViolationReport {
    pub total: usize,
    pub by_stage: Vec<StageViolations>,
}

impl ViolationReport {
    pub fn count(&self, stage: Stage) -> usize {
        self.by_stage.iter().find(|s| s.stage == stage).map_or(0, |s| s.count)
    }
}

fn latencies(g: &FftGraph, cfg: &SimConfig) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    g.nodes
        .iter()
        .map(|n| {
            let base = match n.kind {
                NodeKind::Butterfly => cfg.butterfly_latency,
                NodeKind::ComplexMult { .. } => cfg.cmult_latency,
                _ => return 0,
            };
            let extra = if cfg.jitter > 0 { rng.gen_range(0..=cfg.jitter) } else { 0 };
            base + extra
        })
        .collect()
}

/// Enable tick of every compute node.
fn schedule(g: &FftGraph, lat: &[u64], sync: SyncMode) -> Vec<Option<u64>> {
    let mut enable = vec![None; g.nodes.len()];
    if sync == SyncMode::Disabled {
        for n in g.nodes.iter().filter(|n| n.kind.is_compute()) {
            enable[n.id.0] = Some(0);
        }
        return enable;
    }
    // members[scope][stage]
    let mut members: Vec<[Vec<usize>; 3]> = vec![Default::default(); g.scopes.len()];
    for n in &g.nodes {
        if let Some(stage) = n.stage {
            members[n.scope.0][stage as usize].push(n.id.0);
        }
    }
    // scopes are numbered parents-first, so a child's stage-2 enable is known
    let mut stage2_enable = vec![0u64; g.scopes.len()];
    for scope in &g.scopes {
        let mut tick = match scope.parent {
            None => 0,
            Some(p) => stage2_enable[p.0],
        };
        for &stage in &[Stage::Stage1A, Stage::Stage1B, Stage::Stage2] {
            let mut last_done = None;
            for &id in &members[scope.id.0][stage as usize] {
                enable[id] = Some(tick);
                last_done = Some(last_done.unwrap_or(0).max(tick + lat[id]));
            }
            if stage == Stage::Stage2 {
                stage2_enable[scope.id.0] = tick;
            }
            match last_done {
                Some(t) => tick = t,
                None => {
                    // nested scopes occupy stage 2; nothing follows them here
                    if stage == Stage::Stage1B {
                        stage2_enable[scope.id.0] = tick;
                    }
                    break;
                }
            }
        }
    }
    enable
}

/// Runs `x` through `g` and returns natural- or raw-order outputs (per
/// `g.order`) plus the timing trace. Graphs with sub-transform nodes are
/// elaborated first.
pub fn simulate(g: &FftGraph, x: &[FixedComplex], cfg: &SimConfig) -> Result<(Vec<FixedComplex>, SimTrace)> {
    cfg.validate()?;
    if x.len() != g.n {
        return Err(Error::LengthMismatch { expected: g.n, found: x.len() });
    }
    let width = x[0].width();
    if let Some(bad) = x.iter().find(|s| s.width() != width) {
        return Err(Error::WidthMismatch { expected: width, found: bad.width() });
    }
    let expanded;
    let g = if g.is_primitive() {
        g
    } else {
        expanded = g.elaborated();
        &expanded
    };

    let lat = latencies(g, cfg);
    let enable = schedule(g, &lat, cfg.sync);
    let mut twiddles: BTreeMap<usize, Vec<TwiddleWord>> = BTreeMap::new();
    for node in &g.nodes {
        if let NodeKind::ComplexMult { size, .. } = node.kind {
            if let alloc::collections::btree_map::Entry::Vacant(slot) = twiddles.entry(size) {
                slot.insert(twiddle_table(size, width)?);
            }
        }
    }

    let mut timings = Vec::new();
    let mut done_at = vec![0u64; g.nodes.len()];
    for node in g.nodes.iter().filter(|n| n.kind.is_compute()) {
        let en = enable[node.id.0].expect("compute node left unscheduled");
        let done = en + lat[node.id.0];
        done_at[node.id.0] = done;
        timings.push(NodeTiming {
            node: node.id,
            kind: node.kind,
            stage: g.top_stage(node.id).unwrap_or(Stage::Stage1A),
            enable: en,
            fire: en,
            done,
        });
    }
    let design_done = timings.iter().map(|t| t.done).max().unwrap_or(0);

    let rank: Vec<usize> = {
        let order = g.topological_order()?;
        let mut rank = vec![0; g.nodes.len()];
        for (i, id) in order.iter().enumerate() {
            rank[id.0] = i;
        }
        rank
    };
    let mut firing: Vec<&NodeTiming> = timings.iter().collect();
    firing.sort_by_key(|t| (t.fire, rank[t.node.0]));

    let drivers = g.drivers();
    let zero = FixedComplex::zero(width);
    let mut values: Vec<[FixedComplex; 2]> = vec![[zero; 2]; g.nodes.len()];
    for node in &g.nodes {
        if let NodeKind::Input(i) = node.kind {
            values[node.id.0][0] = x[i];
        }
    }
    let mut violations = Vec::new();
    for t in firing {
        let mut inputs = [zero; 2];
        for (port, driver) in drivers[t.node.0].iter().enumerate() {
            let src = driver.expect("undriven input port");
            let valid = done_at[src.node.0];
            if valid <= t.fire {
                inputs[port] = values[src.node.0][src.port];
            } else {
                violations.push(Violation { node: t.node, port, stage: t.stage, tick_read: t.fire, tick_valid: valid });
            }
        }
        values[t.node.0] = match t.kind {
            NodeKind::Butterfly => {
                let out = butterfly_fixed(inputs[0], inputs[1], cfg.scaling)?;
                [out.sum, out.diff]
            }
            NodeKind::ComplexMult { size, k } => [cmult_fixed(inputs[0], &twiddles[&size][k])?, zero],
            _ => unreachable!("only primitives are simulated"),
        };
    }

    let mut y = vec![zero; g.n];
    for node in &g.nodes {
        if let NodeKind::Output(i) = node.kind {
            let src = drivers[node.id.0][0].expect("undriven output");
            y[i] = values[src.node.0][src.port];
        }
    }
    Ok((y, SimTrace { timings, violations, design_done }))
}

/// Groups violations by top-level stage.
pub fn detect_violations(trace: &SimTrace) -> ViolationReport {
    let mut by_stage: Vec<StageViolations> = Vec::new();
    let mut sorted: Vec<&Violation> = trace.violations.iter().collect();
    sorted.sort_by_key(|v| (v.tick_read, v.node));
    for v in sorted {
        match by_stage.iter_mut().find(|s| s.stage == v.stage) {
            Some(s) => s.count += 1,
            None => by_stage.push(StageViolations { stage: v.stage, count: 1, first_node: v.node }),
        }
    }
    by_stage.sort_by_key(|s| s.stage);
    ViolationReport { total: trace.violations.len(), by_stage }
}

fn short_kind(kind: &NodeKind) -> String {
    match *kind {
        NodeKind::Butterfly => String::from("butterfly"),
        NodeKind::ComplexMult { size, k } => format!("cmult(W_{size}^{k})"),
        NodeKind::SubFft(m) => format!("subfft({m})"),
        NodeKind::Input(i) => format!("input({i})"),
        NodeKind::Output(i) => format!("output({i})"),
    }
}

/// Per-node tick table followed by the violation list.
pub fn render_trace(trace: &SimTrace) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "trace nodes={} violations={} design_done={}",
        trace.timings.len(),
        trace.violations.len(),
        trace.design_done
    );
    let _ = writeln!(out, "{:>5} {:<18} {:>5} {:>6} {:>6} {:>6}", "node", "kind", "stage", "enable", "fire", "done");
    for t in &trace.timings {
        let _ = writeln!(
            out,
            "{:>5} {:<18} {:>5} {:>6} {:>6} {:>6}",
            t.node.0,
            short_kind(&t.kind),
            t.stage.label(),
            t.enable,
            t.fire,
            t.done
        );
    }
    for v in &trace.violations {
        let _ = writeln!(
            out,
            "violation node={} port={} stage={} read@{} valid@{}",
            v.node.0,
            v.port,
            v.stage.label(),
            v.tick_read,
            v.tick_valid
        );
    }
    out
}
