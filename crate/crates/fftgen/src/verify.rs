// SPDX-License-Identifier: Apache-2.0

//! Cross-check of the scheduled simulator against the fixed-point
//! reference (bit-exact) and the float DFT (within pinned bounds).

use fftgen_core::fixedpoint::ScalingMode;
use fftgen_core::flowgraph::build_graph;
use fftgen_core::oracle::{
    compare_outputs, dft_float, fft_fixed_reference, first_mismatch, float_error_bounds, input_bound, output_scale,
    random_vector, to_float, ErrorBounds,
};
use fftgen_core::sim::{simulate, SimConfig, SyncMode};
use rayon::prelude::*;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyConfig {
    pub n: usize,
    pub width: u32,
    pub trials: usize,
    /// Trial `i` draws its input and latencies from `seed + i`.
    pub seed: u64,
    pub modes: Vec<ScalingMode>,
    pub butterfly_latency: u64,
    pub cmult_latency: u64,
    pub jitter: u64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Trial {
    seed: u64,
    bit_exact: bool,
    violations: usize,
    max_abs: f64,
    rms: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModeSummary {
    pub mode: ScalingMode,
    pub trials: usize,
    pub mismatches: usize,
    pub violations: usize,
    pub max_abs_error: f64,
    pub worst_rms: f64,
    pub bounds: ErrorBounds,
    /// Lowest-seed failing trial, if any.
    pub first_failure: Option<u64>,
}

impl ModeSummary {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

fn trial(cfg: &VerifyConfig, mode: ScalingMode, seed: u64) -> fftgen_core::Result<Trial> {
    let x = random_vector(cfg.n, cfg.width, input_bound(cfg.n, cfg.width, mode), seed);
    let graph = build_graph(cfg.n)?;
    let sim_cfg = SimConfig {
        butterfly_latency: cfg.butterfly_latency,
        cmult_latency: cfg.cmult_latency,
        scaling: mode,
        sync: SyncMode::StageChained,
        seed,
        jitter: cfg.jitter,
    };
    let (y, trace) = simulate(&graph, &x, &sim_cfg)?;
    let reference = fft_fixed_reference(&x, mode)?;
    let report = compare_outputs(&y, &dft_float(&to_float(&x)), output_scale(cfg.n, mode))?;
    Ok(Trial {
        seed,
        bit_exact: first_mismatch(&y, &reference).is_none(),
        violations: trace.violations.len(),
        max_abs: report.max_abs_error,
        rms: report.rms_error,
    })
}

/// Runs every trial of every mode; trials run in parallel and are
/// aggregated in seed order.
pub fn run_verify(cfg: &VerifyConfig) -> fftgen_core::Result<Vec<ModeSummary>> {
    fftgen_core::checked_log2(cfg.n)?;
    let mut out = Vec::with_capacity(cfg.modes.len());
    for &mode in &cfg.modes {
        let trials = (0..cfg.trials)
            .into_par_iter()
            .map(|i| trial(cfg, mode, cfg.seed.wrapping_add(i as u64)))
            .collect::<fftgen_core::Result<Vec<Trial>>>()?;
        let bounds = float_error_bounds(cfg.n, mode);
        let mut summary = ModeSummary {
            mode,
            trials: trials.len(),
            mismatches: 0,
            violations: 0,
            max_abs_error: 0.0,
            worst_rms: 0.0,
            bounds,
            first_failure: None,
        };
        for t in &trials {
            summary.mismatches += usize::from(!t.bit_exact);
            summary.violations += t.violations;
            summary.max_abs_error = summary.max_abs_error.max(t.max_abs);
            summary.worst_rms = summary.worst_rms.max(t.rms);
            let ok = t.bit_exact && t.violations == 0 && t.max_abs <= bounds.max_abs && t.rms <= bounds.rms;
            if !ok && summary.first_failure.is_none() {
                summary.first_failure = Some(t.seed);
            }
        }
        out.push(summary);
    }
    Ok(out)
}
