// SPDX-License-Identifier: Apache-2.0

//! Verilog emission for the recursive FFT core, its testbench, and a
//! structural lint over the emitted text.

mod emit;
mod hdl;
pub mod lint;
mod testbench;

pub use emit::{emit_butterfly, emit_cmult, emit_fft_level, emit_fft_suite};
pub use hdl::{BodyItem, Direction, HdlModule, Instance, LocalParam, Net, NetType, Parameter, Port};
pub use lint::{lint_structural, Diagnostic, Rule, Severity};
pub use testbench::{default_vectors, emit_testbench, TestVector};

use crate::fixedpoint::ScalingMode;
use crate::flowgraph::OutputOrder;
use crate::sim::SyncMode;
use crate::{checked_log2, Error, Result};

/// Emission settings. `sync: Disabled` ties every enable high, which
/// reproduces an unsynchronised core for demonstration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EmitConfig {
    pub n: usize,
    pub width: u32,
    /// Complex multiplier latency in cycles.
    pub cmult_delay: u32,
    pub sync: SyncMode,
    pub order: OutputOrder,
    pub scaling: ScalingMode,
}

impl EmitConfig {
    pub fn new(n: usize, width: u32) -> Self {
        EmitConfig {
            n,
            width,
            cmult_delay: 4,
            sync: SyncMode::StageChained,
            order: OutputOrder::Natural,
            scaling: ScalingMode::PerStageHalving,
        }
    }

    pub fn validate(&self) -> Result<()> {
        checked_log2(self.n)?;
        if !(4..=32).contains(&self.width) {
            return Err(Error::InvalidWidth(self.width));
        }
        if self.cmult_delay == 0 {
            return Err(Error::InvalidConfig("cmult delay must be at least one cycle"));
        }
        Ok(())
    }
}

impl Default for EmitConfig {
    fn default() -> Self {
        EmitConfig::new(16, 16)
    }
}

/// Emitted file set: `(file name, contents)` in emission order.
pub fn render_files(modules: &[HdlModule]) -> alloc::vec::Vec<(alloc::string::String, alloc::string::String)> {
    modules.iter().map(|m| (m.file_name(), m.render())).collect()
}
