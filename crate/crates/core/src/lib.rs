// SPDX-License-Identifier: Apache-2.0

//! Generator and verifier for radix-2 decimation-in-frequency FFT cores.
//!
//! The crate is `no_std` (it needs `alloc`). Everything that touches the
//! filesystem or the command line lives in the companion `fftgen` crate.
//!
//! Layers, bottom up:
//!
//! * [`twiddle`]: twiddle factors and their fixed-point hardware words.
//! * [`fixedpoint`]: bit-exact butterfly and complex-multiply semantics.
//! * [`flowgraph`]: the staged dataflow graph and its recursive elaboration.
//! * [`sim`]: tick-based execution of a graph under enable/done handshaking.
//! * [`oracle`]: direct DFT and an independent recursive fixed-point FFT.
//! * [`codegen`]: Verilog emission, testbenches and a structural linter.
//! * [`prompts`]: in-context-learning and chain-of-thought prompt packs.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

mod error;

pub mod codegen;
pub mod fixedpoint;
pub mod flowgraph;
pub mod oracle;
pub mod prompts;
pub mod sim;
pub mod twiddle;

pub use error::{Error, Result};
pub use fixedpoint::{FixedComplex, ScalingMode};
pub use twiddle::{ComplexFloat, TwiddleWord};

/// Returns `log2(n)` when `n` is a power of two no smaller than 2.
pub fn checked_log2(n: usize) -> Result<u32> {
    if n >= 2 && n.is_power_of_two() {
        Ok(n.trailing_zeros())
    } else {
        Err(Error::InvalidSize(n))
    }
}
