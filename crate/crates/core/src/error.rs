// SPDX-License-Identifier: Apache-2.0

use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// FFT size is not a power of two (or is below the minimum of 2).
    InvalidSize(usize),
    IndexOutOfRange {
        n: usize,
        k: usize,
    },
    InvalidWidth(u32),
    /// A float component outside `[-1, 1]` (or not finite) was handed to the quantizer.
    OutOfUnitRange,
    ComponentOverflow {
        value: i64,
        width: u32,
    },
    WidthMismatch {
        expected: u32,
        found: u32,
    },
    LengthMismatch {
        expected: usize,
        found: usize,
    },
    CyclicGraph,
    /// A data edge runs backwards in stage order.
    StageOrder {
        from: usize,
        to: usize,
    },
    EmptyVectors,
    InvalidConfig(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidSize(n) => write!(f, "FFT size {n} is not a power of two >= 2"),
            Error::IndexOutOfRange { n, k } => {
                write!(f, "twiddle index {k} out of range for {n}-point FFT (need k < {})", n / 2)
            }
            Error::InvalidWidth(w) => write!(f, "unsupported bit width {w}"),
            Error::OutOfUnitRange => write!(f, "value outside the unit range [-1, 1]"),
            Error::ComponentOverflow { value, width } => {
                write!(f, "{value} does not fit in {width}-bit two's complement")
            }
            Error::WidthMismatch { expected, found } => {
                write!(f, "width mismatch: expected {expected} bits, found {found}")
            }
            Error::LengthMismatch { expected, found } => {
                write!(f, "length mismatch: expected {expected}, found {found}")
            }
            Error::CyclicGraph => write!(f, "graph contains a cycle"),
            Error::StageOrder { from, to } => {
                write!(f, "data edge from node {from} to node {to} violates stage order")
            }
            Error::EmptyVectors => write!(f, "no test vectors supplied"),
            Error::InvalidConfig(why) => write!(f, "invalid configuration: {why}"),
        }
    }
}

impl core::error::Error for Error {}
