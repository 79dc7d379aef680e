// SPDX-License-Identifier: Apache-2.0

//! File formats, verification runner and command-line front end for
//! `fftgen-core`.

pub mod cli;
pub mod files;
pub mod records;
pub mod verify;

pub use cli::run;
