// SPDX-License-Identifier: Apache-2.0

use fftgen_core::twiddle::{word_binary, TwiddleWord};
use serde::{Deserialize, Serialize};

/// One twiddle factor in machine-readable form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TwiddleRecord {
    pub n: usize,
    pub k: usize,
    pub width: u32,
    pub re: f64,
    pub im: f64,
    pub re_fixed: i64,
    pub im_fixed: i64,
    /// `0x`-prefixed, upper-case, zero-padded to the word width.
    pub word: String,
    /// Imaginary bits, then real bits, grouped by four.
    pub bits: String,
}

impl From<&TwiddleWord> for TwiddleRecord {
    fn from(tw: &TwiddleWord) -> Self {
        let digits = (2 * tw.width).div_ceil(4) as usize;
        TwiddleRecord {
            n: tw.n,
            k: tw.k,
            width: tw.width,
            re: tw.value.re,
            im: tw.value.im,
            re_fixed: tw.fixed.re(),
            im_fixed: tw.fixed.im(),
            word: format!("0x{:0digits$X}", tw.word),
            bits: word_binary(tw.word, tw.width),
        }
    }
}

/// Pretty JSON array, newline-terminated.
pub fn twiddle_records_json(table: &[TwiddleWord]) -> serde_json::Result<String> {
    let records: Vec<TwiddleRecord> = table.iter().map(TwiddleRecord::from).collect();
    let mut text = serde_json::to_string_pretty(&records)?;
    text.push('\n');
    Ok(text)
}
