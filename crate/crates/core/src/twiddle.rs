// SPDX-License-Identifier: Apache-2.0

//! Twiddle factors `W_n^k = exp(-j 2 pi k / n)` and their hardware words.
//!
//! A twiddle becomes a hardware word in five steps: evaluate the complex
//! exponential, scale both parts by `2^(W-1) - 1`, round half away from zero,
//! take the W-bit two's-complement bits of each part, and concatenate them
//! with the imaginary part in the high half and the real part in the low half.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt::Write as _;
use core::ops::{Add, Mul, Neg, Sub};

use crate::fixedpoint::FixedComplex;
use crate::{checked_log2, Error, Result};

/// Widest component the encoder supports; a word then fills 64 bits.
pub const MAX_WIDTH: u32 = 32;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ComplexFloat {
    pub re: f64,
    pub im: f64,
}

impl ComplexFloat {
    pub const ZERO: ComplexFloat = ComplexFloat { re: 0.0, im: 0.0 };

    pub const fn new(re: f64, im: f64) -> Self {
        ComplexFloat { re, im }
    }

    /// `exp(j * theta)`.
    pub fn from_angle(theta: f64) -> Self {
        ComplexFloat::new(libm::cos(theta), libm::sin(theta))
    }

    pub fn conj(self) -> Self {
        ComplexFloat::new(self.re, -self.im)
    }

    pub fn norm_sqr(self) -> f64 {
        self.re * self.re + self.im * self.im
    }

    pub fn norm(self) -> f64 {
        libm::sqrt(self.norm_sqr())
    }

    pub fn scale(self, s: f64) -> Self {
        ComplexFloat::new(self.re * s, self.im * s)
    }

    pub fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

impl Add for ComplexFloat {
    type Output = ComplexFloat;
    fn add(self, rhs: Self) -> Self {
        ComplexFloat::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for ComplexFloat {
    type Output = ComplexFloat;
    fn sub(self, rhs: Self) -> Self {
        ComplexFloat::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Mul for ComplexFloat {
    type Output = ComplexFloat;
    fn mul(self, rhs: Self) -> Self {
        ComplexFloat::new(self.re * rhs.re - self.im * rhs.im, self.re * rhs.im + self.im * rhs.re)
    }
}

impl Neg for ComplexFloat {
    type Output = ComplexFloat;
    fn neg(self) -> Self {
        ComplexFloat::new(-self.re, -self.im)
    }
}

/// A twiddle factor together with its quantized parts and packed word.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwiddleWord {
    pub n: usize,
    pub k: usize,
    pub value: ComplexFloat,
    pub fixed: FixedComplex,
    /// `{im, re}`, each `width` bits.
    pub word: u64,
    pub width: u32,
}

impl TwiddleWord {
    pub fn new(n: usize, k: usize, width: u32) -> Result<Self> {
        let value = compute_twiddle(n, k)?;
        let fixed = quantize(value, width)?;
        let word = encode_word(fixed, width)?;
        Ok(TwiddleWord { n, k, value, fixed, word, width })
    }

    /// Verilog sized hex literal, e.g. `32'hA57E5A82`.
    pub fn verilog_literal(&self) -> String {
        let bits = 2 * self.width;
        let digits = bits.div_ceil(4) as usize;
        format!("{bits}'h{:0digits$X}", self.word)
    }
}

fn check_width(width: u32) -> Result<()> {
    if (2..=MAX_WIDTH).contains(&width) {
        Ok(())
    } else {
        Err(Error::InvalidWidth(width))
    }
}

/// Largest positive W-bit value, used as the twiddle scale factor.
pub fn scale_factor(width: u32) -> i64 {
    (1i64 << (width - 1)) - 1
}

/// `W_n^k = cos(2 pi k / n) - j sin(2 pi k / n)` for `0 <= k < n/2`.
pub fn compute_twiddle(n: usize, k: usize) -> Result<ComplexFloat> {
    checked_log2(n)?;
    if k >= n / 2 {
        return Err(Error::IndexOutOfRange { n, k });
    }
    let theta = 2.0 * PI * k as f64 / n as f64;
    Ok(ComplexFloat::new(libm::cos(theta), -libm::sin(theta)))
}

/// Scale by `2^(width-1) - 1` and round half away from zero.
pub fn quantize(c: ComplexFloat, width: u32) -> Result<FixedComplex> {
    check_width(width)?;
    let part = |v: f64| -> Result<i64> {
        if !v.is_finite() || !(-1.0..=1.0).contains(&v) {
            return Err(Error::OutOfUnitRange);
        }
        // libm::round ties away from zero
        Ok(libm::round(v * scale_factor(width) as f64) as i64)
    };
    FixedComplex::new(part(c.re)?, part(c.im)?, width)
}

/// Pack `{im, re}` into a `2 * width`-bit word.
pub fn encode_word(f: FixedComplex, width: u32) -> Result<u64> {
    check_width(width)?;
    let min = -(1i64 << (width - 1));
    let max = (1i64 << (width - 1)) - 1;
    for v in [f.re(), f.im()] {
        if v < min || v > max {
            return Err(Error::ComponentOverflow { value: v, width });
        }
    }
    let mask = (1u64 << width) - 1;
    Ok(((f.im() as u64 & mask) << width) | (f.re() as u64 & mask))
}

/// Inverse of [`encode_word`].
pub fn decode_word(word: u64, width: u32) -> Result<FixedComplex> {
    check_width(width)?;
    let mask = (1u64 << width) - 1;
    let sign_extend = |bits: u64| -> i64 {
        let shift = 64 - width;
        ((bits << shift) as i64) >> shift
    };
    FixedComplex::new(sign_extend(word & mask), sign_extend((word >> width) & mask), width)
}

/// Twiddles `k = 0 .. n/2` for an `n`-point FFT.
pub fn twiddle_table(n: usize, width: u32) -> Result<Vec<TwiddleWord>> {
    checked_log2(n)?;
    check_width(width)?;
    (0..n / 2).map(|k| TwiddleWord::new(n, k, width)).collect()
}

/// `0101,1010,1000,0010` style: MSB first, a comma every four bits.
pub fn grouped_binary(value: u64, bits: u32) -> String {
    let mut out = String::with_capacity(bits as usize * 5 / 4);
    for i in (0..bits).rev() {
        out.push(if (value >> i) & 1 == 1 { '1' } else { '0' });
        if i != 0 && i % 4 == 0 {
            out.push(',');
        }
    }
    out
}

/// Full word as `<imag bits>, <real bits>`.
pub fn word_binary(word: u64, width: u32) -> String {
    let mask = (1u64 << width) - 1;
    format!("{}, {}", grouped_binary((word >> width) & mask, width), grouped_binary(word & mask, width))
}

/// The five intermediate results for one twiddle, as a person would write
/// them down by hand.
///
/// The hand computation scales the four-decimal value from step one
/// (`0.7071 * 32767 = 23169.5457`); the rounded integers come from the full
/// precision value so they always agree with [`quantize`].
#[derive(Debug, Clone, PartialEq)]
pub struct FiveStepTrace {
    pub n: usize,
    pub k: usize,
    pub width: u32,
    /// Step one, full precision.
    pub value: ComplexFloat,
    /// Step one, rounded to four decimals.
    pub value_display: ComplexFloat,
    pub scale: i64,
    /// Step two, computed from `value_display`.
    pub scaled_display: ComplexFloat,
    /// Step two, computed from `value`.
    pub scaled: ComplexFloat,
    /// Step three.
    pub fixed: FixedComplex,
    /// Step four.
    pub re_bits: String,
    pub im_bits: String,
    /// Step five.
    pub word: u64,
    pub word_bits: String,
}

pub fn five_step_trace(n: usize, k: usize, width: u32) -> Result<FiveStepTrace> {
    let tw = TwiddleWord::new(n, k, width)?;
    let scale = scale_factor(width);
    let round4 = |v: f64| libm::round(v * 1e4) / 1e4;
    let value_display = ComplexFloat::new(round4(tw.value.re), round4(tw.value.im));
    let mask = (1u64 << width) - 1;
    Ok(FiveStepTrace {
        n,
        k,
        width,
        value: tw.value,
        value_display,
        scale,
        scaled_display: value_display.scale(scale as f64),
        scaled: tw.value.scale(scale as f64),
        fixed: tw.fixed,
        re_bits: grouped_binary(tw.word & mask, width),
        im_bits: grouped_binary((tw.word >> width) & mask, width),
        word: tw.word,
        word_bits: word_binary(tw.word, width),
    })
}

/// Signed four-decimal float, with `-0.0000` printed as `0.0000`.
pub(crate) fn fmt4(v: f64) -> String {
    let s = format!("{v:.4}");
    if s == "-0.0000" {
        String::from("0.0000")
    } else {
        s
    }
}

/// `0.7071 - 0.7071i`.
pub(crate) fn fmt_complex4(c: ComplexFloat) -> String {
    let re = fmt4(c.re);
    let im = fmt4(c.im);
    match im.strip_prefix('-') {
        Some(mag) => format!("{re} - {mag}i"),
        None => format!("{re} + {im}i"),
    }
}

/// Human-readable table: one row per twiddle with both parts and the
/// nibble-grouped word.
pub fn render_table(table: &[TwiddleWord]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{:<10} {:>8} {:>9}  word", "twiddle", "re", "im");
    for tw in table {
        let _ = writeln!(
            out,
            "{:<10} {:>8} {:>8}i  {}",
            format!("W_{}^{}", tw.n, tw.k),
            fmt4(tw.value.re),
            fmt4(tw.value.im),
            word_binary(tw.word, tw.width)
        );
    }
    out
}

/// Verilog localparam for one twiddle, named `TW_<k>`.
pub fn localparam_line(tw: &TwiddleWord) -> String {
    format!(
        "localparam [2*DATA_WIDTH-1:0] TW_{} = {}; // W_{}^{} = {}",
        tw.k,
        tw.verilog_literal(),
        tw.n,
        tw.k,
        fmt_complex4(tw.value)
    )
}

/// Localparam block for a whole table, one line per twiddle.
pub fn render_localparams(table: &[TwiddleWord]) -> String {
    let mut out = String::new();
    for tw in table {
        out.push_str(&localparam_line(tw));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fc(re: i64, im: i64) -> FixedComplex {
        FixedComplex::new(re, im, 16).unwrap()
    }

    #[test]
    fn twiddle_examples() {
        let w = compute_twiddle(8, 1).unwrap();
        assert!(
            (w.re - core::f64::consts::FRAC_1_SQRT_2).abs() < 1e-6
                && (w.im + core::f64::consts::FRAC_1_SQRT_2).abs() < 1e-6
        );
        assert_eq!(compute_twiddle(8, 0).unwrap(), ComplexFloat::new(1.0, 0.0));
        let w = compute_twiddle(16, 4).unwrap();
        assert!(w.re.abs() < 1e-15);
        assert_eq!(w.im, -1.0);
    }

    #[test]
    fn twiddle_errors() {
        assert_eq!(compute_twiddle(12, 1), Err(Error::InvalidSize(12)));
        assert_eq!(compute_twiddle(1, 0), Err(Error::InvalidSize(1)));
        assert_eq!(compute_twiddle(8, 4), Err(Error::IndexOutOfRange { n: 8, k: 4 }));
    }

    #[test]
    fn quantize_examples() {
        let w81 = compute_twiddle(8, 1).unwrap();
        assert_eq!(quantize(w81, 16).unwrap(), fc(23170, -23170));
        assert_eq!(quantize(ComplexFloat::new(1.0, 0.0), 16).unwrap(), fc(32767, 0));
        let w161 = compute_twiddle(16, 1).unwrap();
        assert_eq!(quantize(w161, 16).unwrap(), fc(30273, -12539));
    }

    #[test]
    fn quantize_rejects_out_of_range() {
        assert_eq!(quantize(ComplexFloat::new(1.5, 0.0), 16), Err(Error::OutOfUnitRange));
        assert_eq!(quantize(ComplexFloat::new(0.0, f64::NAN), 16), Err(Error::OutOfUnitRange));
        assert_eq!(quantize(ComplexFloat::new(0.0, 0.0), 1), Err(Error::InvalidWidth(1)));
    }

    #[test]
    fn quantize_ties_round_away_from_zero() {
        // 0.5 / 3 * 3 = 0.5 exactly representable at width 3 (scale 3)
        let q = quantize(ComplexFloat::new(0.5, -0.5), 3).unwrap();
        assert_eq!((q.re(), q.im()), (2, -2));
    }

    #[test]
    fn encode_examples() {
        assert_eq!(encode_word(fc(23170, -23170), 16).unwrap(), 0b1010_0101_0111_1110_0101_1010_1000_0010);
        assert_eq!(encode_word(fc(0, 0), 16).unwrap(), 0);
        assert_eq!(encode_word(fc(0, -32767), 16).unwrap(), 0b1000_0000_0000_0001_0000_0000_0000_0000);
    }

    #[test]
    fn encode_overflow() {
        let wide = FixedComplex::new(40000, 0, 17).unwrap();
        assert_eq!(encode_word(wide, 16), Err(Error::ComponentOverflow { value: 40000, width: 16 }));
    }

    #[test]
    fn table_examples() {
        let t = twiddle_table(2, 16).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].word, 0x0000_7FFF);
        let t = twiddle_table(8, 16).unwrap();
        assert_eq!(t[2].word, 0x8001_0000);
        assert_eq!(twiddle_table(6, 16), Err(Error::InvalidSize(6)));
    }

    #[test]
    fn w8_words() {
        // Decoded from the published 16-point table.
        let expected: [u64; 8] =
            [0x0000_7FFF, 0xCF05_7641, 0xA57E_5A82, 0x89BF_30FB, 0x8001_0000, 0x89BF_CF05, 0xA57E_A57E, 0xCF05_89BF];
        let words: Vec<u64> = twiddle_table(16, 16).unwrap().iter().map(|t| t.word).collect();
        assert_eq!(words, expected);
    }

    #[test]
    fn binary_formatting() {
        assert_eq!(grouped_binary(0x5A82, 16), "0101,1010,1000,0010");
        assert_eq!(word_binary(0xA57E_5A82, 16), "1010,0101,0111,1110, 0101,1010,1000,0010");
        assert_eq!(grouped_binary(0b101, 3), "101");
        assert_eq!(grouped_binary(0b1_0101, 5), "1,0101");
    }

    #[test]
    fn five_steps_for_w8_1() {
        let t = five_step_trace(8, 1, 16).unwrap();
        assert_eq!(fmt_complex4(t.value_display), "0.7071 - 0.7071i");
        assert!((t.scaled_display.re - 23169.5457).abs() < 1e-3);
        assert!((t.scaled_display.im + 23169.5457).abs() < 1e-3);
        assert_eq!((t.fixed.re(), t.fixed.im()), (23170, -23170));
        assert_eq!(t.re_bits, "0101,1010,1000,0010");
        assert_eq!(t.im_bits, "1010,0101,0111,1110");
        assert_eq!(t.word, 0xA57E_5A82);
    }

    #[test]
    fn localparam_rendering() {
        let tw = TwiddleWord::new(8, 1, 16).unwrap();
        assert_eq!(
            localparam_line(&tw),
            "localparam [2*DATA_WIDTH-1:0] TW_1 = 32'hA57E5A82; // W_8^1 = 0.7071 - 0.7071i"
        );
        let tw = TwiddleWord::new(2, 0, 5).unwrap();
        assert_eq!(tw.verilog_literal(), "10'h00F");
    }

    #[test]
    fn human_table_rows() {
        let text = render_table(&twiddle_table(16, 16).unwrap());
        let rows: Vec<&str> = text.lines().skip(1).collect();
        assert_eq!(rows.len(), 8);
        assert!(rows[0].starts_with("W_16^0"));
        assert!(rows[0].ends_with("0000,0000,0000,0000, 0111,1111,1111,1111"));
        assert!(rows[4].contains("0.0000") && rows[4].contains("-1.0000i"));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn conj_negates_imag(re in -1.0f64..=1.0, im in -1.0f64..=1.0, width in 4u32..=32) {
                let scaled = im * scale_factor(width) as f64;
                prop_assume!((scaled.abs().fract() - 0.5).abs() > 1e-9);
                let c = ComplexFloat::new(re, im);
                let q = quantize(c, width).unwrap();
                let qc = quantize(c.conj(), width).unwrap();
                prop_assert_eq!(qc.im(), -q.im());
                prop_assert_eq!(qc.re(), q.re());
            }

            #[test]
            fn word_round_trips(re in -32768i64..=32767, im in -32768i64..=32767) {
                let f = FixedComplex::new(re, im, 16).unwrap();
                prop_assert_eq!(decode_word(encode_word(f, 16).unwrap(), 16).unwrap(), f);
            }
        }
    }

    #[test]
    fn decode_recovers_every_table_entry() {
        for log in 1..=6 {
            let n = 1usize << log;
            for width in [4, 8, 12, 16, 24, 32] {
                for tw in twiddle_table(n, width).unwrap() {
                    assert_eq!(decode_word(tw.word, width).unwrap(), tw.fixed);
                    let bound = scale_factor(width);
                    assert!(tw.fixed.re().abs() <= bound && tw.fixed.im().abs() <= bound);
                }
            }
        }
    }

    #[test]
    fn doubled_size_even_indices_match() {
        for log in 1..=6 {
            let n = 1usize << log;
            let small = twiddle_table(n, 16).unwrap();
            let big = twiddle_table(2 * n, 16).unwrap();
            for (k, tw) in small.iter().enumerate() {
                assert_eq!(big[2 * k].word, tw.word, "n={n} k={k}");
            }
        }
    }
}
