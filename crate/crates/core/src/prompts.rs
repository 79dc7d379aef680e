// SPDX-License-Identifier: Apache-2.0

//! Prompt packs for replaying the incremental FFT construction with a
//! language model: an IP-core request, question/answer example pairs that
//! grow the core one level at a time, the target question, and worked
//! twiddle-encoding examples.
//!
//! Answers are the emitter's own output, so a pack never disagrees with the
//! generated Verilog.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write as _;

use crate::codegen::{emit_fft_level, EmitConfig};
use crate::twiddle::{five_step_trace, fmt4, fmt_complex4};
use crate::{checked_log2, Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IclPair {
    pub m: usize,
    pub question: String,
    pub answer: String,
}

impl IclPair {
    pub fn render(&self) -> String {
        format!("=== QUESTION ===\n{}\n=== ANSWER ===\n{}", self.question, self.answer)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PromptKind {
    IpCore,
    IclPair(usize),
    Target(usize),
    Cot,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PromptEntry {
    pub kind: PromptKind,
    pub file_name: String,
    pub text: String,
}

/// Entries are in replay order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PromptPack {
    pub n_example: usize,
    pub n_target: usize,
    pub width: u32,
    pub pairs: Vec<IclPair>,
    pub entries: Vec<PromptEntry>,
}

fn level_question(cfg: &EmitConfig, m: usize) -> Result<String> {
    let half = m / 2;
    let given = emit_fft_level(cfg, half)?.render();
    let mut q = String::new();
    let _ = writeln!(q, "Here is fft{half}, a {half}-point FFT module:");
    let _ = writeln!(q);
    q.push_str(&given);
    let _ = writeln!(q);
    let _ = writeln!(
        q,
        "Using fft{half}, write fft{m}, a {m}-point FFT module in Verilog, with the same ports and parameters."
    );
    let _ = writeln!(q, "Structure (decimation in frequency):");
    let _ = writeln!(q, "- {half} butterfly instances pair x[i] with x[i+{half}];");
    let _ = writeln!(q, "- {half} cmult instances multiply difference i by twiddle TW_i = W_{m}^i;");
    let _ = writeln!(q, "- two fft{half} instances transform the sums and the products.");
    let _ = writeln!(q, "Enable each stage with the AND of every done signal of the stage before it.");
    let _ = writeln!(q, "Leave the outputs in bit-reversed order.");
    Ok(q)
}

/// Example pair growing the core from `m/2` to `m` points. The answer is
/// exactly the emitted `fft<m>` module.
pub fn build_icl_pair(cfg: &EmitConfig, m: usize) -> Result<IclPair> {
    cfg.validate()?;
    if m < 4 {
        return Err(Error::InvalidSize(m));
    }
    checked_log2(m)?;
    Ok(IclPair { m, question: level_question(cfg, m)?, answer: emit_fft_level(cfg, m)?.render() })
}

/// Question for the target size, phrased like the example pairs.
pub fn build_target_question(cfg: &EmitConfig, n_target: usize) -> Result<String> {
    cfg.validate()?;
    if n_target < 4 {
        return Err(Error::InvalidSize(n_target));
    }
    checked_log2(n_target)?;
    level_question(cfg, n_target)
}

/// Request for the two leaf IP cores every level instantiates.
pub fn build_ip_core_prompt(cfg: &EmitConfig) -> Result<String> {
    cfg.validate()?;
    let w = cfg.width;
    let mut p = String::new();
    let _ = writeln!(p, "Write two Verilog IP cores for a fixed-point FFT.");
    let _ = writeln!(p);
    let _ = writeln!(p, "Common rules:");
    let _ =
        writeln!(p, "- parameter DATA_WIDTH (default {w}); complex values are packed {{im, re}} in 2*DATA_WIDTH bits;");
    let _ = writeln!(p, "- ports clk, rst_n, enable and done; done stays high until enable falls;");
    let _ = writeln!(p, "- asynchronous active-low reset: always @(posedge clk or negedge rst_n);");
    let _ = writeln!(p, "- every port declares its net type (wire or reg).");
    let _ = writeln!(p);
    let _ = writeln!(p, "1. butterfly: inputs a, b; registered outputs sum = a + b and diff = a - b.");
    let _ = writeln!(
        p,
        "   Parameter SCALE: 1 halves both outputs (arithmetic shift), 0 keeps DATA_WIDTH bits with wrap-around."
    );
    let _ = writeln!(p, "2. cmult: inputs a, w; output p = a * w, rounded by adding 2^(DATA_WIDTH-2)");
    let _ = writeln!(p, "   and shifted right by DATA_WIDTH-1; parameter DELAY sets the cycles from enable to done.");
    Ok(p)
}

/// Worked encodings of `W_{n_example}^k` for every `k < n_example/2`, then
/// the request for `n_target`.
pub fn build_cot_prompt(n_example: usize, n_target: usize, width: u32) -> Result<String> {
    checked_log2(n_example)?;
    checked_log2(n_target)?;
    if n_example >= n_target {
        return Err(Error::InvalidSize(n_target));
    }
    let ne = n_example;
    let bits = 2 * width;
    let mut p = String::new();
    let _ = writeln!(p, "Encode FFT twiddle factors as {bits}-bit words.");
    let _ = writeln!(p, "W_N^k = e^(-j*2*pi*k/N). Worked examples for N = {ne}, k = 0..{}:", ne / 2 - 1);
    for k in 0..ne / 2 {
        let t = five_step_trace(ne, k, width)?;
        let _ = writeln!(p);
        let _ = writeln!(p, "W_{ne}^{k}");
        let _ = writeln!(p, "  Step 1 (evaluate): W_{ne}^{k} = {}", fmt_complex4(t.value));
        let _ = writeln!(
            p,
            "  Step 2 (scale by 2^{} - 1 = {}): re = {}, im = {}",
            width - 1,
            t.scale,
            fmt4(t.scaled_display.re),
            fmt4(t.scaled_display.im)
        );
        let _ = writeln!(p, "  Step 3 (round): re = {}, im = {}", t.fixed.re(), t.fixed.im());
        let _ = writeln!(p, "  Step 4 ({width}-bit two's complement): re = {}, im = {}", t.re_bits, t.im_bits);
        let _ = writeln!(
            p,
            "  Step 5 (concatenate, imaginary part high): {} = {bits}'h{:0digits$X}",
            t.word_bits,
            t.word,
            digits = bits.div_ceil(4) as usize
        );
    }
    let _ = writeln!(p);
    let _ = writeln!(
        p,
        "Now give the {bits}-bit words for W_{n_target}^k, k = 0..{}, using the same five steps.",
        n_target / 2 - 1
    );
    Ok(p)
}

/// Full pack for `cfg.n`: IP-core request, pairs 4 .. n/2, target question,
/// twiddle examples. Examples use `min(8, n/2)` points.
pub fn build_prompt_pack(cfg: &EmitConfig) -> Result<PromptPack> {
    cfg.validate()?;
    let n = cfg.n;
    if n < 4 {
        return Err(Error::InvalidSize(n));
    }
    let n_example = (n / 2).min(8);
    let mut entries = vec![PromptEntry {
        kind: PromptKind::IpCore,
        file_name: String::from("01_ip_cores.txt"),
        text: build_ip_core_prompt(cfg)?,
    }];
    let mut pairs = Vec::new();
    let mut m = 4;
    while m < n {
        let pair = build_icl_pair(cfg, m)?;
        entries.push(PromptEntry {
            kind: PromptKind::IclPair(m),
            file_name: format!("{:02}_example_fft{m}.txt", entries.len() + 1),
            text: pair.render(),
        });
        pairs.push(pair);
        m *= 2;
    }
    entries.push(PromptEntry {
        kind: PromptKind::Target(n),
        file_name: format!("{:02}_target_fft{n}.txt", entries.len() + 1),
        text: build_target_question(cfg, n)?,
    });
    entries.push(PromptEntry {
        kind: PromptKind::Cot,
        file_name: format!("{:02}_twiddles.txt", entries.len() + 1),
        text: build_cot_prompt(n_example, n, cfg.width)?,
    });
    Ok(PromptPack { n_example, n_target: n, width: cfg.width, pairs, entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codegen::lint_structural;

    fn cfg(n: usize) -> EmitConfig {
        EmitConfig::new(n, 16)
    }

    #[test]
    fn pair_instance_counts() {
        for (m, bf, cm) in [(4usize, 2usize, 2usize), (8, 4, 4)] {
            let pair = build_icl_pair(&cfg(16), m).unwrap();
            assert_eq!(pair.answer.matches("    butterfly #(").count(), bf);
            assert_eq!(pair.answer.matches("    cmult #(").count(), cm);
            assert_eq!(pair.answer.matches(&format!("    fft{} #(", m / 2)).count(), 2);
            assert!(pair.question.contains(&format!("module fft{}", m / 2)));
            assert_eq!(lint_structural(&pair.answer), []);
        }
    }

    #[test]
    fn pair_answer_is_the_emitted_level() {
        let c = cfg(32);
        for m in [4, 8, 16] {
            assert_eq!(build_icl_pair(&c, m).unwrap().answer, emit_fft_level(&c, m).unwrap().render());
        }
        assert_eq!(build_icl_pair(&c, 2), Err(Error::InvalidSize(2)));
        assert_eq!(build_icl_pair(&c, 12), Err(Error::InvalidSize(12)));
    }

    #[test]
    fn cot_worked_example() {
        let p = build_cot_prompt(8, 16, 16).unwrap();
        for k in 0..4 {
            assert!(p.contains(&format!("W_8^{k}\n")));
        }
        assert!(!p.contains("W_8^4"));
        assert!(p.contains("Step 1 (evaluate): W_8^1 = 0.7071 - 0.7071i"));
        assert!(p.contains("re = 23169.5457, im = -23169.5457"));
        assert!(p.contains("Step 3 (round): re = 23170, im = -23170"));
        assert!(p.contains("re = 0101,1010,1000,0010, im = 1010,0101,0111,1110"));
        assert!(p.contains("1010,0101,0111,1110, 0101,1010,1000,0010 = 32'hA57E5A82"));
        assert!(p.trim_end().ends_with("W_16^k, k = 0..7, using the same five steps."));
    }

    #[test]
    fn cot_target_may_skip_sizes() {
        let a = build_cot_prompt(8, 16, 16).unwrap();
        let b = build_cot_prompt(8, 64, 16).unwrap();
        let body = |s: &str| s.lines().filter(|l| !l.starts_with("Now")).map(String::from).collect::<Vec<_>>();
        assert_eq!(body(&a), body(&b));
        assert!(b.contains("W_64^k, k = 0..31"));
        assert_eq!(build_cot_prompt(16, 16, 16), Err(Error::InvalidSize(16)));
        assert_eq!(build_cot_prompt(6, 16, 16), Err(Error::InvalidSize(6)));
    }

    #[test]
    fn pack_order() {
        let kinds: Vec<PromptKind> = build_prompt_pack(&cfg(16)).unwrap().entries.iter().map(|e| e.kind).collect();
        assert_eq!(
            kinds,
            [
                PromptKind::IpCore,
                PromptKind::IclPair(4),
                PromptKind::IclPair(8),
                PromptKind::Target(16),
                PromptKind::Cot
            ]
        );
        let small = build_prompt_pack(&cfg(4)).unwrap();
        let kinds: Vec<PromptKind> = small.entries.iter().map(|e| e.kind).collect();
        assert_eq!(kinds, [PromptKind::IpCore, PromptKind::Target(4), PromptKind::Cot]);
        assert_eq!(small.n_example, 2);
        let names: Vec<&str> = small.entries.iter().map(|e| e.file_name.as_str()).collect();
        assert_eq!(names, ["01_ip_cores.txt", "02_target_fft4.txt", "03_twiddles.txt"]);
        assert_eq!(build_prompt_pack(&cfg(2)), Err(Error::InvalidSize(2)));
    }

    #[test]
    fn pack_is_deterministic() {
        assert_eq!(build_prompt_pack(&cfg(64)).unwrap(), build_prompt_pack(&cfg(64)).unwrap());
    }
}
