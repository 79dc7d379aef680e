// SPDX-License-Identifier: Apache-2.0

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::hdl::{HdlModule, Instance, LocalParam, NetType};
use super::EmitConfig;
use crate::fixedpoint::{FixedComplex, ScalingMode};
use crate::flowgraph::{output_permutation, OutputOrder};
use crate::oracle::{constant, fft_fixed_reference, impulse, input_bound, random_vector};
use crate::{Error, Result};

/// One stimulus and the outputs the core must produce for it, in the
/// core's output order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TestVector {
    pub label: String,
    pub input: Vec<FixedComplex>,
    pub expected: Vec<FixedComplex>,
}

impl TestVector {
    /// Expected outputs come from the fixed-point reference, reordered when
    /// the core emits raw (bit-reversed) bins.
    pub fn new(cfg: &EmitConfig, label: impl Into<String>, input: Vec<FixedComplex>) -> Result<Self> {
        cfg.validate()?;
        if input.len() != cfg.n {
            return Err(Error::LengthMismatch { expected: cfg.n, found: input.len() });
        }
        if let Some(x) = input.iter().find(|x| x.width() != cfg.width) {
            return Err(Error::WidthMismatch { expected: cfg.width, found: x.width() });
        }
        let natural = fft_fixed_reference(&input, cfg.scaling)?;
        let expected = match cfg.order {
            OutputOrder::Natural => natural,
            OutputOrder::Raw => {
                let perm = output_permutation(cfg.n)?;
                let mut raw = vec![FixedComplex::zero(cfg.width); cfg.n];
                for (i, &p) in perm.iter().enumerate() {
                    raw[p] = natural[i];
                }
                raw
            }
        };
        Ok(TestVector { label: label.into(), input, expected })
    }
}

/// Impulse, constant, then `random` seeded vectors drawn from `seed`,
/// `seed + 1`, ...
pub fn default_vectors(cfg: &EmitConfig, random: usize, seed: u64) -> Result<Vec<TestVector>> {
    cfg.validate()?;
    let (n, w) = (cfg.n, cfg.width);
    let bound = input_bound(n, w, cfg.scaling);
    let level = match cfg.scaling {
        ScalingMode::PerStageHalving => 64,
        ScalingMode::None => 8,
    }
    .min(bound);
    let mut out = vec![
        TestVector::new(cfg, "impulse", impulse(n, w, bound)?)?,
        TestVector::new(cfg, "constant", constant(n, FixedComplex::new(level, 0, w)?))?,
    ];
    for i in 0..random {
        let s = seed.wrapping_add(i as u64);
        out.push(TestVector::new(cfg, format!("random seed {s}"), random_vector(n, w, bound, s))?);
    }
    Ok(out)
}

/// Bus literal with element 0 in the low bits, each packed `{im, re}`.
fn bus_literal(values: &[FixedComplex], width: u32) -> String {
    let total = values.len() * 2 * width as usize;
    let mut bits = Vec::with_capacity(total);
    for v in values {
        let word = v.packed();
        bits.extend((0..2 * width).map(|b| (word >> b) & 1 == 1));
    }
    let digits = total.div_ceil(4);
    let mut hex = String::with_capacity(digits);
    for d in (0..digits).rev() {
        let nibble = (0..4).fold(0u32, |acc, b| acc | (u32::from(*bits.get(4 * d + b).unwrap_or(&false)) << b));
        hex.push(char::from_digit(nibble, 16).unwrap_or('0').to_ascii_uppercase());
    }
    format!("{total}'h{hex}")
}

/// Self-checking testbench `tb_fft<n>`: applies each vector, waits for the
/// top-level done, compares `y` against the embedded expected constant and
/// prints PASS or FAIL per vector.
pub fn emit_testbench(cfg: &EmitConfig, vectors: &[TestVector]) -> Result<HdlModule> {
    cfg.validate()?;
    if vectors.is_empty() {
        return Err(Error::EmptyVectors);
    }
    for v in vectors {
        if v.input.len() != cfg.n || v.expected.len() != cfg.n {
            return Err(Error::LengthMismatch { expected: cfg.n, found: v.input.len().min(v.expected.len()) });
        }
    }
    let n = cfg.n;
    let top = format!("fft{n}");
    let mut m = HdlModule::new(format!("tb_{top}"));
    m.preamble.push("`timescale 1ns / 1ps".into());
    m.header = vec![
        format!("Self-checking testbench for {top}: {} vectors.", vectors.len()),
        "Each check applies x, raises enable, waits for done and compares y with the expected constant.".into(),
    ];
    m.localparams.push(LocalParam {
        name: "DATA_WIDTH".into(),
        width: None,
        signed: false,
        value: format!("{}", cfg.width),
        comment: None,
    });
    m.localparams.push(LocalParam {
        name: "N".into(),
        width: None,
        signed: false,
        value: format!("{n}"),
        comment: None,
    });
    let bus = "2*N*DATA_WIDTH";
    m.net(NetType::Reg, false, "clk", None)
        .net(NetType::Reg, false, "rst_n", None)
        .net(NetType::Reg, false, "enable", None)
        .net(NetType::Reg, false, "x", Some(bus))
        .net(NetType::Wire, false, "y", Some(bus))
        .net(NetType::Wire, false, "done", None);
    m.lines("integer errors;\n");

    let scale = match cfg.scaling {
        ScalingMode::PerStageHalving => "1",
        ScalingMode::None => "0",
    };
    let mut params = vec![("DATA_WIDTH".into(), "DATA_WIDTH".into()), ("SCALE".into(), scale.into())];
    if n > 2 {
        params.push(("DELAY".into(), format!("{}", cfg.cmult_delay)));
    }
    m.blank();
    m.instance(Instance {
        module: top,
        name: "dut".into(),
        params,
        connections: ["clk", "rst_n", "enable", "x", "y", "done"]
            .iter()
            .map(|s| (String::from(*s), String::from(*s)))
            .collect(),
    });

    m.blank();
    m.comment("10 ns clock");
    m.lines("initial clk = 1'b0;\nalways #5 clk = ~clk;\n");

    let mut script = String::from(
        "\
initial begin
    errors = 0;
    rst_n  = 1'b0;
    enable = 1'b0;
    x      = {2*N*DATA_WIDTH{1'b0}};
    repeat (2) @(posedge clk);
    @(negedge clk) rst_n = 1'b1;
",
    );
    for (i, v) in vectors.iter().enumerate() {
        let input = bus_literal(&v.input, cfg.width);
        let expected = bus_literal(&v.expected, cfg.width);
        let label = &v.label;
        script.push_str(&format!(
            "
    // Check {i}: {label}
    @(negedge clk) x = {input};
    enable = 1'b1;
    wait (done);
    @(negedge clk);
    if (y === {expected})
        $display(\"PASS {i} ({label})\");
    else begin
        $display(\"FAIL {i} ({label}): y = %h\", y);
        errors = errors + 1;
    end
    enable = 1'b0;
    wait (!done);
"
        ));
    }
    script.push_str(
        "
    if (errors == 0)
        $display(\"ALL PASS\");
    else
        $display(\"%0d FAILED\", errors);
    $finish;
end
",
    );
    m.blank();
    m.lines(&script);
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codegen::lint::lint_structural;

    #[test]
    fn five_checks_for_default_vectors() {
        let cfg = EmitConfig::new(8, 16);
        let vectors = default_vectors(&cfg, 3, 11).unwrap();
        assert_eq!(vectors.len(), 5);
        let text = emit_testbench(&cfg, &vectors).unwrap().render();
        assert_eq!(text.matches("// Check ").count(), 5);
        assert_eq!(text.matches("$display(\"PASS").count(), 5);
        assert!(text.starts_with("`timescale 1ns / 1ps\n"));
        assert_eq!(lint_structural(&text), []);
    }

    #[test]
    fn constant_vector_expectation() {
        let cfg = EmitConfig { scaling: ScalingMode::None, ..EmitConfig::new(8, 16) };
        let vectors = default_vectors(&cfg, 0, 0).unwrap();
        let c = &vectors[1];
        assert_eq!(c.expected[0], FixedComplex::new(64, 0, 16).unwrap());
        assert!(c.expected[1..].iter().all(|v| *v == FixedComplex::zero(16)));
        let halving = default_vectors(&EmitConfig::new(8, 16), 0, 0).unwrap();
        assert_eq!(halving[1].expected[0], FixedComplex::new(64, 0, 16).unwrap());
    }

    #[test]
    fn raw_order_expectation_is_bit_reversed() {
        let x = random_vector(8, 16, 1000, 5);
        let nat = TestVector::new(&EmitConfig::new(8, 16), "r", x.clone()).unwrap();
        let raw_cfg = EmitConfig { order: OutputOrder::Raw, ..EmitConfig::new(8, 16) };
        let raw = TestVector::new(&raw_cfg, "r", x).unwrap();
        for (i, p) in [0usize, 4, 2, 6, 1, 5, 3, 7].into_iter().enumerate() {
            assert_eq!(raw.expected[i], nat.expected[p]);
        }
    }

    #[test]
    fn bus_literal_packing() {
        let v = [FixedComplex::new(1, -1, 16).unwrap(), FixedComplex::new(0x7FFF, 0, 16).unwrap()];
        assert_eq!(bus_literal(&v, 16), "64'h00007FFFFFFF0001");
        // odd width: 2 elements of 2*5 bits = 20 bits
        let v = [FixedComplex::new(-1, 0, 5).unwrap(), FixedComplex::new(1, 0, 5).unwrap()];
        assert_eq!(bus_literal(&v, 5), "20'h0041F");
    }

    #[test]
    fn errors() {
        let cfg = EmitConfig::new(8, 16);
        assert_eq!(emit_testbench(&cfg, &[]), Err(Error::EmptyVectors));
        let short = random_vector(4, 16, 10, 0);
        assert!(matches!(TestVector::new(&cfg, "s", short), Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn deterministic() {
        let cfg = EmitConfig::new(16, 16);
        let a = emit_testbench(&cfg, &default_vectors(&cfg, 3, 1).unwrap()).unwrap().render();
        let b = emit_testbench(&cfg, &default_vectors(&cfg, 3, 1).unwrap()).unwrap().render();
        assert_eq!(a, b);
    }
}
