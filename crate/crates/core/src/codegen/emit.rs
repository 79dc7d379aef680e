// SPDX-License-Identifier: Apache-2.0

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::hdl::{Direction, HdlModule, Instance, LocalParam, NetType};
use super::EmitConfig;
use crate::fixedpoint::ScalingMode;
use crate::flowgraph::{output_permutation, OutputOrder};
use crate::sim::SyncMode;
use crate::twiddle::{fmt_complex4, twiddle_table, TwiddleWord};
use crate::Result;

const COMPLEX: &str = "2*DATA_WIDTH";

fn scale_param(cfg: &EmitConfig) -> u32 {
    match cfg.scaling {
        ScalingMode::PerStageHalving => 1,
        ScalingMode::None => 0,
    }
}

/// Packed complex slot `i` of a bus of `2*DATA_WIDTH`-bit elements.
fn slot(bus: &str, i: usize) -> String {
    format!("{bus}[{}*DATA_WIDTH +: 2*DATA_WIDTH]", 2 * i)
}

/// Width expression of a bus carrying `m` packed complex values.
fn bus_width(m: usize) -> String {
    format!("{}*DATA_WIDTH", 2 * m)
}

fn control_ports(m: &mut HdlModule) {
    m.port(Direction::Input, NetType::Wire, "clk", None).port(Direction::Input, NetType::Wire, "rst_n", None).port(
        Direction::Input,
        NetType::Wire,
        "enable",
        None,
    );
}

fn conns(pairs: &[(&str, String)]) -> Vec<(String, String)> {
    pairs.iter().map(|(p, e)| (String::from(*p), e.clone())).collect()
}

fn params(pairs: &[&str]) -> Vec<(String, String)> {
    pairs.iter().map(|p| (String::from(*p), String::from(*p))).collect()
}

/// Butterfly IP core: registered `sum = a + b`, `diff = a - b` on packed
/// `{im, re}` operands.
pub fn emit_butterfly(cfg: &EmitConfig) -> Result<HdlModule> {
    cfg.validate()?;
    let mut m = HdlModule::new("butterfly");
    m.header = vec![
        "Radix-2 butterfly: sum = a + b, diff = a - b on packed {im, re} operands.".into(),
        "SCALE = 1 halves both outputs with an arithmetic shift; SCALE = 0 wraps to DATA_WIDTH bits.".into(),
        "Outputs register on each enabled clock; done stays high until enable falls.".into(),
    ];
    m.param("DATA_WIDTH", cfg.width).param("SCALE", scale_param(cfg));
    control_ports(&mut m);
    m.port(Direction::Input, NetType::Wire, "a", Some(COMPLEX))
        .port(Direction::Input, NetType::Wire, "b", Some(COMPLEX))
        .port(Direction::Output, NetType::Reg, "sum", Some(COMPLEX))
        .port(Direction::Output, NetType::Reg, "diff", Some(COMPLEX))
        .port(Direction::Output, NetType::Reg, "done", None);
    for name in ["a_re", "a_im", "b_re", "b_im"] {
        m.net(NetType::Wire, true, name, Some("DATA_WIDTH"));
    }
    for name in ["sum_re", "sum_im", "diff_re", "diff_im"] {
        m.net(NetType::Wire, true, name, Some("DATA_WIDTH+1"));
    }
    m.blank();
    m.comment("operands, low half real");
    m.lines(
        "\
assign a_re = a[DATA_WIDTH-1:0];
assign a_im = a[2*DATA_WIDTH-1:DATA_WIDTH];
assign b_re = b[DATA_WIDTH-1:0];
assign b_im = b[2*DATA_WIDTH-1:DATA_WIDTH];
",
    );
    m.blank();
    m.comment("one guard bit keeps the full-precision sum and difference");
    m.lines(
        "\
assign sum_re  = a_re + b_re;
assign sum_im  = a_im + b_im;
assign diff_re = a_re - b_re;
assign diff_im = a_im - b_im;
",
    );
    m.blank();
    m.comment("asynchronous active-low reset");
    m.lines(
        "\
always @(posedge clk or negedge rst_n) begin
    if (!rst_n) begin
        sum  <= {2*DATA_WIDTH{1'b0}};
        diff <= {2*DATA_WIDTH{1'b0}};
        done <= 1'b0;
    end else if (enable) begin
        if (SCALE != 0) begin
            sum  <= {sum_im[DATA_WIDTH:1], sum_re[DATA_WIDTH:1]};
            diff <= {diff_im[DATA_WIDTH:1], diff_re[DATA_WIDTH:1]};
        end else begin
            sum  <= {sum_im[DATA_WIDTH-1:0], sum_re[DATA_WIDTH-1:0]};
            diff <= {diff_im[DATA_WIDTH-1:0], diff_re[DATA_WIDTH-1:0]};
        end
        done <= 1'b1;
    end else begin
        done <= 1'b0;
    end
end
",
    );
    Ok(m)
}

/// Complex multiplier: `p = a * w`, shrunk by `DATA_WIDTH-1` bits with
/// add-half rounding, valid `DELAY` cycles after enable rises.
pub fn emit_cmult(cfg: &EmitConfig) -> Result<HdlModule> {
    cfg.validate()?;
    let mut m = HdlModule::new("cmult");
    m.header = vec![
        "Complex multiplier: p = a * w on packed {im, re} operands.".into(),
        "Products keep full precision, then round (add half) and shift right by DATA_WIDTH-1.".into(),
        "The result is taken modulo 2^DATA_WIDTH; done rises DELAY cycles after enable and".into(),
        "stays high until enable falls.".into(),
    ];
    m.param("DATA_WIDTH", cfg.width).param("DELAY", cfg.cmult_delay);
    control_ports(&mut m);
    m.port(Direction::Input, NetType::Wire, "a", Some(COMPLEX))
        .port(Direction::Input, NetType::Wire, "w", Some(COMPLEX))
        .port(Direction::Output, NetType::Reg, "p", Some(COMPLEX))
        .port(Direction::Output, NetType::Reg, "done", None);
    m.localparams.push(LocalParam {
        name: "ROUND".into(),
        width: Some("2*DATA_WIDTH+1".into()),
        signed: true,
        value: "1 << (DATA_WIDTH-2)".into(),
        comment: Some("half an output LSB".into()),
    });
    for name in ["a_re", "a_im", "w_re", "w_im"] {
        m.net(NetType::Wire, true, name, Some("DATA_WIDTH"));
    }
    for name in ["prod_re", "prod_im", "shift_re", "shift_im"] {
        m.net(NetType::Wire, true, name, Some("2*DATA_WIDTH+1"));
    }
    m.net(NetType::Reg, false, "count", Some("32"));
    m.blank();
    m.comment("operands, low half real");
    m.lines(
        "\
assign a_re = a[DATA_WIDTH-1:0];
assign a_im = a[2*DATA_WIDTH-1:DATA_WIDTH];
assign w_re = w[DATA_WIDTH-1:0];
assign w_im = w[2*DATA_WIDTH-1:DATA_WIDTH];
",
    );
    m.blank();
    m.comment("full-precision products with rounding offset");
    m.lines(
        "\
assign prod_re  = a_re * w_re - a_im * w_im + ROUND;
assign prod_im  = a_re * w_im + a_im * w_re + ROUND;
assign shift_re = prod_re >>> (DATA_WIDTH-1);
assign shift_im = prod_im >>> (DATA_WIDTH-1);
",
    );
    m.blank();
    m.comment("latency counter, asynchronous active-low reset");
    m.lines(
        "\
always @(posedge clk or negedge rst_n) begin
    if (!rst_n) begin
        count <= 32'd0;
        p     <= {2*DATA_WIDTH{1'b0}};
        done  <= 1'b0;
    end else if (!enable) begin
        count <= 32'd0;
        done  <= 1'b0;
    end else if (count == DELAY-1) begin
        p    <= {shift_im[DATA_WIDTH-1:0], shift_re[DATA_WIDTH-1:0]};
        done <= 1'b1;
    end else begin
        count <= count + 32'd1;
    end
end
",
    );
    Ok(m)
}

fn twiddle_localparam(tw: &TwiddleWord) -> LocalParam {
    LocalParam {
        name: format!("TW_{}", tw.k),
        width: Some(COMPLEX.into()),
        signed: false,
        value: tw.verilog_literal(),
        comment: Some(format!("W_{}^{} = {}", tw.n, tw.k, fmt_complex4(tw.value))),
    }
}

/// The `m`-point level module `fft<m>`. Only the top level (`m == cfg.n`)
/// reorders its outputs, and only for natural order; every other level
/// emits bins bit-reversed.
pub fn emit_fft_level(cfg: &EmitConfig, m: usize) -> Result<HdlModule> {
    cfg.validate()?;
    crate::checked_log2(m)?;
    let natural = m == cfg.n && cfg.order == OutputOrder::Natural;
    let chained = cfg.sync == SyncMode::StageChained;
    let tie = |signal: &str| if chained { String::from(signal) } else { String::from("1'b1") };
    let half = m / 2;

    let mut md = HdlModule::new(format!("fft{m}"));
    md.param("DATA_WIDTH", cfg.width).param("SCALE", scale_param(cfg));
    if m > 2 {
        md.param("DELAY", cfg.cmult_delay);
    }
    control_ports(&mut md);
    md.port(Direction::Input, NetType::Wire, "x", Some(&bus_width(m)))
        .port(Direction::Output, NetType::Wire, "y", Some(&bus_width(m)))
        .port(Direction::Output, NetType::Wire, "done", None);

    let order_line = if natural {
        String::from("Bins leave in natural order.")
    } else {
        String::from("Bins leave in bit-reversed order.")
    };
    if m == 2 {
        md.header = vec![
            "2-point FFT: a single butterfly; y = {x0 - x1, x0 + x1}.".into(),
            "Element i of a bus sits at bits [2*i*DATA_WIDTH +: 2*DATA_WIDTH], packed {im, re}.".into(),
        ];
        if !chained {
            md.header.push("Enable is tied high: the butterfly never waits for its inputs.".into());
        }
        md.blank();
        md.instance(Instance {
            module: "butterfly".into(),
            name: "u_bf".into(),
            params: params(&["DATA_WIDTH", "SCALE"]),
            connections: conns(&[
                ("clk", "clk".into()),
                ("rst_n", "rst_n".into()),
                ("enable", tie("enable")),
                ("a", slot("x", 0)),
                ("b", slot("x", 1)),
                ("sum", slot("y", 0)),
                ("diff", slot("y", 1)),
                ("done", "done".into()),
            ]),
        });
        return Ok(md);
    }

    md.header = vec![
        format!("{m}-point FFT, decimation in frequency."),
        format!("Stage 1A: {half} butterflies pair x[i] with x[i+{half}]."),
        format!("Stage 1B: {half} complex multipliers scale difference i by W_{m}^i."),
        format!("Stage 2: two fft{half} instances transform the sums and the products."),
        order_line,
        "Element i of a bus sits at bits [2*i*DATA_WIDTH +: 2*DATA_WIDTH], packed {im, re}.".into(),
    ];
    if chained {
        md.header.push("Each stage is enabled by the conjunction of the previous stage's done signals.".into());
    } else {
        md.header.push("All enables are tied high: no stage waits for its inputs.".into());
    }

    for tw in twiddle_table(m, cfg.width)? {
        md.localparams.push(twiddle_localparam(&tw));
    }
    let hw = bus_width(half);
    let flags = format!("{half}");
    md.net(NetType::Wire, false, "bf_sum", Some(&hw))
        .net(NetType::Wire, false, "bf_diff", Some(&hw))
        .net(NetType::Wire, false, "bf_done", Some(&flags))
        .net(NetType::Wire, false, "cm_out", Some(&hw))
        .net(NetType::Wire, false, "cm_done", Some(&flags))
        .net(NetType::Wire, false, "stage1a_done", None)
        .net(NetType::Wire, false, "stage1b_done", None)
        .net(NetType::Wire, false, "even_done", None)
        .net(NetType::Wire, false, "odd_done", None);
    if natural {
        md.net(NetType::Wire, false, "y_raw", Some(&bus_width(m)));
    }

    md.blank();
    md.comment(format!("Stage 1A: butterflies on x[i] and x[i+{half}]"));
    for i in 0..half {
        md.instance(Instance {
            module: "butterfly".into(),
            name: format!("u_bf_{i}"),
            params: params(&["DATA_WIDTH", "SCALE"]),
            connections: conns(&[
                ("clk", "clk".into()),
                ("rst_n", "rst_n".into()),
                ("enable", tie("enable")),
                ("a", slot("x", i)),
                ("b", slot("x", i + half)),
                ("sum", slot("bf_sum", i)),
                ("diff", slot("bf_diff", i)),
                ("done", format!("bf_done[{i}]")),
            ]),
        });
    }
    md.lines("assign stage1a_done = &bf_done;\n");

    md.blank();
    md.comment(format!("Stage 1B: difference i times W_{m}^i"));
    for i in 0..half {
        md.instance(Instance {
            module: "cmult".into(),
            name: format!("u_cm_{i}"),
            params: params(&["DATA_WIDTH", "DELAY"]),
            connections: conns(&[
                ("clk", "clk".into()),
                ("rst_n", "rst_n".into()),
                ("enable", tie("stage1a_done")),
                ("a", slot("bf_diff", i)),
                ("w", format!("TW_{i}")),
                ("p", slot("cm_out", i)),
                ("done", format!("cm_done[{i}]")),
            ]),
        });
    }
    md.lines("assign stage1b_done = &cm_done;\n");

    md.blank();
    md.comment("Stage 2: even bins from the sums, odd bins from the products");
    let raw = if natural { "y_raw" } else { "y" };
    let sub = format!("fft{half}");
    let sub_params: &[&str] = if half > 2 { &["DATA_WIDTH", "SCALE", "DELAY"] } else { &["DATA_WIDTH", "SCALE"] };
    for (name, input, offset, flag) in
        [("u_fft_even", "bf_sum", 0, "even_done"), ("u_fft_odd", "cm_out", m, "odd_done")]
    {
        md.instance(Instance {
            module: sub.clone(),
            name: name.into(),
            params: params(sub_params),
            connections: conns(&[
                ("clk", "clk".into()),
                ("rst_n", "rst_n".into()),
                ("enable", tie("stage1b_done")),
                ("x", input.into()),
                ("y", format!("{raw}[{offset}*DATA_WIDTH +: {hw}]")),
                ("done", flag.into()),
            ]),
        });
    }
    md.lines("assign done = even_done & odd_done;\n");

    if natural {
        md.blank();
        md.comment("natural order: bin i is raw element bitrev(i)");
        let perm = output_permutation(m)?;
        let mut text = String::new();
        for (i, &p) in perm.iter().enumerate() {
            text.push_str(&format!("assign {} = {};\n", slot("y", i), slot("y_raw", p)));
        }
        md.lines(&text);
    }
    Ok(md)
}

/// Butterfly, multiplier (when `n > 2`) and every level `fft2 .. fft<n>`.
pub fn emit_fft_suite(cfg: &EmitConfig) -> Result<Vec<HdlModule>> {
    cfg.validate()?;
    let mut out = vec![emit_butterfly(cfg)?];
    if cfg.n > 2 {
        out.push(emit_cmult(cfg)?);
    }
    let mut m = 2;
    while m <= cfg.n {
        out.push(emit_fft_level(cfg, m)?);
        m *= 2;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codegen::lint::lint_structural;
    use crate::twiddle::localparam_line;
    use crate::Error;

    fn cfg(n: usize, width: u32) -> EmitConfig {
        EmitConfig::new(n, width)
    }

    #[test]
    fn suite_shape() {
        let suite = emit_fft_suite(&cfg(64, 16)).unwrap();
        let names: Vec<&str> = suite.iter().map(|m| m.name.as_str()).collect();
        assert_eq!(names, ["butterfly", "cmult", "fft2", "fft4", "fft8", "fft16", "fft32", "fft64"]);
        let names: Vec<String> = emit_fft_suite(&cfg(2, 16)).unwrap().iter().map(|m| m.name.clone()).collect();
        assert_eq!(names, ["butterfly", "fft2"]);
    }

    #[test]
    fn instance_counts_per_level() {
        for m in [4usize, 8, 16, 64] {
            let md = emit_fft_level(&cfg(64, 16), m).unwrap();
            let count = |name: &str| md.instances().filter(|i| i.module == name).count();
            assert_eq!(count("butterfly"), m / 2);
            assert_eq!(count("cmult"), m / 2);
            assert_eq!(count(&format!("fft{}", m / 2)), 2);
        }
    }

    #[test]
    fn everything_lints_clean() {
        for sync in [SyncMode::StageChained, SyncMode::Disabled] {
            for order in [OutputOrder::Natural, OutputOrder::Raw] {
                for scaling in ScalingMode::ALL {
                    let c = EmitConfig { sync, order, scaling, ..cfg(32, 12) };
                    for md in emit_fft_suite(&c).unwrap() {
                        let text = md.render();
                        assert_eq!(lint_structural(&text), [], "{}", md.name);
                        assert!(md.undeclared_references().is_empty());
                    }
                }
            }
        }
    }

    #[test]
    fn twiddles_match_table() {
        let md = emit_fft_level(&cfg(16, 16), 16).unwrap();
        let text = md.render();
        for tw in twiddle_table(16, 16).unwrap() {
            let line = format!("    {}\n", localparam_line(&tw));
            assert!(text.contains(&line), "{line}");
        }
        for word in ["32'h00007FFF", "32'hCF057641", "32'hA57E5A82", "32'h89BF30FB", "32'h80010000"] {
            assert!(text.contains(word));
        }
    }

    #[test]
    fn cmult_reuse_is_parameter_only() {
        let narrow = emit_cmult(&cfg(8, 16)).unwrap().render();
        let wide = emit_cmult(&cfg(8, 32)).unwrap().render();
        let diff: Vec<(&str, &str)> = narrow.lines().zip(wide.lines()).filter(|(a, b)| a != b).collect();
        assert_eq!(diff.len(), 1);
        assert!(diff[0].0.contains("DATA_WIDTH = 16"));
        assert!(diff[0].1.contains("DATA_WIDTH = 32"));
        assert_eq!(narrow.lines().count(), wide.lines().count());
    }

    #[test]
    fn level_structure_is_width_independent() {
        let a = emit_fft_level(&cfg(16, 16), 16).unwrap();
        let b = emit_fft_level(&cfg(16, 24), 16).unwrap();
        assert_eq!(a.instances().collect::<Vec<_>>(), b.instances().collect::<Vec<_>>());
        assert_eq!(a.ports, b.ports);
    }

    #[test]
    fn sync_off_ties_enables_high() {
        let c = EmitConfig { sync: SyncMode::Disabled, ..cfg(8, 16) };
        let md = emit_fft_level(&c, 8).unwrap();
        for inst in md.instances() {
            let enable = inst.connections.iter().find(|(p, _)| p == "enable").unwrap();
            assert_eq!(enable.1, "1'b1");
        }
        let chained = emit_fft_level(&cfg(8, 16), 8).unwrap();
        let enables: Vec<&str> = chained
            .instances()
            .map(|i| i.connections.iter().find(|(p, _)| p == "enable").unwrap().1.as_str())
            .collect();
        assert_eq!(
            enables,
            [
                "enable",
                "enable",
                "enable",
                "enable",
                "stage1a_done",
                "stage1a_done",
                "stage1a_done",
                "stage1a_done",
                "stage1b_done",
                "stage1b_done"
            ]
        );
    }

    #[test]
    fn only_natural_top_reorders() {
        let top = emit_fft_level(&cfg(8, 16), 8).unwrap().render();
        assert!(top.contains("assign y[2*DATA_WIDTH +: 2*DATA_WIDTH] = y_raw[8*DATA_WIDTH +: 2*DATA_WIDTH];"));
        let inner = emit_fft_level(&cfg(16, 16), 8).unwrap().render();
        assert!(!inner.contains("y_raw"));
        let raw = EmitConfig { order: OutputOrder::Raw, ..cfg(8, 16) };
        assert!(!emit_fft_level(&raw, 8).unwrap().render().contains("y_raw"));
    }

    #[test]
    fn ports_carry_net_types() {
        let bf = emit_butterfly(&cfg(4, 16)).unwrap().render();
        for port in bf.lines().filter(|l| l.trim_start().starts_with("input") || l.trim_start().starts_with("output")) {
            assert!(port.contains(" wire ") || port.contains(" reg "), "{port}");
        }
        assert!(bf.contains("always @(posedge clk or negedge rst_n)"));
    }

    #[test]
    fn invalid_configs() {
        assert_eq!(emit_butterfly(&cfg(12, 16)), Err(Error::InvalidSize(12)));
        assert_eq!(emit_cmult(&cfg(8, 3)), Err(Error::InvalidWidth(3)));
        assert_eq!(emit_fft_suite(&cfg(8, 33)), Err(Error::InvalidWidth(33)));
        let c = EmitConfig { cmult_delay: 0, ..cfg(8, 16) };
        assert!(matches!(emit_fft_suite(&c), Err(Error::InvalidConfig(_))));
        assert_eq!(emit_fft_level(&cfg(8, 16), 6), Err(Error::InvalidSize(6)));
    }

    #[test]
    fn deterministic() {
        let a: Vec<String> = emit_fft_suite(&cfg(16, 16)).unwrap().iter().map(HdlModule::render).collect();
        let b: Vec<String> = emit_fft_suite(&cfg(16, 16)).unwrap().iter().map(HdlModule::render).collect();
        assert_eq!(a, b);
    }
}
