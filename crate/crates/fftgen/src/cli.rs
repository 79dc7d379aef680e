// SPDX-License-Identifier: Apache-2.0

//! `fftgen` command line. Exit status: 0 success, 1 a check failed
//! (verification, lint errors, simulated precedence violations),
//! 2 usage or I/O error.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use fftgen_core::codegen::{default_vectors, lint_structural, EmitConfig, Severity};
use fftgen_core::fixedpoint::ScalingMode;
use fftgen_core::flowgraph::{build_graph_with_order, elaborate_with_order, render_dot, render_text, OutputOrder};
use fftgen_core::oracle::{fft_fixed_reference, first_mismatch};
use fftgen_core::sim::{detect_violations, render_trace, simulate, SimConfig, SyncMode};
use fftgen_core::twiddle::{render_localparams, render_table, twiddle_table};

use crate::files::{check_lint, emit_files, smoke_compile, write_files, write_prompt_pack};
use crate::records::twiddle_records_json;
use crate::verify::{run_verify, VerifyConfig};

pub const MAX_N: usize = 4096;

fn parse_n(s: &str) -> Result<usize, String> {
    let n: usize = s.parse().map_err(|e| format!("{e}"))?;
    if !(2..=MAX_N).contains(&n) || !n.is_power_of_two() {
        return Err(format!("n must be a power of two in [2, {MAX_N}], got {n}"));
    }
    Ok(n)
}

#[derive(Debug, Parser)]
#[command(name = "fftgen", version, about = "Radix-2 FFT hardware generator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the stage-level flow graph.
    Graph(GraphArgs),
    /// Print the twiddle table for an n-point transform.
    Twiddle(TwiddleArgs),
    /// Write the Verilog file set and its testbench.
    Emit(EmitArgs),
    /// Simulate the scheduled graph on one input.
    Sim(SimArgs),
    /// Check simulator, fixed-point reference and float DFT against each other.
    Verify(VerifyArgs),
    /// Structural lint of Verilog files.
    Lint(LintArgs),
    /// Write a prompt pack.
    Prompts(PromptsArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GraphFormat {
    Text,
    Dot,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TwiddleFormat {
    Table,
    Records,
    Hdl,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Toggle {
    On,
    Off,
}

impl From<Toggle> for SyncMode {
    fn from(t: Toggle) -> Self {
        match t {
            Toggle::On => SyncMode::StageChained,
            Toggle::Off => SyncMode::Disabled,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Order {
    Natural,
    Raw,
}

impl From<Order> for OutputOrder {
    fn from(o: Order) -> Self {
        match o {
            Order::Natural => OutputOrder::Natural,
            Order::Raw => OutputOrder::Raw,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Scaling {
    Halving,
    None,
    Both,
}

impl Scaling {
    fn modes(self) -> Vec<ScalingMode> {
        match self {
            Scaling::Halving => vec![ScalingMode::PerStageHalving],
            Scaling::None => vec![ScalingMode::None],
            Scaling::Both => ScalingMode::ALL.to_vec(),
        }
    }

    fn single(self) -> anyhow::Result<ScalingMode> {
        match self {
            Scaling::Halving => Ok(ScalingMode::PerStageHalving),
            Scaling::None => Ok(ScalingMode::None),
            Scaling::Both => anyhow::bail!("--scaling both is only valid for verify"),
        }
    }
}

fn mode_name(mode: ScalingMode) -> &'static str {
    match mode {
        ScalingMode::PerStageHalving => "halving",
        ScalingMode::None => "none",
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum InputKind {
    Impulse,
    Constant,
    Random,
}

#[derive(Debug, Args)]
struct SizeArgs {
    /// Transform size, a power of two.
    #[arg(long, value_parser = parse_n)]
    n: usize,
    /// Bits per real or imaginary component.
    #[arg(long, default_value_t = 16, value_parser = clap::value_parser!(u32).range(4..=32))]
    width: u32,
}

#[derive(Debug, Args)]
struct GraphArgs {
    #[arg(long, value_parser = parse_n)]
    n: usize,
    #[arg(long, value_enum, default_value_t = GraphFormat::Text)]
    format: GraphFormat,
    /// Expand sub-transforms down to butterflies.
    #[arg(long)]
    elaborate: bool,
    #[arg(long, value_enum, default_value_t = Order::Natural)]
    order: Order,
}

#[derive(Debug, Args)]
struct TwiddleArgs {
    #[command(flatten)]
    size: SizeArgs,
    #[arg(long, value_enum, default_value_t = TwiddleFormat::Table)]
    format: TwiddleFormat,
}

#[derive(Debug, Args)]
struct EmitArgs {
    #[command(flatten)]
    size: SizeArgs,
    /// Complex multiplier latency in cycles.
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..))]
    delay: u32,
    #[arg(long, value_enum, default_value_t = Toggle::On)]
    sync: Toggle,
    #[arg(long, value_enum, default_value_t = Order::Natural)]
    order: Order,
    #[arg(long, value_enum, default_value_t = Scaling::Halving)]
    scaling: Scaling,
    /// Output directory.
    #[arg(long)]
    out: PathBuf,
    /// Random vectors in the testbench, after the impulse and constant.
    #[arg(long, default_value_t = 3)]
    vectors: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Compile the output with iverilog when it is installed.
    #[arg(long)]
    smoke: bool,
}

#[derive(Debug, Args)]
struct SimArgs {
    #[command(flatten)]
    size: SizeArgs,
    #[arg(long, value_enum, default_value_t = Toggle::On)]
    sync: Toggle,
    #[arg(long, value_enum, default_value_t = Scaling::Halving)]
    scaling: Scaling,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    butterfly_latency: u64,
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
    cmult_latency: u64,
    /// Extra ticks drawn per node from 0..=jitter.
    #[arg(long, default_value_t = 0)]
    jitter: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = InputKind::Random)]
    input: InputKind,
    /// Also print the per-node timing table.
    #[arg(long)]
    trace: bool,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[command(flatten)]
    size: SizeArgs,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Scaling::Both)]
    scaling: Scaling,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    butterfly_latency: u64,
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
    cmult_latency: u64,
    #[arg(long, default_value_t = 0)]
    jitter: u64,
}

#[derive(Debug, Args)]
struct LintArgs {
    /// Verilog files; `-` reads standard input.
    #[arg(required = true)]
    files: Vec<PathBuf>,
}

#[derive(Debug, Args)]
struct PromptsArgs {
    #[command(flatten)]
    size: SizeArgs,
    #[arg(long)]
    out: PathBuf,
}

/// Parses `args` (including the program name), runs the command and
/// returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            2
        }
    }
}

fn core<T>(r: fftgen_core::Result<T>) -> anyhow::Result<T> {
    r.map_err(|e| anyhow::anyhow!("{e}"))
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> anyhow::Result<u8> {
    match command {
        Command::Graph(a) => {
            let order = a.order.into();
            let g =
                core(if a.elaborate { elaborate_with_order(a.n, order) } else { build_graph_with_order(a.n, order) })?;
            let text = match a.format {
                GraphFormat::Text => render_text(&g),
                GraphFormat::Dot => render_dot(&g),
            };
            out.write_all(text.as_bytes())?;
            Ok(0)
        }
        Command::Twiddle(a) => {
            let table = core(twiddle_table(a.size.n, a.size.width))?;
            let text = match a.format {
                TwiddleFormat::Table => render_table(&table),
                TwiddleFormat::Records => twiddle_records_json(&table)?,
                TwiddleFormat::Hdl => render_localparams(&table),
            };
            out.write_all(text.as_bytes())?;
            Ok(0)
        }
        Command::Emit(a) => emit(a, out, err),
        Command::Sim(a) => sim(a, out),
        Command::Verify(a) => verify(a, out),
        Command::Lint(a) => lint(a, out),
        Command::Prompts(a) => {
            let cfg = EmitConfig::new(a.size.n, a.size.width);
            let manifest = write_prompt_pack(&cfg, &a.out)?;
            for f in &manifest.files {
                writeln!(out, "{:>2} {:<18} {}", f.order, f.kind, a.out.join(&f.file).display())?;
            }
            writeln!(out, "manifest: {}", a.out.join(crate::files::MANIFEST_FILE).display())?;
            Ok(0)
        }
    }
}

fn emit(a: EmitArgs, out: &mut dyn Write, err: &mut dyn Write) -> anyhow::Result<u8> {
    let cfg = EmitConfig {
        n: a.size.n,
        width: a.size.width,
        cmult_delay: a.delay,
        sync: a.sync.into(),
        order: a.order.into(),
        scaling: a.scaling.single()?,
    };
    let files = core(emit_files(&cfg, a.vectors, a.seed))?;
    if let Err(e) = check_lint(&files) {
        writeln!(err, "lint: {e}")?;
        return Ok(1);
    }
    let paths = write_files(&a.out, &files).with_context(|| format!("writing to {}", a.out.display()))?;
    for p in &paths {
        writeln!(out, "wrote {}", p.display())?;
    }
    if a.smoke {
        let top = format!("tb_fft{}", cfg.n);
        match smoke_compile(&paths, &top, &a.out.join(format!("{top}.vvp"))) {
            None => writeln!(err, "iverilog not found; smoke compile skipped")?,
            Some(result) => {
                let output = result?;
                if !output.status.success() {
                    err.write_all(&output.stderr)?;
                    writeln!(err, "smoke compile failed")?;
                    return Ok(1);
                }
                writeln!(out, "smoke compile ok")?;
            }
        }
    }
    Ok(0)
}

fn sim(a: SimArgs, out: &mut dyn Write) -> anyhow::Result<u8> {
    let (n, width) = (a.size.n, a.size.width);
    let scaling = a.scaling.single()?;
    let emit_cfg = EmitConfig { scaling, ..EmitConfig::new(n, width) };
    let vectors = core(default_vectors(&emit_cfg, 1, a.seed))?;
    let x = match a.input {
        InputKind::Impulse => &vectors[0].input,
        InputKind::Constant => &vectors[1].input,
        InputKind::Random => &vectors[2].input,
    };
    let cfg = SimConfig {
        butterfly_latency: a.butterfly_latency,
        cmult_latency: a.cmult_latency,
        scaling,
        sync: a.sync.into(),
        seed: a.seed,
        jitter: a.jitter,
    };
    let g = core(build_graph_with_order(n, OutputOrder::Natural))?;
    let (y, trace) = core(simulate(&g, x, &cfg))?;
    let reference = core(fft_fixed_reference(x, scaling))?;
    let report = detect_violations(&trace);

    writeln!(
        out,
        "n={n} width={width} sync={} scaling={} butterfly_latency={} cmult_latency={} jitter={} seed={}",
        if a.sync == Toggle::On { "on" } else { "off" },
        mode_name(scaling),
        a.butterfly_latency,
        a.cmult_latency,
        a.jitter,
        a.seed
    )?;
    writeln!(out, "design_done={}", trace.design_done)?;
    write!(out, "violations={}", report.total)?;
    for s in &report.by_stage {
        write!(out, " stage{}={}", s.stage.label(), s.count)?;
    }
    writeln!(out)?;
    writeln!(out, "{:>5} {:>14} {:>14}", "bin", "output", "reference")?;
    for (i, (got, want)) in y.iter().zip(&reference).enumerate() {
        let mark = if got == want { "" } else { "  *" };
        writeln!(out, "{i:>5} {:>14} {:>14}{mark}", got.to_string(), want.to_string())?;
    }
    match first_mismatch(&y, &reference) {
        None => writeln!(out, "output matches reference")?,
        Some(bin) => writeln!(out, "output differs from reference (first bin {bin})")?,
    }
    if a.trace {
        out.write_all(render_trace(&trace).as_bytes())?;
    }
    Ok(if report.total == 0 { 0 } else { 1 })
}

fn verify(a: VerifyArgs, out: &mut dyn Write) -> anyhow::Result<u8> {
    let cfg = VerifyConfig {
        n: a.size.n,
        width: a.size.width,
        trials: a.trials,
        seed: a.seed,
        modes: a.scaling.modes(),
        butterfly_latency: a.butterfly_latency,
        cmult_latency: a.cmult_latency,
        jitter: a.jitter,
    };
    let summaries = core(run_verify(&cfg))?;
    let mut failed = false;
    for s in &summaries {
        writeln!(
            out,
            "{:<7} n={} trials={} mismatches={} violations={} max_err={:.3} (limit {:.2}) rms_err={:.3} (limit {:.2}) {}",
            mode_name(s.mode),
            cfg.n,
            s.trials,
            s.mismatches,
            s.violations,
            s.max_abs_error,
            s.bounds.max_abs,
            s.worst_rms,
            s.bounds.rms,
            if s.passed() { "PASS" } else { "FAIL" }
        )?;
        if let Some(seed) = s.first_failure {
            writeln!(out, "        first failing seed: {seed}")?;
            failed = true;
        }
    }
    Ok(u8::from(failed))
}

fn lint(a: LintArgs, out: &mut dyn Write) -> anyhow::Result<u8> {
    let (mut errors, mut warnings) = (0usize, 0usize);
    for path in &a.files {
        let (name, text) = if path.as_os_str() == "-" {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            (String::from("<stdin>"), s)
        } else {
            let s = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            (path.display().to_string(), s)
        };
        for d in lint_structural(&text) {
            match d.severity {
                Severity::Error => errors += 1,
                Severity::Warning => warnings += 1,
            }
            writeln!(out, "{name}:{d}")?;
        }
    }
    writeln!(out, "{errors} error(s), {warnings} warning(s)")?;
    Ok(u8::from(errors > 0))
}
