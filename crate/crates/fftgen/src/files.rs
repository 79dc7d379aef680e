// SPDX-License-Identifier: Apache-2.0

//! On-disk artifacts: the Verilog file set and prompt packs.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use anyhow::{bail, Context};
use fftgen_core::codegen::{
    default_vectors, emit_fft_suite, emit_testbench, lint_structural, render_files, EmitConfig, Severity,
};
use fftgen_core::prompts::{build_prompt_pack, PromptKind};
use serde::{Deserialize, Serialize};

/// `(file name, contents)` for the core modules followed by `tb_fft<n>.v`.
pub fn emit_files(cfg: &EmitConfig, random_vectors: usize, seed: u64) -> fftgen_core::Result<Vec<(String, String)>> {
    let mut modules = emit_fft_suite(cfg)?;
    modules.push(emit_testbench(cfg, &default_vectors(cfg, random_vectors, seed)?)?);
    Ok(render_files(&modules))
}

/// Fails if any file carries an error-severity lint diagnostic.
pub fn check_lint(files: &[(String, String)]) -> anyhow::Result<()> {
    for (name, text) in files {
        if let Some(d) = lint_structural(text).into_iter().find(|d| d.severity == Severity::Error) {
            bail!("{name}: {d}");
        }
    }
    Ok(())
}

pub fn write_files(dir: &Path, files: &[(String, String)]) -> io::Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    files
        .iter()
        .map(|(name, text)| {
            let path = dir.join(name);
            fs::write(&path, text)?;
            Ok(path)
        })
        .collect()
}

/// Compiles the given files with `iverilog` when it is installed.
/// `None` means no compiler was found.
pub fn smoke_compile(paths: &[PathBuf], top: &str, out: &Path) -> Option<io::Result<Output>> {
    let result = Command::new("iverilog").arg("-g2001").arg("-s").arg(top).arg("-o").arg(out).args(paths).output();
    match result {
        Err(e) if e.kind() == io::ErrorKind::NotFound => None,
        other => Some(other),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub order: usize,
    pub kind: String,
    pub file: String,
}

/// Prompt files in replay order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub n_target: usize,
    pub n_example: usize,
    pub width: u32,
    pub files: Vec<ManifestEntry>,
}

pub const MANIFEST_FILE: &str = "manifest.json";

fn kind_label(kind: PromptKind) -> String {
    match kind {
        PromptKind::IpCore => "ip-cores".into(),
        PromptKind::IclPair(m) => format!("example-pair-{m}"),
        PromptKind::Target(n) => format!("target-{n}"),
        PromptKind::Cot => "twiddle-examples".into(),
    }
}

/// Writes one file per prompt plus `manifest.json`.
pub fn write_prompt_pack(cfg: &EmitConfig, dir: &Path) -> anyhow::Result<Manifest> {
    let pack = build_prompt_pack(cfg).map_err(|e| anyhow::anyhow!("{e}"))?;
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut files = Vec::with_capacity(pack.entries.len());
    for (i, entry) in pack.entries.iter().enumerate() {
        let path = dir.join(&entry.file_name);
        fs::write(&path, &entry.text).with_context(|| format!("writing {}", path.display()))?;
        files.push(ManifestEntry { order: i + 1, kind: kind_label(entry.kind), file: entry.file_name.clone() });
    }
    let manifest = Manifest { n_target: pack.n_target, n_example: pack.n_example, width: pack.width, files };
    let mut text = serde_json::to_string_pretty(&manifest)?;
    text.push('\n');
    let path = dir.join(MANIFEST_FILE);
    fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
    Ok(manifest)
}
