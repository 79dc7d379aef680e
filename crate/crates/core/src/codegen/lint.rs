// SPDX-License-Identifier: Apache-2.0

//! Structural lint over Verilog text.
//!
//! This is a token-level scan, not a parser. It understands enough of the
//! language to find module boundaries, declarations, `always` blocks and
//! module instantiations, and reports:
//!
//! * `module` / `endmodule` imbalance,
//! * identifiers in instance connections that are not declared in the
//!   enclosing module, and ports that do not exist on a module defined in
//!   the same text,
//! * ports declared without an explicit net type,
//! * edge-triggered `always` blocks that use a reset signal without having
//!   its edge in the sensitivity list (a synchronous reset where an
//!   asynchronous active-low one is expected).

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Severity {
    Warning,
    Error,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    UnbalancedModule,
    UndeclaredIdentifier,
    UnknownPort,
    MissingNetType,
    MissingResetEdge,
    ActiveHighReset,
}

impl Rule {
    pub fn code(self) -> &'static str {
        match self {
            Rule::UnbalancedModule => "unbalanced-module",
            Rule::UndeclaredIdentifier => "undeclared-identifier",
            Rule::UnknownPort => "unknown-port",
            Rule::MissingNetType => "missing-net-type",
            Rule::MissingResetEdge => "missing-async-reset",
            Rule::ActiveHighReset => "active-high-reset",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub rule: Rule,
    /// 1-based line number.
    pub line: usize,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sev = match self.severity {
            Severity::Warning => "warning",
            Severity::Error => "error",
        };
        write!(f, "line {}: {sev}[{}]: {}", self.line, self.rule.code(), self.message)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Ident,
    System,
    Number,
    Punct(char),
}

#[derive(Debug, Clone, Copy)]
struct Token<'a> {
    kind: Kind,
    text: &'a str,
    line: usize,
}

impl Token<'_> {
    fn is(&self, word: &str) -> bool {
        self.kind == Kind::Ident && self.text == word
    }

    fn is_punct(&self, c: char) -> bool {
        self.kind == Kind::Punct(c)
    }

    fn is_name(&self) -> bool {
        self.kind == Kind::Ident && !is_keyword(self.text)
    }
}

const KEYWORDS: &[&str] = &[
    "always",
    "and",
    "assign",
    "begin",
    "case",
    "casex",
    "casez",
    "default",
    "else",
    "end",
    "endcase",
    "endfunction",
    "endgenerate",
    "endmodule",
    "endtask",
    "for",
    "forever",
    "fork",
    "function",
    "generate",
    "genvar",
    "if",
    "initial",
    "inout",
    "input",
    "integer",
    "join",
    "localparam",
    "module",
    "negedge",
    "not",
    "or",
    "output",
    "parameter",
    "posedge",
    "real",
    "reg",
    "repeat",
    "signed",
    "task",
    "time",
    "tri",
    "unsigned",
    "wait",
    "while",
    "wire",
];

const NET_TYPES: &[&str] = &["wire", "reg", "tri", "integer", "logic", "real", "time"];

fn is_keyword(word: &str) -> bool {
    KEYWORDS.contains(&word)
}

fn is_resetlike(name: &str) -> bool {
    let lower = name.to_ascii_lowercase();
    lower.contains("rst") || lower.contains("reset")
}

fn tokenize(src: &str) -> Vec<Token<'_>> {
    let bytes = src.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    let mut line = 1;
    let ident_char = |b: u8| b.is_ascii_alphanumeric() || b == b'_' || b == b'$';
    while i < bytes.len() {
        let b = bytes[i];
        let start = i;
        match b {
            b'\n' => {
                line += 1;
                i += 1;
            }
            _ if b.is_ascii_whitespace() => i += 1,
            b'/' if bytes.get(i + 1) == Some(&b'/') => {
                while i < bytes.len() && bytes[i] != b'\n' {
                    i += 1;
                }
            }
            b'/' if bytes.get(i + 1) == Some(&b'*') => {
                i += 2;
                while i < bytes.len() && !(bytes[i] == b'*' && bytes.get(i + 1) == Some(&b'/')) {
                    if bytes[i] == b'\n' {
                        line += 1;
                    }
                    i += 1;
                }
                i = (i + 2).min(bytes.len());
            }
            b'"' => {
                i += 1;
                while i < bytes.len() && bytes[i] != b'"' {
                    if bytes[i] == b'\\' {
                        i += 1;
                    }
                    i += 1;
                }
                i = (i + 1).min(bytes.len());
            }
            b'`' => {
                // compiler directive: ignore the rest of the line
                while i < bytes.len() && bytes[i] != b'\n' {
                    i += 1;
                }
            }
            b'\\' => {
                // escaped identifier runs to whitespace
                while i < bytes.len() && !bytes[i].is_ascii_whitespace() {
                    i += 1;
                }
                tokens.push(Token { kind: Kind::Ident, text: &src[start..i], line });
            }
            _ if b.is_ascii_alphabetic() || b == b'_' => {
                while i < bytes.len() && ident_char(bytes[i]) {
                    i += 1;
                }
                tokens.push(Token { kind: Kind::Ident, text: &src[start..i], line });
            }
            b'$' => {
                i += 1;
                while i < bytes.len() && ident_char(bytes[i]) {
                    i += 1;
                }
                tokens.push(Token { kind: Kind::System, text: &src[start..i], line });
            }
            _ if b.is_ascii_digit() || b == b'\'' => {
                while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'_' || bytes[i] == b'.') {
                    i += 1;
                }
                if i < bytes.len() && bytes[i] == b'\'' {
                    i += 1;
                    if i < bytes.len() && matches!(bytes[i], b's' | b'S') {
                        i += 1;
                    }
                    while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_' || bytes[i] == b'?')
                    {
                        i += 1;
                    }
                }
                tokens.push(Token { kind: Kind::Number, text: &src[start..i], line });
            }
            _ => {
                let c = src[i..].chars().next().unwrap_or(' ');
                i += c.len_utf8();
                tokens.push(Token { kind: Kind::Punct(c), text: &src[start..i], line });
            }
        }
    }
    tokens
}

/// Non-keyword identifiers in an expression, in order of first use.
pub fn identifiers(expr: &str) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for t in tokenize(expr) {
        if t.is_name() && !out.iter().any(|s| s == t.text) {
            out.push(t.text.into());
        }
    }
    out
}

/// Index just past the bracket group opening at `i`.
fn skip_group(toks: &[Token<'_>], i: usize) -> usize {
    let mut depth = 0i32;
    let mut j = i;
    while j < toks.len() {
        match toks[j].kind {
            Kind::Punct('(' | '[' | '{') => depth += 1,
            Kind::Punct(')' | ']' | '}') => {
                depth -= 1;
                if depth <= 0 {
                    return j + 1;
                }
            }
            _ => {}
        }
        j += 1;
    }
    j
}

/// Index just past the `;` ending the statement at `i`.
fn skip_to_semicolon(toks: &[Token<'_>], mut i: usize) -> usize {
    while i < toks.len() {
        match toks[i].kind {
            Kind::Punct('(' | '[' | '{') => i = skip_group(toks, i),
            Kind::Punct(';') => return i + 1,
            _ if toks[i].is("endmodule") => return i,
            _ => i += 1,
        }
    }
    i
}

/// Index just past one procedural statement.
fn skip_statement(toks: &[Token<'_>], i: usize) -> usize {
    let Some(t) = toks.get(i) else { return i };
    if t.is("begin") || t.is("fork") {
        let mut depth = 0;
        let mut j = i;
        while j < toks.len() {
            if toks[j].is("begin") || toks[j].is("fork") {
                depth += 1;
            } else if toks[j].is("end") || toks[j].is("join") {
                depth -= 1;
                if depth == 0 {
                    return j + 1;
                }
            } else if toks[j].is("endmodule") {
                return j;
            }
            j += 1;
        }
        return j;
    }
    if t.is("if") {
        let mut j = skip_group(toks, i + 1);
        j = skip_statement(toks, j);
        if toks.get(j).is_some_and(|t| t.is("else")) {
            j = skip_statement(toks, j + 1);
        }
        return j;
    }
    if t.is("case") || t.is("casex") || t.is("casez") {
        let mut depth = 0;
        let mut j = i;
        while j < toks.len() {
            if toks[j].is("case") || toks[j].is("casex") || toks[j].is("casez") {
                depth += 1;
            } else if toks[j].is("endcase") {
                depth -= 1;
                if depth == 0 {
                    return j + 1;
                }
            }
            j += 1;
        }
        return j;
    }
    if t.is_punct('@') || t.is_punct('#') {
        let j = match toks.get(i + 1) {
            Some(n) if n.is_punct('(') => skip_group(toks, i + 1),
            Some(_) => i + 2,
            None => i + 1,
        };
        return skip_statement(toks, j);
    }
    if t.is("for") || t.is("while") || t.is("repeat") {
        return skip_statement(toks, skip_group(toks, i + 1));
    }
    if t.is("forever") {
        return skip_statement(toks, i + 1);
    }
    skip_to_semicolon(toks, i)
}

/// Splits `toks[start..end]` at top-level commas.
fn split_commas<'t, 'a>(toks: &'t [Token<'a>], start: usize, end: usize) -> Vec<&'t [Token<'a>]> {
    let mut items = Vec::new();
    let mut depth = 0i32;
    let mut item_start = start;
    for j in start..end {
        match toks[j].kind {
            Kind::Punct('(' | '[' | '{') => depth += 1,
            Kind::Punct(')' | ']' | '}') => depth -= 1,
            Kind::Punct(',') if depth == 0 => {
                items.push(&toks[item_start..j]);
                item_start = j + 1;
            }
            _ => {}
        }
    }
    if item_start < end {
        items.push(&toks[item_start..end]);
    }
    items
}

/// Declared name of one declaration item, skipping types, ranges and any
/// `= value` initialiser.
fn declared_name<'a>(item: &[Token<'a>]) -> Option<Token<'a>> {
    let mut j = 0;
    let mut name = None;
    while j < item.len() {
        let t = item[j];
        if t.is_punct('[') {
            j = skip_group(item, j);
            continue;
        }
        if t.is_punct('=') {
            break;
        }
        if t.is_name() {
            name = Some(t);
        }
        j += 1;
    }
    name
}

#[derive(Debug, Default)]
struct Instantiation<'a> {
    module: &'a str,
    name: &'a str,
    line: usize,
    /// `(port, referenced identifiers)`; port is empty for positional connections.
    connections: Vec<(&'a str, Vec<&'a str>)>,
    param_refs: Vec<&'a str>,
}

#[derive(Debug, Default)]
struct ModuleSummary<'a> {
    name: &'a str,
    ports: Vec<&'a str>,
    declared: Vec<&'a str>,
    instances: Vec<Instantiation<'a>>,
}

struct Linter<'a> {
    toks: Vec<Token<'a>>,
    diags: Vec<Diagnostic>,
}

impl<'a> Linter<'a> {
    fn report(&mut self, severity: Severity, rule: Rule, line: usize, message: String) {
        self.diags.push(Diagnostic { severity, rule, line, message });
    }

    fn port_item(&mut self, item: &[Token<'a>], summary: &mut ModuleSummary<'a>, dir_seen: &mut bool) {
        let Some(first) = item.first() else { return };
        let has_dir = first.is("input") || first.is("output") || first.is("inout");
        if has_dir {
            *dir_seen = true;
            let typed = item.iter().skip(1).any(|t| t.kind == Kind::Ident && NET_TYPES.contains(&t.text));
            if let Some(name) = declared_name(item) {
                if !typed {
                    self.report(
                        Severity::Warning,
                        Rule::MissingNetType,
                        name.line,
                        format!("port `{}` of module `{}` has no explicit net type", name.text, summary.name),
                    );
                }
            }
        }
        if let Some(name) = declared_name(item) {
            summary.ports.push(name.text);
            summary.declared.push(name.text);
        }
    }

    /// Parses the module starting at the `module` keyword at `i`; returns
    /// the index of its `endmodule` (or the end of input).
    fn module(&mut self, i: usize, summary: &mut ModuleSummary<'a>) -> usize {
        let toks = self.toks.clone();
        let mut j = i + 1;
        if let Some(t) = toks.get(j).filter(|t| t.is_name()) {
            summary.name = t.text;
            j += 1;
        }
        if toks.get(j).is_some_and(|t| t.is_punct('#')) {
            let end = skip_group(&toks, j + 1);
            for item in split_commas(&toks, j + 2, end - 1) {
                if let Some(name) = declared_name(item) {
                    summary.declared.push(name.text);
                }
            }
            j = end;
        }
        if toks.get(j).is_some_and(|t| t.is_punct('(')) {
            let end = skip_group(&toks, j);
            let mut dir_seen = false;
            for item in split_commas(&toks, j + 1, end - 1) {
                self.port_item(item, summary, &mut dir_seen);
            }
            j = end;
        }
        j = skip_to_semicolon(&toks, j);

        while j < toks.len() {
            let t = toks[j];
            if t.is("endmodule") {
                return j;
            }
            if t.is("module") {
                return j;
            }
            if t.is("input") || t.is("output") || t.is("inout") {
                let end = skip_to_semicolon(&toks, j);
                let mut dir_seen = false;
                // body port declarations carry the type once for the whole list
                let typed = toks[j + 1..end].iter().any(|t| t.kind == Kind::Ident && NET_TYPES.contains(&t.text));
                for (n, item) in split_commas(&toks, j, end - 1).into_iter().enumerate() {
                    if n == 0 || typed {
                        self.port_item(item, summary, &mut dir_seen);
                    } else if let Some(name) = declared_name(item) {
                        self.report(
                            Severity::Warning,
                            Rule::MissingNetType,
                            name.line,
                            format!("port `{}` of module `{}` has no explicit net type", name.text, summary.name),
                        );
                        summary.declared.push(name.text);
                    }
                }
                j = end;
            } else if t.kind == Kind::Ident
                && (NET_TYPES.contains(&t.text) || t.is("parameter") || t.is("localparam") || t.is("genvar"))
            {
                let end = skip_to_semicolon(&toks, j);
                for item in split_commas(&toks, j + 1, end - 1) {
                    if let Some(name) = declared_name(item) {
                        summary.declared.push(name.text);
                    }
                }
                j = end;
            } else if t.is("always") {
                j = self.always_block(j, summary.name);
            } else if t.is("initial") {
                j = skip_statement(&toks, j + 1);
            } else if t.is("function") || t.is("task") {
                let close = if t.is("function") { "endfunction" } else { "endtask" };
                while j < toks.len() && !toks[j].is(close) {
                    j += 1;
                }
                j += 1;
            } else if t.is_name() && toks.get(j + 1).is_some_and(|n| n.is_punct('#') || n.is_name()) {
                j = self.instantiation(j, summary);
            } else if t.is("generate") || t.is("endgenerate") {
                j += 1;
            } else {
                j = skip_to_semicolon(&toks, j).max(j + 1);
            }
        }
        j
    }

    fn always_block(&mut self, i: usize, module: &str) -> usize {
        let toks = self.toks.clone();
        let line = toks[i].line;
        let mut j = i + 1;
        let mut sens: &[Token<'a>] = &[];
        if toks.get(j).is_some_and(|t| t.is_punct('@')) {
            if toks.get(j + 1).is_some_and(|t| t.is_punct('(')) {
                let end = skip_group(&toks, j + 1);
                sens = &toks[j + 2..end - 1];
                j = end;
            } else {
                j += 2;
            }
        }
        let body_end = skip_statement(&toks, j);
        let body = &toks[j..body_end];

        let edges: Vec<(&str, &str)> = sens
            .windows(2)
            .filter(|w| w[0].is("posedge") || w[0].is("negedge"))
            .map(|w| (w[0].text, w[1].text))
            .collect();
        if edges.is_empty() {
            return body_end;
        }
        let reset_edge = edges.iter().find(|(_, sig)| is_resetlike(sig));
        match reset_edge {
            Some(("posedge", sig)) => self.report(
                Severity::Warning,
                Rule::ActiveHighReset,
                line,
                format!("`{sig}` is reset on its rising edge in module `{module}`; active-low reset expected"),
            ),
            Some(_) => {}
            None => {
                let used = body.iter().find(|t| t.is_name() && is_resetlike(t.text));
                if let Some(sig) = used {
                    self.report(
                        Severity::Error,
                        Rule::MissingResetEdge,
                        line,
                        format!(
                            "sequential block in module `{module}` uses reset `{}` but its sensitivity list lacks `negedge {}`",
                            sig.text, sig.text
                        ),
                    );
                }
            }
        }
        body_end
    }

    fn instantiation(&mut self, i: usize, summary: &mut ModuleSummary<'a>) -> usize {
        let toks = self.toks.clone();
        let mut inst = Instantiation { module: toks[i].text, line: toks[i].line, ..Default::default() };
        let mut j = i + 1;
        if toks[j].is_punct('#') {
            let end = skip_group(&toks, j + 1);
            inst.param_refs = toks[j + 1..end]
                .windows(2)
                .filter(|w| w[1].is_name() && !w[0].is_punct('.'))
                .map(|w| w[1].text)
                .collect();
            j = end;
        }
        if let Some(name) = toks.get(j).filter(|t| t.is_name()) {
            inst.name = name.text;
            j += 1;
        }
        if toks.get(j).is_some_and(|t| t.is_punct('(')) {
            let end = skip_group(&toks, j);
            for item in split_commas(&toks, j + 1, end - 1) {
                if item.first().is_some_and(|t| t.is_punct('.')) && item.len() >= 2 {
                    let port = item[1].text;
                    let refs = item[2..].iter().filter(|t| t.is_name()).map(|t| t.text).collect();
                    inst.connections.push((port, refs));
                } else {
                    inst.connections.push(("", item.iter().filter(|t| t.is_name()).map(|t| t.text).collect()));
                }
            }
            j = end;
        }
        summary.instances.push(inst);
        skip_to_semicolon(&toks, j)
    }

    fn run(mut self) -> Vec<Diagnostic> {
        let mut modules: Vec<ModuleSummary<'a>> = Vec::new();
        let mut j = 0;
        let mut open: Option<(usize, &'a str)> = None;
        while j < self.toks.len() {
            let t = self.toks[j];
            if t.is("module") {
                if let Some((line, name)) = open {
                    self.report(
                        Severity::Error,
                        Rule::UnbalancedModule,
                        line,
                        format!("module `{name}` is missing `endmodule` before the next `module`"),
                    );
                }
                let mut summary = ModuleSummary::default();
                let end = self.module(j, &mut summary);
                open = Some((t.line, summary.name));
                modules.push(summary);
                j = end;
            } else if t.is("endmodule") {
                if open.take().is_none() {
                    self.report(
                        Severity::Error,
                        Rule::UnbalancedModule,
                        t.line,
                        String::from("`endmodule` without a matching `module`"),
                    );
                }
                j += 1;
            } else {
                j += 1;
            }
        }
        if let Some((line, name)) = open {
            self.report(
                Severity::Error,
                Rule::UnbalancedModule,
                line,
                format!("module `{name}` is missing `endmodule`"),
            );
        }

        for m in &modules {
            for inst in &m.instances {
                let target = modules.iter().find(|other| other.name == inst.module);
                for (port, refs) in &inst.connections {
                    if let Some(target) = target {
                        if !port.is_empty() && !target.ports.contains(port) {
                            self.diags.push(Diagnostic {
                                severity: Severity::Error,
                                rule: Rule::UnknownPort,
                                line: inst.line,
                                message: format!(
                                    "instance `{}` connects `{port}`, which module `{}` does not declare",
                                    inst.name, inst.module
                                ),
                            });
                        }
                    }
                    for r in refs.iter().chain(inst.param_refs.iter()) {
                        if !m.declared.contains(r) {
                            self.diags.push(Diagnostic {
                                severity: Severity::Error,
                                rule: Rule::UndeclaredIdentifier,
                                line: inst.line,
                                message: format!(
                                    "instance `{}` in module `{}` references undeclared `{r}`",
                                    inst.name, m.name
                                ),
                            });
                        }
                    }
                }
            }
        }
        self.diags.sort_by_key(|d| d.line);
        self.diags.dedup();
        self.diags
    }
}

/// Runs every rule over `text`. Diagnostics are sorted by line.
pub fn lint_structural(text: &str) -> Vec<Diagnostic> {
    Linter { toks: tokenize(text), diags: Vec::new() }.run()
}

pub fn has_errors(diags: &[Diagnostic]) -> bool {
    diags.iter().any(|d| d.severity == Severity::Error)
}
