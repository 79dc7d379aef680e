// SPDX-License-Identifier: Apache-2.0

//! Structured description of one Verilog module and its text rendering.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::Write as _;

use super::lint::identifiers;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Input,
    Output,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NetType {
    Wire,
    Reg,
}

impl NetType {
    pub fn keyword(self) -> &'static str {
        match self {
            NetType::Wire => "wire",
            NetType::Reg => "reg",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Parameter {
    pub name: String,
    pub default: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Port {
    pub name: String,
    pub direction: Direction,
    pub net: NetType,
    /// Bit count expression, e.g. `2*DATA_WIDTH`; `None` for a single bit.
    pub width: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Net {
    pub name: String,
    pub net: NetType,
    pub signed: bool,
    pub width: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalParam {
    pub name: String,
    pub width: Option<String>,
    pub signed: bool,
    pub value: String,
    pub comment: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub module: String,
    pub name: String,
    /// Parameter overrides, `(name, value)`.
    pub params: Vec<(String, String)>,
    /// Port connections, `(port, expression)`.
    pub connections: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BodyItem {
    /// A `//` comment at body indentation.
    Comment(String),
    /// Already-indented lines.
    Text(String),
    Instance(Instance),
    Blank,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HdlModule {
    pub name: String,
    /// Leading `//` comment lines.
    pub header: Vec<String>,
    pub parameters: Vec<Parameter>,
    pub ports: Vec<Port>,
    pub localparams: Vec<LocalParam>,
    pub nets: Vec<Net>,
    pub body: Vec<BodyItem>,
    /// Emitted before the module (e.g. `` `timescale ``).
    pub preamble: Vec<String>,
}

const INDENT: &str = "    ";

fn range(width: &Option<String>) -> String {
    match width {
        Some(w) => match w.parse::<u64>() {
            Ok(bits) => format!("[{}:0]", bits.saturating_sub(1)),
            Err(_) => format!("[{w}-1:0]"),
        },
        None => String::new(),
    }
}

impl HdlModule {
    pub fn new(name: impl Into<String>) -> Self {
        HdlModule {
            name: name.into(),
            header: Vec::new(),
            parameters: Vec::new(),
            ports: Vec::new(),
            localparams: Vec::new(),
            nets: Vec::new(),
            body: Vec::new(),
            preamble: Vec::new(),
        }
    }

    pub fn file_name(&self) -> String {
        format!("{}.v", self.name)
    }

    pub fn param(&mut self, name: &str, default: impl ToString) -> &mut Self {
        self.parameters.push(Parameter { name: name.into(), default: default.to_string() });
        self
    }

    pub fn port(&mut self, direction: Direction, net: NetType, name: &str, width: Option<&str>) -> &mut Self {
        self.ports.push(Port { name: name.into(), direction, net, width: width.map(Into::into) });
        self
    }

    pub fn net(&mut self, net: NetType, signed: bool, name: impl Into<String>, width: Option<&str>) -> &mut Self {
        self.nets.push(Net { name: name.into(), net, signed, width: width.map(Into::into) });
        self
    }

    pub fn comment(&mut self, text: impl Into<String>) -> &mut Self {
        self.body.push(BodyItem::Comment(text.into()));
        self
    }

    /// Appends body lines, indenting each by one level.
    pub fn lines(&mut self, text: &str) -> &mut Self {
        let mut out = String::new();
        for line in text.lines() {
            if line.is_empty() {
                out.push('\n');
            } else {
                let _ = writeln!(out, "{INDENT}{line}");
            }
        }
        self.body.push(BodyItem::Text(out));
        self
    }

    pub fn blank(&mut self) -> &mut Self {
        self.body.push(BodyItem::Blank);
        self
    }

    pub fn instance(&mut self, inst: Instance) -> &mut Self {
        self.body.push(BodyItem::Instance(inst));
        self
    }

    pub fn instances(&self) -> impl Iterator<Item = &Instance> {
        self.body.iter().filter_map(|item| match item {
            BodyItem::Instance(i) => Some(i),
            _ => None,
        })
    }

    /// Names visible inside the module body.
    pub fn declared_names(&self) -> Vec<&str> {
        self.parameters
            .iter()
            .map(|p| p.name.as_str())
            .chain(self.ports.iter().map(|p| p.name.as_str()))
            .chain(self.localparams.iter().map(|p| p.name.as_str()))
            .chain(self.nets.iter().map(|n| n.name.as_str()))
            .collect()
    }

    /// Identifiers used in instance connections or parameter overrides that
    /// are not declared in this module, as `(instance, identifier)`.
    pub fn undeclared_references(&self) -> Vec<(String, String)> {
        let declared = self.declared_names();
        let mut missing = Vec::new();
        for inst in self.instances() {
            let exprs = inst.connections.iter().chain(inst.params.iter()).map(|(_, e)| e.as_str());
            for expr in exprs {
                for ident in identifiers(expr) {
                    if !declared.contains(&ident.as_str()) {
                        missing.push((inst.name.clone(), ident));
                    }
                }
            }
        }
        missing
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for line in &self.preamble {
            let _ = writeln!(out, "{line}");
        }
        for line in &self.header {
            let _ = writeln!(out, "// {line}");
        }
        let _ = write!(out, "module {}", self.name);
        if !self.parameters.is_empty() {
            let pad = self.parameters.iter().map(|p| p.name.len()).max().unwrap_or(0);
            out.push_str(" #(\n");
            for (i, p) in self.parameters.iter().enumerate() {
                let sep = if i + 1 == self.parameters.len() { "" } else { "," };
                let _ = writeln!(out, "{INDENT}parameter {:<pad$} = {}{sep}", p.name, p.default);
            }
            out.push(')');
        }
        if self.ports.is_empty() {
            out.push_str(";\n");
        } else {
            out.push_str(" (\n");
            let ranges: Vec<String> = self.ports.iter().map(|p| range(&p.width)).collect();
            let rpad = ranges.iter().map(String::len).max().unwrap_or(0);
            for (i, (p, r)) in self.ports.iter().zip(&ranges).enumerate() {
                let dir = match p.direction {
                    Direction::Input => "input ",
                    Direction::Output => "output",
                };
                let sep = if i + 1 == self.ports.len() { "" } else { "," };
                let _ = writeln!(out, "{INDENT}{dir} {:<4} {r:<rpad$} {}{sep}", p.net.keyword(), p.name);
            }
            out.push_str(");\n");
        }

        if !self.localparams.is_empty() {
            out.push('\n');
            for lp in &self.localparams {
                let mut decl = String::from("localparam");
                if lp.signed {
                    decl.push_str(" signed");
                }
                if let Some(w) = &lp.width {
                    let _ = write!(decl, " [{w}-1:0]");
                }
                let _ = write!(out, "{INDENT}{decl} {} = {};", lp.name, lp.value);
                if let Some(c) = &lp.comment {
                    let _ = write!(out, " // {c}");
                }
                out.push('\n');
            }
        }
        if !self.nets.is_empty() {
            out.push('\n');
            for n in &self.nets {
                let kind = if n.signed { format!("{} signed", n.net.keyword()) } else { n.net.keyword().to_string() };
                let r = range(&n.width);
                if r.is_empty() {
                    let _ = writeln!(out, "{INDENT}{kind} {};", n.name);
                } else {
                    let _ = writeln!(out, "{INDENT}{kind} {r} {};", n.name);
                }
            }
        }
        for item in &self.body {
            match item {
                BodyItem::Comment(c) => {
                    let _ = writeln!(out, "{INDENT}// {c}");
                }
                BodyItem::Text(t) => out.push_str(t),
                BodyItem::Blank => out.push('\n'),
                BodyItem::Instance(inst) => render_instance(&mut out, inst),
            }
        }
        out.push_str("endmodule\n");
        out
    }
}

fn render_instance(out: &mut String, inst: &Instance) {
    let _ = write!(out, "{INDENT}{}", inst.module);
    if !inst.params.is_empty() {
        out.push_str(" #(\n");
        for (i, (name, value)) in inst.params.iter().enumerate() {
            let sep = if i + 1 == inst.params.len() { "" } else { "," };
            let _ = writeln!(out, "{INDENT}{INDENT}.{name}({value}){sep}");
        }
        let _ = write!(out, "{INDENT})");
    }
    let _ = writeln!(out, " {} (", inst.name);
    let pad = inst.connections.iter().map(|(p, _)| p.len()).max().unwrap_or(0);
    for (i, (port, expr)) in inst.connections.iter().enumerate() {
        let sep = if i + 1 == inst.connections.len() { "" } else { "," };
        let _ = writeln!(out, "{INDENT}{INDENT}.{port:<pad$} ({expr}){sep}");
    }
    let _ = writeln!(out, "{INDENT});");
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn sample() -> HdlModule {
        let mut m = HdlModule::new("demo");
        m.header.push("Demo module.".into());
        m.param("DATA_WIDTH", 16)
            .port(Direction::Input, NetType::Wire, "clk", None)
            .port(Direction::Input, NetType::Wire, "a", Some("DATA_WIDTH"))
            .port(Direction::Output, NetType::Reg, "q", Some("DATA_WIDTH"))
            .net(NetType::Wire, false, "t", Some("DATA_WIDTH"));
        m.instance(Instance {
            module: "child".into(),
            name: "u_child".into(),
            params: vec![("DATA_WIDTH".into(), "DATA_WIDTH".into())],
            connections: vec![("clk".into(), "clk".into()), ("d".into(), "{a[3:0], t[3:0]}".into())],
        });
        m
    }

    #[test]
    fn renders_header_ports_and_instances() {
        let text = sample().render();
        let want = "\
// Demo module.
module demo #(
    parameter DATA_WIDTH = 16
) (
    input  wire                  clk,
    input  wire [DATA_WIDTH-1:0] a,
    output reg  [DATA_WIDTH-1:0] q
);

    wire [DATA_WIDTH-1:0] t;
    child #(
        .DATA_WIDTH(DATA_WIDTH)
    ) u_child (
        .clk (clk),
        .d   ({a[3:0], t[3:0]})
    );
endmodule
";
        assert_eq!(text, want);
    }

    #[test]
    fn finds_undeclared_connections() {
        let mut m = sample();
        assert!(m.undeclared_references().is_empty());
        m.instance(Instance {
            module: "child".into(),
            name: "u_two".into(),
            params: vec![],
            connections: vec![("d".into(), "ghost".into())],
        });
        assert_eq!(m.undeclared_references(), vec![("u_two".into(), "ghost".into())]);
        assert_eq!(m.file_name(), "demo.v");
    }
}
