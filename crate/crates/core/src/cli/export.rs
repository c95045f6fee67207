use std::fmt::Write as _;

use clap::Args;

use super::{usage, CliError, ExportFormat};
use crate::diagrams::{canonicalize, ComplexType, Diagram, SignedDiagram};
use crate::linalg::GraphComplex;

/// Either a diagram record given inline, or a position in a basis.
#[derive(Debug, Args)]
pub struct Selector {
    /// Diagram record as JSON; canonicalized before export.
    #[arg(long, conflicts_with_all = ["kind", "k", "m", "index"])]
    pub diagram: Option<String>,
    #[arg(long = "type")]
    pub kind: Option<ComplexType>,
    #[arg(short = 'k')]
    pub k: Option<i64>,
    #[arg(short = 'm')]
    pub m: Option<i64>,
    /// Position in the canonical basis order.
    #[arg(long)]
    pub index: Option<usize>,
}

fn select(gc: &GraphComplex, s: &Selector) -> Result<Diagram, CliError> {
    if let Some(text) = &s.diagram {
        let d = Diagram::from_json(text)?;
        return match canonicalize(&d)? {
            SignedDiagram::Term(_, c) => Ok(c),
            SignedDiagram::Zero => Err(usage(format!("{text} is zero in the complex"))),
        };
    }
    let (Some(kind), Some(k), Some(m), Some(index)) = (s.kind, s.k, s.m, s.index) else {
        return Err(usage("select a diagram with --diagram, or with --type, -k, -m and --index"));
    };
    let basis = gc.basis(kind, k, m)?;
    basis
        .get(index)
        .cloned()
        .ok_or_else(|| usage(format!("index {index} out of range: the basis has {} diagrams", basis.len())))
}

/// Circle as a solid cycle through the external vertices, edges dashed.
pub fn to_dot(d: &Diagram) -> String {
    let (k, m) = d.grading();
    let mut s = String::new();
    let _ = writeln!(s, "digraph diagram {{");
    let _ = writeln!(s, "  label=\"{} k={k} m={m}\";", d.kind());
    let _ = writeln!(s, "  node [shape=circle];");
    for v in 1..=d.vertex_count() {
        let style = if v <= d.ve() { "" } else { ", style=filled, fillcolor=lightgray" };
        let _ = writeln!(s, "  v{v} [label=\"{v}\"{style}];");
    }
    if d.ve() >= 2 {
        for v in 1..=d.ve() {
            let next = if v == d.ve() { 1 } else { v + 1 };
            let _ = writeln!(s, "  v{v} -> v{next} [penwidth=2];");
        }
    }
    for (i, e) in d.edges().iter().enumerate() {
        let (a, b) = if e.swapped { (e.head, e.tail) } else { (e.tail, e.head) };
        let attrs = match d.kind() {
            ComplexType::Odd => "style=dashed".to_string(),
            ComplexType::Even => format!("style=dashed, dir=none, label=\"{}\"", i + 1),
        };
        let _ = writeln!(s, "  v{a} -> v{b} [{attrs}];");
    }
    s.push_str("}\n");
    s
}

pub fn cmd_export(gc: &GraphComplex, s: &Selector, to: ExportFormat) -> Result<String, CliError> {
    let d = select(gc, s)?;
    Ok(match to {
        ExportFormat::Json => format!("{}\n", d.to_json()),
        ExportFormat::Dot => to_dot(&d),
    })
}
