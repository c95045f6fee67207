//! The coboundary `delta` (contraction of arcs and regular edges) and the
//! boundary `partial`, its adjoint with respect to the diagram basis.
//!
//! Contraction of an arc or odd-type edge running from vertex `i` to vertex
//! `j` carries `(-1)^j` when `j > i` and `(-1)^(i+1)` when `j < i`. Contraction
//! of the even-type edge labeled `a` carries `(-1)^(a + 1 + ve)`, with `ve`
//! counted before the contraction. The merged vertex keeps `min(i, j)`, the
//! label `max(i, j)` disappears and higher labels move down by one.

use num_rational::BigRational;
use num_traits::One;

use crate::diagrams::{canonicalize, ComplexType, Diagram, Edge, GraphVector, Sign, SignedDiagram};
use crate::error::{GraphError, Result};

/// Merges `removed` into `kept` (with `kept < removed`), shifting labels above `removed`.
fn merge_label(v: u8, kept: u8, removed: u8) -> u8 {
    if v == removed {
        kept
    } else if v > removed {
        v - 1
    } else {
        v
    }
}

/// `(-1)^j` if `j > i`, `(-1)^(i+1)` if `j < i`, for a contraction oriented `i -> j`.
pub fn vertex_rule_sign(i: usize, j: usize) -> Sign {
    if j > i {
        Sign::pow(j)
    } else {
        Sign::pow(i + 1)
    }
}

/// Contracts the arc from external vertex `i` (1-based) to its circle successor,
/// without canonicalizing. Returns the re-labeled diagram and the contraction sign.
pub fn contract_arc_raw(d: &Diagram, i: usize) -> Result<(Diagram, Sign)> {
    d.validate()?;
    let ve = d.ve();
    if ve <= 1 {
        return Err(GraphError::NoArc(ve));
    }
    if i == 0 || i > ve {
        return Err(GraphError::Structural(format!("arc start {i} is not an external vertex 1..={ve}")));
    }
    let j = if i == ve { 1 } else { i + 1 };
    let sign = vertex_rule_sign(i, j);
    let (kept, removed) = (i.min(j) as u8, i.max(j) as u8);
    let edges = d
        .edges()
        .iter()
        .map(|e| {
            let tail = merge_label(e.tail, kept, removed);
            let head = merge_label(e.head, kept, removed);
            let swapped = if e.is_loop() {
                e.swapped
            } else if tail == head {
                // a chord from i to j becomes a loop; "ab" when it ran along the arc
                d.kind() == ComplexType::Odd && e.tail as usize != i
            } else {
                false
            };
            Edge { tail, head, swapped }
        })
        .collect();
    Ok((
        Diagram::from_parts_unchecked(d.kind(), ve - 1, d.vi(), edges),
        sign,
    ))
}

pub fn contract_arc(d: &Diagram, i: usize) -> Result<SignedDiagram> {
    let (raw, sign) = contract_arc_raw(d, i)?;
    Ok(canonicalize(&raw)?.times(sign))
}

/// Contracts the regular edge at position `index` (0-based; its even-type
/// label is `index + 1`), without canonicalizing.
pub fn contract_edge_raw(d: &Diagram, index: usize) -> Result<(Diagram, Sign)> {
    d.validate()?;
    let e = *d
        .edges()
        .get(index)
        .ok_or_else(|| GraphError::Structural(format!("no edge at index {index}")))?;
    if !d.is_regular_edge(index) {
        return Err(GraphError::NotContractible(index));
    }
    let sign = match d.kind() {
        ComplexType::Odd => vertex_rule_sign(e.tail as usize, e.head as usize),
        ComplexType::Even => Sign::pow(index + 1 + 1 + d.ve()),
    };
    let (kept, removed) = e.ends();
    let edges = d
        .edges()
        .iter()
        .enumerate()
        .filter(|&(idx, _)| idx != index)
        .map(|(_, x)| Edge {
            tail: merge_label(x.tail, kept, removed),
            head: merge_label(x.head, kept, removed),
            swapped: x.swapped,
        })
        .collect();
    Ok((
        Diagram::from_parts_unchecked(d.kind(), d.ve(), d.vi() - 1, edges),
        sign,
    ))
}

pub fn contract_edge(d: &Diagram, index: usize) -> Result<SignedDiagram> {
    let (raw, sign) = contract_edge_raw(d, index)?;
    Ok(canonicalize(&raw)?.times(sign))
}

/// All signed contractions of one diagram, zero terms dropped.
pub fn delta_terms(d: &Diagram) -> Result<Vec<(Sign, Diagram)>> {
    let mut out = Vec::new();
    if d.ve() >= 2 {
        for i in 1..=d.ve() {
            if let SignedDiagram::Term(s, c) = contract_arc(d, i)? {
                out.push((s, c));
            }
        }
    }
    for index in 0..d.edges().len() {
        if d.is_regular_edge(index) {
            if let SignedDiagram::Term(s, c) = contract_edge(d, index)? {
                out.push((s, c));
            }
        }
    }
    Ok(out)
}

/// `delta(d)` of a single diagram as a vector in degree `m + 1`.
pub fn delta_diagram(d: &Diagram) -> Result<GraphVector> {
    let (k, m) = d.grading();
    let mut out = GraphVector::zero(d.kind(), k, m + 1);
    let one = BigRational::one();
    for (s, c) in delta_terms(d)? {
        let coeff = if s == Sign::Plus { one.clone() } else { -one.clone() };
        out.add_term(c, coeff)?;
    }
    Ok(out)
}

pub fn delta(v: &GraphVector) -> Result<GraphVector> {
    let (k, m) = v.grading();
    let mut out = GraphVector::zero(v.kind(), k, m + 1);
    for (d, c) in v.terms() {
        for (s, t) in delta_terms(d)? {
            let coeff = if s == Sign::Plus { c.clone() } else { -c.clone() };
            out.add_term(t, coeff)?;
        }
    }
    Ok(out)
}
