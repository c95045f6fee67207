//! Decorated diagrams on an oriented circle.
//!
//! A diagram has `ve` external vertices lying on the circle, labeled `1..=ve`
//! in the order of the circle orientation, and `vi` internal vertices labeled
//! `ve+1..=ve+vi`. Edges join vertices; an edge whose two ends sit on the
//! same external vertex is a loop.
//!
//! Decorations depend on the complex type:
//!
//! * odd type: the vertex numbering counts (external labels up to rotation,
//!   internal labels up to even permutations), every edge is oriented, and a
//!   loop carries an order of its two half-edges;
//! * even type: the external numbering counts (up to rotation) and the edge
//!   numbering counts (up to even permutations); internal labels and edge
//!   orientations carry no sign.

mod canon;
mod vector;

use std::fmt;
use std::ops::{Mul, MulAssign, Neg};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{GraphError, Result};

pub use canon::canonicalize;
pub use vector::{pairing, vector_add, vector_scale, GraphVector, VectorRecord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ComplexType {
    Odd,
    Even,
}

impl ComplexType {
    pub const BOTH: [ComplexType; 2] = [ComplexType::Odd, ComplexType::Even];

    pub fn as_str(self) -> &'static str {
        match self {
            ComplexType::Odd => "odd",
            ComplexType::Even => "even",
        }
    }
}

impl fmt::Display for ComplexType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ComplexType {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "odd" => Ok(ComplexType::Odd),
            "even" => Ok(ComplexType::Even),
            other => Err(GraphError::Structural(format!("unknown complex type {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_parity(odd: bool) -> Sign {
        if odd {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    /// `(-1)^exponent`
    pub fn pow(exponent: usize) -> Sign {
        Sign::from_parity(exponent % 2 == 1)
    }

    pub fn to_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_parity(self != rhs)
    }
}

impl MulAssign for Sign {
    fn mul_assign(&mut self, rhs: Sign) {
        *self = *self * rhs;
    }
}

impl Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        self * Sign::Minus
    }
}

/// An edge between two 1-based vertex ids.
///
/// In odd type the pair is oriented `tail -> head`. For a loop (`tail == head`,
/// necessarily external) `swapped` records the half-edge order: `false` is
/// `"ab"`, the loop traversed along the circle orientation, `true` is `"ba"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub tail: u8,
    pub head: u8,
    pub swapped: bool,
}

impl Edge {
    pub fn new(tail: u8, head: u8) -> Edge {
        Edge {
            tail,
            head,
            swapped: false,
        }
    }

    pub fn is_loop(&self) -> bool {
        self.tail == self.head
    }

    /// Endpoints as an unordered pair `(min, max)`.
    pub fn ends(&self) -> (u8, u8) {
        if self.tail <= self.head {
            (self.tail, self.head)
        } else {
            (self.head, self.tail)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Diagram {
    kind: ComplexType,
    ve: u8,
    vi: u8,
    edges: Vec<Edge>,
}

impl Diagram {
    /// Builds a diagram after checking that every edge references a valid vertex.
    pub fn new(kind: ComplexType, ve: usize, vi: usize, edges: Vec<Edge>) -> Result<Diagram> {
        if ve + vi > u8::MAX as usize {
            return Err(GraphError::Structural(format!("{} vertices is too many", ve + vi)));
        }
        let d = Diagram {
            kind,
            ve: ve as u8,
            vi: vi as u8,
            edges,
        };
        d.validate()?;
        Ok(d)
    }

    /// Convenience constructor from `(tail, head)` pairs with `"ab"` loops.
    pub fn from_pairs(kind: ComplexType, ve: usize, vi: usize, pairs: &[(u8, u8)]) -> Result<Diagram> {
        let edges = pairs.iter().map(|&(t, h)| Edge::new(t, h)).collect();
        Diagram::new(kind, ve, vi, edges)
    }

    pub(crate) fn from_parts_unchecked(kind: ComplexType, ve: usize, vi: usize, edges: Vec<Edge>) -> Diagram {
        Diagram {
            kind,
            ve: ve as u8,
            vi: vi as u8,
            edges,
        }
    }

    pub fn kind(&self) -> ComplexType {
        self.kind
    }

    pub fn ve(&self) -> usize {
        self.ve as usize
    }

    pub fn vi(&self) -> usize {
        self.vi as usize
    }

    pub fn vertex_count(&self) -> usize {
        self.ve() + self.vi()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn is_external(&self, v: u8) -> bool {
        v >= 1 && v <= self.ve
    }

    pub fn is_internal(&self, v: u8) -> bool {
        v > self.ve && (v as usize) <= self.vertex_count()
    }

    /// An edge with at least one internal endpoint that is not a loop.
    pub fn is_regular_edge(&self, index: usize) -> bool {
        let e = self.edges[index];
        !e.is_loop() && (self.is_internal(e.tail) || self.is_internal(e.head))
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.vertex_count();
        for (idx, e) in self.edges.iter().enumerate() {
            for v in [e.tail, e.head] {
                if v == 0 || v as usize > n {
                    return Err(GraphError::Structural(format!(
                        "edge {idx} references vertex {v}, valid ids are 1..={n}"
                    )));
                }
            }
            if e.swapped && !e.is_loop() {
                return Err(GraphError::Structural(format!(
                    "edge {idx} is not a loop but carries a half-edge order"
                )));
            }
            if e.swapped && self.kind == ComplexType::Even {
                return Err(GraphError::Structural(format!(
                    "edge {idx}: even-type loops carry no half-edge order"
                )));
            }
        }
        Ok(())
    }

    /// Edge-degree of every vertex (index 0 is vertex 1); a loop counts twice.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count()];
        for e in &self.edges {
            deg[e.tail as usize - 1] += 1;
            deg[e.head as usize - 1] += 1;
        }
        deg
    }

    /// Parallel edges or a loop at an internal vertex.
    pub fn is_degenerate(&self) -> bool {
        let mut ends: Vec<(u8, u8)> = self.edges.iter().map(Edge::ends).collect();
        if self
            .edges
            .iter()
            .any(|e| e.is_loop() && self.is_internal(e.tail))
        {
            return true;
        }
        ends.sort_unstable();
        ends.windows(2).any(|w| w[0] == w[1])
    }

    /// Checks every basis-level invariant: valence bounds, non-degeneracy,
    /// attachment of every internal vertex to the circle, `k >= 1`, `m >= 0`.
    pub fn check_invariants(&self) -> Result<()> {
        self.validate()?;
        if self.ve == 0 {
            return Err(GraphError::Structural("no external vertex".into()));
        }
        if self.is_degenerate() {
            return Err(GraphError::Structural("parallel edges or internal loop".into()));
        }
        for (idx, &d) in self.degrees().iter().enumerate() {
            let v = idx + 1;
            let min = if v <= self.ve() { 1 } else { 3 };
            if d < min {
                return Err(GraphError::Structural(format!("vertex {v} has edge-degree {d} < {min}")));
            }
        }
        if !self.is_attached() {
            return Err(GraphError::Structural("internal component detached from the circle".into()));
        }
        let (k, m) = self.grading();
        if k < 1 || m < 0 {
            return Err(GraphError::Structural(format!("grading ({k}, {m}) out of range")));
        }
        Ok(())
    }

    /// Every internal vertex reaches an external vertex through edges.
    pub fn is_attached(&self) -> bool {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut stack: Vec<usize> = (0..self.ve()).collect();
        for &v in &stack {
            seen[v] = true;
        }
        while let Some(v) = stack.pop() {
            for e in &self.edges {
                let (a, b) = (e.tail as usize - 1, e.head as usize - 1);
                for (x, y) in [(a, b), (b, a)] {
                    if x == v && !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// `(k, m) = (e - v_i, 2e - 3 v_i - v_e)`.
    pub fn grading(&self) -> (i64, i64) {
        let e = self.edges.len() as i64;
        let vi = self.vi as i64;
        let ve = self.ve as i64;
        (e - vi, 2 * e - 3 * vi - ve)
    }

    /// Sum of valence excesses: `deg - 3` over internal, `deg - 1` over external vertices.
    pub fn valence_excess(&self) -> i64 {
        self.degrees()
            .iter()
            .enumerate()
            .map(|(idx, &d)| d as i64 - if idx < self.ve() { 1 } else { 3 })
            .sum()
    }

    /// A chord diagram: no internal vertices, every external vertex on exactly one chord.
    pub fn is_chord_diagram(&self) -> bool {
        self.vi == 0 && self.edges.iter().all(|e| !e.is_loop()) && self.degrees().iter().all(|&d| d == 1)
    }

    /// Degree-0 diagram.
    pub fn is_trivalent(&self) -> bool {
        self.grading().1 == 0
    }

    pub fn to_record(&self) -> DiagramRecord {
        DiagramRecord {
            kind: self.kind,
            ve: self.ve as usize,
            vi: self.vi as usize,
            edges: self.edges.iter().map(|e| [e.tail, e.head]).collect(),
            loop_orders: match self.kind {
                ComplexType::Odd => self
                    .edges
                    .iter()
                    .filter(|e| e.is_loop())
                    .map(|e| if e.swapped { "ba" } else { "ab" }.to_string())
                    .collect(),
                ComplexType::Even => Vec::new(),
            },
        }
    }

    /// One-line JSON record; byte-stable for a given diagram.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_record()).expect("diagram record serializes")
    }

    pub fn from_json(line: &str) -> Result<Diagram> {
        let record: DiagramRecord = serde_json::from_str(line)?;
        Diagram::try_from(record)
    }

    /// Applies a decoration move, returning the re-decorated diagram and the
    /// sign relating it to `self`.
    pub fn apply_move(&self, mv: &DecorationMove) -> Result<(Diagram, Sign)> {
        let ve = self.ve();
        let vi = self.vi();
        match mv {
            DecorationMove::Rotate(steps) => {
                if ve == 0 {
                    return Ok((self.clone(), Sign::Plus));
                }
                let s = steps % ve;
                let relabel = |v: u8| -> u8 {
                    if (v as usize) <= ve {
                        (((v as usize - 1 + s) % ve) + 1) as u8
                    } else {
                        v
                    }
                };
                let edges = self
                    .edges
                    .iter()
                    .map(|e| Edge {
                        tail: relabel(e.tail),
                        head: relabel(e.head),
                        swapped: e.swapped,
                    })
                    .collect();
                Ok((
                    Diagram::from_parts_unchecked(self.kind, ve, vi, edges),
                    Sign::pow(s * (ve.saturating_sub(1))),
                ))
            }
            DecorationMove::PermuteInternal(perm) => {
                if !is_permutation(perm, vi) {
                    return Err(GraphError::InvalidMove(format!(
                        "{perm:?} is not a permutation of {vi} internal vertices"
                    )));
                }
                let relabel = |v: u8| -> u8 {
                    if (v as usize) > ve {
                        (ve + perm[v as usize - ve - 1] + 1) as u8
                    } else {
                        v
                    }
                };
                let edges = self
                    .edges
                    .iter()
                    .map(|e| Edge {
                        tail: relabel(e.tail),
                        head: relabel(e.head),
                        swapped: e.swapped,
                    })
                    .collect();
                let sign = match self.kind {
                    ComplexType::Odd => permutation_sign(perm),
                    ComplexType::Even => Sign::Plus,
                };
                Ok((Diagram::from_parts_unchecked(self.kind, ve, vi, edges), sign))
            }
            DecorationMove::PermuteEdges(perm) => {
                if self.kind != ComplexType::Even {
                    return Err(GraphError::InvalidMove("edge labels are a decoration in even type only".into()));
                }
                if !is_permutation(perm, self.edges.len()) {
                    return Err(GraphError::InvalidMove(format!(
                        "{perm:?} is not a permutation of {} edges",
                        self.edges.len()
                    )));
                }
                // edge formerly labeled `i` now carries label `perm[i]`
                let mut edges = self.edges.clone();
                for (old, &new) in perm.iter().enumerate() {
                    edges[new] = self.edges[old];
                }
                Ok((
                    Diagram::from_parts_unchecked(self.kind, ve, vi, edges),
                    permutation_sign(perm),
                ))
            }
            DecorationMove::ReverseEdge(idx) => {
                self.odd_edge_move(*idx, false)?;
                let mut edges = self.edges.clone();
                let e = &mut edges[*idx];
                if e.is_loop() {
                    e.swapped = !e.swapped;
                } else {
                    std::mem::swap(&mut e.tail, &mut e.head);
                }
                Ok((Diagram::from_parts_unchecked(self.kind, ve, vi, edges), Sign::Minus))
            }
            DecorationMove::SwapLoopHalves(idx) => {
                self.odd_edge_move(*idx, true)?;
                let mut edges = self.edges.clone();
                edges[*idx].swapped = !edges[*idx].swapped;
                Ok((Diagram::from_parts_unchecked(self.kind, ve, vi, edges), Sign::Minus))
            }
        }
    }

    fn odd_edge_move(&self, idx: usize, need_loop: bool) -> Result<()> {
        if self.kind != ComplexType::Odd {
            return Err(GraphError::InvalidMove("edge orientations are a decoration in odd type only".into()));
        }
        let e = self
            .edges
            .get(idx)
            .ok_or_else(|| GraphError::InvalidMove(format!("no edge {idx}")))?;
        if need_loop && !e.is_loop() {
            return Err(GraphError::InvalidMove(format!("edge {idx} is not a loop")));
        }
        Ok(())
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_json())
    }
}

/// Serialized form, field order fixed: `type, ve, vi, edges, loop_orders`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramRecord {
    #[serde(rename = "type")]
    pub kind: ComplexType,
    pub ve: usize,
    pub vi: usize,
    pub edges: Vec<[u8; 2]>,
    pub loop_orders: Vec<String>,
}

impl TryFrom<DiagramRecord> for Diagram {
    type Error = GraphError;

    fn try_from(r: DiagramRecord) -> Result<Diagram> {
        let loops = r.edges.iter().filter(|e| e[0] == e[1]).count();
        let orders: Vec<bool> = match r.kind {
            ComplexType::Odd => {
                if r.loop_orders.len() != loops {
                    return Err(GraphError::Structural(format!(
                        "{} loop orders given for {loops} loops",
                        r.loop_orders.len()
                    )));
                }
                r.loop_orders
                    .iter()
                    .map(|o| match o.as_str() {
                        "ab" => Ok(false),
                        "ba" => Ok(true),
                        other => Err(GraphError::Structural(format!("bad loop order {other:?}"))),
                    })
                    .collect::<Result<_>>()?
            }
            ComplexType::Even => {
                if !r.loop_orders.is_empty() {
                    return Err(GraphError::Structural("even-type loops carry no half-edge order".into()));
                }
                vec![false; loops]
            }
        };
        let mut orders = orders.into_iter();
        let edges = r
            .edges
            .iter()
            .map(|&[t, h]| Edge {
                tail: t,
                head: h,
                swapped: if t == h { orders.next().unwrap_or(false) } else { false },
            })
            .collect();
        Diagram::new(r.kind, r.ve, r.vi, edges)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SignedDiagram {
    Zero,
    Term(Sign, Diagram),
}

impl SignedDiagram {
    pub fn is_zero(&self) -> bool {
        matches!(self, SignedDiagram::Zero)
    }

    pub fn times(self, s: Sign) -> SignedDiagram {
        match self {
            SignedDiagram::Zero => SignedDiagram::Zero,
            SignedDiagram::Term(t, d) => SignedDiagram::Term(t * s, d),
        }
    }
}

/// Elementary changes of decoration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecorationMove {
    /// External label `v` becomes `v + steps` (mod `ve`).
    Rotate(usize),
    /// Internal vertex `ve + 1 + i` becomes `ve + 1 + perm[i]`.
    PermuteInternal(Vec<usize>),
    /// Edge label `i` becomes `perm[i]` (0-based, even type).
    PermuteEdges(Vec<usize>),
    /// Odd type: reverse the orientation of one edge.
    ReverseEdge(usize),
    /// Odd type: swap the half-edge order of one loop.
    SwapLoopHalves(usize),
}

/// `(k, m)` of a structurally valid diagram.
pub fn grading(d: &Diagram) -> Result<(i64, i64)> {
    d.validate()?;
    Ok(d.grading())
}

pub fn decoration_sign(d: &Diagram, mv: &DecorationMove) -> Result<Sign> {
    d.apply_move(mv).map(|(_, s)| s)
}

fn is_permutation(perm: &[usize], n: usize) -> bool {
    if perm.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || std::mem::replace(&mut seen[p], true) {
            return false;
        }
    }
    true
}

/// Sign of a permutation given as the image list `i -> perm[i]`.
pub fn permutation_sign(perm: &[usize]) -> Sign {
    let mut seen = vec![false; perm.len()];
    let mut transpositions = 0;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        transpositions += len - 1;
    }
    Sign::pow(transpositions)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn even(ve: usize, vi: usize, pairs: &[(u8, u8)]) -> Diagram {
        Diagram::from_pairs(ComplexType::Even, ve, vi, pairs).unwrap()
    }

    #[test]
    fn grading_of_named_diagrams() {
        let chords = even(5, 0, &[(1, 3), (1, 4), (2, 5)]);
        assert_eq!(grading(&chords).unwrap(), (3, 1));
        let star = even(4, 1, &[(1, 5), (4, 5), (3, 5), (2, 5)]);
        assert_eq!(grading(&star).unwrap(), (3, 1));
        let two = even(4, 0, &[(1, 3), (2, 4)]);
        assert_eq!(grading(&two).unwrap(), (2, 0));
    }

    #[test]
    fn grading_rejects_bad_ids() {
        let err = Diagram::from_pairs(ComplexType::Odd, 2, 0, &[(1, 3)]).unwrap_err();
        assert!(matches!(err, GraphError::Structural(_)));
    }

    #[test]
    fn rotation_signs() {
        let d3 = even(3, 1, &[(1, 4), (2, 4), (3, 4)]);
        assert_eq!(decoration_sign(&d3, &DecorationMove::Rotate(1)).unwrap(), Sign::Plus);
        let d2 = even(2, 0, &[(1, 2)]);
        assert_eq!(decoration_sign(&d2, &DecorationMove::Rotate(1)).unwrap(), Sign::Minus);
        let d4 = even(4, 0, &[(1, 3), (2, 4)]);
        assert_eq!(decoration_sign(&d4, &DecorationMove::Rotate(2)).unwrap(), Sign::Plus);
        assert_eq!(decoration_sign(&d4, &DecorationMove::Rotate(3)).unwrap(), Sign::Minus);
    }

    #[test]
    fn odd_edge_moves() {
        let d = Diagram::from_pairs(ComplexType::Odd, 2, 0, &[(1, 2)]).unwrap();
        assert_eq!(decoration_sign(&d, &DecorationMove::ReverseEdge(0)).unwrap(), Sign::Minus);
        assert!(matches!(
            decoration_sign(&d, &DecorationMove::SwapLoopHalves(0)),
            Err(GraphError::InvalidMove(_))
        ));
        let l = Diagram::from_pairs(ComplexType::Odd, 1, 0, &[(1, 1)]).unwrap();
        assert_eq!(decoration_sign(&l, &DecorationMove::SwapLoopHalves(0)).unwrap(), Sign::Minus);
    }

    #[test]
    fn moves_rejected_by_type() {
        let e = even(2, 0, &[(1, 2)]);
        assert!(matches!(
            decoration_sign(&e, &DecorationMove::ReverseEdge(0)),
            Err(GraphError::InvalidMove(_))
        ));
        let o = Diagram::from_pairs(ComplexType::Odd, 2, 0, &[(1, 2)]).unwrap();
        assert!(matches!(
            decoration_sign(&o, &DecorationMove::PermuteEdges(vec![0])),
            Err(GraphError::InvalidMove(_))
        ));
    }

    #[test]
    fn internal_permutation_sign_depends_on_type() {
        let pairs = [(1, 3), (3, 4), (4, 2), (1, 4), (2, 3)];
        let o = Diagram::from_pairs(ComplexType::Odd, 2, 2, &pairs).unwrap();
        let e = even(2, 2, &pairs);
        let swap = DecorationMove::PermuteInternal(vec![1, 0]);
        assert_eq!(decoration_sign(&o, &swap).unwrap(), Sign::Minus);
        assert_eq!(decoration_sign(&e, &swap).unwrap(), Sign::Plus);
    }

    #[test]
    fn serialization_is_fixed() {
        let d = even(5, 0, &[(1, 3), (1, 4), (2, 5)]);
        assert_eq!(
            d.to_json(),
            r#"{"type":"even","ve":5,"vi":0,"edges":[[1,3],[1,4],[2,5]],"loop_orders":[]}"#
        );
        let l = Diagram::new(
            ComplexType::Odd,
            2,
            0,
            vec![Edge { tail: 1, head: 1, swapped: true }, Edge::new(2, 1)],
        )
        .unwrap();
        assert_eq!(
            l.to_json(),
            r#"{"type":"odd","ve":2,"vi":0,"edges":[[1,1],[2,1]],"loop_orders":["ba"]}"#
        );
        assert_eq!(Diagram::from_json(&l.to_json()).unwrap(), l);
    }

    #[test]
    fn valence_excess_matches_degree() {
        let d = even(4, 1, &[(1, 5), (4, 5), (3, 5), (2, 5)]);
        assert_eq!(d.valence_excess(), d.grading().1);
    }

    #[test]
    fn invariant_violations() {
        assert!(even(2, 0, &[(1, 2), (2, 1)]).check_invariants().is_err());
        // internal vertex of degree 2
        assert!(even(2, 1, &[(1, 3), (2, 3)]).check_invariants().is_err());
        // K4 on internal vertices, not attached to the circle
        let detached = even(
            1,
            4,
            &[(1, 1), (2, 3), (2, 4), (2, 5), (3, 4), (3, 5), (4, 5)],
        );
        assert!(!detached.is_attached());
        assert!(detached.check_invariants().is_err());
    }

    #[test]
    fn permutation_sign_cycles() {
        assert_eq!(permutation_sign(&[0, 1, 2]), Sign::Plus);
        assert_eq!(permutation_sign(&[1, 0, 2]), Sign::Minus);
        assert_eq!(permutation_sign(&[1, 2, 0]), Sign::Plus);
        assert_eq!(permutation_sign(&[1, 2, 3, 0]), Sign::Minus);
    }

    #[test]
    fn even_loops_on_a_lone_external_vertex_vanish() {
        let lone = even(1, 0, &[(1, 1)]);
        assert_eq!(canonicalize(&lone).unwrap(), SignedDiagram::Zero);
        let wider = even(3, 0, &[(1, 1), (2, 3)]);
        assert!(!canonicalize(&wider).unwrap().is_zero());
        let odd = Diagram::from_pairs(ComplexType::Odd, 1, 0, &[(1, 1)]).unwrap();
        assert!(!canonicalize(&odd).unwrap().is_zero());
    }
}
