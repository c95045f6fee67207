//! Chord diagrams, the 1T and 4T relations, and the comparison of
//! `CD^{k,0} / (4T, 1T)` with `H_{k,0}`.
//!
//! 4T relations are produced as boundaries: a degree-1 diagram with no
//! internal vertex and one external vertex on two chords has a boundary made
//! of two chord diagrams and one diagram with an internal vertex. Two such
//! diagrams sharing that internal term combine into a relation supported on
//! chord diagrams alone.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::diagrams::{ComplexType, Diagram, GraphVector};
use crate::enumeration::ComplexBasis;
use crate::error::{GraphError, Result};
use crate::linalg::{in_image, kernel_basis, span_rank, GraphComplex, RationalMatrix};

pub fn enumerate_chord_diagrams(gc: &GraphComplex, kind: ComplexType, k: i64) -> Result<ComplexBasis> {
    let full = gc.basis(kind, k, 0)?;
    let chords = full.diagrams().iter().filter(|d| d.is_chord_diagram()).cloned().collect();
    ComplexBasis::new(kind, k, 0, chords)
}

/// Whether some chord joins two circle-neighbours (including `ve` and `1`).
pub fn has_isolated_chord(d: &Diagram) -> bool {
    let ve = d.ve() as u8;
    d.is_chord_diagram()
        && ve >= 2
        && d.edges().iter().any(|e| {
            let (a, b) = e.ends();
            b == a + 1 || (a == 1 && b == ve)
        })
}

pub fn one_t_generators(gc: &GraphComplex, kind: ComplexType, k: i64) -> Result<Vec<GraphVector>> {
    enumerate_chord_diagrams(gc, kind, k)?
        .diagrams()
        .iter()
        .filter(|d| has_isolated_chord(d))
        .map(|d| {
            let mut v = GraphVector::zero(kind, k, 0);
            v.add_term(d.clone(), BigRational::one())?;
            Ok(v)
        })
        .collect()
}

/// Degree-1 diagrams without internal vertices or loops whose single excess
/// sits on one external vertex carrying two chords.
fn doubled_vertex_diagrams(gc: &GraphComplex, kind: ComplexType, k: i64) -> Result<Vec<Diagram>> {
    Ok(gc
        .basis(kind, k, 1)?
        .diagrams()
        .iter()
        .filter(|d| d.vi() == 0 && !d.edges().iter().any(|e| e.is_loop()))
        .cloned()
        .collect())
}

/// 4T relations as boundaries. A diagram whose boundary already avoids the
/// internal term contributes that boundary on its own.
pub fn four_t_generators(gc: &GraphComplex, kind: ComplexType, k: i64) -> Result<Vec<GraphVector>> {
    if k < 2 {
        return Ok(Vec::new());
    }
    let mut by_internal: BTreeMap<Diagram, Vec<(BigRational, GraphVector)>> = BTreeMap::new();
    let mut out = Vec::new();
    for d in doubled_vertex_diagrams(gc, kind, k)? {
        let mut single = GraphVector::zero(kind, k, 1);
        single.add_term(d, BigRational::one())?;
        let b = gc.partial(&single)?;
        let rest: Vec<_> = b.terms().filter(|(d, _)| !d.is_chord_diagram()).collect();
        match rest.as_slice() {
            [] => {
                if !b.is_zero() {
                    out.push(b);
                }
            }
            [(t, c)] => {
                let (t, c) = ((*t).clone(), (*c).clone());
                by_internal.entry(t).or_default().push((c, b));
            }
            _ => {
                return Err(GraphError::Convention(format!(
                    "boundary of a doubled-vertex diagram has {} non-chord terms",
                    rest.len()
                )))
            }
        }
    }
    for (internal, group) in by_internal {
        for (i, (ca, ba)) in group.iter().enumerate() {
            for (cb, bb) in &group[i + 1..] {
                let eps = -(ca / cb);
                let rel = ba.add(&bb.scale(&eps))?;
                if !rel.coefficient(&internal).is_zero() {
                    return Err(GraphError::Convention(format!(
                        "no sign cancels the internal term {internal}"
                    )));
                }
                if !rel.is_zero() {
                    out.push(rel);
                }
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub enum Certificate {
    /// A relation that is not a boundary.
    RelationOutsideImage(GraphVector),
    /// A boundary supported on chord diagrams that the relations miss.
    UnexplainedBoundary(GraphVector),
    /// A degree-0 diagram not equivalent to any combination of chord diagrams.
    UnreachedDiagram(GraphVector),
}

impl Certificate {
    pub fn vector(&self) -> &GraphVector {
        match self {
            Certificate::RelationOutsideImage(v)
            | Certificate::UnexplainedBoundary(v)
            | Certificate::UnreachedDiagram(v) => v,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Certificate::RelationOutsideImage(_) => "relation-outside-image",
            Certificate::UnexplainedBoundary(_) => "unexplained-boundary",
            Certificate::UnreachedDiagram(_) => "unreached-diagram",
        }
    }
}

#[derive(Debug, Clone)]
pub struct ChordReport {
    pub kind: ComplexType,
    pub k: i64,
    pub chord_dim: usize,
    pub one_t: usize,
    pub four_t: usize,
    pub relation_rank: usize,
    pub quotient_dim: usize,
    pub homology_dim: usize,
    pub relations_in_image: bool,
    pub certificate: Option<Certificate>,
}

impl ChordReport {
    pub fn agrees(&self) -> bool {
        self.relations_in_image && self.quotient_dim == self.homology_dim
    }

    pub fn to_json(&self) -> Value {
        json!({
            "type": self.kind,
            "k": self.k,
            "chord_diagrams": self.chord_dim,
            "one_t": self.one_t,
            "four_t": self.four_t,
            "relation_rank": self.relation_rank,
            "quotient_dim": self.quotient_dim,
            "homology_dim": self.homology_dim,
            "relations_in_image": self.relations_in_image,
            "agrees": self.agrees(),
            "certificate": self.certificate.as_ref().map(|c| json!({
                "kind": c.label(),
                "vector": c.vector().to_record(),
            })),
        })
    }
}

fn sparse_in(basis: &ComplexBasis, v: &GraphVector) -> Result<Vec<(usize, BigRational)>> {
    v.terms()
        .map(|(d, c)| {
            basis
                .position(d)
                .map(|i| (i, c.clone()))
                .ok_or_else(|| GraphError::Incomplete(d.to_json()))
        })
        .collect()
}

pub fn chord_quotient_dim(gc: &GraphComplex, kind: ComplexType, k: i64) -> Result<usize> {
    let chords = enumerate_chord_diagrams(gc, kind, k)?;
    let mut rels = one_t_generators(gc, kind, k)?;
    rels.extend(four_t_generators(gc, kind, k)?);
    let sparse = rels.iter().map(|r| sparse_in(&chords, r)).collect::<Result<Vec<_>>>()?;
    Ok(chords.len() - span_rank(&sparse))
}

pub fn compare_homology(gc: &GraphComplex, kind: ComplexType, k: i64) -> Result<ChordReport> {
    let chords = enumerate_chord_diagrams(gc, kind, k)?;
    let one_t = one_t_generators(gc, kind, k)?;
    let four_t = four_t_generators(gc, kind, k)?;
    let rels: Vec<GraphVector> = one_t.iter().chain(&four_t).cloned().collect();
    let sparse = rels.iter().map(|r| sparse_in(&chords, r)).collect::<Result<Vec<_>>>()?;
    let relation_rank = span_rank(&sparse);
    let quotient_dim = chords.len() - relation_rank;
    let homology_dim = gc.homology_dim(kind, k, 0)?;

    let full = gc.basis(kind, k, 0)?;
    let boundary = gc.matrix_of_partial(kind, k, 1)?;
    let mut certificate = None;
    for r in &rels {
        if in_image(&boundary, &gc.to_dense(r)?).is_none() {
            certificate = Some(Certificate::RelationOutsideImage(r.clone()));
            break;
        }
    }
    let relations_in_image = certificate.is_none();

    if certificate.is_none() && quotient_dim > homology_dim {
        certificate = unexplained_boundary(gc, &full, &chords, &boundary, &sparse, relation_rank)?;
    }
    if certificate.is_none() && quotient_dim < homology_dim {
        certificate = unreached_diagram(&full, &boundary)?;
    }
    Ok(ChordReport {
        kind,
        k,
        chord_dim: chords.len(),
        one_t: one_t.len(),
        four_t: four_t.len(),
        relation_rank,
        quotient_dim,
        homology_dim,
        relations_in_image,
        certificate,
    })
}

/// A boundary supported on chord diagrams outside the span of the relations.
fn unexplained_boundary(
    gc: &GraphComplex,
    full: &ComplexBasis,
    chords: &ComplexBasis,
    boundary: &RationalMatrix,
    rels: &[Vec<(usize, BigRational)>],
    relation_rank: usize,
) -> Result<Option<Certificate>> {
    let (kind, k) = (full.kind(), full.grading().0);
    let other_rows: Vec<usize> = (0..full.len())
        .filter(|&i| !full.diagrams()[i].is_chord_diagram())
        .collect();
    for x in kernel_basis(&boundary.select_rows(&other_rows)) {
        let y = gc.from_dense(kind, k, 0, &boundary.mul_vec(&x))?;
        let mut all = rels.to_vec();
        all.push(sparse_in(chords, &y)?);
        if span_rank(&all) > relation_rank {
            return Ok(Some(Certificate::UnexplainedBoundary(y)));
        }
    }
    Ok(None)
}

/// A basis diagram outside `span(chord diagrams) + im(partial)`.
fn unreached_diagram(full: &ComplexBasis, boundary: &RationalMatrix) -> Result<Option<Certificate>> {
    let mut columns: Vec<Vec<(usize, BigRational)>> = (0..boundary.cols()).map(|c| boundary.column(c).to_vec()).collect();
    for (i, d) in full.diagrams().iter().enumerate() {
        if d.is_chord_diagram() {
            columns.push(vec![(i, BigRational::one())]);
        }
    }
    let span = RationalMatrix::from_columns(full.len(), columns);
    let (kind, k) = (full.kind(), full.grading().0);
    for (i, d) in full.diagrams().iter().enumerate() {
        let mut e = vec![BigRational::zero(); full.len()];
        e[i] = BigRational::from_integer(BigInt::one());
        if in_image(&span, &e).is_none() {
            let mut v = GraphVector::zero(kind, k, 0);
            v.add_term(d.clone(), BigRational::one())?;
            return Ok(Some(Certificate::UnreachedDiagram(v)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chord_diagrams_have_expected_shape() {
        let gc = GraphComplex::new();
        for kind in ComplexType::BOTH {
            for k in 1..=3 {
                let cd = enumerate_chord_diagrams(&gc, kind, k).unwrap();
                let full = gc.basis(kind, k, 0).unwrap();
                for d in cd.diagrams() {
                    assert_eq!(d.ve(), 2 * k as usize);
                    assert_eq!(d.edges().len(), k as usize);
                    assert!(full.position(d).is_some());
                }
            }
        }
    }

    #[test]
    fn one_chord_is_short() {
        let gc = GraphComplex::new();
        let gens = one_t_generators(&gc, ComplexType::Odd, 1).unwrap();
        assert_eq!(gens.len(), 1);
        // the even one-chord diagram is zero, so there is nothing to kill
        assert!(one_t_generators(&gc, ComplexType::Even, 1).unwrap().is_empty());
    }

    #[test]
    fn four_t_relations_live_on_chord_diagrams() {
        let gc = GraphComplex::new();
        for kind in ComplexType::BOTH {
            for g in four_t_generators(&gc, kind, 3).unwrap() {
                assert!(g.terms().all(|(d, _)| d.is_chord_diagram()));
                assert!(g.len() <= 4);
            }
        }
    }

    #[test]
    fn wrap_chord_is_isolated() {
        let d = Diagram::from_pairs(ComplexType::Odd, 4, 0, &[(1, 4), (2, 3)]).unwrap();
        assert!(has_isolated_chord(&d));
        let d = Diagram::from_pairs(ComplexType::Odd, 4, 0, &[(1, 3), (2, 4)]).unwrap();
        assert!(!has_isolated_chord(&d));
    }
}
