use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{canonicalize, ComplexType, Diagram, SignedDiagram};
use crate::error::{GraphError, Result};

/// Finitely supported rational combination of canonical diagrams, homogeneous
/// in `(type, k, m)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphVector {
    kind: ComplexType,
    k: i64,
    m: i64,
    terms: BTreeMap<Diagram, BigRational>,
}

impl GraphVector {
    pub fn zero(kind: ComplexType, k: i64, m: i64) -> GraphVector {
        GraphVector {
            kind,
            k,
            m,
            terms: BTreeMap::new(),
        }
    }

    /// The vector `canonicalize(d)`, i.e. `±d'` or zero.
    pub fn from_diagram(d: &Diagram) -> Result<GraphVector> {
        let (k, m) = d.grading();
        let mut v = GraphVector::zero(d.kind(), k, m);
        if let SignedDiagram::Term(s, c) = canonicalize(d)? {
            v.terms.insert(c, BigRational::from_integer(s.to_i64().into()));
        }
        Ok(v)
    }

    pub fn kind(&self) -> ComplexType {
        self.kind
    }

    pub fn grading(&self) -> (i64, i64) {
        (self.k, self.m)
    }

    pub fn key(&self) -> (ComplexType, i64, i64) {
        (self.kind, self.k, self.m)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Diagram, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, d: &Diagram) -> BigRational {
        self.terms.get(d).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Adds `c * d` for a diagram already in canonical form.
    pub fn add_term(&mut self, d: Diagram, c: BigRational) -> Result<()> {
        let (k, m) = d.grading();
        if (d.kind(), k, m) != self.key() {
            return Err(GraphError::GradingMismatch {
                left: self.key(),
                right: (d.kind(), k, m),
            });
        }
        if c.is_zero() {
            return Ok(());
        }
        match self.terms.entry(d) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
        Ok(())
    }

    /// Adds `c * canonicalize(d)` for an arbitrary decorated diagram.
    pub fn add_diagram(&mut self, d: &Diagram, c: &BigRational) -> Result<()> {
        if let SignedDiagram::Term(s, canon) = canonicalize(d)? {
            let coeff = if s.to_i64() < 0 { -c.clone() } else { c.clone() };
            self.add_term(canon, coeff)?;
        }
        Ok(())
    }

    fn check_same(&self, other: &GraphVector) -> Result<()> {
        if self.key() != other.key() {
            return Err(GraphError::GradingMismatch {
                left: self.key(),
                right: other.key(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &GraphVector) -> Result<GraphVector> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.add_term(d.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigRational) -> GraphVector {
        let mut out = GraphVector::zero(self.kind, self.k, self.m);
        if !c.is_zero() {
            out.terms = self.terms.iter().map(|(d, x)| (d.clone(), x * c)).collect();
        }
        out
    }

    /// The diagram basis is orthonormal for this pairing.
    pub fn pairing(&self, other: &GraphVector) -> Result<BigRational> {
        self.check_same(other)?;
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        Ok(small
            .terms
            .iter()
            .filter_map(|(d, x)| large.terms.get(d).map(|y| x * y))
            .fold(BigRational::zero(), |acc, t| acc + t))
    }

    /// Rescales so that the first coefficient (in diagram order) is 1.
    pub fn normalized(&self) -> GraphVector {
        match self.terms.values().next() {
            Some(first) if !first.is_one() => self.scale(&first.recip()),
            _ => self.clone(),
        }
    }

    pub fn to_record(&self) -> VectorRecord {
        VectorRecord {
            kind: self.kind,
            k: self.k,
            m: self.m,
            terms: self
                .terms
                .iter()
                .map(|(d, c)| (c.to_string(), d.to_record()))
                .collect(),
        }
    }
}

/// Serialized form: list of `(coefficient, diagram-record)` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VectorRecord {
    #[serde(rename = "type")]
    pub kind: ComplexType,
    pub k: i64,
    pub m: i64,
    pub terms: Vec<(String, super::DiagramRecord)>,
}

pub fn vector_add(u: &GraphVector, v: &GraphVector) -> Result<GraphVector> {
    u.add(v)
}

pub fn vector_scale(c: &BigRational, v: &GraphVector) -> GraphVector {
    v.scale(c)
}

pub fn pairing(u: &GraphVector, v: &GraphVector) -> Result<BigRational> {
    u.pairing(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::Diagram;
    use num_bigint::BigInt;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn chords(pairs: &[(u8, u8)], ve: usize) -> GraphVector {
        GraphVector::from_diagram(&Diagram::from_pairs(ComplexType::Odd, ve, 0, pairs).unwrap()).unwrap()
    }

    #[test]
    fn add_scale_pair() {
        let a = chords(&[(1, 3), (2, 4)], 4);
        let b = chords(&[(1, 2), (3, 4)], 4);
        let s = a.add(&b.scale(&q(3))).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.pairing(&s).unwrap(), q(10));
        assert_eq!(s.pairing(&a).unwrap(), a.pairing(&s).unwrap());
        let cancel = s.add(&s.scale(&q(-1))).unwrap();
        assert!(cancel.is_zero());
    }

    #[test]
    fn grading_mismatch_is_an_error() {
        let a = chords(&[(1, 3), (2, 4)], 4);
        let b = chords(&[(1, 2)], 2);
        assert!(matches!(a.add(&b), Err(GraphError::GradingMismatch { .. })));
        assert!(a.pairing(&b).is_err());
    }

    #[test]
    fn normalization_sets_leading_coefficient() {
        let a = chords(&[(1, 3), (2, 4)], 4).scale(&q(-7));
        let n = a.normalized();
        assert_eq!(n.terms().next().unwrap().1, &q(1));
    }
}
