//! Exhaustive consistency checks shared by `graphc check` and the test suites.

use num_traits::Zero;
use serde::Serialize;

use crate::chordhom::compare_homology;
use crate::diagrams::{ComplexType, GraphVector};
use crate::differential::delta_diagram;
use crate::error::Result;
use crate::linalg::GraphComplex;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    D2,
    Adjoint,
    ChordCompare,
    Quadrivalent,
}

impl CheckKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckKind::D2 => "d2",
            CheckKind::Adjoint => "adjoint",
            CheckKind::ChordCompare => "chord-compare",
            CheckKind::Quadrivalent => "quadrivalent",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub check: CheckKind,
    #[serde(rename = "type")]
    pub kind: ComplexType,
    pub k: i64,
    pub m: Option<i64>,
    pub passed: bool,
    pub detail: String,
}

/// Degrees `0..=2k-1`, the full range where `D^{k,m}` can be nonzero.
pub fn degree_range(k: i64) -> std::ops::RangeInclusive<i64> {
    0..=(2 * k - 1).max(0)
}

fn outcome(check: CheckKind, kind: ComplexType, k: i64, m: Option<i64>, passed: bool, detail: String) -> CheckOutcome {
    CheckOutcome {
        check,
        kind,
        k,
        m,
        passed,
        detail,
    }
}

/// `delta(k, m+1) * delta(k, m) = 0` at every degree.
pub fn check_d2(gc: &GraphComplex, kind: ComplexType, k: i64) -> Result<Vec<CheckOutcome>> {
    degree_range(k)
        .map(|m| {
            let first = gc.matrix_of_delta(kind, k, m)?;
            let second = gc.matrix_of_delta(kind, k, m + 1)?;
            let product = second.mul(&first);
            let detail = format!(
                "{}x{} then {}x{}, {} nonzero entries in the product",
                first.rows(),
                first.cols(),
                second.rows(),
                second.cols(),
                product.nnz()
            );
            Ok(outcome(CheckKind::D2, kind, k, Some(m), product.is_zero(), detail))
        })
        .collect()
}

/// `<delta u, w> = <u, partial w>` on basis pairs, with `delta` evaluated
/// diagram by diagram and `partial` read from the matrix.
pub fn check_adjoint(gc: &GraphComplex, kind: ComplexType, k: i64) -> Result<Vec<CheckOutcome>> {
    let mut out = Vec::new();
    for m in degree_range(k) {
        let lower = gc.basis(kind, k, m)?;
        let upper = gc.basis(kind, k, m + 1)?;
        let partials: Vec<GraphVector> = upper
            .diagrams()
            .iter()
            .map(|w| gc.partial(&GraphVector::from_diagram(w)?))
            .collect::<Result<_>>()?;
        let transposed = gc.matrix_of_partial(kind, k, m + 1)?;
        let direct = gc.matrix_of_delta(kind, k, m)?.transpose();
        let mut mismatches = usize::from(transposed != direct);
        for u in lower.diagrams() {
            let du = delta_diagram(u)?;
            for (w, dw) in upper.diagrams().iter().zip(&partials) {
                if du.coefficient(w) != dw.coefficient(u) {
                    mismatches += 1;
                }
            }
        }
        let detail = format!("{}x{} pairings, {mismatches} mismatches", lower.len(), upper.len());
        out.push(outcome(CheckKind::Adjoint, kind, k, Some(m), mismatches == 0, detail));
    }
    Ok(out)
}

/// `partial` kills trivalent diagrams, and the boundary of a diagram whose only
/// excess is one external vertex of valence four has at most three terms.
pub fn check_quadrivalent(gc: &GraphComplex, kind: ComplexType, k: i64) -> Result<Vec<CheckOutcome>> {
    let trivalent = gc.basis(kind, k, 0)?;
    let mut nonzero = 0;
    for d in trivalent.diagrams() {
        if !gc.partial(&GraphVector::from_diagram(d)?)?.is_zero() {
            nonzero += 1;
        }
    }
    let first = outcome(
        CheckKind::Quadrivalent,
        kind,
        k,
        Some(0),
        nonzero == 0,
        format!("{} trivalent diagrams, {nonzero} with nonzero boundary", trivalent.len()),
    );

    let degree_one = gc.basis(kind, k, 1)?;
    let (mut count, mut widest, mut too_wide) = (0, 0, 0);
    for d in degree_one.diagrams() {
        let degrees = d.degrees();
        let excess_external = degrees[..d.ve()].contains(&2);
        if !excess_external {
            continue;
        }
        count += 1;
        let b = gc.partial(&GraphVector::from_diagram(d)?)?;
        widest = widest.max(b.len());
        if b.len() > 3 {
            too_wide += 1;
        }
    }
    let second = outcome(
        CheckKind::Quadrivalent,
        kind,
        k,
        Some(1),
        too_wide == 0,
        format!("{count} diagrams with one quadrivalent external vertex, at most {widest} boundary terms"),
    );
    Ok(vec![first, second])
}

pub fn check_chord_compare(gc: &GraphComplex, kind: ComplexType, k: i64) -> Result<Vec<CheckOutcome>> {
    let r = compare_homology(gc, kind, k)?;
    let mut detail = format!(
        "CD={} 1T={} 4T={} quotient={} homology={}",
        r.chord_dim, r.one_t, r.four_t, r.quotient_dim, r.homology_dim
    );
    if let Some(c) = &r.certificate {
        detail.push_str(&format!(" certificate={}:{}", c.label(), serde_json::to_string(&c.vector().to_record())?));
    }
    Ok(vec![outcome(CheckKind::ChordCompare, kind, k, Some(0), r.agrees(), detail)])
}

pub fn run_check(gc: &GraphComplex, check: CheckKind, kind: ComplexType, k: i64) -> Result<Vec<CheckOutcome>> {
    match check {
        CheckKind::D2 => check_d2(gc, kind, k),
        CheckKind::Adjoint => check_adjoint(gc, kind, k),
        CheckKind::Quadrivalent => check_quadrivalent(gc, kind, k),
        CheckKind::ChordCompare => check_chord_compare(gc, kind, k),
    }
}

/// `homology_dim = cohomology_dim` at one grading.
pub fn duality_holds(gc: &GraphComplex, kind: ComplexType, k: i64, m: i64) -> Result<bool> {
    Ok(gc.homology_dim(kind, k, m)? == gc.cohomology_dim(kind, k, m)?)
}

/// Whether `v` pairs nonzero with some cycle of `partial` in its own degree.
pub fn pairs_with_cycle(gc: &GraphComplex, v: &GraphVector) -> Result<bool> {
    let (k, m) = v.grading();
    for z in gc.cycles(v.kind(), k, m)? {
        if !v.pairing(&z)?.is_zero() {
            return Ok(true);
        }
    }
    Ok(false)
}
