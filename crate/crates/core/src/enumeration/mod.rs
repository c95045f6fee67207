//! Ordered bases of canonical nonzero diagrams for each `(type, k, m)`.
//!
//! Each cell `(v_i, e, v_e)` with `e - v_i = k` and `2e - 3v_i - v_e = m` is
//! generated by a backtracking search over labeled edge sets with degree
//! bounds, then deduplicated through canonical forms. Internal vertices are
//! only generated with non-increasing external-adjacency masks, which every
//! isomorphism class admits after relabeling.

mod cache;

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;

use crate::diagrams::{canonicalize, ComplexType, Diagram, Edge, SignedDiagram};
use crate::error::{GraphError, Result};

pub use cache::{
    basis_cache_load, basis_cache_store, body_checksum, cache_file_name, cache_path, read_verified, CacheHeader,
    CACHE_FORMAT_VERSION,
};

pub const DEFAULT_MAX_CELL_SIZE: usize = 2_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub vi: usize,
    pub e: usize,
    pub ve: usize,
}

/// The cells contributing to grading `(k, m)`.
pub fn cells(k: i64, m: i64) -> Vec<Cell> {
    if k < 1 || m < 0 {
        return Vec::new();
    }
    let (k, m) = (k as usize, m as usize);
    (0..)
        .map_while(|vi| {
            let ve = (2 * k).checked_sub(vi + m)?;
            (ve >= 1).then_some(Cell { vi, e: k + vi, ve })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexBasis {
    kind: ComplexType,
    k: i64,
    m: i64,
    diagrams: Vec<Diagram>,
    index: HashMap<Diagram, usize>,
}

impl ComplexBasis {
    /// Sorts by serialization and indexes; rejects duplicates.
    pub fn new(kind: ComplexType, k: i64, m: i64, diagrams: Vec<Diagram>) -> Result<ComplexBasis> {
        let mut keyed: Vec<(String, Diagram)> = diagrams.into_iter().map(|d| (d.to_json(), d)).collect();
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        if let Some(w) = keyed.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(GraphError::Structural(format!("duplicate basis element {}", w[0].0)));
        }
        let diagrams: Vec<Diagram> = keyed.into_iter().map(|(_, d)| d).collect();
        let index = diagrams.iter().cloned().enumerate().map(|(i, d)| (d, i)).collect();
        Ok(ComplexBasis {
            kind,
            k,
            m,
            diagrams,
            index,
        })
    }

    pub fn kind(&self) -> ComplexType {
        self.kind
    }

    pub fn grading(&self) -> (i64, i64) {
        (self.k, self.m)
    }

    pub fn len(&self) -> usize {
        self.diagrams.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diagrams.is_empty()
    }

    pub fn diagrams(&self) -> &[Diagram] {
        &self.diagrams
    }

    pub fn get(&self, i: usize) -> Option<&Diagram> {
        self.diagrams.get(i)
    }

    pub fn position(&self, d: &Diagram) -> Option<usize> {
        self.index.get(d).copied()
    }

    pub fn to_jsonl_body(&self) -> String {
        let mut s = String::new();
        for d in &self.diagrams {
            s.push_str(&d.to_json());
            s.push('\n');
        }
        s
    }
}

pub fn enumerate_basis(kind: ComplexType, k: i64, m: i64, max_cell_size: usize) -> Result<ComplexBasis> {
    let per_cell: Vec<Vec<Diagram>> = cells(k, m)
        .into_par_iter()
        .map(|cell| generate_cell(kind, cell, m as usize, max_cell_size))
        .collect::<Result<_>>()?;
    ComplexBasis::new(kind, k, m, per_cell.into_iter().flatten().collect())
}

/// Canonical nonzero diagrams of one cell, unordered.
pub fn generate_cell(kind: ComplexType, cell: Cell, m: usize, cap: usize) -> Result<Vec<Diagram>> {
    let n = cell.ve + cell.vi;
    let mut rows: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (a, row) in rows.iter_mut().enumerate() {
        if a < cell.ve && !(kind == ComplexType::Even && cell.ve == 1) {
            row.push(a);
        }
        row.extend(a + 1..n);
    }
    let mut suffix_pairs = vec![0usize; n + 1];
    for a in (0..n).rev() {
        suffix_pairs[a] = suffix_pairs[a + 1] + rows[a].len();
    }
    let min_deg: Vec<usize> = (0..n).map(|v| if v < cell.ve { 1 } else { 3 }).collect();
    let mut gen = CellSearch {
        kind,
        cell,
        rows,
        suffix_pairs,
        max_deg: min_deg.iter().map(|d| d + m).collect(),
        min_deg,
        deg: vec![0; n],
        ext_mask: vec![0; cell.vi],
        chosen: Vec::with_capacity(cell.e),
        found: HashSet::new(),
        cap,
        overflow: false,
    };
    gen.search(0, 0);
    if gen.overflow {
        return Err(GraphError::CapExceeded {
            kind,
            vi: cell.vi,
            e: cell.e,
            ve: cell.ve,
            cap,
        });
    }
    Ok(gen.found.into_iter().collect())
}

struct CellSearch {
    kind: ComplexType,
    cell: Cell,
    rows: Vec<Vec<usize>>,
    suffix_pairs: Vec<usize>,
    min_deg: Vec<usize>,
    max_deg: Vec<usize>,
    deg: Vec<usize>,
    ext_mask: Vec<u64>,
    chosen: Vec<(usize, usize)>,
    found: HashSet<Diagram>,
    cap: usize,
    overflow: bool,
}

impl CellSearch {
    fn search(&mut self, a: usize, pos: usize) {
        if self.overflow {
            return;
        }
        let n = self.deg.len();
        let needed = self.cell.e - self.chosen.len();
        if needed == 0 {
            self.emit();
            return;
        }
        if a == n {
            return;
        }
        let remaining_pairs = self.suffix_pairs[a + 1] + self.rows[a].len() - pos;
        if remaining_pairs < needed {
            return;
        }
        let deficit: usize = (a..n)
            .map(|v| self.min_deg[v].saturating_sub(self.deg[v]))
            .sum();
        if deficit > 2 * needed {
            return;
        }
        if pos == self.rows[a].len() {
            if self.deg[a] < self.min_deg[a] {
                return;
            }
            if a < self.cell.ve && !self.masks_sorted() {
                return;
            }
            self.search(a + 1, 0);
            return;
        }
        let b = self.rows[a][pos];
        let inc_a = if a == b { 2 } else { 1 };
        if self.deg[a] + inc_a <= self.max_deg[a] && (a == b || self.deg[b] < self.max_deg[b]) {
            self.add(a, b);
            self.search(a, pos + 1);
            self.remove(a, b);
        }
        self.search(a, pos + 1);
    }

    fn add(&mut self, a: usize, b: usize) {
        self.deg[a] += 1;
        self.deg[b] += 1;
        if a < self.cell.ve && b >= self.cell.ve {
            self.ext_mask[b - self.cell.ve] |= 1u64 << (63 - a);
        }
        self.chosen.push((a, b));
    }

    fn remove(&mut self, a: usize, b: usize) {
        self.deg[a] -= 1;
        self.deg[b] -= 1;
        if a < self.cell.ve && b >= self.cell.ve {
            self.ext_mask[b - self.cell.ve] &= !(1u64 << (63 - a));
        }
        self.chosen.pop();
    }

    fn masks_sorted(&self) -> bool {
        self.ext_mask.windows(2).all(|w| w[0] >= w[1])
    }

    fn emit(&mut self) {
        if !self.masks_sorted() {
            return;
        }
        if (0..self.deg.len()).any(|v| self.deg[v] < self.min_deg[v]) {
            return;
        }
        let edges = self
            .chosen
            .iter()
            .map(|&(a, b)| Edge::new(a as u8 + 1, b as u8 + 1))
            .collect();
        let d = Diagram::from_parts_unchecked(self.kind, self.cell.ve, self.cell.vi, edges);
        if !d.is_attached() {
            return;
        }
        if let Ok(SignedDiagram::Term(_, c)) = canonicalize(&d) {
            if self.found.insert(c) && self.found.len() > self.cap {
                self.overflow = true;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cells_solve_the_grading_equations() {
        for k in 1..=4 {
            for m in 0..2 * k {
                for c in cells(k, m) {
                    assert_eq!(c.e as i64 - c.vi as i64, k);
                    assert_eq!(2 * c.e as i64 - 3 * c.vi as i64 - c.ve as i64, m);
                    assert!(c.ve >= 1);
                }
            }
        }
        assert!(cells(3, -1).is_empty());
        assert!(cells(2, 4).is_empty());
    }

    #[test]
    fn negative_degree_is_empty() {
        let b = enumerate_basis(ComplexType::Odd, 3, -1, DEFAULT_MAX_CELL_SIZE).unwrap();
        assert!(b.is_empty());
    }

    #[test]
    fn basis_elements_are_canonical_and_graded() {
        for kind in ComplexType::BOTH {
            for m in 0..4 {
                let b = enumerate_basis(kind, 2, m, DEFAULT_MAX_CELL_SIZE).unwrap();
                for d in b.diagrams() {
                    d.check_invariants().unwrap();
                    assert_eq!(d.grading(), (2, m));
                    assert_eq!(canonicalize(d).unwrap(), SignedDiagram::Term(crate::Sign::Plus, d.clone()));
                }
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let err = enumerate_basis(ComplexType::Odd, 3, 0, 1).unwrap_err();
        assert!(matches!(err, GraphError::CapExceeded { cap: 1, .. }));
    }
}
