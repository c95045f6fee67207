use std::collections::{HashMap, HashSet};
use std::path::PathBuf;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use super::{in_image, kernel_basis, rank, BasisKey, RationalMatrix};
use crate::diagrams::{ComplexType, Diagram, GraphVector};
use crate::differential::delta_terms;
use crate::enumeration::{basis_cache_load, basis_cache_store, enumerate_basis, ComplexBasis, DEFAULT_MAX_CELL_SIZE};
use crate::error::{GraphError, Result};

/// Bases and differential matrices of both complexes, computed on demand and
/// memoized. Safe to share between threads.
pub struct GraphComplex {
    max_cell_size: usize,
    cache_dir: Option<PathBuf>,
    bases: Mutex<HashMap<BasisKey, Arc<ComplexBasis>>>,
    deltas: Mutex<HashMap<BasisKey, Arc<RationalMatrix>>>,
    ranks: Mutex<HashMap<BasisKey, usize>>,
}

impl Default for GraphComplex {
    fn default() -> Self {
        GraphComplex::new()
    }
}

#[derive(Debug, Clone)]
pub struct ClassReport {
    pub kind: ComplexType,
    pub k: i64,
    pub m: i64,
    pub dim: usize,
    pub representative: Option<GraphVector>,
}

impl GraphComplex {
    pub fn new() -> GraphComplex {
        GraphComplex {
            max_cell_size: DEFAULT_MAX_CELL_SIZE,
            cache_dir: None,
            bases: Mutex::new(HashMap::new()),
            deltas: Mutex::new(HashMap::new()),
            ranks: Mutex::new(HashMap::new()),
        }
    }

    pub fn with_max_cell_size(mut self, cap: usize) -> GraphComplex {
        self.max_cell_size = cap;
        self
    }

    pub fn with_cache_dir(mut self, dir: impl Into<PathBuf>) -> GraphComplex {
        self.cache_dir = Some(dir.into());
        self
    }

    pub fn cache_dir(&self) -> Option<&std::path::Path> {
        self.cache_dir.as_deref()
    }

    pub fn basis(&self, kind: ComplexType, k: i64, m: i64) -> Result<Arc<ComplexBasis>> {
        let key = (kind, k, m);
        if let Some(b) = self.bases.lock().expect("basis lock").get(&key) {
            return Ok(Arc::clone(b));
        }
        let basis = match &self.cache_dir {
            Some(dir) => match basis_cache_load(dir, kind, k, m)? {
                Some(b) => b,
                None => {
                    let b = enumerate_basis(kind, k, m, self.max_cell_size)?;
                    basis_cache_store(dir, &b)?;
                    b
                }
            },
            None => enumerate_basis(kind, k, m, self.max_cell_size)?,
        };
        let basis = Arc::new(basis);
        self.bases
            .lock()
            .expect("basis lock")
            .entry(key)
            .or_insert_with(|| Arc::clone(&basis));
        Ok(basis)
    }

    /// Matrix of `delta: D^{k,m} -> D^{k,m+1}`; column `j` expands `delta(basis[j])`.
    pub fn matrix_of_delta(&self, kind: ComplexType, k: i64, m: i64) -> Result<Arc<RationalMatrix>> {
        let key = (kind, k, m);
        if let Some(mat) = self.deltas.lock().expect("delta lock").get(&key) {
            return Ok(Arc::clone(mat));
        }
        let source = self.basis(kind, k, m)?;
        let target = self.basis(kind, k, m + 1)?;
        let columns: Vec<Vec<(usize, BigRational)>> = source
            .diagrams()
            .par_iter()
            .map(|d| {
                delta_terms(d)?
                    .into_iter()
                    .map(|(s, t)| {
                        let row = target
                            .position(&t)
                            .ok_or_else(|| GraphError::Incomplete(t.to_json()))?;
                        Ok((row, BigRational::from_integer(BigInt::from(s.to_i64()))))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        let mat = Arc::new(
            RationalMatrix::from_columns(target.len(), columns).with_bases((kind, k, m + 1), (kind, k, m)),
        );
        self.deltas
            .lock()
            .expect("delta lock")
            .entry(key)
            .or_insert_with(|| Arc::clone(&mat));
        Ok(mat)
    }

    /// Matrix of `partial: D^{k,m} -> D^{k,m-1}`, the transpose of `delta` one degree down.
    pub fn matrix_of_partial(&self, kind: ComplexType, k: i64, m: i64) -> Result<RationalMatrix> {
        Ok(self.matrix_of_delta(kind, k, m - 1)?.transpose())
    }

    pub fn delta_rank(&self, kind: ComplexType, k: i64, m: i64) -> Result<usize> {
        if m < 0 {
            return Ok(0);
        }
        let key = (kind, k, m);
        if let Some(&r) = self.ranks.lock().expect("rank lock").get(&key) {
            return Ok(r);
        }
        let r = rank(self.matrix_of_delta(kind, k, m)?.as_ref());
        self.ranks.lock().expect("rank lock").insert(key, r);
        Ok(r)
    }

    pub fn dim(&self, kind: ComplexType, k: i64, m: i64) -> Result<usize> {
        if m < 0 {
            return Ok(0);
        }
        Ok(self.basis(kind, k, m)?.len())
    }

    /// `dim ker(delta at m) - rank(delta at m-1)`.
    pub fn cohomology_dim(&self, kind: ComplexType, k: i64, m: i64) -> Result<usize> {
        if m < 0 {
            return Ok(0);
        }
        let dim = self.dim(kind, k, m)?;
        let outgoing = self.delta_rank(kind, k, m)?;
        let incoming = if m == 0 { 0 } else { self.delta_rank(kind, k, m - 1)? };
        Ok(dim - outgoing - incoming)
    }

    /// `dim ker(partial at m) - rank(partial at m+1)`, ranks taken on the transposed matrices.
    pub fn homology_dim(&self, kind: ComplexType, k: i64, m: i64) -> Result<usize> {
        if m < 0 {
            return Ok(0);
        }
        let dim = self.dim(kind, k, m)?;
        let outgoing = if m == 0 { 0 } else { rank(&self.matrix_of_partial(kind, k, m)?) };
        let incoming = rank(&self.matrix_of_partial(kind, k, m + 1)?);
        Ok(dim - outgoing - incoming)
    }

    /// `partial(v)`, computed through the transpose of `delta` one degree down.
    pub fn partial(&self, v: &GraphVector) -> Result<GraphVector> {
        let (k, m) = v.grading();
        let mut out = GraphVector::zero(v.kind(), k, m - 1);
        if m == 0 || v.is_zero() {
            return Ok(out);
        }
        let source = self.basis(v.kind(), k, m)?;
        let lower = self.basis(v.kind(), k, m - 1)?;
        let mat = self.matrix_of_delta(v.kind(), k, m - 1)?;
        for (col, d) in lower.diagrams().iter().enumerate() {
            let mut c = BigRational::zero();
            for (row, x) in mat.column(col) {
                let coeff = v.coefficient(&source.diagrams()[*row]);
                if !coeff.is_zero() {
                    c += x * coeff;
                }
            }
            out.add_term(d.clone(), c)?;
        }
        Ok(out)
    }

    pub fn to_dense(&self, v: &GraphVector) -> Result<Vec<BigRational>> {
        let (k, m) = v.grading();
        let basis = self.basis(v.kind(), k, m)?;
        let mut x = vec![BigRational::zero(); basis.len()];
        for (d, c) in v.terms() {
            let i = basis
                .position(d)
                .ok_or_else(|| GraphError::Incomplete(d.to_json()))?;
            x[i] = c.clone();
        }
        Ok(x)
    }

    pub fn from_dense(&self, kind: ComplexType, k: i64, m: i64, x: &[BigRational]) -> Result<GraphVector> {
        let basis = self.basis(kind, k, m)?;
        let mut v = GraphVector::zero(kind, k, m);
        for (d, c) in basis.diagrams().iter().zip(x) {
            v.add_term(d.clone(), c.clone())?;
        }
        Ok(v)
    }

    /// Kernel of `delta` at `(k, m)` as graph vectors.
    pub fn cocycles(&self, kind: ComplexType, k: i64, m: i64) -> Result<Vec<GraphVector>> {
        let mat = self.matrix_of_delta(kind, k, m)?;
        kernel_basis(&mat)
            .iter()
            .map(|x| self.from_dense(kind, k, m, x))
            .collect()
    }

    /// Kernel of `partial` at `(k, m)` as graph vectors.
    pub fn cycles(&self, kind: ComplexType, k: i64, m: i64) -> Result<Vec<GraphVector>> {
        if m == 0 {
            let n = self.dim(kind, k, 0)?;
            return (0..n)
                .map(|i| {
                    let mut x = vec![BigRational::zero(); n];
                    x[i] = BigRational::from_integer(1.into());
                    self.from_dense(kind, k, 0, &x)
                })
                .collect();
        }
        let mat = self.matrix_of_partial(kind, k, m)?;
        kernel_basis(&mat)
            .iter()
            .map(|x| self.from_dense(kind, k, m, x))
            .collect()
    }

    /// Whether `v = delta(c)` for some `c`; returns such a `c`.
    pub fn coboundary_preimage(&self, v: &GraphVector) -> Result<Option<GraphVector>> {
        let (k, m) = v.grading();
        if m == 0 {
            return Ok(v.is_zero().then(|| GraphVector::zero(v.kind(), k, -1)));
        }
        let mat = self.matrix_of_delta(v.kind(), k, m - 1)?;
        match in_image(&mat, &self.to_dense(v)?) {
            Some(x) => Ok(Some(self.from_dense(v.kind(), k, m - 1, &x)?)),
            None => Ok(None),
        }
    }

    /// First normalized cocycle (in kernel order) that is not a coboundary.
    pub fn cocycle_representative(&self, kind: ComplexType, k: i64, m: i64) -> Result<GraphVector> {
        if self.cohomology_dim(kind, k, m)? == 0 {
            return Err(GraphError::NoClass { kind, k, m });
        }
        for z in self.cocycles(kind, k, m)? {
            if self.coboundary_preimage(&z)?.is_none() {
                return Ok(z.normalized());
            }
        }
        Err(GraphError::NoClass { kind, k, m })
    }

    pub fn class_report(&self, kind: ComplexType, k: i64, m: i64, with_representative: bool) -> Result<ClassReport> {
        let dim = self.cohomology_dim(kind, k, m)?;
        let representative = if with_representative && dim > 0 {
            Some(self.cocycle_representative(kind, k, m)?)
        } else {
            None
        };
        Ok(ClassReport {
            kind,
            k,
            m,
            dim,
            representative,
        })
    }

    /// Adds a coboundary to `v` so that the result is supported inside `support`;
    /// `None` when no such correction exists.
    pub fn express_in_support(&self, v: &GraphVector, support: &[Diagram]) -> Result<Option<GraphVector>> {
        let (k, m) = v.grading();
        let kind = v.kind();
        let basis = self.basis(kind, k, m)?;
        let allowed: HashSet<usize> = support.iter().filter_map(|d| basis.position(d)).collect();
        let outside: Vec<usize> = (0..basis.len()).filter(|i| !allowed.contains(i)).collect();
        let dense = self.to_dense(v)?;
        if m == 0 {
            return Ok(outside.iter().all(|&i| dense[i].is_zero()).then(|| v.clone()));
        }
        let mat = self.matrix_of_delta(kind, k, m - 1)?;
        let restricted = mat.select_rows(&outside);
        let rhs: Vec<BigRational> = outside.iter().map(|&i| -dense[i].clone()).collect();
        let Some(c) = in_image(&restricted, &rhs) else {
            return Ok(None);
        };
        let correction = mat.mul_vec(&c);
        let sum: Vec<BigRational> = dense.iter().zip(&correction).map(|(a, b)| a + b).collect();
        Ok(Some(self.from_dense(kind, k, m, &sum)?))
    }
}
