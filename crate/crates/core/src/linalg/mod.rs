//! Exact sparse rational matrices and fraction-free elimination.

mod cohomology;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::diagrams::ComplexType;

pub use cohomology::{ClassReport, GraphComplex};

/// Grading of the basis indexing the rows or columns of a matrix.
pub type BasisKey = (ComplexType, i64, i64);

/// Column-major sparse matrix; each column is sorted by row and holds no zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<Vec<(usize, BigRational)>>,
    row_basis: Option<BasisKey>,
    col_basis: Option<BasisKey>,
}

impl RationalMatrix {
    pub fn zero(rows: usize, cols: usize) -> RationalMatrix {
        RationalMatrix {
            rows,
            cols,
            columns: vec![Vec::new(); cols],
            row_basis: None,
            col_basis: None,
        }
    }

    /// Builds from columns of `(row, value)` pairs; duplicates are summed and zeros dropped.
    pub fn from_columns(rows: usize, columns: Vec<Vec<(usize, BigRational)>>) -> RationalMatrix {
        let cols = columns.len();
        let columns = columns
            .into_iter()
            .map(|col| {
                let mut acc: BTreeMap<usize, BigRational> = BTreeMap::new();
                for (r, v) in col {
                    assert!(r < rows, "row {r} out of range {rows}");
                    *acc.entry(r).or_insert_with(BigRational::zero) += v;
                }
                acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        RationalMatrix {
            rows,
            cols,
            columns,
            row_basis: None,
            col_basis: None,
        }
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> RationalMatrix {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let columns = (0..ncols)
            .map(|c| {
                (0..nrows)
                    .filter(|&r| rows[r][c] != 0)
                    .map(|r| (r, BigRational::from_integer(BigInt::from(rows[r][c]))))
                    .collect()
            })
            .collect();
        RationalMatrix::from_columns(nrows, columns)
    }

    pub fn with_bases(mut self, row_basis: BasisKey, col_basis: BasisKey) -> RationalMatrix {
        self.row_basis = Some(row_basis);
        self.col_basis = Some(col_basis);
        self
    }

    pub fn row_basis(&self) -> Option<BasisKey> {
        self.row_basis
    }

    pub fn col_basis(&self) -> Option<BasisKey> {
        self.col_basis
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, c: usize) -> &[(usize, BigRational)] {
        &self.columns[c]
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn get(&self, r: usize, c: usize) -> BigRational {
        self.columns[c]
            .binary_search_by_key(&r, |(row, _)| *row)
            .map(|i| self.columns[c][i].1.clone())
            .unwrap_or_else(|_| BigRational::zero())
    }

    /// `(row, col, value)` in column-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &BigRational)> {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |(r, v)| (*r, c, v)))
    }

    pub fn transpose(&self) -> RationalMatrix {
        let mut columns: Vec<Vec<(usize, BigRational)>> = vec![Vec::new(); self.rows];
        for (r, c, v) in self.entries() {
            columns[r].push((c, v.clone()));
        }
        RationalMatrix {
            rows: self.cols,
            cols: self.rows,
            columns,
            row_basis: self.col_basis,
            col_basis: self.row_basis,
        }
    }

    /// Rows as sparse vectors sorted by column.
    pub fn row_vectors(&self) -> Vec<Vec<(usize, BigRational)>> {
        let mut rows: Vec<Vec<(usize, BigRational)>> = vec![Vec::new(); self.rows];
        for (r, c, v) in self.entries() {
            rows[r].push((c, v.clone()));
        }
        rows
    }

    /// `self * other`.
    pub fn mul(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let columns = other
            .columns
            .iter()
            .map(|col| {
                let mut acc: BTreeMap<usize, BigRational> = BTreeMap::new();
                for (k, x) in col {
                    for (r, y) in &self.columns[*k] {
                        *acc.entry(*r).or_insert_with(BigRational::zero) += x * y;
                    }
                }
                acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        RationalMatrix {
            rows: self.rows,
            cols: other.cols,
            columns,
            row_basis: self.row_basis,
            col_basis: other.col_basis,
        }
    }

    pub fn mul_vec(&self, x: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(x.len(), self.cols);
        let mut out = vec![BigRational::zero(); self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            if x[c].is_zero() {
                continue;
            }
            for (r, v) in col {
                out[*r] += v * &x[c];
            }
        }
        out
    }

    /// Restriction to the given rows (in the given order).
    pub fn select_rows(&self, keep: &[usize]) -> RationalMatrix {
        let mut new_index = vec![usize::MAX; self.rows];
        for (i, &r) in keep.iter().enumerate() {
            new_index[r] = i;
        }
        let columns = self
            .columns
            .iter()
            .map(|col| {
                let mut c: Vec<(usize, BigRational)> = col
                    .iter()
                    .filter(|(r, _)| new_index[*r] != usize::MAX)
                    .map(|(r, v)| (new_index[*r], v.clone()))
                    .collect();
                c.sort_by_key(|(r, _)| *r);
                c
            })
            .collect();
        RationalMatrix {
            rows: keep.len(),
            cols: self.cols,
            columns,
            row_basis: None,
            col_basis: self.col_basis,
        }
    }

    /// Sparse triplet text: `row col numerator/denominator`, 0-based, after a header.
    pub fn to_triplets(&self, header: &[String]) -> String {
        let mut s = String::new();
        for h in header {
            let _ = writeln!(s, "# {h}");
        }
        let _ = writeln!(s, "# shape {} {}", self.rows, self.cols);
        let mut entries: Vec<(usize, usize, &BigRational)> = self.entries().collect();
        entries.sort_by_key(|&(r, c, _)| (r, c));
        for (r, c, v) in entries {
            let _ = writeln!(s, "{r} {c} {}/{}", v.numer(), v.denom());
        }
        s
    }
}

type IntRow = Vec<(usize, BigInt)>;

/// Clears denominators and removes the content, leading coefficient positive.
fn integer_row(row: &[(usize, BigRational)]) -> IntRow {
    let lcm = row
        .iter()
        .fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
    let mut out: IntRow = row
        .iter()
        .map(|(c, v)| (*c, v.numer() * (&lcm / v.denom())))
        .collect();
    make_primitive(&mut out);
    out
}

fn make_primitive(row: &mut IntRow) {
    let Some(first) = row.first() else { return };
    let negative = first.1.is_negative();
    let g = row.iter().fold(BigInt::zero(), |acc, (_, v)| acc.gcd(v));
    if g.is_zero() {
        row.clear();
        return;
    }
    let g = if negative { -g } else { g };
    if !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v = &*v / &g;
        }
    }
}

/// `a_col * row - row_col * pivot` so that column `col` cancels.
fn eliminate(row: &IntRow, pivot: &IntRow, col: usize) -> IntRow {
    let a = coeff(row, col);
    if a.is_zero() {
        return row.clone();
    }
    let b = coeff(pivot, col);
    let g = a.gcd(&b);
    let (ra, rb) = (&b / &g, &a / &g);
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let ci = row.get(i).map_or(usize::MAX, |x| x.0);
        let cj = pivot.get(j).map_or(usize::MAX, |x| x.0);
        let (c, v) = if ci < cj {
            i += 1;
            (ci, &ra * &row[i - 1].1)
        } else if cj < ci {
            j += 1;
            (cj, -(&rb * &pivot[j - 1].1))
        } else {
            i += 1;
            j += 1;
            (ci, &ra * &row[i - 1].1 - &rb * &pivot[j - 1].1)
        };
        if !v.is_zero() {
            out.push((c, v));
        }
    }
    make_primitive(&mut out);
    out
}

fn coeff(row: &IntRow, col: usize) -> BigInt {
    row.binary_search_by_key(&col, |x| x.0)
        .map(|i| row[i].1.clone())
        .unwrap_or_else(|_| BigInt::zero())
}

/// Row echelon form built by first-fit pivoting on leading columns.
#[derive(Debug, Default)]
struct Echelon {
    pivots: BTreeMap<usize, IntRow>,
}

impl Echelon {
    fn insert(&mut self, mut row: IntRow) -> bool {
        while let Some(&(lead, _)) = row.first() {
            match self.pivots.get(&lead) {
                Some(p) => row = eliminate(&row, p, lead),
                None => {
                    self.pivots.insert(lead, row);
                    return true;
                }
            }
        }
        false
    }

    fn from_rows(rows: &[Vec<(usize, BigRational)>]) -> Echelon {
        let mut e = Echelon::default();
        for r in rows {
            if !r.is_empty() {
                e.insert(integer_row(r));
            }
        }
        e
    }

    /// Clears every pivot column from all other pivot rows.
    fn reduce(&mut self) {
        let cols: Vec<usize> = self.pivots.keys().copied().collect();
        for &c in cols.iter().rev() {
            let pivot = self.pivots[&c].clone();
            for &other in cols.iter().filter(|&&o| o < c) {
                let row = &self.pivots[&other];
                if !coeff(row, c).is_zero() {
                    let reduced = eliminate(row, &pivot, c);
                    self.pivots.insert(other, reduced);
                }
            }
        }
    }
}

pub fn rank(m: &RationalMatrix) -> usize {
    // eliminate along the shorter side
    let rows = if m.rows <= m.cols {
        m.row_vectors()
    } else {
        m.transpose().row_vectors()
    };
    Echelon::from_rows(&rows).pivots.len()
}

/// Basis of `{x : M x = 0}`, one vector per free column, each normalized so
/// that its first nonzero entry is 1.
pub fn kernel_basis(m: &RationalMatrix) -> Vec<Vec<BigRational>> {
    let mut ech = Echelon::from_rows(&m.row_vectors());
    ech.reduce();
    let free = (0..m.cols).filter(|c| !ech.pivots.contains_key(c));
    free.map(|f| {
        let mut v = vec![BigRational::zero(); m.cols];
        v[f] = BigRational::one();
        for (&c, row) in &ech.pivots {
            let x = coeff(row, f);
            if !x.is_zero() {
                v[c] = -BigRational::new(x, coeff(row, c));
            }
        }
        normalize_dense(&mut v);
        v
    })
    .collect()
}

pub fn normalize_dense(v: &mut [BigRational]) {
    if let Some(first) = v.iter().find(|x| !x.is_zero()).cloned() {
        if !first.is_one() {
            for x in v.iter_mut() {
                *x = &*x / &first;
            }
        }
    }
}

/// A preimage `x` with `M x = v`, if `v` lies in the column space.
pub fn in_image(m: &RationalMatrix, v: &[BigRational]) -> Option<Vec<BigRational>> {
    assert_eq!(v.len(), m.rows);
    let mut rows = m.row_vectors();
    for (r, row) in rows.iter_mut().enumerate() {
        if !v[r].is_zero() {
            row.push((m.cols, v[r].clone()));
        }
    }
    let mut ech = Echelon::from_rows(&rows);
    if ech.pivots.contains_key(&m.cols) {
        return None;
    }
    ech.reduce();
    let mut x = vec![BigRational::zero(); m.cols];
    for (&c, row) in &ech.pivots {
        let rhs = coeff(row, m.cols);
        if !rhs.is_zero() {
            x[c] = BigRational::new(rhs, coeff(row, c));
        }
    }
    Some(x)
}

/// Rank of a set of sparse vectors.
pub fn span_rank(vectors: &[Vec<(usize, BigRational)>]) -> usize {
    Echelon::from_rows(vectors).pivots.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn zero_matrix_rank() {
        assert_eq!(rank(&RationalMatrix::zero(3, 5)), 0);
        assert_eq!(kernel_basis(&RationalMatrix::zero(3, 2)).len(), 2);
    }

    #[test]
    fn small_kernel_and_image() {
        let m = RationalMatrix::from_dense(&[vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]);
        assert_eq!(rank(&m), 2);
        let k = kernel_basis(&m);
        assert_eq!(k.len(), 1);
        assert_eq!(k[0], vec![q(1), q(1), q(-1)]);
        assert!(m.mul_vec(&k[0]).iter().all(Zero::is_zero));
        let target = vec![q(5), q(10), q(2)];
        let x = in_image(&m, &target).unwrap();
        assert_eq!(m.mul_vec(&x), target);
        assert!(in_image(&m, &[q(1), q(0), q(0)]).is_none());
    }

    #[test]
    fn rational_entries() {
        let m = RationalMatrix::from_columns(
            2,
            vec![
                vec![(0, BigRational::new(1.into(), 2.into())), (1, q(1))],
                vec![(0, BigRational::new(1.into(), 3.into())), (1, BigRational::new(3.into(), 4.into()))],
            ],
        );
        assert_eq!(rank(&m), 2);
        let x = in_image(&m, &[q(1), q(1)]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![q(1), q(1)]);
    }

    #[test]
    fn triplet_export() {
        let m = RationalMatrix::from_dense(&[vec![0, -1], vec![2, 0]]);
        let t = m.to_triplets(&["source a".into()]);
        assert_eq!(t, "# source a\n# shape 2 2\n0 1 -1/1\n1 0 2/1\n");
    }

    fn dense_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..7, 1usize..7).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(-2i64..=2, c), r)
        })
    }

    proptest! {
        #[test]
        fn rank_nullity_and_transpose(rows in dense_matrix()) {
            let m = RationalMatrix::from_dense(&rows);
            let r = rank(&m);
            prop_assert_eq!(r, rank(&m.transpose()));
            let ker = kernel_basis(&m);
            prop_assert_eq!(r + ker.len(), m.cols());
            for v in &ker {
                prop_assert!(m.mul_vec(v).iter().all(Zero::is_zero));
            }
        }

        #[test]
        fn images_are_found(rows in dense_matrix(), seed in proptest::collection::vec(-3i64..=3, 7)) {
            let m = RationalMatrix::from_dense(&rows);
            let x: Vec<BigRational> = (0..m.cols()).map(|i| q(seed[i])).collect();
            let b = m.mul_vec(&x);
            let y = in_image(&m, &b).expect("image vector");
            prop_assert_eq!(m.mul_vec(&y), b);
        }
    }
}
