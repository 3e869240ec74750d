//! Sparse exact linear algebra over the rationals.
//!
//! Everything goes through one routine: Gaussian elimination to reduced row
//! echelon form with pivot normalization. Columns are processed left to right;
//! among the remaining rows that are nonzero in the current column, the pivot
//! is the entry of smallest [`bit_size`], ties broken by the lower row index.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::scalar::{bit_size, Scalar};

pub type SparseRow = BTreeMap<usize, Scalar>;

/// A sparse matrix with no stored zeros.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SparseMatrix {
    n_rows: usize,
    n_cols: usize,
    rows: Vec<SparseRow>,
}

impl SparseMatrix {
    pub fn new(n_rows: usize, n_cols: usize) -> Self {
        SparseMatrix {
            n_rows,
            n_cols,
            rows: vec![SparseRow::new(); n_rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = SparseMatrix::new(n, n);
        for i in 0..n {
            m.set(i, i, crate::scalar::one());
        }
        m
    }

    pub fn from_dense(rows: &[Vec<Scalar>]) -> Self {
        let n_cols = rows.first().map_or(0, Vec::len);
        let mut m = SparseMatrix::new(rows.len(), n_cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n_cols, "ragged dense matrix");
            for (c, v) in row.iter().enumerate() {
                m.set(r, c, v.clone());
            }
        }
        m
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let dense: Vec<Vec<Scalar>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| crate::scalar::int(v)).collect())
            .collect();
        SparseMatrix::from_dense(&dense)
    }

    /// Builds a matrix from sparse rows; zero entries are dropped.
    pub fn from_rows(n_cols: usize, rows: Vec<SparseRow>) -> Self {
        let rows: Vec<SparseRow> = rows
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .filter(|(c, v)| {
                        assert!(*c < n_cols, "column {c} out of bounds ({n_cols})");
                        !v.is_zero()
                    })
                    .collect()
            })
            .collect();
        SparseMatrix {
            n_rows: rows.len(),
            n_cols,
            rows,
        }
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        assert!(r < self.n_rows && c < self.n_cols, "index ({r},{c}) out of bounds");
        if v.is_zero() {
            self.rows[r].remove(&c);
        } else {
            self.rows[r].insert(c, v);
        }
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &Scalar) {
        let cur = self.get(r, c) + v;
        self.set(r, c, cur);
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        self.rows[r].get(&c).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn row(&self, r: usize) -> &SparseRow {
        &self.rows[r]
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(BTreeMap::len).sum()
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &Scalar)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| ((r, *c), v)))
    }

    pub fn push_row(&mut self, row: SparseRow) {
        assert!(row.keys().all(|&c| c < self.n_cols));
        self.rows.push(row.into_iter().filter(|(_, v)| !v.is_zero()).collect());
        self.n_rows += 1;
    }

    /// Keeps only the listed columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> SparseMatrix {
        let index: BTreeMap<usize, usize> = cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let rows = self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .filter_map(|(c, v)| index.get(c).map(|&i| (i, v.clone())))
                    .collect()
            })
            .collect();
        SparseMatrix::from_rows(cols.len(), rows)
    }

    pub fn mul_vec(&self, x: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(x.len(), self.n_cols);
        self.rows
            .iter()
            .map(|row| row.iter().fold(Scalar::zero(), |acc, (c, v)| acc + v * &x[*c]))
            .collect()
    }

    pub fn rank(&self) -> usize {
        Echelon::reduce(self, None).rank()
    }

    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        Echelon::reduce(self, None).kernel_basis()
    }

    /// Some `x` with `self * x = rhs`, or `None` if the system is infeasible.
    pub fn solve_affine(&self, rhs: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(rhs.len(), self.n_rows, "rhs length must equal the row count");
        Echelon::reduce(self, Some(rhs)).particular()
    }

    pub fn solve(&self, rhs: Option<&[Scalar]>) -> LinearSolution {
        let e = Echelon::reduce(self, rhs);
        LinearSolution {
            rank: e.rank(),
            kernel_basis: e.kernel_basis(),
            particular: rhs.and_then(|_| e.particular()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSolution {
    pub rank: usize,
    pub kernel_basis: Vec<Vec<Scalar>>,
    pub particular: Option<Vec<Scalar>>,
}

/// Reduced row echelon form of `[A | b]`.
#[derive(Debug, Clone)]
pub struct Echelon {
    n_cols: usize,
    /// `(pivot column, normalized row, rhs)`, sorted by pivot column.
    pivots: Vec<(usize, SparseRow, Scalar)>,
    inconsistent: bool,
}

fn axpy(row: &mut SparseRow, rhs: &mut Scalar, factor: &Scalar, pivot: &SparseRow, pivot_rhs: &Scalar) {
    for (c, v) in pivot {
        let delta = factor * v;
        match row.get_mut(c) {
            Some(cur) => {
                *cur -= delta;
                if cur.is_zero() {
                    row.remove(c);
                }
            }
            None => {
                row.insert(*c, -delta);
            }
        }
    }
    *rhs -= factor * pivot_rhs;
}

impl Echelon {
    pub fn reduce(m: &SparseMatrix, rhs: Option<&[Scalar]>) -> Echelon {
        let mut active: Vec<Option<(SparseRow, Scalar)>> = m
            .rows
            .iter()
            .enumerate()
            .map(|(r, row)| {
                let b = rhs.map_or_else(Scalar::zero, |b| b[r].clone());
                Some((row.clone(), b))
            })
            .collect();
        // column -> rows currently holding a nonzero there (superset; verified on use)
        let mut by_col: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (r, row) in m.rows.iter().enumerate() {
            for c in row.keys() {
                by_col.entry(*c).or_default().push(r);
            }
        }
        let mut pivots = Vec::new();
        while let Some((col, candidates)) = by_col.pop_first() {
            let mut best: Option<(u64, usize)> = None;
            let mut holders = Vec::new();
            for r in candidates {
                if let Some((row, _)) = &active[r] {
                    if let Some(v) = row.get(&col) {
                        holders.push(r);
                        let key = (bit_size(v), r);
                        if best.map_or(true, |b| key < b) {
                            best = Some(key);
                        }
                    }
                }
            }
            holders.sort_unstable();
            holders.dedup();
            let Some((_, pr)) = best else { continue };
            let (mut prow, mut prhs) = active[pr].take().expect("pivot row is active");
            let inv = prow[&col].recip();
            for v in prow.values_mut() {
                *v *= &inv;
            }
            prhs *= &inv;
            for r in holders.into_iter().filter(|&r| r != pr) {
                let (row, b) = active[r].as_mut().expect("holder is active");
                let factor = row[&col].clone();
                axpy(row, b, &factor, &prow, &prhs);
                for c in row.keys() {
                    if *c > col {
                        by_col.entry(*c).or_default().push(r);
                    }
                }
            }
            pivots.push((col, prow, prhs));
        }
        let inconsistent = active.iter().flatten().any(|(row, b)| {
            debug_assert!(row.is_empty());
            !b.is_zero()
        });
        // back substitution to reduced form
        for k in (0..pivots.len()).rev() {
            let (col, prow, prhs) = pivots[k].clone();
            for (_, row, b) in pivots[..k].iter_mut() {
                if let Some(factor) = row.get(&col).cloned() {
                    axpy(row, b, &factor, &prow, &prhs);
                }
            }
        }
        Echelon {
            n_cols: m.n_cols,
            pivots,
            inconsistent,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_consistent(&self) -> bool {
        !self.inconsistent
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.pivots.iter().map(|(c, _, _)| *c).collect()
    }

    /// Pivot rows as `(pivot column, row, rhs)`.
    pub fn rows(&self) -> &[(usize, SparseRow, Scalar)] {
        &self.pivots
    }

    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let pivot_cols: std::collections::BTreeSet<usize> = self.pivot_columns().into_iter().collect();
        (0..self.n_cols)
            .filter(|c| !pivot_cols.contains(c))
            .map(|free| {
                let mut v = vec![Scalar::zero(); self.n_cols];
                v[free] = crate::scalar::one();
                for (pc, row, _) in &self.pivots {
                    if let Some(x) = row.get(&free) {
                        v[*pc] = -x.clone();
                    }
                }
                v
            })
            .collect()
    }

    pub fn particular(&self) -> Option<Vec<Scalar>> {
        if self.inconsistent {
            return None;
        }
        let mut x = vec![Scalar::zero(); self.n_cols];
        for (pc, _, b) in &self.pivots {
            x[*pc] = b.clone();
        }
        Some(x)
    }

    /// Reduces a vector against the pivot rows; the result is zero iff the
    /// vector lies in the row space.
    pub fn reduce_vector(&self, v: &SparseRow) -> SparseRow {
        let mut v = v.clone();
        let mut dummy = Scalar::zero();
        for (pc, row, _) in &self.pivots {
            if let Some(f) = v.get(pc).cloned() {
                axpy(&mut v, &mut dummy, &f, row, &Scalar::zero());
            }
        }
        v
    }
}

/// Rank of a list of sparse vectors of length `n_cols`.
pub fn rank_of_vectors(n_cols: usize, vectors: &[SparseRow]) -> usize {
    SparseMatrix::from_rows(n_cols, vectors.to_vec()).rank()
}

pub fn to_sparse(v: &[Scalar]) -> SparseRow {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}
