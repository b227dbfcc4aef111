//! Exact sparse linear algebra over the rationals.
//!
//! Everything downstream (Lie algebra slices, invariant extraction, cochain
//! complexes) reduces to rank, kernel and span computations on very sparse
//! matrices with small integer entries, so rows are stored as sorted
//! `(column, value)` lists and eliminated in place.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Sorted `(index, value)` pairs with no zero values.
pub type SparseVec = Vec<(u32, Rational)>;

/// Sparse matrix stored row by row; each row is a [`SparseVec`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        let data = (0..n).map(|i| vec![(i as u32, Rational::ONE)]).collect();
        SparseMatrix { rows: n, cols: n, data }
    }

    /// Builds a matrix from `(row, col, value)` triplets; duplicates are summed
    /// and zeros dropped.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, Rational)>,
    ) -> Self {
        let mut data: Vec<Vec<(u32, Rational)>> = vec![Vec::new(); rows];
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "triplet ({r},{c}) out of range {rows}x{cols}");
            data[r].push((c as u32, v));
        }
        let data = data.into_iter().map(normalize_vec).collect();
        SparseMatrix { rows, cols, data }
    }

    /// Builds a matrix from sparse rows. Rows must already be normalized.
    pub fn from_rows(cols: usize, data: Vec<SparseVec>) -> Self {
        debug_assert!(data.iter().all(|r| is_normalized(r, cols)));
        SparseMatrix { rows: data.len(), cols, data }
    }

    /// Builds a matrix whose columns are the given sparse vectors.
    pub fn from_columns(rows: usize, columns: &[SparseVec]) -> Self {
        let trip = columns
            .iter()
            .enumerate()
            .flat_map(|(j, col)| col.iter().map(move |(i, v)| (*i as usize, j, v.clone())));
        SparseMatrix::from_triplets(rows, columns.len(), trip)
    }

    pub fn from_dense(rows: &[Vec<Rational>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows.iter().map(|r| dense_to_sparse(r)).collect();
        SparseMatrix { rows: rows.len(), cols, data }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn row(&self, i: usize) -> &SparseVec {
        &self.data[i]
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.data
    }

    pub fn into_rows(self) -> Vec<SparseVec> {
        self.data
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        let row = &self.data[r];
        match row.binary_search_by_key(&(c as u32), |(j, _)| *j) {
            Ok(k) => row[k].1.clone(),
            Err(_) => Rational::ZERO,
        }
    }

    /// Entries in `(row, col)` order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |(j, v)| (i, *j as usize, v)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut data: Vec<SparseVec> = vec![Vec::new(); self.cols];
        for (i, row) in self.data.iter().enumerate() {
            for (j, v) in row {
                data[*j as usize].push((i as u32, v.clone()));
            }
        }
        SparseMatrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn mul_vec(&self, v: &SparseVec) -> SparseVec {
        let mut dense = vec![Rational::ZERO; self.cols];
        for (j, x) in v {
            dense[*j as usize] = x.clone();
        }
        let mut out = Vec::new();
        for (i, row) in self.data.iter().enumerate() {
            let mut acc = Rational::ZERO;
            for (j, a) in row {
                let x = &dense[*j as usize];
                if !x.is_zero() {
                    acc += &(a * x);
                }
            }
            if !acc.is_zero() {
                out.push((i as u32, acc));
            }
        }
        out
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut acc = Accumulator::new(rhs.cols);
        let data = self
            .data
            .iter()
            .map(|row| {
                for (k, a) in row {
                    acc.add_scaled(&rhs.data[*k as usize], a);
                }
                acc.drain()
            })
            .collect();
        SparseMatrix { rows: self.rows, cols: rhs.cols, data }
    }

    pub fn scale(&self, s: &Rational) -> SparseMatrix {
        if s.is_zero() {
            return SparseMatrix::zeros(self.rows, self.cols);
        }
        let data = self
            .data
            .iter()
            .map(|r| r.iter().map(|(j, v)| (*j, v * s)).collect())
            .collect();
        SparseMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn add(&self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| axpy(a, &Rational::ONE, b))
            .collect();
        SparseMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, rhs: &SparseMatrix) -> SparseMatrix {
        self.add(&rhs.scale(&Rational::from_int(-1)))
    }

    /// Stacks `blocks` vertically.
    pub fn vstack(blocks: &[SparseMatrix]) -> SparseMatrix {
        let cols = blocks.first().map_or(0, |b| b.cols);
        let mut data = Vec::new();
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack column mismatch");
            data.extend(b.data.iter().cloned());
        }
        SparseMatrix { rows: data.len(), cols, data }
    }

    /// Returns the submatrix made of the listed columns, in order.
    pub fn select_columns(&self, cols: &[usize]) -> SparseMatrix {
        let mut map = vec![u32::MAX; self.cols];
        for (k, c) in cols.iter().enumerate() {
            map[*c] = k as u32;
        }
        let data = self
            .data
            .iter()
            .map(|r| {
                let mut v: SparseVec = r
                    .iter()
                    .filter(|(j, _)| map[*j as usize] != u32::MAX)
                    .map(|(j, x)| (map[*j as usize], x.clone()))
                    .collect();
                v.sort_unstable_by_key(|(j, _)| *j);
                v
            })
            .collect();
        SparseMatrix { rows: self.rows, cols: cols.len(), data }
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        self.data
            .iter()
            .map(|r| {
                let mut d = vec![Rational::ZERO; self.cols];
                for (j, v) in r {
                    d[*j as usize] = v.clone();
                }
                d
            })
            .collect()
    }
}

fn is_normalized(v: &SparseVec, dim: usize) -> bool {
    v.windows(2).all(|w| w[0].0 < w[1].0)
        && v.iter().all(|(j, x)| (*j as usize) < dim && !x.is_zero())
}

/// Sorts by index, merges duplicates and drops zeros.
pub fn normalize_vec(mut v: Vec<(u32, Rational)>) -> SparseVec {
    v.sort_by_key(|(j, _)| *j);
    let mut out: SparseVec = Vec::with_capacity(v.len());
    for (j, x) in v {
        match out.last_mut() {
            Some((k, y)) if *k == j => *y += &x,
            _ => out.push((j, x)),
        }
    }
    out.retain(|(_, x)| !x.is_zero());
    out
}

pub fn dense_to_sparse(v: &[Rational]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(j, x)| (j as u32, x.clone()))
        .collect()
}

pub fn sparse_to_dense(v: &SparseVec, dim: usize) -> Vec<Rational> {
    let mut d = vec![Rational::ZERO; dim];
    for (j, x) in v {
        d[*j as usize] = x.clone();
    }
    d
}

pub fn sparse_get(v: &SparseVec, j: u32) -> Option<&Rational> {
    v.binary_search_by_key(&j, |(k, _)| *k).ok().map(|k| &v[k].1)
}

pub fn scale_vec(v: &SparseVec, s: &Rational) -> SparseVec {
    if s.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(j, x)| (*j, x * s)).collect()
}

/// `a + s * b`, merged.
pub fn axpy(a: &SparseVec, s: &Rational, b: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut k) = (0, 0);
    while i < a.len() || k < b.len() {
        if k == b.len() || (i < a.len() && a[i].0 < b[k].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[k].0 < a[i].0 {
            out.push((b[k].0, s * &b[k].1));
            k += 1;
        } else {
            let v = &a[i].1 + &(s * &b[k].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            k += 1;
        }
    }
    out
}

pub fn dot(a: &SparseVec, b: &SparseVec) -> Rational {
    let (mut i, mut k) = (0, 0);
    let mut acc = Rational::ZERO;
    while i < a.len() && k < b.len() {
        match a[i].0.cmp(&b[k].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => k += 1,
            std::cmp::Ordering::Equal => {
                acc += &(&a[i].1 * &b[k].1);
                i += 1;
                k += 1;
            }
        }
    }
    acc
}

/// Dense scratch accumulator for sums of sparse vectors.
pub struct Accumulator {
    dense: Vec<Rational>,
    touched: Vec<u32>,
    mark: Vec<bool>,
}

impl Accumulator {
    pub fn new(dim: usize) -> Self {
        Accumulator { dense: vec![Rational::ZERO; dim], touched: Vec::new(), mark: vec![false; dim] }
    }

    #[inline]
    pub fn add(&mut self, j: u32, x: &Rational) {
        let k = j as usize;
        if !self.mark[k] {
            self.mark[k] = true;
            self.touched.push(j);
        }
        self.dense[k] += x;
    }

    pub fn add_scaled(&mut self, v: &SparseVec, s: &Rational) {
        for (j, x) in v {
            self.add(*j, &(x * s));
        }
    }

    pub fn drain(&mut self) -> SparseVec {
        self.touched.sort_unstable();
        let mut out = Vec::with_capacity(self.touched.len());
        for &j in &self.touched {
            let k = j as usize;
            self.mark[k] = false;
            let v = std::mem::take(&mut self.dense[k]);
            if !v.is_zero() {
                out.push((j, v));
            }
        }
        self.touched.clear();
        out
    }
}

// ---------------------------------------------------------------------------
// Elimination
// ---------------------------------------------------------------------------

/// Working state shared by both elimination strategies: the active rows and
/// a lazily maintained column -> rows index (may hold stale row ids).
struct Workspace {
    rows: Vec<SparseVec>,
    active: Vec<bool>,
    col_rows: Vec<Vec<u32>>,
}

impl Workspace {
    fn new(rows: Vec<SparseVec>, ncols: usize) -> Self {
        let mut col_rows = vec![Vec::new(); ncols];
        for (i, r) in rows.iter().enumerate() {
            for (j, _) in r {
                col_rows[*j as usize].push(i as u32);
            }
        }
        let active = rows.iter().map(|r| !r.is_empty()).collect();
        Workspace { rows, active, col_rows }
    }

    /// Active rows that currently hold a nonzero in column `c`, sorted by id.
    fn rows_with(&mut self, c: usize) -> Vec<u32> {
        let rows = &self.rows;
        let active = &self.active;
        let list = &mut self.col_rows[c];
        list.retain(|&r| {
            active[r as usize] && sparse_get(&rows[r as usize], c as u32).is_some()
        });
        list.sort_unstable();
        list.dedup();
        list.clone()
    }

    /// Eliminates column `c` from row `target` using the monic row `pivot`.
    /// Returns the columns newly introduced into `target`.
    fn eliminate(&mut self, target: usize, pivot: &SparseVec, c: u32) -> Vec<u32> {
        let row = std::mem::take(&mut self.rows[target]);
        let f = match sparse_get(&row, c) {
            Some(v) => -v,
            None => {
                self.rows[target] = row;
                return Vec::new();
            }
        };
        let mut out = Vec::with_capacity(row.len() + pivot.len());
        let mut fresh = Vec::new();
        let (mut i, mut k) = (0, 0);
        while i < row.len() || k < pivot.len() {
            if k == pivot.len() || (i < row.len() && row[i].0 < pivot[k].0) {
                out.push(row[i].clone());
                i += 1;
            } else if i == row.len() || pivot[k].0 < row[i].0 {
                fresh.push(pivot[k].0);
                out.push((pivot[k].0, &f * &pivot[k].1));
                k += 1;
            } else {
                if row[i].0 != c {
                    let v = &row[i].1 + &(&f * &pivot[k].1);
                    if !v.is_zero() {
                        out.push((row[i].0, v));
                    }
                }
                i += 1;
                k += 1;
            }
        }
        for j in &fresh {
            self.col_rows[*j as usize].push(target as u32);
        }
        if out.is_empty() {
            self.active[target] = false;
        }
        self.rows[target] = out;
        fresh
    }
}

fn make_monic(row: &mut SparseVec, c: u32) {
    let p = sparse_get(row, c).expect("pivot present").clone();
    if !p.is_one() {
        let inv = p.recip();
        for (_, v) in row.iter_mut() {
            *v = &*v * &inv;
        }
    }
}

/// Rank by sparse elimination with Markowitz-style pivot choice: the sparsest
/// active row, then within it the column of smallest active count; ties go
/// to the lowest `(row, col)`.
pub fn rank(m: &SparseMatrix) -> usize {
    rank_of_rows(m.data.clone(), m.cols)
}

pub fn rank_of_rows(rows: Vec<SparseVec>, ncols: usize) -> usize {
    let mut ws = Workspace::new(rows, ncols);
    let mut col_count = vec![0usize; ncols];
    for r in &ws.rows {
        for (j, _) in r {
            col_count[*j as usize] += 1;
        }
    }
    let mut queue: BTreeSet<(usize, u32)> = ws
        .rows
        .iter()
        .enumerate()
        .filter(|(_, r)| !r.is_empty())
        .map(|(i, r)| (r.len(), i as u32))
        .collect();
    let mut rank = 0;
    while let Some((_, pr)) = queue.pop_first() {
        let pr = pr as usize;
        let prow = std::mem::take(&mut ws.rows[pr]);
        ws.active[pr] = false;
        for (j, _) in &prow {
            col_count[*j as usize] -= 1;
        }
        // Column with minimal remaining count; lowest index on ties.
        let (pc, _) = prow
            .iter()
            .map(|(j, _)| (*j, col_count[*j as usize]))
            .min_by_key(|(j, cnt)| (*cnt, *j))
            .expect("nonempty pivot row");
        let mut prow = prow;
        make_monic(&mut prow, pc);
        rank += 1;
        for t in ws.rows_with(pc as usize) {
            let t = t as usize;
            let old_len = ws.rows[t].len();
            queue.remove(&(old_len, t as u32));
            for (j, _) in &ws.rows[t] {
                col_count[*j as usize] -= 1;
            }
            ws.eliminate(t, &prow, pc);
            for (j, _) in &ws.rows[t] {
                col_count[*j as usize] += 1;
            }
            if !ws.rows[t].is_empty() {
                queue.insert((ws.rows[t].len(), t as u32));
            }
        }
    }
    rank
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum ColumnOrder {
    Ascending,
    Descending,
}

/// Gauss-Jordan elimination visiting columns in a fixed order; within each
/// column the sparsest candidate row is the pivot (lowest id on ties).
/// Returns `(pivot column, monic fully reduced row)` sorted by pivot column.
/// Only columns `< col_limit` may be chosen as pivots.
fn ordered_rref(
    rows: Vec<SparseVec>,
    ncols: usize,
    order: ColumnOrder,
    col_limit: usize,
) -> Vec<(u32, SparseVec)> {
    let mut ws = Workspace::new(rows, ncols);
    let mut pivots: Vec<(u32, SparseVec)> = Vec::new();
    let cols: Box<dyn Iterator<Item = usize>> = match order {
        ColumnOrder::Ascending => Box::new(0..col_limit),
        ColumnOrder::Descending => Box::new((0..col_limit).rev()),
    };
    for c in cols {
        let cands = ws.rows_with(c);
        let Some(&pr) = cands.iter().min_by_key(|&&r| (ws.rows[r as usize].len(), r)) else {
            continue;
        };
        let pr = pr as usize;
        let mut prow = std::mem::take(&mut ws.rows[pr]);
        ws.active[pr] = false;
        make_monic(&mut prow, c as u32);
        for t in cands {
            if t as usize != pr {
                ws.eliminate(t as usize, &prow, c as u32);
            }
        }
        pivots.push((c as u32, prow));
    }
    // Back substitution. Each pivot row only touches columns that come later
    // in the visiting order, so reduce rows against pivots visited after them.
    let mut is_pivot = vec![u32::MAX; ncols];
    for (k, (c, _)) in pivots.iter().enumerate() {
        is_pivot[*c as usize] = k as u32;
    }
    let mut acc = Accumulator::new(ncols);
    for k in (0..pivots.len()).rev() {
        let (c, row) = &pivots[k];
        if !row.iter().any(|(j, _)| *j != *c && is_pivot[*j as usize] != u32::MAX) {
            continue;
        }
        for (j, v) in row {
            let p = is_pivot[*j as usize];
            if *j == *c || p == u32::MAX {
                acc.add(*j, v);
            } else {
                // pivots[p] is already reduced; subtract v * (its row).
                let neg = -v;
                for (jj, w) in &pivots[p as usize].1 {
                    if *jj != *j {
                        acc.add(*jj, &(&neg * w));
                    }
                }
            }
        }
        let reduced = acc.drain();
        pivots[k].1 = reduced;
    }
    pivots.sort_by_key(|(c, _)| *c);
    pivots
}

/// Null space of `m` as a subspace of `Q^cols`, in canonical reduced
/// row-echelon form.
pub fn kernel_basis(m: &SparseMatrix) -> Subspace {
    kernel_of_rows(m.data.clone(), m.cols)
}

pub fn kernel_of_rows(rows: Vec<SparseVec>, ncols: usize) -> Subspace {
    // Visiting columns right to left makes every pivot row live on columns
    // at or below its pivot, so the free-variable basis is already the
    // reduced echelon basis of the kernel.
    let pivots = ordered_rref(rows, ncols, ColumnOrder::Descending, ncols);
    let mut pivot_of = vec![false; ncols];
    for (c, _) in &pivots {
        pivot_of[*c as usize] = true;
    }
    let mut kernel: Vec<SparseVec> = (0..ncols)
        .filter(|&c| !pivot_of[c])
        .map(|c| vec![(c as u32, Rational::ONE)])
        .collect();
    let mut slot = vec![u32::MAX; ncols];
    let mut k = 0u32;
    for c in 0..ncols {
        if !pivot_of[c] {
            slot[c] = k;
            k += 1;
        }
    }
    for (p, row) in &pivots {
        for (j, v) in row {
            if *j != *p {
                kernel[slot[*j as usize] as usize].push((*p, -v));
            }
        }
    }
    for v in &mut kernel {
        v.sort_by_key(|(j, _)| *j);
    }
    Subspace::from_reduced_unchecked(ncols, kernel)
}

/// Subspace of `Q^ambient_dim` held as a reduced row-echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<SparseVec>,
    pivots: Vec<u32>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient_dim: usize) -> Self {
        let basis: Vec<SparseVec> =
            (0..ambient_dim).map(|i| vec![(i as u32, Rational::ONE)]).collect();
        Subspace { ambient_dim, pivots: (0..ambient_dim as u32).collect(), basis }
    }

    /// Span of arbitrary (possibly dependent) sparse vectors.
    pub fn span(ambient_dim: usize, vectors: Vec<SparseVec>) -> Self {
        let piv = ordered_rref(vectors, ambient_dim, ColumnOrder::Ascending, ambient_dim);
        let pivots = piv.iter().map(|(c, _)| *c).collect();
        let basis = piv.into_iter().map(|(_, r)| r).collect();
        Subspace { ambient_dim, basis, pivots }
    }

    pub fn span_dense(ambient_dim: usize, vectors: &[Vec<Rational>]) -> Self {
        Subspace::span(ambient_dim, vectors.iter().map(|v| dense_to_sparse(v)).collect())
    }

    fn from_reduced_unchecked(ambient_dim: usize, basis: Vec<SparseVec>) -> Self {
        let pivots = basis.iter().map(|v| v[0].0).collect();
        let s = Subspace { ambient_dim, basis, pivots };
        debug_assert!(s.check_invariants());
        s
    }

    /// Verifies the echelon invariants (used in tests).
    pub fn check_invariants(&self) -> bool {
        if self.pivots.windows(2).any(|w| w[0] >= w[1]) {
            return false;
        }
        for (k, v) in self.basis.iter().enumerate() {
            if v.is_empty() || v[0].0 != self.pivots[k] || !v[0].1.is_one() {
                return false;
            }
            if !is_normalized(v, self.ambient_dim) {
                return false;
            }
            for (l, p) in self.pivots.iter().enumerate() {
                if l != k && sparse_get(v, *p).is_some() {
                    return false;
                }
            }
        }
        true
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn pivots(&self) -> &[u32] {
        &self.pivots
    }

    pub fn basis_dense(&self) -> Vec<Vec<Rational>> {
        self.basis.iter().map(|v| sparse_to_dense(v, self.ambient_dim)).collect()
    }

    /// Basis vectors as the columns of an `ambient_dim x dim` matrix.
    pub fn basis_matrix(&self) -> SparseMatrix {
        SparseMatrix::from_columns(self.ambient_dim, &self.basis)
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` is not in
    /// the subspace.
    pub fn coordinates(&self, v: &SparseVec) -> Option<Vec<Rational>> {
        let coords: Vec<Rational> = self
            .pivots
            .iter()
            .map(|p| sparse_get(v, *p).cloned().unwrap_or_default())
            .collect();
        let mut acc = Accumulator::new(self.ambient_dim);
        acc.add_scaled(v, &Rational::ONE);
        for (b, c) in self.basis.iter().zip(&coords) {
            if !c.is_zero() {
                acc.add_scaled(b, &-c);
            }
        }
        if acc.drain().is_empty() {
            Some(coords)
        } else {
            None
        }
    }

    /// Coordinates read off at the pivots without a membership check.
    pub fn pivot_coordinates(&self, v: &SparseVec) -> SparseVec {
        self.pivots
            .iter()
            .enumerate()
            .filter_map(|(k, p)| sparse_get(v, *p).map(|x| (k as u32, x.clone())))
            .collect()
    }

    /// Expands coordinates (indexed by basis position) into an ambient vector.
    pub fn combine(&self, coords: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new(self.ambient_dim);
        for (k, c) in coords {
            acc.add_scaled(&self.basis[*k as usize], c);
        }
        acc.drain()
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_dense(&self, v: &[Rational]) -> bool {
        self.contains(&dense_to_sparse(v))
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let vecs = self.basis.iter().chain(&other.basis).cloned().collect();
        Ok(Subspace::span(self.ambient_dim, vecs))
    }

    /// Annihilator with respect to the standard pairing.
    pub fn annihilator(&self) -> Subspace {
        kernel_of_rows(self.basis.clone(), self.ambient_dim)
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let a = self.annihilator();
        let b = other.annihilator();
        let rows = a.basis.into_iter().chain(b.basis).collect();
        Ok(kernel_of_rows(rows, self.ambient_dim))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(self.basis.iter().all(|v| other.contains(v)))
    }

    /// `dim self - dim sub`, requiring `sub ⊆ self`.
    pub fn quotient_dim(&self, sub: &Subspace) -> Result<usize> {
        if !sub.is_subspace_of(self)? {
            return Err(Error::NotASubspace);
        }
        Ok(self.dim() - sub.dim())
    }

    /// Image of the subspace under `m` (which must have `ambient_dim` columns).
    pub fn image_under(&self, m: &SparseMatrix) -> Subspace {
        assert_eq!(m.ncols(), self.ambient_dim);
        let vecs = self.basis.iter().map(|v| m.mul_vec(v)).collect();
        Subspace::span(m.nrows(), vecs)
    }
}

/// Operation selector for [`subspace_op`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubspaceOp {
    Sum,
    Intersection,
    Membership,
    QuotientDim,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubspaceOpResult {
    Subspace(Subspace),
    Count(usize),
    Truth(bool),
}

/// Single entry point for the lattice operations. `Membership` asks whether
/// every basis vector of `b` lies in `a`.
pub fn subspace_op(a: &Subspace, b: &Subspace, op: SubspaceOp) -> Result<SubspaceOpResult> {
    Ok(match op {
        SubspaceOp::Sum => SubspaceOpResult::Subspace(a.sum(b)?),
        SubspaceOp::Intersection => SubspaceOpResult::Subspace(a.intersection(b)?),
        SubspaceOp::Membership => SubspaceOpResult::Truth(b.is_subspace_of(a)?),
        SubspaceOp::QuotientDim => SubspaceOpResult::Count(a.quotient_dim(b)?),
    })
}

/// Expresses vectors in terms of a fixed independent family `v_1..v_m`.
///
/// Rows `[v_j | e_j]` are reduced with pivots restricted to the left block, so
/// each echelon row carries the combination of the `v_j` that produced it.
#[derive(Clone, Debug)]
pub struct SpanCoordinates {
    dim: usize,
    count: usize,
    rows: Vec<(u32, SparseVec)>,
}

impl SpanCoordinates {
    pub fn new(dim: usize, family: &[SparseVec]) -> Result<Self> {
        let count = family.len();
        let rows: Vec<SparseVec> = family
            .iter()
            .enumerate()
            .map(|(j, v)| {
                let mut r = v.clone();
                r.push(((dim + j) as u32, Rational::ONE));
                r
            })
            .collect();
        let piv = ordered_rref(rows, dim + count, ColumnOrder::Ascending, dim);
        if piv.len() != count {
            return Err(Error::Dependent);
        }
        Ok(SpanCoordinates { dim, count, rows: piv })
    }

    /// Solves `Σ x_j v_j = w`; `None` if `w` is outside the span.
    pub fn solve(&self, w: &SparseVec) -> Option<Vec<Rational>> {
        let mut acc = Accumulator::new(self.dim + self.count);
        acc.add_scaled(w, &Rational::ONE);
        for (p, row) in &self.rows {
            if let Some(c) = sparse_get(w, *p) {
                acc.add_scaled(row, &-c);
            }
        }
        let rest = acc.drain();
        let mut x = vec![Rational::ZERO; self.count];
        for (j, v) in rest {
            if (j as usize) < self.dim {
                return None;
            }
            x[j as usize - self.dim] = -v;
        }
        Some(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> Rational {
        Rational::from_int(v)
    }

    fn dense(rows: &[&[i64]]) -> SparseMatrix {
        let r: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect();
        SparseMatrix::from_dense(&r)
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&SparseMatrix::identity(3)), 3);
        assert_eq!(rank(&dense(&[&[1, 1], &[1, 1]])), 1);
        assert_eq!(rank(&SparseMatrix::zeros(2, 5)), 0);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&SparseMatrix::identity(4)).dim(), 0);
        let k = kernel_basis(&SparseMatrix::zeros(2, 5));
        assert_eq!(k.dim(), 5);
        assert_eq!(k, Subspace::full(5));
    }

    #[test]
    fn kernel_is_reduced_echelon() {
        let m = dense(&[&[1, 2, 0, 3, 1], &[0, 0, 1, 1, 1], &[1, 2, 1, 4, 2]]);
        let k = kernel_basis(&m);
        assert_eq!(k.dim(), 3);
        assert!(k.check_invariants());
        // Same subspace as the span-based reduction of the same vectors.
        assert_eq!(Subspace::span(5, k.basis().to_vec()), k);
        for v in k.basis() {
            assert!(m.mul_vec(v).is_empty());
        }
    }

    #[test]
    fn subspace_lattice() {
        let x = Subspace::span(2, vec![vec![(0, q(1))]]);
        let y = Subspace::span(2, vec![vec![(1, q(1))]]);
        assert_eq!(x.sum(&y).unwrap(), Subspace::full(2));
        assert_eq!(x.intersection(&x).unwrap(), x);
        assert_eq!(x.intersection(&y).unwrap().dim(), 0);
        let full = Subspace::full(2);
        assert!(full.contains(&vec![(0, q(1)), (1, q(1))]));
        assert_eq!(full.quotient_dim(&x).unwrap(), 1);
        assert!(matches!(x.quotient_dim(&y), Err(Error::NotASubspace)));
        let z = Subspace::full(3);
        assert!(matches!(x.sum(&z), Err(Error::DimensionMismatch { .. })));
        assert_eq!(
            subspace_op(&full, &x, SubspaceOp::Membership).unwrap(),
            SubspaceOpResult::Truth(true)
        );
    }

    #[test]
    fn span_coordinates_roundtrip() {
        let fam = vec![vec![(0, q(1)), (2, q(2))], vec![(1, q(3)), (2, q(1))]];
        let sc = SpanCoordinates::new(3, &fam).unwrap();
        let w = axpy(&scale_vec(&fam[0], &q(5)), &Rational::new(-1, 3), &fam[1]);
        assert_eq!(sc.solve(&w).unwrap(), vec![q(5), Rational::new(-1, 3)]);
        assert!(sc.solve(&vec![(0, q(1))]).is_none());
    }

    #[test]
    fn matrix_product_and_transpose() {
        let a = dense(&[&[1, 2], &[0, 1]]);
        let b = dense(&[&[3, 0], &[1, 1]]);
        assert_eq!(a.mul(&b), dense(&[&[5, 2], &[1, 1]]));
        assert_eq!(a.transpose().transpose(), a);
    }
}
