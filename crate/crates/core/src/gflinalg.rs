//! Sparse linear algebra over GF(2).
//!
//! A column is stored as its support: a strictly increasing list of row
//! indices. Adding two columns is a symmetric difference of supports.

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

/// Support of a sparse GF(2) vector (strictly increasing indices).
pub type Column = Vec<u32>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("row index {row} out of range for a matrix with {rows} rows")]
    RowOutOfRange { row: u32, rows: usize },
    #[error("column {col} support is not strictly increasing")]
    Unsorted { col: usize },
    #[error("dimension mismatch: {0}")]
    Shape(String),
}

/// Symmetric difference of two sorted supports.
pub fn add(a: &[u32], b: &[u32]) -> Column {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

pub fn add_assign(a: &mut Column, b: &[u32]) {
    if b.is_empty() {
        return;
    }
    *a = add(a, b);
}

/// Normalise an arbitrary index list into a support (pairs cancel).
pub fn support_from_indices(mut idx: Vec<u32>) -> Column {
    idx.sort_unstable();
    let mut out: Column = Vec::with_capacity(idx.len());
    for v in idx {
        if out.last() == Some(&v) {
            out.pop();
        } else {
            out.push(v);
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GF2Matrix {
    rows: usize,
    cols: usize,
    columns: Vec<Column>,
}

impl GF2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        GF2Matrix { rows, cols, columns: vec![Vec::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        GF2Matrix { rows: n, cols: n, columns: (0..n as u32).map(|i| vec![i]).collect() }
    }

    pub fn from_columns(rows: usize, columns: Vec<Column>) -> Result<Self, LinalgError> {
        for (c, col) in columns.iter().enumerate() {
            if col.windows(2).any(|w| w[0] >= w[1]) {
                return Err(LinalgError::Unsorted { col: c });
            }
            if let Some(&last) = col.last() {
                if last as usize >= rows {
                    return Err(LinalgError::RowOutOfRange { row: last, rows });
                }
            }
        }
        Ok(GF2Matrix { rows, cols: columns.len(), columns })
    }

    /// Builds a matrix from dense 0/1 rows; handy in tests.
    pub fn from_dense(rows: &[Vec<u8>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut columns = vec![Vec::new(); ncols];
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged dense matrix");
            for (c, &x) in row.iter().enumerate() {
                if x & 1 == 1 {
                    columns[c].push(r as u32);
                }
            }
        }
        GF2Matrix { rows: nrows, cols: ncols, columns }
    }

    pub fn to_dense(&self) -> Vec<Vec<u8>> {
        let mut out = vec![vec![0u8; self.cols]; self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for &r in col {
                out[r as usize][c] = 1;
            }
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> &[u32] {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    pub fn into_columns(self) -> Vec<Column> {
        self.columns
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.columns[c].binary_search(&(r as u32)).is_ok()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_empty())
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn transpose(&self) -> GF2Matrix {
        let mut columns = vec![Vec::new(); self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for &r in col {
                columns[r as usize].push(c as u32);
            }
        }
        GF2Matrix { rows: self.cols, cols: self.rows, columns }
    }

    /// `self · v` where `v` is a support over the columns of `self`.
    pub fn mul_vec(&self, v: &[u32]) -> Column {
        let mut acc = Vec::new();
        for &j in v {
            add_assign(&mut acc, &self.columns[j as usize]);
        }
        acc
    }

    pub fn mul(&self, other: &GF2Matrix) -> Result<GF2Matrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let columns = other.columns.iter().map(|c| self.mul_vec(c)).collect();
        Ok(GF2Matrix { rows: self.rows, cols: other.cols, columns })
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &GF2Matrix) -> Result<GF2Matrix, LinalgError> {
        if self.rows != other.rows {
            return Err(LinalgError::Shape("hstack with different row counts".into()));
        }
        let mut columns = self.columns.clone();
        columns.extend(other.columns.iter().cloned());
        Ok(GF2Matrix { rows: self.rows, cols: columns.len(), columns })
    }

    /// Keeps the listed columns, in the given order.
    pub fn select_columns(&self, idx: &[usize]) -> GF2Matrix {
        let columns: Vec<Column> = idx.iter().map(|&j| self.columns[j].clone()).collect();
        GF2Matrix { rows: self.rows, cols: columns.len(), columns }
    }

    /// Block-diagonal sum.
    pub fn block_diag(blocks: &[GF2Matrix]) -> GF2Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut columns = Vec::new();
        let mut offset = 0u32;
        for b in blocks {
            for c in &b.columns {
                columns.push(c.iter().map(|&r| r + offset).collect());
            }
            offset += b.rows as u32;
        }
        GF2Matrix { rows, cols: columns.len(), columns }
    }
}

/// Result of [`column_reduce`].
#[derive(Debug, Clone)]
pub struct Reduction {
    pub reduced: GF2Matrix,
    /// Column `j` lists the original columns summed into reduced column `j`.
    pub ops: GF2Matrix,
    /// Lowest row of each nonzero reduced column, mapped to that column.
    pub pivots: BTreeMap<usize, usize>,
}

impl Reduction {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Columns that reduced to zero; the matching `ops` columns span the kernel.
    pub fn zero_columns(&self) -> Vec<usize> {
        (0..self.reduced.cols()).filter(|&j| self.reduced.column(j).is_empty()).collect()
    }

    pub fn kernel_basis(&self) -> Vec<Column> {
        self.zero_columns().into_iter().map(|j| self.ops.column(j).to_vec()).collect()
    }
}

/// Left-to-right column reduction: while a column's low collides with an
/// earlier pivot, add that pivot column.
pub fn column_reduce(m: &GF2Matrix) -> Reduction {
    let mut pivot_of_row: Vec<usize> = vec![usize::MAX; m.rows];
    let mut reduced: Vec<Column> = Vec::with_capacity(m.cols);
    let mut ops: Vec<Column> = Vec::with_capacity(m.cols);
    let mut pivots = BTreeMap::new();
    for j in 0..m.cols {
        let mut col = m.columns[j].clone();
        let mut op = vec![j as u32];
        while let Some(&low) = col.last() {
            let p = pivot_of_row[low as usize];
            if p == usize::MAX {
                pivot_of_row[low as usize] = j;
                pivots.insert(low as usize, j);
                break;
            }
            col = add(&col, &reduced[p]);
            op = add(&op, &ops[p]);
        }
        reduced.push(col);
        ops.push(op);
    }
    Reduction {
        reduced: GF2Matrix { rows: m.rows, cols: m.cols, columns: reduced },
        ops: GF2Matrix { rows: m.cols, cols: m.cols, columns: ops },
        pivots,
    }
}

pub fn rank(m: &GF2Matrix) -> usize {
    column_reduce(m).rank()
}

/// Finds `x` with `m · x = b`, if one exists.
pub fn solve(m: &GF2Matrix, b: &[u32]) -> Option<Column> {
    let red = column_reduce(m);
    solve_reduced(&red, b)
}

/// Like [`solve`] but reuses an existing reduction of `m`.
pub fn solve_reduced(red: &Reduction, b: &[u32]) -> Option<Column> {
    let mut rem = b.to_vec();
    let mut x = Vec::new();
    while let Some(&low) = rem.last() {
        let &p = red.pivots.get(&(low as usize))?;
        rem = add(&rem, red.reduced.column(p));
        x = add(&x, red.ops.column(p));
    }
    Some(x)
}

/// Inverse of a square matrix, `None` if singular.
pub fn inverse(m: &GF2Matrix) -> Option<GF2Matrix> {
    if m.rows != m.cols {
        return None;
    }
    let n = m.rows;
    let mut eb = EliminationBasis::new();
    for j in 0..n {
        if !eb.insert(m.columns[j].clone(), vec![j as u32]) {
            return None;
        }
    }
    // column j of the inverse expresses e_j in the columns of m
    let columns = (0..n as u32).map(|j| eb.express(&[j]).expect("full rank")).collect();
    Some(GF2Matrix { rows: n, cols: n, columns })
}

/// An incrementally built set of independent vectors in echelon form
/// (distinct lows), each carrying a tag recording how it was combined.
#[derive(Debug, Clone, Default)]
pub struct EliminationBasis {
    pivot_of_row: HashMap<u32, usize>,
    vectors: Vec<Column>,
    tags: Vec<Column>,
}

impl EliminationBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Reduces `v` (tagged `tag`) as far as possible against the basis.
    pub fn reduce(&self, mut v: Column, mut tag: Column) -> (Column, Column) {
        while let Some(&low) = v.last() {
            match self.pivot_of_row.get(&low) {
                Some(&p) => {
                    v = add(&v, &self.vectors[p]);
                    tag = add(&tag, &self.tags[p]);
                }
                None => break,
            }
        }
        (v, tag)
    }

    /// Adds `v` if it is independent of the basis; returns whether it was.
    pub fn insert(&mut self, v: Column, tag: Column) -> bool {
        let (rem, tag) = self.reduce(v, tag);
        match rem.last() {
            Some(&low) => {
                self.pivot_of_row.insert(low, self.vectors.len());
                self.vectors.push(rem);
                self.tags.push(tag);
                true
            }
            None => false,
        }
    }

    /// Tag combination expressing `v` in the basis, or `None` if `v` is not in its span.
    pub fn express(&self, v: &[u32]) -> Option<Column> {
        let (rem, tag) = self.reduce(v.to_vec(), Vec::new());
        rem.is_empty().then_some(tag)
    }
}
