//! Exact sparse linear algebra over a [`Field`].
//!
//! Vectors are sorted `(index, value)` lists with no explicit zeros.
//! [`Echelon`] keeps a row-echelon basis of a subspace keyed by pivot
//! (the smallest index of each row, normalized to 1); reduction against it
//! clears every pivot coordinate, so reduced forms are unique.

use std::collections::BTreeMap;

use crate::field::Field;

pub type SparseVec<E> = Vec<(usize, E)>;

pub fn scale<F: Field>(field: &F, v: &SparseVec<F::Elem>, c: &F::Elem) -> SparseVec<F::Elem> {
    if field.is_zero(c) {
        return Vec::new();
    }
    v.iter()
        .map(|(i, a)| (*i, field.mul(a, c)))
        .filter(|(_, a)| !field.is_zero(a))
        .collect()
}

/// `a + c*b`.
pub fn axpy<F: Field>(field: &F, a: &SparseVec<F::Elem>, c: &F::Elem, b: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            let v = field.mul(c, &b[j].1);
            if !field.is_zero(&v) {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = field.add(&a[i].1, &field.mul(c, &b[j].1));
            if !field.is_zero(&v) {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Builds a sparse vector from unsorted entries, summing duplicates.
pub fn collect_sparse<F: Field>(field: &F, entries: impl IntoIterator<Item = (usize, F::Elem)>) -> SparseVec<F::Elem> {
    let mut acc: BTreeMap<usize, F::Elem> = BTreeMap::new();
    for (i, v) in entries {
        match acc.get_mut(&i) {
            Some(x) => *x = field.add(x, &v),
            None => {
                acc.insert(i, v);
            }
        }
    }
    acc.into_iter().filter(|(_, v)| !field.is_zero(v)).collect()
}

/// A matrix stored by columns: column `j` is the image of basis vector `j`.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<E> {
    pub rows: usize,
    pub cols: usize,
    pub columns: Vec<SparseVec<E>>,
}

impl<E: Clone> Matrix<E> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, columns: vec![Vec::new(); cols] }
    }

    pub fn from_columns(rows: usize, columns: Vec<SparseVec<E>>) -> Self {
        Matrix { rows, cols: columns.len(), columns }
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_empty())
    }
}

impl<E: Clone> Matrix<E> {
    /// Builds a matrix from dense row-major entries, dropping zeros.
    pub fn from_rows<F: Field<Elem = E>>(field: &F, rows: &[Vec<E>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut columns = vec![Vec::new(); ncols];
        for (i, row) in rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if !field.is_zero(v) {
                    columns[j].push((i, v.clone()));
                }
            }
        }
        Matrix { rows: nrows, cols: ncols, columns }
    }

    pub fn to_dense<F: Field<Elem = E>>(&self, field: &F) -> Vec<Vec<E>> {
        let mut out = vec![vec![field.zero(); self.cols]; self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, v) in col {
                out[*i][j] = v.clone();
            }
        }
        out
    }
}

/// `a * b` where `a: m x k`, `b: k x n`.
pub fn mat_mul<F: Field>(field: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    assert_eq!(a.cols, b.rows, "dimension mismatch");
    let columns = b
        .columns
        .iter()
        .map(|col| {
            let mut acc = Vec::new();
            for (k, c) in col {
                acc = axpy(field, &acc, c, &a.columns[*k]);
            }
            acc
        })
        .collect();
    Matrix { rows: a.rows, cols: b.cols, columns }
}

/// Row-echelon basis of a subspace.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    field: F,
    rows: BTreeMap<usize, SparseVec<F::Elem>>,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F) -> Self {
        Echelon { field, rows: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn rows(&self) -> impl Iterator<Item = &SparseVec<F::Elem>> {
        self.rows.values()
    }

    pub fn is_pivot(&self, i: usize) -> bool {
        self.rows.contains_key(&i)
    }

    /// Reduces `v` until no pivot coordinate remains.
    pub fn reduce(&self, v: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let mut cur = v.clone();
        let mut cursor = 0usize;
        loop {
            let next = cur.iter().find(|(i, _)| *i >= cursor && self.rows.contains_key(i)).cloned();
            let Some((pivot, coeff)) = next else { break };
            cur = axpy(&self.field, &cur, &self.field.neg(&coeff), &self.rows[&pivot]);
            cursor = pivot + 1;
        }
        cur
    }

    /// Whether `v` lies in the span.
    pub fn contains(&self, v: &SparseVec<F::Elem>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the span. Returns the normalized reduced vector when `v`
    /// was independent of the existing rows.
    pub fn insert(&mut self, v: &SparseVec<F::Elem>) -> Option<SparseVec<F::Elem>> {
        let r = self.reduce(v);
        let (pivot, lead) = r.first().cloned()?;
        let inv = self.field.inv(&lead).expect("leading entry is nonzero");
        let row = scale(&self.field, &r, &inv);
        self.rows.insert(pivot, row.clone());
        Some(row)
    }
}

/// Result of [`solve_piece`].
#[derive(Clone, Debug)]
pub struct PieceSolution<E> {
    pub rank: usize,
    /// Basis of the null space, as vectors in the domain.
    pub kernel: Vec<SparseVec<E>>,
    /// Echelon basis of the column space, as vectors in the codomain.
    pub image: Vec<SparseVec<E>>,
    /// Codomain unit vectors completing `image` to a basis.
    pub complement: Vec<usize>,
}

/// Rank, kernel, image and a complement of the image for `m`.
///
/// Columns are eliminated left to right while recording the combination of
/// original columns each echelon row came from; a column that reduces to zero
/// yields a kernel vector.
pub fn solve_piece<F: Field>(field: &F, m: &Matrix<F::Elem>) -> PieceSolution<F::Elem> {
    let mut rows: BTreeMap<usize, (SparseVec<F::Elem>, SparseVec<F::Elem>)> = BTreeMap::new();
    let mut kernel = Vec::new();
    for (j, col) in m.columns.iter().enumerate() {
        let mut cur = col.clone();
        let mut combo: SparseVec<F::Elem> = vec![(j, field.one())];
        let mut cursor = 0usize;
        loop {
            let next = cur.iter().find(|(i, _)| *i >= cursor && rows.contains_key(i)).cloned();
            let Some((pivot, coeff)) = next else { break };
            let neg = field.neg(&coeff);
            let (row, row_combo) = &rows[&pivot];
            cur = axpy(field, &cur, &neg, row);
            combo = axpy(field, &combo, &neg, row_combo);
            cursor = pivot + 1;
        }
        match cur.first().cloned() {
            None => kernel.push(combo),
            Some((pivot, lead)) => {
                let inv = field.inv(&lead).expect("nonzero");
                rows.insert(pivot, (scale(field, &cur, &inv), scale(field, &combo, &inv)));
            }
        }
    }
    let complement = (0..m.rows).filter(|i| !rows.contains_key(i)).collect();
    let image = rows.into_values().map(|(r, _)| r).collect::<Vec<_>>();
    PieceSolution { rank: image.len(), kernel, image, complement }
}
