//! Sparse fraction-free row elimination.
//!
//! Boundary and Koszul strand matrices are overwhelmingly 0/±1 and very
//! sparse, so ranks are computed on row-sparse storage. Elimination runs on
//! machine integers with overflow checks and restarts on `BigInt` entries
//! the moment any intermediate value stops fitting.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A sparse row: `(column, value)` pairs, strictly increasing in column,
/// with no zero values.
pub type SparseRow = Vec<(usize, i64)>;

/// Row-sparse integer matrix.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseMatrix {
    cols: usize,
    rows: Vec<SparseRow>,
}

impl SparseMatrix {
    pub fn new(cols: usize) -> Self {
        SparseMatrix { cols, rows: Vec::new() }
    }

    pub fn with_capacity(cols: usize, rows: usize) -> Self {
        SparseMatrix { cols, rows: Vec::with_capacity(rows) }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn row(&self, i: usize) -> &[(usize, i64)] {
        &self.rows[i]
    }

    /// Appends a row given as unsorted `(column, value)` pairs; duplicate
    /// columns are summed and zeros dropped.
    pub fn push_row(&mut self, mut entries: Vec<(usize, i64)>) {
        entries.sort_unstable_by_key(|e| e.0);
        let mut row: SparseRow = Vec::with_capacity(entries.len());
        for (c, v) in entries {
            assert!(c < self.cols, "column {c} out of range {}", self.cols);
            match row.last_mut() {
                Some(last) if last.0 == c => last.1 += v,
                _ => row.push((c, v)),
            }
        }
        row.retain(|e| e.1 != 0);
        self.rows.push(row);
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut out: Vec<SparseRow> = vec![Vec::new(); self.cols];
        for (r, row) in self.rows.iter().enumerate() {
            for &(c, v) in row {
                out[c].push((r, v));
            }
        }
        SparseMatrix { cols: self.rows.len(), rows: out }
    }

    /// Product `self * other` (used by tests to check `d∘d = 0`).
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, other.rows.len());
        let mut out = SparseMatrix::new(other.cols);
        for row in &self.rows {
            let mut acc: HashMap<usize, i64> = HashMap::new();
            for &(k, a) in row {
                for &(c, b) in &other.rows[k] {
                    *acc.entry(c).or_insert(0) += a * b;
                }
            }
            out.push_row(acc.into_iter().collect());
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    /// Rank over the rationals, exact.
    pub fn rank(&self) -> usize {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| (self.rows[i].len(), self.rows[i].first().map(|e| e.0)));
        let small = order.iter().map(|&i| self.rows[i].clone());
        if let Some(r) = eliminate::<i64>(small) {
            return r;
        }
        let big = order.iter().map(|&i| {
            self.rows[i]
                .iter()
                .map(|&(c, v)| (c, BigInt::from(v)))
                .collect::<Vec<_>>()
        });
        eliminate::<BigInt>(big).expect("BigInt elimination cannot overflow")
    }
}

trait Entry: Clone + Sized {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn gcd(&self, other: &Self) -> Self;
    fn exact_div(&self, d: &Self) -> Self;
    fn is_unit(&self) -> bool;
    /// `a*x - b*y`, or `None` on overflow.
    fn mul_sub(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self>;
}

impl Entry for i64 {
    fn zero() -> Self {
        0
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn exact_div(&self, d: &Self) -> Self {
        self / d
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn mul_sub(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        a.checked_mul(*x)?.checked_sub(b.checked_mul(*y)?)
    }
}

impl Entry for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn exact_div(&self, d: &Self) -> Self {
        self / d
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
    fn mul_sub(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        Some(a * x - b * y)
    }
}

/// Incremental echelon form keyed by leading column. Returns `None` if the
/// entry type overflowed.
fn eliminate<T: Entry>(rows: impl Iterator<Item = Vec<(usize, T)>>) -> Option<usize> {
    let mut pivots: HashMap<usize, Vec<(usize, T)>> = HashMap::new();
    let mut rank = 0;
    for mut row in rows {
        while let Some(&(lead, _)) = row.first() {
            match pivots.get(&lead) {
                Some(pivot) => row = reduce(&row, pivot)?,
                None => {
                    normalize(&mut row);
                    pivots.insert(lead, row);
                    rank += 1;
                    break;
                }
            }
        }
    }
    Some(rank)
}

/// Cancels the leading entry of `row` against `pivot` (same leading column).
fn reduce<T: Entry>(row: &[(usize, T)], pivot: &[(usize, T)]) -> Option<Vec<(usize, T)>> {
    let a = &pivot[0].1;
    let b = &row[0].1;
    let g = a.gcd(b);
    let ca = a.exact_div(&g);
    let cb = b.exact_div(&g);
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (1, 1);
    while i < row.len() || j < pivot.len() {
        let ci = row.get(i).map(|e| e.0).unwrap_or(usize::MAX);
        let cj = pivot.get(j).map(|e| e.0).unwrap_or(usize::MAX);
        let (col, val) = if ci < cj {
            let v = T::mul_sub(&ca, &row[i].1, &cb, &T::zero())?;
            i += 1;
            (ci, v)
        } else if cj < ci {
            let v = T::mul_sub(&ca, &T::zero(), &cb, &pivot[j].1)?;
            j += 1;
            (cj, v)
        } else {
            let v = T::mul_sub(&ca, &row[i].1, &cb, &pivot[j].1)?;
            i += 1;
            j += 1;
            (ci, v)
        };
        if !val.is_zero() {
            out.push((col, val));
        }
    }
    normalize(&mut out);
    Some(out)
}

/// Divides a row by the gcd of its entries.
fn normalize<T: Entry>(row: &mut [(usize, T)]) {
    let Some(first) = row.first() else { return };
    let mut g = first.1.gcd(&T::zero());
    for (_, v) in row.iter().skip(1) {
        if g.is_unit() {
            return;
        }
        g = g.gcd(v);
    }
    if g.is_unit() {
        return;
    }
    for (_, v) in row.iter_mut() {
        *v = v.exact_div(&g);
    }
}
