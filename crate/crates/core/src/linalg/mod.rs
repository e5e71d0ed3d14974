//! Exact integer and rational linear algebra.
//!
//! Nothing in here touches floating point. Dense matrices carry `BigInt`
//! entries; the large, sparse strand matrices go through [`SparseMatrix`].

mod rational;
mod smith;
mod sparse;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use rational::{nullspace, rref, RationalMatrix};
pub use sparse::{SparseMatrix, SparseRow};

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(IntegerMatrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows of machine integers. All rows must have the
    /// same length.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::Dimension(format!(
                    "row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            entries.extend(r.iter().map(|&v| BigInt::from(v)));
        }
        Ok(IntegerMatrix { rows: rows.len(), cols, entries })
    }

    pub fn from_columns<C: AsRef<[i64]>>(rows: usize, columns: &[C]) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            let c = c.as_ref();
            if c.len() != rows {
                return Err(Error::Dimension(format!(
                    "column {j} has {} entries, expected {rows}",
                    c.len()
                )));
            }
            for (i, &v) in c.iter().enumerate() {
                m[(i, j)] = BigInt::from(v);
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    /// Entries as `i64` rows; `None` if some entry does not fit.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|v| v.to_i64()).collect())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntegerMatrix) -> Result<IntegerMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    /// Submatrix on the given row and column indices, in the order given.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> IntegerMatrix {
        let mut out = Self::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out[(a, b)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn select_columns(&self, cols: &[usize]) -> IntegerMatrix {
        let rows: Vec<usize> = (0..self.rows).collect();
        self.select(&rows, cols)
    }

    /// The matrix with the listed rows removed.
    pub fn delete_rows(&self, drop: &[usize]) -> IntegerMatrix {
        let keep: Vec<usize> = (0..self.rows).filter(|i| !drop.contains(i)).collect();
        let cols: Vec<usize> = (0..self.cols).collect();
        self.select(&keep, &cols)
    }

    pub fn to_sparse(&self) -> Option<SparseMatrix> {
        let mut s = SparseMatrix::with_capacity(self.cols, self.rows);
        for i in 0..self.rows {
            let mut row = Vec::new();
            for (j, v) in self.row(i).iter().enumerate() {
                if !v.is_zero() {
                    row.push((j, v.to_i64().filter(|x| x.unsigned_abs() < 1 << 62)?));
                }
            }
            s.push_row(row);
        }
        Some(s)
    }

    pub fn to_rational(&self) -> RationalMatrix {
        let rows = (0..self.rows)
            .map(|i| self.row(i).iter().map(|v| BigRational::from_integer(v.clone())).collect())
            .collect();
        RationalMatrix::from_rows(self.cols, rows)
    }

    /// Rank over the rationals.
    pub fn rank_rational(&self) -> usize {
        match self.to_sparse() {
            Some(s) => s.rank(),
            None => {
                let mut r = self.to_rational();
                rref(&mut r).len()
            }
        }
    }

    /// Exact determinant by Bareiss fraction-free elimination.
    pub fn det(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::Dimension(format!(
                "determinant of a non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[(i, k)].is_zero()) else {
                    return Ok(BigInt::zero());
                };
                a.swap_rows(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = v / &prev;
                }
            }
            prev = a[(k, k)].clone();
        }
        Ok(sign * &a[(n - 1, n - 1)])
    }

    /// Nonzero invariant factors `d1 | d2 | ...` of the Smith normal form.
    pub fn smith_invariants(&self) -> Vec<BigInt> {
        smith::invariant_factors(self)
    }

    /// Exact inverse of a matrix with determinant ±1.
    pub fn unimodular_inverse(&self) -> Result<IntegerMatrix> {
        let det = self.det()?;
        if !det.abs().is_one() {
            return Err(Error::NotUnimodular(det));
        }
        let n = self.rows;
        let mut aug = RationalMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = BigRational::from_integer(self[(i, j)].clone());
            }
            aug[(i, n + i)] = BigRational::one();
        }
        rref(&mut aug);
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let v = &aug[(i, n + j)];
                debug_assert!(v.is_integer());
                inv[(i, j)] = v.to_integer();
            }
        }
        Ok(inv)
    }

    /// A basis of the integer kernel `{x in Z^cols : A x = 0}` as the columns
    /// of the returned matrix. The basis spans a direct summand of `Z^cols`.
    pub fn integer_kernel(&self) -> IntegerMatrix {
        let (rows, cols) = (self.rows, self.cols);
        let mut a = self.clone();
        let mut u = Self::identity(cols);
        let mut next = 0;
        for i in 0..rows {
            if next == cols {
                break;
            }
            // gcd-reduce row i across columns next.. into column `next`
            loop {
                let nonzero: Vec<usize> = (next..cols).filter(|&j| !a[(i, j)].is_zero()).collect();
                if nonzero.is_empty() {
                    break;
                }
                let p = *nonzero.iter().min_by_key(|&&j| a[(i, j)].abs()).unwrap();
                a.swap_cols(next, p);
                u.swap_cols(next, p);
                let mut done = true;
                for j in next + 1..cols {
                    if a[(i, j)].is_zero() {
                        continue;
                    }
                    let q = &a[(i, j)] / &a[(i, next)];
                    a.add_col_multiple(j, next, &-&q);
                    u.add_col_multiple(j, next, &-&q);
                    if !a[(i, j)].is_zero() {
                        done = false;
                    }
                }
                if done {
                    next += 1;
                    break;
                }
            }
        }
        let kernel_cols: Vec<usize> = (next..cols).collect();
        u.select_columns(&kernel_cols)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// column `dst` += factor * column `src`
    fn add_col_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        for i in 0..self.rows {
            let v = &self[(i, src)] * factor;
            self[(i, dst)] += v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntegerMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntegerMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(|v| v.to_string()).collect())
            .collect();
        write!(f, "IntegerMatrix{rows:?}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> IntegerMatrix {
        IntegerMatrix::from_rows(rows).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(IntegerMatrix::zeros(0, 0).rank_rational(), 0);
        assert_eq!(IntegerMatrix::identity(2).rank_rational(), 2);
        // augmented boundary of the triangle boundary in degree 0: three
        // vertices each mapping to the empty simplex
        assert_eq!(m(&[&[1], &[1], &[1]]).rank_rational(), 1);
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(m(&[&[1, 0], &[0, 1]]).det().unwrap(), BigInt::from(1));
        assert_eq!(m(&[&[-1, 1], &[1, 0]]).det().unwrap(), BigInt::from(-1));
        assert_eq!(m(&[&[0, 1], &[1, -1]]).det().unwrap(), BigInt::from(-1));
        assert_eq!(m(&[&[0, 2, 1], &[3, 1, 0], &[1, 1, 1]]).det().unwrap(), BigInt::from(-4));
        assert!(matches!(m(&[&[1, 2, 3]]).det(), Err(Error::Dimension(_))));
    }

    #[test]
    fn smith_examples() {
        assert_eq!(m(&[&[1], &[1], &[1], &[1]]).smith_invariants(), ints(&[1]));
        assert_eq!(m(&[&[2, 0], &[0, 3]]).smith_invariants(), ints(&[1, 6]));
        assert!(IntegerMatrix::zeros(3, 2).smith_invariants().is_empty());
        assert_eq!(m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]).smith_invariants(), ints(&[2, 6, 12]));
    }

    #[test]
    fn unimodular_inverse_examples() {
        assert_eq!(IntegerMatrix::identity(3).unimodular_inverse().unwrap(), IntegerMatrix::identity(3));
        let lam = m(&[&[-1, 1], &[1, 0]]);
        let inv = lam.unimodular_inverse().unwrap();
        assert_eq!(inv, m(&[&[0, 1], &[1, 1]]));
        assert_eq!(lam.mul(&inv).unwrap(), IntegerMatrix::identity(2));
        assert!(matches!(m(&[&[2, 0], &[0, 1]]).unimodular_inverse(), Err(Error::NotUnimodular(_))));
    }

    #[test]
    fn integer_kernel_is_saturated() {
        let lam = m(&[&[1, 0, -1], &[0, 1, -1]]);
        let k = lam.integer_kernel();
        assert_eq!(k.cols(), 1);
        assert!(lam.mul(&k).unwrap().entries.iter().all(Zero::is_zero));
        assert_eq!(k.smith_invariants(), ints(&[1]));

        let a = m(&[&[2, 4, 6]]);
        let k = a.integer_kernel();
        assert_eq!(k.cols(), 2);
        assert_eq!(k.smith_invariants(), ints(&[1, 1]));
    }

    fn arb_matrix(max: usize) -> impl Strategy<Value = IntegerMatrix> {
        (1..=max, 1..=max).prop_flat_map(|(r, c)| {
            prop::collection::vec(-3i64..=3, r * c).prop_map(move |v| {
                IntegerMatrix::new(r, c, v.into_iter().map(BigInt::from).collect()).unwrap()
            })
        })
    }

    fn arb_unimodular(n: usize) -> impl Strategy<Value = IntegerMatrix> {
        // product of elementary matrices
        prop::collection::vec((0..n, 0..n, -2i64..=2, any::<bool>()), 0..12).prop_map(move |ops| {
            let mut a = IntegerMatrix::identity(n);
            for (i, j, k, neg) in ops {
                if i != j {
                    let f = BigInt::from(k);
                    for c in 0..n {
                        let v = &a[(j, c)] * &f;
                        a[(i, c)] += v;
                    }
                }
                if neg {
                    for c in 0..n {
                        a[(i, c)] = -a[(i, c)].clone();
                    }
                }
            }
            a
        })
    }

    proptest! {
        #[test]
        fn inverse_is_exact(a in (1usize..5).prop_flat_map(arb_unimodular)) {
            let inv = a.unimodular_inverse().unwrap();
            prop_assert_eq!(a.mul(&inv).unwrap(), IntegerMatrix::identity(a.rows()));
        }

        #[test]
        fn rank_matches_smith_length(a in arb_matrix(5)) {
            prop_assert_eq!(a.rank_rational(), a.smith_invariants().len());
        }

        #[test]
        fn rank_is_permutation_and_transpose_invariant(a in arb_matrix(5), seed in any::<u64>()) {
            let mut rows: Vec<usize> = (0..a.rows()).collect();
            let mut cols: Vec<usize> = (0..a.cols()).collect();
            rows.rotate_left((seed as usize) % a.rows());
            cols.reverse();
            cols.rotate_left((seed as usize >> 8) % a.cols());
            let p = a.select(&rows, &cols);
            prop_assert_eq!(p.rank_rational(), a.rank_rational());
            prop_assert_eq!(a.transpose().rank_rational(), a.rank_rational());
        }

        #[test]
        fn bareiss_matches_rational_elimination(a in (1usize..5).prop_flat_map(arb_matrix_sq)) {
            let d = a.det().unwrap();
            let mut r = a.to_rational();
            let full = rref(&mut r).len() == a.rows();
            prop_assert_eq!(full, !d.is_zero());
        }
    }

    fn arb_matrix_sq(n: usize) -> impl Strategy<Value = IntegerMatrix> {
        prop::collection::vec(-4i64..=4, n * n).prop_map(move |v| {
            IntegerMatrix::new(n, n, v.into_iter().map(BigInt::from).collect()).unwrap()
        })
    }
}
