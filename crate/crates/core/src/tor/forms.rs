use std::collections::HashMap;

use rayon::prelude::*;

use crate::combinatorics::combinations;
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::linalg::{IntegerMatrix, SparseMatrix};

use super::BigradedBettiTable;

/// Exponent vectors of degree `d` whose support is a face of `K`, sorted.
pub(crate) fn face_ring_monomials(k: &SimplicialComplex, d: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    if d == 0 {
        out.push(vec![0; k.m()]);
        return out;
    }
    for size in 1..=d.min(k.max_face_size()) {
        for face in k.faces_of_size(size) {
            // compositions of d into `size` positive parts
            for cuts in combinations(&(1..d).collect::<Vec<_>>(), size - 1) {
                let mut e = vec![0u32; k.m()];
                let mut prev = 0;
                for (slot, &c) in cuts.iter().chain(std::iter::once(&d)).enumerate() {
                    e[face[slot] - 1] = (c - prev) as u32;
                    prev = c;
                }
                out.push(e);
            }
        }
    }
    out.sort();
    out
}

/// The strand `p` of `Λ[u_1..u_k] ⊗ k(K)` with `du_i = Σ_j L_ij v_j`.
pub struct FormsStrand {
    pub p: usize,
    /// `dims[q]` = dimension in bidegree `(-q, 2p)`.
    pub dims: Vec<usize>,
    /// `differentials[q - 1]`: from `(-q, 2p)` to `(-q + 1, 2p)`.
    pub differentials: Vec<SparseMatrix>,
}

impl FormsStrand {
    pub fn new(k: &SimplicialComplex, l: &[Vec<i64>], p: usize) -> Self {
        let rows = l.len();
        let support: Vec<Vec<(usize, i64)>> = l
            .iter()
            .map(|r| r.iter().enumerate().filter(|(_, &x)| x != 0).map(|(j, &x)| (j, x)).collect())
            .collect();
        let all_rows: Vec<usize> = (0..rows).collect();
        let mut exteriors: Vec<Vec<Vec<usize>>> = Vec::new();
        let mut monomials: Vec<Vec<Vec<u32>>> = Vec::new();
        let mut dims = Vec::new();
        for q in 0..=p.min(rows) {
            let ext = combinations(&all_rows, q);
            let mons = face_ring_monomials(k, p - q);
            dims.push(ext.len() * mons.len());
            exteriors.push(ext);
            monomials.push(mons);
        }
        let mut differentials = Vec::new();
        for q in 1..dims.len() {
            let ext_index: HashMap<&Vec<usize>, usize> =
                exteriors[q - 1].iter().enumerate().map(|(i, e)| (e, i)).collect();
            let mon_index: HashMap<&Vec<u32>, usize> =
                monomials[q - 1].iter().enumerate().map(|(i, e)| (e, i)).collect();
            let width = monomials[q - 1].len();
            let mut d = SparseMatrix::with_capacity(dims[q - 1], dims[q]);
            for ext in &exteriors[q] {
                for mon in &monomials[q] {
                    let supp: Vec<usize> = (0..k.m()).filter(|&j| mon[j] > 0).map(|j| j + 1).collect();
                    let mut row = Vec::new();
                    for (pos, &i) in ext.iter().enumerate() {
                        let sign = if pos % 2 == 0 { 1 } else { -1 };
                        let mut rest = ext.clone();
                        rest.remove(pos);
                        let e_idx = ext_index[&rest];
                        for &(j, c) in &support[i] {
                            if mon[j] == 0 {
                                let mut f = supp.clone();
                                let at = f.binary_search(&(j + 1)).unwrap_err();
                                f.insert(at, j + 1);
                                if !k.contains(&f) {
                                    continue;
                                }
                            }
                            let mut target = mon.clone();
                            target[j] += 1;
                            let col = e_idx * width + mon_index[&target];
                            row.push((col, sign * c));
                        }
                    }
                    d.push_row(row);
                }
            }
            differentials.push(d);
        }
        FormsStrand { p, dims, differentials }
    }

    pub fn betti(&self) -> Vec<u64> {
        let ranks: Vec<usize> = self.differentials.iter().map(SparseMatrix::rank).collect();
        (0..self.dims.len())
            .map(|q| {
                let out = if q == 0 { 0 } else { ranks[q - 1] };
                let inc = ranks.get(q).copied().unwrap_or(0);
                (self.dims[q] - out - inc) as u64
            })
            .collect()
    }
}

/// Bigraded cohomology of `Λ[u_1..u_k] ⊗ k(K)`, `du_i = Σ_j L_ij v_j`, for
/// strands `p ≤ max_p` (the complex itself is infinite; the default
/// truncation is `p ≤ m`).
pub fn tor_with_forms(k: &SimplicialComplex, l: &IntegerMatrix, max_p: Option<usize>) -> Result<BigradedBettiTable> {
    if l.cols() != k.m() {
        return Err(Error::Dimension(format!("{} columns for {} vertices", l.cols(), k.m())));
    }
    let rows = l
        .to_i64_rows()
        .ok_or_else(|| Error::InvalidParameters("matrix entries must fit in 64 bits".into()))?;
    let max_p = max_p.unwrap_or(k.m());
    let strands: Vec<(usize, Vec<u64>)> = (0..=max_p)
        .into_par_iter()
        .map(|p| (p, FormsStrand::new(k, &rows, p).betti()))
        .collect();
    let mut table = BigradedBettiTable::for_complex(k);
    for (p, betti) in strands {
        for (q, b) in betti.into_iter().enumerate() {
            table.set(q, p, b);
        }
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::*;
    use crate::tor::bigraded_betti;

    #[test]
    fn monomial_counts() {
        // k[v1,v2]/(v1 v2) has two monomials in every positive degree
        let k = disjoint_points(2);
        for d in 1..5 {
            assert_eq!(face_ring_monomials(&k, d).len(), 2);
        }
        // the polynomial ring in 3 variables
        assert_eq!(face_ring_monomials(&simplex(3), 4).len(), 15);
    }

    #[test]
    fn identity_matches_koszul() {
        for k in [polygon(5).unwrap(), disjoint_points(3), boundary_simplex(3), SimplicialComplex::new(4, [[1, 2], [2, 3], [3, 4]]).unwrap()] {
            let id = IntegerMatrix::identity(k.m());
            assert_eq!(tor_with_forms(&k, &id, None).unwrap(), bigraded_betti(&k));
        }
    }

    #[test]
    fn two_points_diagonal_form() {
        let l = IntegerMatrix::from_rows(&[[1, 1]]).unwrap();
        let t = tor_with_forms(&disjoint_points(2), &l, Some(4)).unwrap();
        assert_eq!(t.iter().collect::<Vec<_>>(), vec![(0, 0, 1), (0, 1, 1)]);
    }

    #[test]
    fn wrong_width_rejected() {
        let l = IntegerMatrix::from_rows(&[[1, 1, 1]]).unwrap();
        assert!(tor_with_forms(&disjoint_points(2), &l, None).is_err());
    }
}
