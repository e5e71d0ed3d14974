use std::collections::{HashMap, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::combinatorics::combinations;
use crate::complex::{face_mask, Face, SimplicialComplex};
use crate::linalg::SparseMatrix;

use super::BigradedBettiTable;

/// `u_I v_J` with `J ∈ K` and `I ∩ J = ∅`; bidegree `(-|I|, 2(|I| + |J|))`.
/// Ordering is lexicographic on `(I, J)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct KoszulMonomial {
    pub i: Face,
    pub j: Face,
}

impl KoszulMonomial {
    pub fn new(i: Face, j: Face) -> Self {
        KoszulMonomial { i, j }
    }

    /// `(q, p)` for bidegree `(-q, 2p)`.
    pub fn degree(&self) -> (usize, usize) {
        (self.i.len(), self.i.len() + self.j.len())
    }
}

/// The strand `A^{•,2p}(K)`: bases of every cochain group and the
/// differentials between them.
#[derive(Clone, Debug)]
pub struct KoszulStrand {
    pub p: usize,
    /// `bases[q]` spans `A^{-q,2p}`, sorted.
    pub bases: Vec<Vec<KoszulMonomial>>,
    /// `differentials[q - 1]` is `d: A^{-q,2p} -> A^{-q+1,2p}`, one row per
    /// source monomial, one column per target monomial.
    pub differentials: Vec<SparseMatrix>,
}

impl KoszulStrand {
    pub fn dim(&self, q: usize) -> usize {
        self.bases.get(q).map_or(0, Vec::len)
    }

    /// `d` leaving `A^{-q,2p}`; `None` for `q = 0` or `q > p`.
    pub fn differential(&self, q: usize) -> Option<&SparseMatrix> {
        q.checked_sub(1).and_then(|i| self.differentials.get(i))
    }

    /// `b_{-q,2p}` for every `q = 0..=p`.
    pub fn betti(&self) -> Vec<u64> {
        let ranks: Vec<usize> = self.differentials.iter().map(SparseMatrix::rank).collect();
        let rank_out = |q: usize| if q == 0 { 0 } else { ranks[q - 1] };
        let rank_in = |q: usize| ranks.get(q).copied().unwrap_or(0);
        (0..=self.p).map(|q| (self.dim(q) - rank_out(q) - rank_in(q)) as u64).collect()
    }
}

fn strand_basis(k: &SimplicialComplex, p: usize, q: usize) -> Vec<KoszulMonomial> {
    let mut out = Vec::new();
    if q > p {
        return out;
    }
    let all: Vec<usize> = (1..=k.m()).collect();
    for j in k.faces_of_size(p - q) {
        let rest: Vec<usize> = all.iter().copied().filter(|v| j.binary_search(v).is_err()).collect();
        for i in combinations(&rest, q) {
            out.push(KoszulMonomial::new(i, j.clone()));
        }
    }
    out.sort();
    out
}

/// `d(u_I v_J) = Σ_k (-1)^k u_{I∖i_k} v_{J∪i_k}` (0-based `k` along ascending
/// `I`), dropping terms with `J ∪ i_k ∉ K`.
pub fn koszul_differential(k: &SimplicialComplex, p: usize) -> KoszulStrand {
    let faces: HashSet<u64> = k.faces().map(|f| face_mask(f)).collect();
    let bases: Vec<Vec<KoszulMonomial>> = (0..=p).map(|q| strand_basis(k, p, q)).collect();
    let mut differentials = Vec::with_capacity(p);
    for q in 1..=p {
        let target: HashMap<(u64, u64), usize> = bases[q - 1]
            .iter()
            .enumerate()
            .map(|(idx, mono)| ((face_mask(&mono.i), face_mask(&mono.j)), idx))
            .collect();
        let mut d = SparseMatrix::with_capacity(bases[q - 1].len(), bases[q].len());
        for mono in &bases[q] {
            let im = face_mask(&mono.i);
            let jm = face_mask(&mono.j);
            let mut row = Vec::with_capacity(q);
            for (pos, &v) in mono.i.iter().enumerate() {
                let bit = 1u64 << (v - 1);
                let j2 = jm | bit;
                if !faces.contains(&j2) {
                    continue;
                }
                let col = target[&(im & !bit, j2)];
                row.push((col, if pos % 2 == 0 { 1 } else { -1 }));
            }
            d.push_row(row);
        }
        differentials.push(d);
    }
    KoszulStrand { p, bases, differentials }
}

/// Bigraded Betti numbers from the ranks of `A*(K)`, one strand `2p` at a
/// time.
pub fn bigraded_betti(k: &SimplicialComplex) -> BigradedBettiTable {
    assert!(k.m() <= 64, "at most 64 vertex labels are supported");
    let strands: Vec<(usize, Vec<u64>)> =
        (0..=k.m()).into_par_iter().map(|p| (p, koszul_differential(k, p).betti())).collect();
    let mut table = BigradedBettiTable::for_complex(k);
    for (p, betti) in strands {
        for (q, b) in betti.into_iter().enumerate() {
            table.set(q, p, b);
        }
    }
    table
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::binomial;
    use crate::complex::*;

    fn row_of(strand: &KoszulStrand, q: usize, i: &[usize], j: &[usize]) -> Vec<(KoszulMonomial, i64)> {
        let idx = strand.bases[q].iter().position(|mono| mono.i == i && mono.j == j).unwrap();
        strand.differential(q).unwrap().row(idx)
            .iter()
            .map(|&(c, v)| (strand.bases[q - 1][c].clone(), v))
            .collect()
    }

    #[test]
    fn small_differentials() {
        let k = disjoint_points(2);
        let s1 = koszul_differential(&k, 1);
        assert_eq!(row_of(&s1, 1, &[1], &[]), vec![(KoszulMonomial::new(vec![], vec![1]), 1)]);
        let ghost = SimplicialComplex::new(2, [[2]]).unwrap();
        let s1 = koszul_differential(&ghost, 1);
        assert!(row_of(&s1, 1, &[1], &[]).is_empty());

        let s2 = koszul_differential(&k, 2);
        let mut d = row_of(&s2, 2, &[1, 2], &[]);
        d.sort();
        // d(u1 u2) = u2 v1 - u1 v2
        assert_eq!(
            d,
            vec![
                (KoszulMonomial::new(vec![1], vec![2]), -1),
                (KoszulMonomial::new(vec![2], vec![1]), 1),
            ]
        );
        // d(u2 v1) = v1 v2 = 0 since {1,2} is not an edge
        assert!(row_of(&s2, 1, &[2], &[1]).is_empty());
    }

    #[test]
    fn d_squared_is_zero() {
        for k in [torus_9_vertex(), polygon(6).unwrap(), disjoint_points(4)] {
            for p in 0..=k.m() {
                let s = koszul_differential(&k, p);
                for q in 2..=p {
                    let dd = s.differential(q).unwrap().mul(s.differential(q - 1).unwrap());
                    assert!(dd.is_zero());
                }
            }
        }
    }

    #[test]
    fn strand_dimensions() {
        let k = cyclic_sphere(4, 7).unwrap();
        let f = k.f_vector();
        let m = k.m() as i64;
        for p in 0..=k.m() {
            let s = koszul_differential(&k, p);
            for q in 0..=p {
                let fj = if p == q { 1 } else { f.get(p - q - 1).copied().unwrap_or(0) as i64 };
                let expected = fj * binomial(m - p as i64 + q as i64, q as i64);
                assert_eq!(s.dim(q) as i64, expected);
            }
        }
    }

    #[test]
    fn pentagon_and_boundaries() {
        let t = bigraded_betti(&polygon(5).unwrap());
        assert_eq!(t.total_betti(), vec![1, 0, 0, 5, 5, 0, 0, 1]);
        assert_eq!(t.get(1, 2), 5);
        for m in 2..7 {
            let t = bigraded_betti(&boundary_simplex(m - 1));
            assert_eq!(t.iter().collect::<Vec<_>>(), vec![(0, 0, 1), (1, m, 1)]);
        }
    }

    #[test]
    fn empty_complex() {
        let t = bigraded_betti(&SimplicialComplex::empty(0));
        assert_eq!(t.iter().collect::<Vec<_>>(), vec![(0, 0, 1)]);
        let t = bigraded_betti(&SimplicialComplex::empty(3));
        assert_eq!(t.iter().collect::<Vec<_>>(), vec![(0, 0, 1), (1, 1, 3), (2, 2, 3), (3, 3, 1)]);
    }
}
