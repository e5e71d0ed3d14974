//! Coordinate and diagonal subspace arrangements and the cohomology of their
//! complements.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::{face_mask, is_subset, mask_to_face, Face, SimplicialComplex};
use crate::error::{Error, Result};
use crate::linalg::SparseMatrix;
use crate::tor::{bigraded_betti, real_regraded_betti};

/// The union of coordinate subspaces `L_I = {z_i = 0 for i ∈ I}` over the
/// generators `I`, stored as an antichain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoordinateArrangement {
    pub m: usize,
    pub generators: Vec<Face>,
}

impl CoordinateArrangement {
    /// Sorts generators and drops any that contain another one (their
    /// subspaces are already in the union).
    pub fn new(m: usize, generators: Vec<Vec<usize>>) -> Result<Self> {
        let mut gens: Vec<Face> = Vec::with_capacity(generators.len());
        for mut g in generators {
            g.sort_unstable();
            g.dedup();
            if g.is_empty() {
                return Err(Error::InvalidParameters("L_∅ is the whole space".into()));
            }
            if let Some(&v) = g.iter().find(|&&v| v == 0 || v > m) {
                return Err(Error::VertexOutOfRange { vertex: v, m });
            }
            gens.push(g);
        }
        gens.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        gens.dedup();
        let mut minimal: Vec<Face> = Vec::new();
        for g in gens {
            if !minimal.iter().any(|h| is_subset(h, &g)) {
                minimal.push(g);
            }
        }
        Ok(CoordinateArrangement { m, generators: minimal })
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: CoordinateArrangement = serde_json::from_str(s)?;
        Self::new(raw.m, raw.generators)
    }
}

/// `K(A) = {I : L_I ⊄ A}`; over an infinite field `L_I` lies in the union
/// iff it lies in one member, so `I ∈ K` iff no generator is contained in `I`.
pub fn complex_from_arrangement(a: &CoordinateArrangement) -> SimplicialComplex {
    let gens: Vec<u64> = a.generators.iter().map(|g| face_mask(g)).collect();
    let allowed = |mask: u64| gens.iter().all(|&g| g & mask != g);
    let mut faces: Vec<u64> = vec![0];
    let mut frontier: Vec<u64> = vec![0];
    while let Some(f) = frontier.pop() {
        let start = 64 - f.leading_zeros() as usize;
        for v in start..a.m {
            let g = f | 1 << v;
            if allowed(g) {
                faces.push(g);
                frontier.push(g);
            }
        }
    }
    SimplicialComplex::new(a.m, faces.into_iter().map(mask_to_face)).expect("labels in range")
}

/// Generators are the minimal non-faces of `K`.
pub fn arrangement_from_complex(k: &SimplicialComplex) -> CoordinateArrangement {
    CoordinateArrangement { m: k.m(), generators: k.minimal_non_faces() }
}

/// `dim H^p(U(K)) = Σ_{2j - i = p} β^{-i,2j}`.
pub fn coord_complement_betti(k: &SimplicialComplex) -> Vec<u64> {
    bigraded_betti(k).total_betti()
}

/// `dim H^p(U_R(K)) = Σ_{j - i = p} β^{-i,2j}`.
pub fn real_coord_complement_betti(k: &SimplicialComplex) -> Vec<u64> {
    real_regraded_betti(&bigraded_betti(k))
}

/// Ordered set partitions `(J_1, ..., J_p)` of `[m]` into nonempty faces,
/// grouped by `p`, with the merge differential.
#[derive(Clone, Debug)]
pub struct DiagonalStrandComplex {
    pub m: usize,
    /// `bases[p]` lists the tuples with `p` blocks (as bitmasks), sorted.
    pub bases: Vec<Vec<Vec<u64>>>,
}

impl DiagonalStrandComplex {
    pub fn new(k: &SimplicialComplex) -> Result<Self> {
        let m = k.m();
        if m > 12 {
            return Err(Error::TooManyVertices(m));
        }
        let faces: Vec<u64> = k.faces().filter(|f| !f.is_empty()).map(|f| face_mask(f)).collect();
        let full: u64 = if m == 0 { 0 } else { (1u64 << m) - 1 };
        let mut bases: Vec<Vec<Vec<u64>>> = vec![Vec::new(); m + 1];
        let mut stack: Vec<(u64, Vec<u64>)> = vec![(0, Vec::new())];
        while let Some((used, tuple)) = stack.pop() {
            if used == full {
                bases[tuple.len()].push(tuple);
                continue;
            }
            for &f in &faces {
                if f & used == 0 {
                    let mut t = tuple.clone();
                    t.push(f);
                    stack.push((used | f, t));
                }
            }
        }
        for b in &mut bases {
            b.sort();
        }
        Ok(DiagonalStrandComplex { m, bases })
    }

    pub fn dim(&self, p: usize) -> usize {
        self.bases.get(p).map_or(0, Vec::len)
    }

    /// `d(J_1, ..., J_p) = Σ_s (-1)^s (..., J_s ∪ J_{s+1}, ...)` over
    /// `1 ≤ s < p` with `J_s ∪ J_{s+1} ∈ K`.
    pub fn differential(&self, k: &SimplicialComplex, p: usize) -> SparseMatrix {
        let target: HashMap<&Vec<u64>, usize> =
            self.bases[p - 1].iter().enumerate().map(|(i, t)| (t, i)).collect();
        let faces: HashSet<u64> = k.faces().map(|f| face_mask(f)).collect();
        let mut d = SparseMatrix::with_capacity(self.dim(p - 1), self.dim(p));
        for t in &self.bases[p] {
            let mut row = Vec::new();
            for s in 1..p {
                let merged = t[s - 1] | t[s];
                if !faces.contains(&merged) {
                    continue;
                }
                let mut u = t[..s - 1].to_vec();
                u.push(merged);
                u.extend_from_slice(&t[s + 1..]);
                row.push((target[&u], if s % 2 == 0 { 1 } else { -1 }));
            }
            d.push_row(row);
        }
        d
    }

    /// Homology rank at every `p = 0..=m`.
    pub fn homology(&self, k: &SimplicialComplex) -> Vec<u64> {
        let m = self.m;
        let ranks: Vec<usize> = (0..=m)
            .into_par_iter()
            .map(|p| if p == 0 { 0 } else { self.differential(k, p).rank() })
            .collect();
        (0..=m)
            .map(|p| {
                let inc = if p < m { ranks[p + 1] } else { 0 };
                (self.dim(p) - ranks[p] - inc) as u64
            })
            .collect()
    }

    /// `Σ_p (-1)^{m-p} dim C_p`
    pub fn euler_characteristic(&self) -> i64 {
        (0..=self.m)
            .map(|p| if (self.m - p) % 2 == 0 { self.dim(p) as i64 } else { -(self.dim(p) as i64) })
            .sum()
    }
}

/// `dim H^i(M(K))` for `i = 0..m`, read off the strand at `p = m - i`.
pub fn diagonal_complement_betti(k: &SimplicialComplex) -> Result<Vec<u64>> {
    let strand = DiagonalStrandComplex::new(k)?;
    let h = strand.homology(k);
    let m = k.m();
    Ok((0..m).map(|i| h[m - i]).collect())
}

/// Connected components of `R^m` minus the hyperplanes `y_i = y_j` for the
/// missing edges `{i, j}` of `K`, counted as distinct sign patterns over the
/// grid `{0..m-1}^m` (every region of such an arrangement contains a grid
/// point with distinct coordinates). Lower-dimensional subspaces do not
/// disconnect, so this equals `dim H^0(M(K))` when every label is a vertex.
pub fn diagonal_region_count(k: &SimplicialComplex) -> usize {
    let m = k.m();
    let hyperplanes: Vec<(usize, usize)> = (0..m)
        .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
        .filter(|&(i, j)| !k.contains(&[i + 1, j + 1]))
        .collect();
    let total = (m as u64).pow(m as u32);
    let mut regions: HashSet<Vec<bool>> = HashSet::new();
    'points: for code in 0..total {
        let mut y = vec![0u64; m];
        let mut c = code;
        for x in y.iter_mut() {
            *x = c % m as u64;
            c /= m as u64;
        }
        let mut signs = Vec::with_capacity(hyperplanes.len());
        for &(i, j) in &hyperplanes {
            if y[i] == y[j] {
                continue 'points;
            }
            signs.push(y[i] < y[j]);
        }
        regions.insert(signs);
    }
    regions.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::*;

    #[test]
    fn arrangement_complex_bijection() {
        for m in 2..6 {
            let pairs: Vec<Vec<usize>> =
                (1..=m).flat_map(|i| (i + 1..=m).map(move |j| vec![i, j])).collect();
            let a = CoordinateArrangement::new(m, pairs).unwrap();
            assert_eq!(complex_from_arrangement(&a), disjoint_points(m));
            let origin = CoordinateArrangement::new(m, vec![(1..=m).collect()]).unwrap();
            assert_eq!(complex_from_arrangement(&origin), boundary_simplex(m - 1));
            let none = CoordinateArrangement::new(m, vec![]).unwrap();
            assert_eq!(complex_from_arrangement(&none), simplex(m));
            assert!(arrangement_from_complex(&simplex(m)).generators.is_empty());
        }
        let p = polygon(5).unwrap();
        let a = arrangement_from_complex(&p);
        assert_eq!(a.generators.len(), 5);
        assert_eq!(complex_from_arrangement(&a), p);
    }

    #[test]
    fn antichain_normalisation() {
        let a = CoordinateArrangement::new(4, vec![vec![1, 2, 3], vec![2, 1], vec![4]]).unwrap();
        assert_eq!(a.generators, vec![vec![4], vec![1, 2]]);
        assert!(CoordinateArrangement::new(3, vec![vec![]]).is_err());
        assert!(CoordinateArrangement::new(3, vec![vec![4]]).is_err());
    }

    #[test]
    fn coordinate_complements() {
        assert_eq!(coord_complement_betti(&disjoint_points(3)), vec![1, 0, 0, 3, 2]);
        assert_eq!(real_coord_complement_betti(&simplex(4)), vec![1, 0, 0, 0, 0]);
        let r = real_coord_complement_betti(&boundary_simplex(3));
        assert_eq!(r, vec![1, 0, 0, 1, 0]);
    }

    #[test]
    fn diagonal_complements() {
        assert_eq!(diagonal_complement_betti(&simplex(3)).unwrap(), vec![1, 0, 0]);
        assert_eq!(diagonal_complement_betti(&disjoint_points(2)).unwrap(), vec![2, 0]);
        assert_eq!(diagonal_complement_betti(&disjoint_points(3)).unwrap(), vec![6, 0, 0]);
        let ghost = SimplicialComplex::new(2, [[1]]).unwrap();
        assert_eq!(diagonal_complement_betti(&ghost).unwrap(), vec![0, 0]);
    }

    #[test]
    fn diagonal_euler_characteristic() {
        for k in [polygon(5).unwrap(), boundary_simplex(3), disjoint_points(4), SimplicialComplex::new(4, [[1, 2], [2, 3], [3, 4]]).unwrap()] {
            let s = DiagonalStrandComplex::new(&k).unwrap();
            let betti = diagonal_complement_betti(&k).unwrap();
            let alt: i64 = betti.iter().enumerate().map(|(i, &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) }).sum();
            assert_eq!(alt, s.euler_characteristic());
            let sq = (1..s.m).all(|p| s.differential(&k, p + 1).mul(&s.differential(&k, p)).is_zero());
            assert!(sq);
        }
    }

    #[test]
    fn region_counts() {
        assert_eq!(diagonal_region_count(&simplex(3)), 1);
        assert_eq!(diagonal_region_count(&disjoint_points(2)), 2);
        assert_eq!(diagonal_region_count(&disjoint_points(3)), 6);
        // path 1-2-3: only y1 = y3 removed
        let path = SimplicialComplex::new(3, [[1, 2], [2, 3]]).unwrap();
        assert_eq!(diagonal_region_count(&path), 2);
        assert_eq!(diagonal_complement_betti(&path).unwrap()[0], 2);
    }
}
