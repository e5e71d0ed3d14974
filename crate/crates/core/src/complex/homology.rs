use std::collections::HashMap;

use crate::linalg::SparseMatrix;

use super::{Face, SimplicialComplex};

/// Augmented boundary `∂: C_k → C_{k-1}` from faces with `size` vertices to
/// faces with `size - 1` vertices (`size = 0` gives the zero map out of the
/// empty simplex). Rows are source faces, columns target faces, both in
/// lexicographic order.
pub fn boundary_matrix(k: &SimplicialComplex, size: usize) -> SparseMatrix {
    let sources = k.faces_of_size(size);
    if size == 0 {
        let mut m = SparseMatrix::new(0);
        for _ in sources {
            m.push_row(Vec::new());
        }
        return m;
    }
    let targets = k.faces_of_size(size - 1);
    let index: HashMap<&Face, usize> = targets.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let mut m = SparseMatrix::with_capacity(targets.len(), sources.len());
    for f in sources {
        let row = (0..f.len())
            .map(|pos| {
                let mut g = f.clone();
                g.remove(pos);
                (index[&g], if pos % 2 == 0 { 1 } else { -1 })
            })
            .collect();
        m.push_row(row);
    }
    m
}

/// Ranks of reduced homology over the rationals: element `i` of the result is
/// `dim H̃_{i-1}(K)`, from `H̃_{-1}` up to `H̃_{dim K}`.
pub fn reduced_homology(k: &SimplicialComplex) -> Vec<usize> {
    let top = k.max_face_size();
    // rank of ∂ out of faces of each size
    let ranks: Vec<usize> = (0..=top + 1)
        .map(|s| if s == 0 || s > top { 0 } else { boundary_matrix(k, s).rank() })
        .collect();
    (0..=top)
        .map(|s| k.faces_of_size(s).len() - ranks[s] - ranks[s + 1])
        .collect()
}

#[cfg(test)]
mod tests {
    use super::super::*;
    use super::*;

    #[test]
    fn circle() {
        assert_eq!(reduced_homology(&boundary_simplex(2)), vec![0, 0, 1]);
    }

    #[test]
    fn three_points() {
        assert_eq!(reduced_homology(&disjoint_points(3)), vec![0, 2]);
    }

    #[test]
    fn empty_complex_has_minus_one_class() {
        assert_eq!(reduced_homology(&SimplicialComplex::empty(3)), vec![1]);
    }

    #[test]
    fn torus() {
        assert_eq!(reduced_homology(&torus_9_vertex()), vec![0, 0, 2, 1]);
    }

    #[test]
    fn simplex_is_acyclic() {
        assert!(reduced_homology(&simplex(5)).iter().all(|&r| r == 0));
    }

    #[test]
    fn boundary_squares_to_zero() {
        let k = torus_9_vertex();
        for s in 2..=3 {
            assert!(boundary_matrix(&k, s).mul(&boundary_matrix(&k, s - 1)).is_zero());
        }
    }

    #[test]
    fn euler_characteristic_matches_homology() {
        for k in [torus_9_vertex(), polygon(6).unwrap(), disjoint_points(4), cyclic_sphere(4, 8).unwrap()] {
            let h = reduced_homology(&k);
            let alt: i64 = h.iter().enumerate().map(|(i, &r)| if i % 2 == 1 { r as i64 } else { -(r as i64) }).sum();
            assert_eq!(k.euler_characteristic(), alt + 1);
        }
    }

    #[test]
    fn join_of_sphere_boundaries_is_a_sphere() {
        for (a, b) in [(1, 1), (1, 2), (2, 2), (2, 3)] {
            let j = boundary_simplex(a).join(&boundary_simplex(b));
            let h = reduced_homology(&j);
            let nonzero: Vec<usize> = h.iter().enumerate().filter(|(_, &r)| r != 0).map(|(i, _)| i).collect();
            // top dimension a + b - 1 lives at index a + b
            assert_eq!(nonzero, vec![a + b]);
            assert_eq!(h[a + b], 1);
        }
    }
}
