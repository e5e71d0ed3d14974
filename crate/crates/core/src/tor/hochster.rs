use rayon::prelude::*;

use crate::complex::{mask_to_face, reduced_homology, SimplicialComplex};

use super::BigradedBettiTable;

/// `β^{-i,2j} = Σ_{|I| = j} dim H̃_{j-i-1}(K_I)`, summed over every subset
/// `I ⊆ [m]` (the empty subset gives `β^{0,0} = 1`).
pub fn hochster_betti(k: &SimplicialComplex) -> BigradedBettiTable {
    let m = k.m();
    assert!(m < 32, "Hochster's formula enumerates all 2^m subsets");
    let contributions: Vec<(usize, Vec<usize>)> = (0u64..1 << m)
        .into_par_iter()
        .map(|mask| {
            let subset = mask_to_face(mask);
            (subset.len(), reduced_homology(&k.full_subcomplex(&subset)))
        })
        .collect();
    let mut table = BigradedBettiTable::for_complex(k);
    for (j, homology) in contributions {
        // homology[t] = dim H̃_{t-1}, and t - 1 = j - i - 1
        for (t, &b) in homology.iter().enumerate() {
            if b > 0 && t <= j {
                table.add(j - t, j, b as u64);
            }
        }
    }
    table
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::*;

    #[test]
    fn three_points() {
        let t = hochster_betti(&disjoint_points(3));
        assert_eq!(t.get(1, 2), 3);
        assert_eq!(t.get(0, 0), 1);
    }

    #[test]
    fn simplex_is_trivial() {
        for m in 1..6 {
            let t = hochster_betti(&simplex(m));
            assert_eq!(t.iter().collect::<Vec<_>>(), vec![(0, 0, 1)]);
        }
    }

    #[test]
    fn ghost_labels() {
        let t = hochster_betti(&SimplicialComplex::empty(3));
        assert_eq!(t.iter().collect::<Vec<_>>(), vec![(0, 0, 1), (1, 1, 3), (2, 2, 3), (3, 3, 1)]);
    }
}
