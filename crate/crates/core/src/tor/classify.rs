use serde::Serialize;

use crate::complex::{reduced_homology, Face, SimplicialComplex};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CmGorensteinVerdict {
    pub cohen_macaulay: bool,
    /// First face (by size, then lexicographically) whose link fails Reisner's
    /// criterion.
    pub cm_failure: Option<Face>,
    pub gorenstein_star: bool,
    /// First face whose link lacks the homology of a sphere of its dimension.
    pub gorenstein_failure: Option<Face>,
}

/// Reisner's criterion (`H̃_i(lk I) = 0` for `i < dim lk I`) and the
/// Gorenstein* criterion (every link has the homology of a sphere of its
/// dimension), over the rationals, checked on every face including `∅`.
pub fn cm_gorenstein_classify(k: &SimplicialComplex) -> CmGorensteinVerdict {
    let mut cm_failure = None;
    let mut gorenstein_failure = None;
    for face in k.faces() {
        if cm_failure.is_some() && gorenstein_failure.is_some() {
            break;
        }
        let link = k.link(face).expect("face of K");
        // homology[t] = dim H̃_{t-1}; the top index is dim lk + 1
        let homology = reduced_homology(&link);
        let top = (link.dim() + 1) as usize;
        let below_top_vanishes = homology[..top].iter().all(|&b| b == 0);
        if cm_failure.is_none() && !below_top_vanishes {
            cm_failure = Some(face.clone());
        }
        if gorenstein_failure.is_none() && !(below_top_vanishes && homology[top] == 1) {
            gorenstein_failure = Some(face.clone());
        }
    }
    CmGorensteinVerdict {
        cohen_macaulay: cm_failure.is_none(),
        cm_failure,
        gorenstein_star: gorenstein_failure.is_none(),
        gorenstein_failure,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::*;

    #[test]
    fn spheres_are_gorenstein() {
        for k in [boundary_simplex(3), polygon(7).unwrap(), cyclic_sphere(4, 8).unwrap()] {
            let v = cm_gorenstein_classify(&k);
            assert!(v.cohen_macaulay && v.gorenstein_star);
        }
    }

    #[test]
    fn points_are_cm_but_not_gorenstein() {
        let v = cm_gorenstein_classify(&disjoint_points(3));
        assert!(v.cohen_macaulay);
        assert_eq!(v.gorenstein_failure, Some(vec![]));
        assert!(cm_gorenstein_classify(&disjoint_points(2)).gorenstein_star);
    }

    #[test]
    fn torus_fails_at_the_empty_face() {
        let v = cm_gorenstein_classify(&torus_9_vertex());
        assert_eq!(v.cm_failure, Some(vec![]));
        assert_eq!(v.gorenstein_failure, Some(vec![]));
    }

    #[test]
    fn simplex_is_cm_not_gorenstein() {
        let v = cm_gorenstein_classify(&simplex(3));
        assert!(v.cohen_macaulay && !v.gorenstein_star);
        let path = SimplicialComplex::new(3, [[1, 2], [2, 3]]).unwrap();
        assert!(cm_gorenstein_classify(&path).cohen_macaulay);
        let wedge = SimplicialComplex::new(4, vec![vec![1, 2, 3], vec![3, 4]]).unwrap();
        assert_eq!(cm_gorenstein_classify(&wedge).cm_failure, Some(vec![3]));
    }
}
