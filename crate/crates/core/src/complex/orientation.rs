use std::collections::{HashMap, VecDeque};

use crate::combinatorics::sort_sign;
use crate::error::{Error, Result};

use super::{Face, SimplicialComplex};

/// A pure pseudomanifold with a consistent orientation of its facets.
///
/// Each facet carries a sign relative to its ascending vertex order; the
/// oriented tuple is the ascending order for `+1` and the ascending order
/// with its first two entries swapped for `-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientedSphereComplex {
    base: SimplicialComplex,
    signs: Vec<i64>,
}

pub fn permutation_sign(order: &[usize]) -> i64 {
    sort_sign(order)
}

impl OrientedSphereComplex {
    pub fn base(&self) -> &SimplicialComplex {
        &self.base
    }

    /// Sign of facet `i` (indexing `base().facets()`).
    pub fn sign(&self, i: usize) -> i64 {
        self.signs[i]
    }

    pub fn signs(&self) -> &[i64] {
        &self.signs
    }

    /// The oriented vertex tuple of facet `i`.
    pub fn order(&self, i: usize) -> Face {
        let mut f = self.base.facets()[i].clone();
        if self.signs[i] < 0 && f.len() >= 2 {
            f.swap(0, 1);
        }
        f
    }

    pub fn orders(&self) -> Vec<Face> {
        (0..self.signs.len()).map(|i| self.order(i)).collect()
    }

    /// The opposite orientation.
    pub fn reversed(&self) -> Self {
        OrientedSphereComplex { base: self.base.clone(), signs: self.signs.iter().map(|s| -s).collect() }
    }

    /// Uses caller-supplied vertex orders, one per facet in any order, and
    /// checks that they are consistent.
    pub fn from_orders(base: SimplicialComplex, orders: &[Vec<usize>]) -> Result<Self> {
        let adjacency = ridge_adjacency(&base)?;
        let position: HashMap<&Face, usize> = base.facets().iter().enumerate().map(|(i, f)| (f, i)).collect();
        let mut signs = vec![0i64; base.facets().len()];
        for order in orders {
            let mut sorted = order.clone();
            sorted.sort_unstable();
            let Some(&i) = position.get(&sorted) else {
                return Err(Error::InconsistentOrientation(format!("{order:?} is not a facet")));
            };
            if signs[i] != 0 {
                return Err(Error::InconsistentOrientation(format!("facet {sorted:?} listed twice")));
            }
            signs[i] = permutation_sign(order);
        }
        if let Some(i) = signs.iter().position(|&s| s == 0) {
            return Err(Error::InconsistentOrientation(format!(
                "facet {:?} has no orientation",
                base.facets()[i]
            )));
        }
        for (ridge, [(f, pf), (g, pg)]) in &adjacency {
            if induced(signs[*f], *pf) != -induced(signs[*g], *pg) {
                return Err(Error::InconsistentOrientation(format!(
                    "facets {:?} and {:?} induce the same orientation on {ridge:?}",
                    base.facets()[*f],
                    base.facets()[*g]
                )));
            }
        }
        Ok(OrientedSphereComplex { base, signs })
    }
}

/// Orientation on the ridge left after deleting position `pos` from a facet
/// with sign `sign`.
fn induced(sign: i64, pos: usize) -> i64 {
    if pos % 2 == 0 {
        sign
    } else {
        -sign
    }
}

type RidgeAdjacency = HashMap<Face, [(usize, usize); 2]>;

/// Checks the pseudomanifold conditions and returns, for every ridge, the
/// two facets containing it with the deleted position in each.
fn ridge_adjacency(k: &SimplicialComplex) -> Result<RidgeAdjacency> {
    let n = k.max_face_size();
    if n == 0 {
        return Err(Error::NotPseudomanifold("the complex has no vertices".into()));
    }
    if !k.is_pure() {
        return Err(Error::NotPseudomanifold("the complex is not pure".into()));
    }
    if let Some(&g) = k.ghost_vertices().first() {
        return Err(Error::NotPseudomanifold(format!("label {g} is not a vertex")));
    }
    let mut incidences: HashMap<Face, Vec<(usize, usize)>> = HashMap::new();
    for (i, f) in k.facets().iter().enumerate() {
        for pos in 0..f.len() {
            let mut r = f.clone();
            r.remove(pos);
            incidences.entry(r).or_default().push((i, pos));
        }
    }
    let mut out = HashMap::with_capacity(incidences.len());
    for (ridge, inc) in incidences {
        if inc.len() != 2 {
            return Err(Error::NotPseudomanifold(format!(
                "ridge {ridge:?} lies in {} facets",
                inc.len()
            )));
        }
        out.insert(ridge, [inc[0], inc[1]]);
    }
    // connectivity of the facet graph
    let nf = k.facets().len();
    let mut neighbours = vec![Vec::new(); nf];
    for [(f, _), (g, _)] in out.values() {
        neighbours[*f].push(*g);
        neighbours[*g].push(*f);
    }
    let mut seen = vec![false; nf];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    while let Some(f) = queue.pop_front() {
        for &g in &neighbours[f] {
            if !seen[g] {
                seen[g] = true;
                queue.push_back(g);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::NotPseudomanifold("the facet graph is disconnected".into()));
    }
    Ok(out)
}

/// Orients a connected pseudomanifold by propagating from its first facet
/// (taken in ascending order) across shared ridges.
pub fn orient_sphere(k: &SimplicialComplex) -> Result<OrientedSphereComplex> {
    let adjacency = ridge_adjacency(k)?;
    let nf = k.facets().len();
    let mut by_facet: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); nf];
    for [(f, pf), (g, pg)] in adjacency.values() {
        by_facet[*f].push((*pf, *g, *pg));
        by_facet[*g].push((*pg, *f, *pf));
    }
    let mut signs = vec![0i64; nf];
    signs[0] = 1;
    let mut queue = VecDeque::from([0usize]);
    while let Some(f) = queue.pop_front() {
        for &(pf, g, pg) in &by_facet[f] {
            // induced(s_g, pg) = -induced(s_f, pf)
            let want = -induced(signs[f], pf) * if pg % 2 == 0 { 1 } else { -1 };
            if signs[g] == 0 {
                signs[g] = want;
                queue.push_back(g);
            } else if signs[g] != want {
                return Err(Error::NonOrientable);
            }
        }
    }
    Ok(OrientedSphereComplex { base: k.clone(), signs })
}

#[cfg(test)]
mod tests {
    use super::super::*;
    use super::*;

    #[test]
    fn tetrahedron_boundary() {
        let o = orient_sphere(&boundary_simplex(3)).unwrap();
        assert_eq!(o.orders().len(), 4);
        assert!(OrientedSphereComplex::from_orders(o.base().clone(), &o.orders()).is_ok());
    }

    #[test]
    fn pentagon_is_an_oriented_cycle() {
        let o = orient_sphere(&polygon(5).unwrap()).unwrap();
        // every vertex is the head of exactly one oriented edge
        let mut heads: Vec<usize> = o.orders().iter().map(|e| e[1]).collect();
        heads.sort();
        assert_eq!(heads, vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn torus_orientable() {
        let o = orient_sphere(&torus_9_vertex()).unwrap();
        assert_eq!(o.orders().len(), 18);
    }

    #[test]
    fn reversal_is_consistent_and_only_two_orientations_exist() {
        for k in [torus_9_vertex(), cyclic_sphere(4, 7).unwrap(), boundary_simplex(1)] {
            let o = orient_sphere(&k).unwrap();
            let r = o.reversed();
            assert!(OrientedSphereComplex::from_orders(k.clone(), &r.orders()).is_ok() || k.max_face_size() < 2);
            assert_ne!(o, r);
            // flipping a single facet breaks consistency
            if k.max_face_size() >= 2 {
                let mut orders = o.orders();
                orders[0].swap(0, 1);
                assert!(OrientedSphereComplex::from_orders(k.clone(), &orders).is_err());
            }
        }
    }

    #[test]
    fn triangle_boundary_orientation_is_cyclic() {
        let o = orient_sphere(&boundary_simplex(2)).unwrap();
        assert_eq!(o.orders(), vec![vec![1, 2], vec![3, 1], vec![2, 3]]);
    }

    #[test]
    fn non_pseudomanifolds_rejected() {
        assert!(matches!(orient_sphere(&simplex(3)), Err(Error::NotPseudomanifold(_))));
        let two_triangles = SimplicialComplex::new(4, [[1, 2, 3], [2, 3, 4]]).unwrap();
        assert!(matches!(orient_sphere(&two_triangles), Err(Error::NotPseudomanifold(_))));
        let disjoint = SimplicialComplex::new(6, [[1, 2], [2, 3], [1, 3], [4, 5], [5, 6], [4, 6]]).unwrap();
        assert!(matches!(orient_sphere(&disjoint), Err(Error::NotPseudomanifold(_))));
        let ghost = SimplicialComplex::new(4, [[1, 2], [2, 3], [1, 3]]).unwrap();
        assert!(matches!(orient_sphere(&ghost), Err(Error::NotPseudomanifold(_))));
    }

    #[test]
    fn projective_plane_is_not_orientable() {
        // 6-vertex RP^2
        let rp2 = SimplicialComplex::new(
            6,
            [
                [1, 2, 3], [1, 3, 4], [1, 4, 5], [1, 5, 6], [1, 2, 6],
                [2, 3, 5], [3, 4, 6], [2, 4, 5], [3, 5, 6], [2, 4, 6],
            ],
        )
        .unwrap();
        assert!(matches!(orient_sphere(&rp2), Err(Error::NonOrientable)));
    }
}
