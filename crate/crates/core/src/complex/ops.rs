use std::collections::HashMap;

use crate::error::{Error, Result};

use super::{face_mask, mask_to_face, Face, SimplicialComplex};

/// `bs(K)` together with the face of `K` behind each new vertex.
#[derive(Clone, Debug)]
pub struct BarycentricSubdivision {
    pub complex: SimplicialComplex,
    /// `faces[v - 1]` is the face of the original complex labelled `v`.
    pub faces: Vec<Face>,
}

impl SimplicialComplex {
    /// `link_K I = {J ∈ K : I ∪ J ∈ K, I ∩ J = ∅}`, on the same labels.
    pub fn link(&self, face: &[usize]) -> Result<SimplicialComplex> {
        let mut i: Face = face.to_vec();
        i.sort_unstable();
        if !self.contains(&i) {
            return Err(Error::NotAFace(i));
        }
        let gens: Vec<Face> = self
            .facets()
            .iter()
            .filter(|f| super::is_subset(&i, f))
            .map(|f| f.iter().copied().filter(|v| i.binary_search(v).is_err()).collect())
            .collect();
        Ok(SimplicialComplex::from_sorted_generators(self.m(), gens))
    }

    /// Closed star of a vertex: every face `J` with `J ∪ {v} ∈ K`.
    pub fn star(&self, vertex: usize) -> Result<SimplicialComplex> {
        if !self.contains(&[vertex]) {
            return Err(Error::NotAFace(vec![vertex]));
        }
        let gens: Vec<&Face> = self.facets().iter().filter(|f| f.contains(&vertex)).collect();
        SimplicialComplex::new(self.m(), gens)
    }

    /// Full subcomplex on the vertices whose star is not all of `K`.
    pub fn core(&self) -> SimplicialComplex {
        let core_vertices: Vec<usize> = self
            .vertices()
            .into_iter()
            .filter(|&v| !self.facets().iter().all(|f| f.contains(&v)))
            .collect();
        self.full_subcomplex(&core_vertices)
    }

    /// `K1 * K2` on `m1 + m2` labels; labels of `other` are shifted by `m1`.
    pub fn join(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let shift = self.m();
        let mut gens = Vec::with_capacity(self.facets().len() * other.facets().len());
        for a in self.facets() {
            for b in other.facets() {
                let mut f = a.clone();
                f.extend(b.iter().map(|v| v + shift));
                gens.push(f);
            }
        }
        SimplicialComplex::from_sorted_generators(self.m() + other.m(), gens)
    }

    /// `Δ^0 * K`: the apex is label 1.
    pub fn cone(&self) -> SimplicialComplex {
        super::simplex(1).join(self)
    }

    /// `S^0 * K`: the two suspension points are labels 1 and 2.
    pub fn suspension(&self) -> SimplicialComplex {
        super::disjoint_points(2).join(self)
    }

    /// Vertices are the nonempty faces (by size, then lexicographic); faces
    /// are chains under inclusion.
    pub fn barycentric_subdivision(&self) -> BarycentricSubdivision {
        let faces: Vec<Face> = self.faces().filter(|f| !f.is_empty()).cloned().collect();
        let label: HashMap<&Face, usize> = faces.iter().enumerate().map(|(i, f)| (f, i + 1)).collect();
        let mut gens: Vec<Face> = Vec::new();
        for facet in self.facets() {
            if facet.is_empty() {
                continue;
            }
            for order in permutations(facet) {
                let mut chain = Vec::with_capacity(order.len());
                let mut acc: Face = Vec::new();
                for v in order {
                    let pos = acc.binary_search(&v).unwrap_err();
                    acc.insert(pos, v);
                    chain.push(label[&acc]);
                }
                gens.push(chain);
            }
        }
        let complex = SimplicialComplex::new(faces.len(), gens).expect("labels in range");
        BarycentricSubdivision { complex, faces }
    }

    /// `K̂ = {I ⊆ [m] : [m] \ I ∉ K}`.
    pub fn associated_complex(&self) -> Result<SimplicialComplex> {
        let m = self.m();
        if m > 24 {
            return Err(Error::TooManyVertices(m));
        }
        let full: u64 = if m == 0 { 0 } else { (1u64 << m) - 1 };
        let masks = self.face_masks()?;
        if masks.contains(&full) {
            return Err(Error::FullSimplex);
        }
        let gens: Vec<Face> = (0..=full)
            .filter(|i| !masks.contains(&(full & !i)))
            .map(mask_to_face)
            .collect();
        Ok(SimplicialComplex::from_sorted_generators(m, gens))
    }

    /// Sizes of minimal non-faces, smallest first; `None` for a full simplex.
    pub fn min_missing_face_size(&self) -> Option<usize> {
        self.minimal_non_faces().iter().map(Vec::len).min()
    }

    /// Minimal non-faces (missing faces), sorted by size then
    /// lexicographically.
    pub fn minimal_non_faces(&self) -> Vec<Face> {
        let mut out: Vec<Face> = Vec::new();
        for v in 1..=self.m() {
            if !self.contains(&[v]) {
                out.push(vec![v]);
            }
        }
        let mut seen = std::collections::HashSet::new();
        for f in self.faces() {
            for v in self.vertices() {
                if f.binary_search(&v).is_ok() || f.last().is_some_and(|&l| v < l) {
                    continue;
                }
                // candidate f ∪ {v} with v larger than every element of f
                let mut cand = f.clone();
                cand.push(v);
                if self.contains(&cand) || !seen.insert(face_mask(&cand)) {
                    continue;
                }
                let all_boundary = (0..cand.len()).all(|skip| {
                    let mut g = cand.clone();
                    g.remove(skip);
                    self.contains(&g)
                });
                if all_boundary {
                    out.push(cand);
                }
            }
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::*;
    use super::*;

    #[test]
    fn link_of_empty_face_is_whole_complex() {
        let k = torus_9_vertex();
        assert_eq!(k.link(&[]).unwrap(), k);
    }

    #[test]
    fn link_of_edge_in_tetrahedron() {
        let l = simplex(4).link(&[1, 2]).unwrap();
        assert_eq!(l.vertices(), vec![3, 4]);
        // {1,2} ∪ {3,4} is a face, so the link is the edge on 3 and 4
        assert_eq!(l.facets(), &[vec![3, 4]]);
    }

    #[test]
    fn cone_star_and_link_of_apex() {
        let base = polygon(5).unwrap();
        let c = base.cone();
        assert_eq!(c.star(1).unwrap(), c);
        assert_eq!(c.link(&[1]).unwrap().compacted(), base);
        assert!(is_subset(&c.core().vertices(), &(2..=6).collect::<Vec<_>>()));
    }

    #[test]
    fn link_rejects_non_face() {
        assert!(matches!(polygon(5).unwrap().link(&[1, 3]), Err(Error::NotAFace(_))));
        assert!(matches!(polygon(5).unwrap().star(7), Err(Error::NotAFace(_))));
    }

    #[test]
    fn joins() {
        assert_eq!(simplex(2).join(&simplex(3)), simplex(5));
        let square = boundary_simplex(1).join(&boundary_simplex(1));
        assert_eq!(square.num_faces() - 1, 8);
        assert_eq!(square.f_vector(), vec![4, 4]);
        let k = polygon(5).unwrap();
        assert_eq!(SimplicialComplex::empty(0).join(&k), k);
        assert_eq!(k.join(&SimplicialComplex::empty(0)), k);
    }

    #[test]
    fn suspension_of_point_pair() {
        assert_eq!(boundary_simplex(1).suspension(), polygon(4).unwrap().relabel(4, &[1, 3, 2, 4]).unwrap());
    }

    #[test]
    fn barycentric_subdivisions() {
        let bs = simplex(2).barycentric_subdivision().complex;
        assert_eq!(bs.f_vector(), vec![3, 2]);
        let bs = boundary_simplex(2).barycentric_subdivision().complex;
        assert_eq!(bs.f_vector(), vec![6, 6]);
        let bs = simplex(1).barycentric_subdivision().complex;
        assert_eq!(bs, simplex(1));
    }

    #[test]
    fn associated_complexes() {
        for m in 2..7 {
            // the only non-face of the boundary is [m], so only ∅ survives
            let k = boundary_simplex(m - 1);
            assert_eq!(k.associated_complex().unwrap(), SimplicialComplex::empty(m));
        }
        assert_eq!(disjoint_points(3).associated_complex().unwrap(), disjoint_points(3));
        assert_eq!(disjoint_points(2).associated_complex().unwrap(), SimplicialComplex::empty(2));
        assert!(matches!(simplex(3).associated_complex(), Err(Error::FullSimplex)));
    }

    #[test]
    fn missing_faces() {
        let p = polygon(5).unwrap();
        let mf = p.minimal_non_faces();
        assert_eq!(mf, vec![vec![1, 3], vec![1, 4], vec![2, 4], vec![2, 5], vec![3, 5]]);
        assert_eq!(boundary_simplex(4).minimal_non_faces(), vec![vec![1, 2, 3, 4, 5]]);
        assert!(simplex(4).minimal_non_faces().is_empty());
        let ghost = SimplicialComplex::new(3, [[1, 2]]).unwrap();
        assert_eq!(ghost.minimal_non_faces(), vec![vec![3]]);
    }
}
