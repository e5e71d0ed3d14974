//! Finite abstract simplicial complexes on the vertex set `{1, ..., m}`.
//!
//! Labels that belong to no face ("ghost vertices") are allowed; several
//! constructions (coordinate arrangements in particular) depend on them.

mod generators;
mod homology;
mod io;
mod ops;
mod orientation;

use std::collections::HashSet;
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};

pub use generators::{
    boundary_simplex, cyclic_sphere, disjoint_points, polygon, simplex, torus_9_vertex,
};
pub use homology::{boundary_matrix, reduced_homology};
pub use io::ComplexDocument;
pub use ops::BarycentricSubdivision;
pub use orientation::{orient_sphere, permutation_sign, OrientedSphereComplex};

/// A face, as a strictly increasing list of 1-based vertex labels.
pub type Face = Vec<usize>;

/// Closed, immutable simplicial complex stored by its facets. The full face
/// set is built on first use.
pub struct SimplicialComplex {
    m: usize,
    facets: Vec<Face>,
    index: OnceLock<FaceIndex>,
}

struct FaceIndex {
    by_size: Vec<Vec<Face>>,
    set: HashSet<Face>,
}

impl SimplicialComplex {
    /// The smallest complex on `{1..m}` containing every generator.
    /// Generators contained in other generators are dropped.
    pub fn new<G, I>(m: usize, generators: G) -> Result<Self>
    where
        G: IntoIterator<Item = I>,
        I: AsRef<[usize]>,
    {
        let mut gens: Vec<Face> = Vec::new();
        for g in generators {
            let mut f: Face = g.as_ref().to_vec();
            f.sort_unstable();
            f.dedup();
            if let Some(&v) = f.iter().find(|&&v| v == 0 || v > m) {
                return Err(Error::VertexOutOfRange { vertex: v, m });
            }
            gens.push(f);
        }
        Ok(Self::from_sorted_generators(m, gens))
    }

    fn from_sorted_generators(m: usize, mut gens: Vec<Face>) -> Self {
        // largest first so a generator only needs checking against kept ones
        gens.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        gens.dedup();
        let mut facets: Vec<Face> = Vec::new();
        for g in gens {
            if !facets.iter().any(|f| is_subset(&g, f)) {
                facets.push(g);
            }
        }
        if facets.is_empty() {
            facets.push(Vec::new());
        }
        facets.sort();
        SimplicialComplex { m, facets, index: OnceLock::new() }
    }

    /// The complex `{∅}` on `m` ghost vertices.
    pub fn empty(m: usize) -> Self {
        Self::from_sorted_generators(m, Vec::new())
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Maximal faces, sorted lexicographically.
    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    /// Largest face cardinality (`n` for an `(n-1)`-dimensional complex).
    pub fn max_face_size(&self) -> usize {
        self.facets.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn dim(&self) -> isize {
        self.max_face_size() as isize - 1
    }

    pub fn is_pure(&self) -> bool {
        let n = self.max_face_size();
        self.facets.iter().all(|f| f.len() == n)
    }

    fn index(&self) -> &FaceIndex {
        self.index.get_or_init(|| {
            let mut set: HashSet<Face> = HashSet::new();
            for f in &self.facets {
                for mask in 0u64..(1u64 << f.len()) {
                    let sub: Face = f
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| mask >> i & 1 == 1)
                        .map(|(_, &v)| v)
                        .collect();
                    set.insert(sub);
                }
            }
            let mut by_size = vec![Vec::new(); self.max_face_size() + 1];
            for f in &set {
                by_size[f.len()].push(f.clone());
            }
            for faces in &mut by_size {
                faces.sort();
            }
            FaceIndex { by_size, set }
        })
    }

    /// Membership test for a sorted vertex list.
    pub fn contains(&self, face: &[usize]) -> bool {
        self.index().set.contains(face)
    }

    /// Membership test for an arbitrary vertex list.
    pub fn contains_unsorted(&self, face: &[usize]) -> bool {
        let mut f = face.to_vec();
        f.sort_unstable();
        f.dedup();
        self.contains(&f)
    }

    /// All faces with exactly `k` vertices, in lexicographic order.
    pub fn faces_of_size(&self, k: usize) -> &[Face] {
        self.index().by_size.get(k).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Every face including the empty one, by size then lexicographically.
    pub fn faces(&self) -> impl Iterator<Item = &Face> {
        self.index().by_size.iter().flatten()
    }

    /// Number of faces including the empty face.
    pub fn num_faces(&self) -> usize {
        self.index().set.len()
    }

    /// `(f_0, ..., f_{n-1})`: number of faces with `i + 1` vertices.
    pub fn f_vector(&self) -> Vec<u64> {
        (1..=self.max_face_size()).map(|k| self.faces_of_size(k).len() as u64).collect()
    }

    /// Labels that are vertices of the complex.
    pub fn vertices(&self) -> Vec<usize> {
        self.faces_of_size(1).iter().map(|f| f[0]).collect()
    }

    pub fn ghost_vertices(&self) -> Vec<usize> {
        (1..=self.m).filter(|&v| !self.contains(&[v])).collect()
    }

    /// `Σ_{i≥0} (-1)^i f_i`
    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(i, &f)| if i % 2 == 0 { f as i64 } else { -(f as i64) })
            .sum()
    }

    /// The full subcomplex `K_I` on the given labels (labels are kept).
    pub fn full_subcomplex(&self, vertices: &[usize]) -> SimplicialComplex {
        let keep: HashSet<usize> = vertices.iter().copied().collect();
        let gens: Vec<Face> = self
            .facets
            .iter()
            .map(|f| f.iter().copied().filter(|v| keep.contains(v)).collect())
            .collect();
        Self::from_sorted_generators(self.m, gens)
    }

    /// Faces as bitmasks (bit `v - 1` for label `v`), for the Tor
    /// computations that enumerate subsets of `[m]`.
    pub fn face_masks(&self) -> Result<HashSet<u64>> {
        if self.m > 64 {
            return Err(Error::TooManyVertices(self.m));
        }
        Ok(self.faces().map(|f| face_mask(f)).collect())
    }

    /// Drops ghost vertices and relabels the rest `1..` in increasing order.
    pub fn compacted(&self) -> SimplicialComplex {
        let verts = self.vertices();
        let pos = |v: usize| verts.binary_search(&v).unwrap() + 1;
        let gens: Vec<Face> = self.facets.iter().map(|f| f.iter().map(|&v| pos(v)).collect()).collect();
        Self::from_sorted_generators(verts.len(), gens)
    }

    /// Applies `map[v - 1]` to every label, on a new vertex count.
    pub fn relabel(&self, new_m: usize, map: &[usize]) -> Result<SimplicialComplex> {
        let gens: Vec<Face> = self.facets.iter().map(|f| f.iter().map(|&v| map[v - 1]).collect()).collect();
        SimplicialComplex::new(new_m, gens)
    }
}

pub(crate) fn face_mask(face: &[usize]) -> u64 {
    face.iter().fold(0u64, |acc, &v| acc | 1 << (v - 1))
}

pub(crate) fn mask_to_face(mask: u64) -> Face {
    (0..64).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect()
}

pub(crate) fn is_subset(a: &[usize], b: &[usize]) -> bool {
    let mut j = 0;
    for &x in a {
        while j < b.len() && b[j] < x {
            j += 1;
        }
        if j == b.len() || b[j] != x {
            return false;
        }
        j += 1;
    }
    true
}

impl Clone for SimplicialComplex {
    fn clone(&self) -> Self {
        SimplicialComplex { m: self.m, facets: self.facets.clone(), index: OnceLock::new() }
    }
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.facets == other.facets
    }
}

impl Eq for SimplicialComplex {}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialComplex")
            .field("m", &self.m)
            .field("facets", &self.facets)
            .finish()
    }
}
