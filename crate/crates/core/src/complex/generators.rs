use crate::combinatorics::combinations;
use crate::error::{Error, Result};

use super::{Face, SimplicialComplex};

/// The full simplex on `m` vertices.
pub fn simplex(m: usize) -> SimplicialComplex {
    SimplicialComplex::new(m, [(1..=m).collect::<Face>()]).expect("labels in range")
}

/// `∂Δ^n`, an `(n-1)`-sphere on `n + 1` vertices.
pub fn boundary_simplex(n: usize) -> SimplicialComplex {
    let verts: Vec<usize> = (1..=n + 1).collect();
    SimplicialComplex::new(n + 1, combinations(&verts, n)).expect("labels in range")
}

/// `m` isolated vertices.
pub fn disjoint_points(m: usize) -> SimplicialComplex {
    SimplicialComplex::new(m, (1..=m).map(|v| vec![v])).expect("labels in range")
}

/// Boundary of an `m`-gon with vertices in cyclic order.
pub fn polygon(m: usize) -> Result<SimplicialComplex> {
    if m < 3 {
        return Err(Error::InvalidParameters(format!("a polygon needs at least 3 vertices, got {m}")));
    }
    SimplicialComplex::new(m, (1..=m).map(|i| vec![i, i % m + 1]))
}

/// Boundary complex of the cyclic polytope `C^n(m)`.
///
/// An `n`-subset `S` of `{1..m}` is a facet iff every two labels outside `S`
/// are separated by an even number of elements of `S` (Gale's evenness
/// condition).
pub fn cyclic_sphere(n: usize, m: usize) -> Result<SimplicialComplex> {
    if n < 2 || m <= n {
        return Err(Error::InvalidParameters(format!(
            "cyclic polytope needs m > n >= 2, got n={n}, m={m}"
        )));
    }
    let verts: Vec<usize> = (1..=m).collect();
    let facets = combinations(&verts, n).into_iter().filter(|s| gale_even(s, m));
    SimplicialComplex::new(m, facets)
}

fn gale_even(s: &[usize], m: usize) -> bool {
    let outside: Vec<usize> = (1..=m).filter(|v| s.binary_search(v).is_err()).collect();
    outside.windows(2).all(|w| s.iter().filter(|&&x| w[0] < x && x < w[1]).count() % 2 == 0)
}

/// The 9-vertex triangulation of the 2-torus obtained from a 3×3 grid with
/// every square cut along the same diagonal. Vertex `(r, c)` has label
/// `3r + c + 1`.
pub fn torus_9_vertex() -> SimplicialComplex {
    let label = |r: usize, c: usize| 3 * (r % 3) + (c % 3) + 1;
    let mut facets = Vec::new();
    for r in 0..3 {
        for c in 0..3 {
            facets.push(vec![label(r, c), label(r, c + 1), label(r + 1, c + 1)]);
            facets.push(vec![label(r, c), label(r + 1, c), label(r + 1, c + 1)]);
        }
    }
    SimplicialComplex::new(9, facets).expect("labels in range")
}
