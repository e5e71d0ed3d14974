//! Characteristic pairs `(K_P, Λ)`: validation, vertex signs and edge
//! vectors, combinatorial genera, cohomology dimensions and freeness of
//! subtorus actions on `Z_P`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::combinatorics::sort_sign;
use crate::complex::{orient_sphere, ComplexDocument, Face, OrientedSphereComplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::faces::h_vector;
use crate::linalg::{IntegerMatrix, SparseMatrix};
use crate::polynomial::GradedPolynomial;
use crate::tor::face_ring_monomials;

/// An oriented sphere `K_P` on `m` vertices with an `n × m` matrix whose
/// maximal minors on facets are all `±1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacteristicPair {
    sphere: OrientedSphereComplex,
    lambda: IntegerMatrix,
}

/// JSON form: `{"complex": {...}, "lambda": [[..], ..], "orientation": [[..], ..]}`.
/// Without `orientation` the sphere is oriented from its first facet.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairDocument {
    pub complex: ComplexDocument,
    pub lambda: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orientation: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl PairDocument {
    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_pair(&self) -> Result<CharacteristicPair> {
        let k = self.complex.to_complex()?;
        let sphere = match &self.orientation {
            Some(orders) => OrientedSphereComplex::from_orders(k, orders)?,
            None => orient_sphere(&k)?,
        };
        if self.lambda.is_empty() {
            return Err(Error::Schema("lambda has no rows".into()));
        }
        let lambda = IntegerMatrix::from_rows(&self.lambda)?;
        validate_pair(sphere, lambda)
    }
}

/// Checks shapes and `|det Λ_(v)| = 1` on every facet.
pub fn validate_pair(sphere: OrientedSphereComplex, lambda: IntegerMatrix) -> Result<CharacteristicPair> {
    let k = sphere.base();
    let n = k.max_face_size();
    if lambda.rows() != n || lambda.cols() != k.m() {
        return Err(Error::Dimension(format!(
            "characteristic matrix is {}x{}, expected {n}x{}",
            lambda.rows(),
            lambda.cols(),
            k.m()
        )));
    }
    for facet in k.facets() {
        let cols: Vec<usize> = facet.iter().map(|v| v - 1).collect();
        let det = lambda.select_columns(&cols).det()?;
        if !det.abs().is_one() {
            return Err(Error::NotCharacteristic { facet: facet.clone(), det });
        }
    }
    Ok(CharacteristicPair { sphere, lambda })
}

impl CharacteristicPair {
    pub fn sphere(&self) -> &OrientedSphereComplex {
        &self.sphere
    }

    pub fn complex(&self) -> &SimplicialComplex {
        self.sphere.base()
    }

    pub fn lambda(&self) -> &IntegerMatrix {
        &self.lambda
    }

    pub fn n(&self) -> usize {
        self.lambda.rows()
    }

    /// The same pair with the opposite global orientation.
    pub fn reversed(&self) -> Self {
        CharacteristicPair { sphere: self.sphere.reversed(), lambda: self.lambda.clone() }
    }

    /// The pair with `λ_i` replaced by `-λ_i` (a change of omniorientation).
    pub fn flip_column(&self, i: usize) -> Self {
        let mut lambda = self.lambda.clone();
        for r in 0..lambda.rows() {
            lambda[(r, i - 1)] = -&lambda[(r, i - 1)];
        }
        CharacteristicPair { sphere: self.sphere.clone(), lambda }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexGenusData {
    /// The facet of `K_P` in orientation order.
    pub facet: Face,
    pub sigma: i64,
    /// `M_(v) = (Λ_(v)^t)^{-1}`; its columns are the edge vectors.
    pub edge_matrix: Vec<Vec<i64>>,
    /// `ind_ν(v)`, when a vector `ν` was supplied.
    pub index: Option<usize>,
}

impl VertexGenusData {
    /// The edge vectors `μ_1, ..., μ_n`.
    pub fn edge_vectors(&self) -> Vec<Vec<i64>> {
        let n = self.edge_matrix.len();
        (0..n).map(|j| (0..n).map(|i| self.edge_matrix[i][j]).collect()).collect()
    }
}

fn to_i64(m: &IntegerMatrix) -> Vec<Vec<i64>> {
    m.to_i64_rows().expect("unimodular inverse of a small matrix fits in i64")
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `σ(v)` and `M_(v)` for every facet, with `ind_ν(v)` if `ν` is given.
pub fn vertex_genus_data(pair: &CharacteristicPair, nu: Option<&[i64]>) -> Result<Vec<VertexGenusData>> {
    let k = pair.complex();
    if let Some(nu) = nu {
        if nu.len() != pair.n() {
            return Err(Error::Dimension(format!("ν has length {}, expected {}", nu.len(), pair.n())));
        }
    }
    let mut out = Vec::with_capacity(k.facets().len());
    for f in 0..k.facets().len() {
        let order = pair.sphere.order(f);
        let cols: Vec<usize> = order.iter().map(|v| v - 1).collect();
        let minor = pair.lambda.select_columns(&cols);
        let mut sigma = minor.det()?.to_i64().expect("±1");
        // a single vertex carries its orientation only as a sign
        if order.len() == 1 {
            sigma *= pair.sphere.sign(f);
        }
        let m = minor.transpose().unimodular_inverse()?;
        let edge_matrix = to_i64(&m);
        let mut data = VertexGenusData { facet: order, sigma, edge_matrix, index: None };
        if let Some(nu) = nu {
            let mut index = 0;
            for mu in data.edge_vectors() {
                match dot(&mu, nu) {
                    0 => return Err(Error::NotGeneric(nu.to_vec())),
                    x if x < 0 => index += 1,
                    _ => {}
                }
            }
            data.index = Some(index);
        }
        out.push(data);
    }
    Ok(out)
}

/// `⟨μ, ν⟩ ≠ 0` for every edge vector of every vertex.
pub fn is_generic(pair: &CharacteristicPair, nu: &[i64]) -> Result<bool> {
    match vertex_genus_data(pair, Some(nu)) {
        Ok(_) => Ok(true),
        Err(Error::NotGeneric(_)) => Ok(false),
        Err(e) => Err(e),
    }
}

/// Vectors of max-norm exactly `r`, in lexicographic order.
fn shell(n: usize, r: i64) -> impl Iterator<Item = Vec<i64>> {
    let side = (2 * r + 1) as u64;
    let total = side.checked_pow(n as u32).unwrap_or(u64::MAX);
    (0..total).filter_map(move |mut code| {
        let mut v = vec![0i64; n];
        for x in v.iter_mut().rev() {
            *x = (code % side) as i64 - r;
            code /= side;
        }
        v.iter().any(|x| x.abs() == r).then_some(v)
    })
}

pub const DEFAULT_SEARCH_RADIUS: i64 = 16;

/// The first `count` generic vectors, scanning shells of radius `1, 2, ...`
/// up to `max_radius` in lexicographic order.
pub fn generic_vectors(pair: &CharacteristicPair, count: usize, max_radius: i64) -> Result<Vec<Vec<i64>>> {
    let data = vertex_genus_data(pair, None)?;
    let edges: Vec<Vec<i64>> = data.iter().flat_map(VertexGenusData::edge_vectors).collect();
    let mut out = Vec::new();
    for r in 1..=max_radius {
        for nu in shell(pair.n(), r) {
            if edges.iter().all(|mu| dot(mu, &nu) != 0) {
                out.push(nu);
                if out.len() == count {
                    return Ok(out);
                }
            }
        }
    }
    Err(Error::SearchExhausted(max_radius))
}

pub fn find_generic_vector(pair: &CharacteristicPair) -> Result<Vec<i64>> {
    Ok(generic_vectors(pair, 1, DEFAULT_SEARCH_RADIUS)?.remove(0))
}

/// `χ_y = Σ_v (-y)^{ind_ν(v)} σ(v)`, as a polynomial in `y`.
pub fn chi_y_genus(pair: &CharacteristicPair, nu: &[i64]) -> Result<GradedPolynomial> {
    let mut coeffs = vec![BigInt::zero(); pair.n() + 1];
    for v in vertex_genus_data(pair, Some(nu))? {
        let i = v.index.expect("ν supplied");
        let sign = if i % 2 == 0 { v.sigma } else { -v.sigma };
        coeffs[i] += sign;
    }
    Ok(GradedPolynomial::new(coeffs))
}

fn eval_i64(p: &GradedPolynomial, y: i64) -> i64 {
    p.eval(&BigInt::from(y)).to_i64().expect("genus fits in i64")
}

/// `χ_y` at `y = 1`.
pub fn signature(pair: &CharacteristicPair, nu: &[i64]) -> Result<i64> {
    Ok(eval_i64(&chi_y_genus(pair, nu)?, 1))
}

/// `Σ σ(v)` over vertices of index 0 (`χ_y` at `y = 0`).
pub fn todd(pair: &CharacteristicPair, nu: &[i64]) -> Result<i64> {
    Ok(vertex_genus_data(pair, Some(nu))?.iter().filter(|v| v.index == Some(0)).map(|v| v.sigma).sum())
}

/// `c_n[M] = Σ σ(v)`
pub fn top_chern(pair: &CharacteristicPair) -> Result<i64> {
    Ok(vertex_genus_data(pair, None)?.iter().map(|v| v.sigma).sum())
}

/// `b_{2i}(M) = h_i(P)`
pub fn quasitoric_betti(k: &SimplicialComplex) -> Vec<i64> {
    h_vector(k)
}

/// `dim (k[v]/(I_P + J))_{2i}` for `i = 0..=max_degree`, with `J` generated
/// by `θ_r = Σ_j Λ_rj v_j`, from ranks on monomial bases.
pub fn graded_quotient_dims(pair: &CharacteristicPair, max_degree: usize) -> Vec<usize> {
    let k = pair.complex();
    let theta: Vec<Vec<(usize, i64)>> = pair
        .lambda
        .to_i64_rows()
        .expect("characteristic matrices have small entries")
        .into_iter()
        .map(|r| r.into_iter().enumerate().filter(|(_, x)| *x != 0).collect())
        .collect();
    let mut below = face_ring_monomials(k, 0);
    let mut out = vec![1];
    for d in 1..=max_degree {
        let here = face_ring_monomials(k, d);
        let index: HashMap<&Vec<u32>, usize> = here.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let mut image = SparseMatrix::with_capacity(here.len(), theta.len() * below.len());
        for t in &theta {
            for x in &below {
                let row: Vec<(usize, i64)> = t
                    .iter()
                    .filter_map(|&(j, c)| {
                        let mut y = x.clone();
                        y[j] += 1;
                        index.get(&y).map(|&i| (i, c))
                    })
                    .collect();
                image.push_row(row);
            }
        }
        out.push(here.len() - image.rank());
        below = here;
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreenessVerdict {
    pub free: bool,
    /// First facet whose deleted-rows minor is not a direct summand.
    pub witness: Option<Face>,
    pub reason: Option<String>,
}

/// Whether the subtorus spanned by the columns of `S` (`m × r`) acts freely
/// on `Z_P`: for every facet, `S` with that facet's rows deleted must have
/// all Smith invariants equal to 1.
pub fn subtorus_free(k: &SimplicialComplex, s: &IntegerMatrix) -> Result<FreenessVerdict> {
    let (m, r) = (k.m(), s.cols());
    if s.rows() != m {
        return Err(Error::Dimension(format!("S has {} rows, expected {m}", s.rows())));
    }
    let unit = |inv: Vec<BigInt>| inv.len() == r && inv.iter().all(One::is_one);
    if !unit(s.smith_invariants()) {
        return Err(Error::InvalidParameters("S must have rank r and span a direct summand".into()));
    }
    let n = k.max_face_size();
    if r > m - n {
        return Ok(FreenessVerdict {
            free: false,
            witness: None,
            reason: Some(format!("dimension {r} exceeds m - n = {}", m - n)),
        });
    }
    for facet in k.facets() {
        let drop: Vec<usize> = facet.iter().map(|v| v - 1).collect();
        if !unit(s.delete_rows(&drop).smith_invariants()) {
            return Ok(FreenessVerdict {
                free: false,
                witness: Some(facet.clone()),
                reason: Some("minor is not unimodular".into()),
            });
        }
    }
    Ok(FreenessVerdict { free: true, witness: None, reason: None })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChromaticBound {
    /// Colours used by greedy colouring of the 1-skeleton in vertex order.
    pub greedy_colours: usize,
    /// `m - greedy_colours`, a lower bound for the maximal free subtorus rank.
    pub bound: i64,
}

pub fn chromatic_lower_bound(k: &SimplicialComplex) -> ChromaticBound {
    let m = k.m();
    let mut colour = vec![usize::MAX; m + 1];
    for v in 1..=m {
        let used: Vec<usize> = k
            .faces_of_size(2)
            .iter()
            .filter_map(|e| match (e[0] == v, e[1] == v) {
                (true, _) => Some(e[1]),
                (_, true) => Some(e[0]),
                _ => None,
            })
            .filter(|&u| u < v)
            .map(|u| colour[u])
            .collect();
        colour[v] = (0..).find(|c| !used.contains(c)).unwrap();
    }
    let greedy_colours = if m == 0 { 0 } else { colour[1..].iter().max().unwrap() + 1 };
    ChromaticBound { greedy_colours, bound: m as i64 - greedy_colours as i64 }
}

/// Size of the smallest missing face; `None` for a full simplex.
pub fn min_missing_face(k: &SimplicialComplex) -> Option<usize> {
    k.min_missing_face_size()
}

/// The sign of `(facet in orientation order, complement ascending)`; exposed
/// for cross-checks against the fundamental class.
pub fn facet_complement_sign(order: &[usize], m: usize) -> i64 {
    let mut seq = order.to_vec();
    seq.extend((1..=m).filter(|v| !order.contains(v)));
    sort_sign(&seq)
}
