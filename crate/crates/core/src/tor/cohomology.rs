use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::combinatorics::sort_sign;
use crate::complex::{orient_sphere, OrientedSphereComplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::linalg::{nullspace, rref, RationalMatrix, SparseMatrix};

use super::koszul::{koszul_differential, KoszulMonomial, KoszulStrand};
use super::BigradedBettiTable;

/// A class in `H^{-q,2p}`, stored by its canonical representative: the
/// normal form of any representing cocycle modulo the reduced row-echelon
/// basis of coboundaries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyClass {
    pub q: usize,
    pub p: usize,
    /// Coordinates in the fixed class basis of this bidegree.
    pub coords: Vec<BigRational>,
    /// Normal-form cocycle, nonzero terms only, in monomial order.
    pub representative: Vec<(KoszulMonomial, BigRational)>,
}

impl CohomologyClass {
    fn zero(q: usize, p: usize, dim: usize) -> Self {
        CohomologyClass { q, p, coords: vec![BigRational::zero(); dim], representative: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// `(-q, 2p)`
    pub fn bidegree(&self) -> (i64, i64) {
        (-(self.q as i64), 2 * self.p as i64)
    }

    pub fn total_degree(&self) -> usize {
        2 * self.p - self.q
    }
}

/// Per-bidegree data: basis, coboundary echelon form, class basis.
struct Degree {
    basis: Vec<KoszulMonomial>,
    index: HashMap<KoszulMonomial, usize>,
    /// `d` out of this group (rows = basis).
    d_out: Option<SparseMatrix>,
    coboundaries: RationalMatrix,
    coboundary_pivots: Vec<usize>,
    classes: RationalMatrix,
    class_pivots: Vec<usize>,
}

/// Cohomology of `A*(K)` with explicit classes and cup products, computed
/// lazily per bidegree and cached.
pub struct KoszulAlgebra {
    complex: SimplicialComplex,
    strands: Mutex<HashMap<usize, Arc<KoszulStrand>>>,
    degrees: Mutex<HashMap<(usize, usize), Arc<Degree>>>,
}

fn to_rational(row: &[(usize, i64)], cols: usize) -> Vec<BigRational> {
    let mut v = vec![BigRational::zero(); cols];
    for &(c, x) in row {
        v[c] = BigRational::from_integer(BigInt::from(x));
    }
    v
}

impl KoszulAlgebra {
    pub fn new(k: &SimplicialComplex) -> Result<Self> {
        if k.m() > 64 {
            return Err(Error::TooManyVertices(k.m()));
        }
        Ok(KoszulAlgebra {
            complex: k.clone(),
            strands: Mutex::new(HashMap::new()),
            degrees: Mutex::new(HashMap::new()),
        })
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    fn strand(&self, p: usize) -> Arc<KoszulStrand> {
        if let Some(s) = self.strands.lock().unwrap().get(&p) {
            return s.clone();
        }
        let s = Arc::new(koszul_differential(&self.complex, p));
        self.strands.lock().unwrap().insert(p, s.clone());
        s
    }

    fn degree(&self, q: usize, p: usize) -> Arc<Degree> {
        if let Some(d) = self.degrees.lock().unwrap().get(&(q, p)) {
            return d.clone();
        }
        let d = Arc::new(self.build_degree(q, p));
        self.degrees.lock().unwrap().insert((q, p), d.clone());
        d
    }

    fn build_degree(&self, q: usize, p: usize) -> Degree {
        if q > p || p > self.complex.m() {
            return Degree {
                basis: Vec::new(),
                index: HashMap::new(),
                d_out: None,
                coboundaries: RationalMatrix::zeros(0, 0),
                coboundary_pivots: Vec::new(),
                classes: RationalMatrix::zeros(0, 0),
                class_pivots: Vec::new(),
            };
        }
        let strand = self.strand(p);
        let basis = strand.bases[q].clone();
        let n = basis.len();
        let index = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let d_out = strand.differential(q).cloned();

        let mut coboundaries = RationalMatrix::from_rows(
            n,
            strand
                .differential(q + 1)
                .map(|d| (0..d.rows()).map(|r| to_rational(d.row(r), n)).collect())
                .unwrap_or_default(),
        );
        let coboundary_pivots = rref(&mut coboundaries);

        // cocycles: x with x^T D = 0, i.e. the nullspace of D^T
        let cocycles: Vec<Vec<BigRational>> = match &d_out {
            None => (0..n)
                .map(|i| {
                    let mut v = vec![BigRational::zero(); n];
                    v[i] = BigRational::one();
                    v
                })
                .collect(),
            Some(d) => {
                let dt = d.transpose();
                let m = RationalMatrix::from_rows(n, (0..dt.rows()).map(|r| to_rational(dt.row(r), n)).collect());
                nullspace(&m)
            }
        };
        let normal: Vec<Vec<BigRational>> = cocycles
            .into_iter()
            .map(|mut z| {
                reduce(&mut z, &coboundaries, &coboundary_pivots);
                z
            })
            .collect();
        let mut classes = RationalMatrix::from_rows(n, normal);
        let class_pivots = rref(&mut classes);
        Degree { basis, index, d_out, coboundaries, coboundary_pivots, classes, class_pivots }
    }

    /// `dim H^{-q,2p}`
    pub fn betti(&self, q: usize, p: usize) -> usize {
        self.degree(q, p).class_pivots.len()
    }

    pub fn table(&self) -> BigradedBettiTable {
        let mut t = BigradedBettiTable::for_complex(&self.complex);
        for p in 0..=self.complex.m() {
            for q in 0..=p {
                t.set(q, p, self.betti(q, p) as u64);
            }
        }
        t
    }

    fn class_from_vector(&self, q: usize, p: usize, mut v: Vec<BigRational>) -> CohomologyClass {
        let deg = self.degree(q, p);
        reduce(&mut v, &deg.coboundaries, &deg.coboundary_pivots);
        let coords: Vec<BigRational> = deg.class_pivots.iter().map(|&c| v[c].clone()).collect();
        let representative = v
            .into_iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| (deg.basis[i].clone(), x))
            .collect();
        CohomologyClass { q, p, coords, representative }
    }

    /// The class of a cocycle given as a combination of monomials of one
    /// bidegree.
    pub fn class_of(&self, cocycle: &[(KoszulMonomial, BigRational)]) -> Result<CohomologyClass> {
        let Some((first, _)) = cocycle.first() else {
            return Err(Error::InvalidParameters("empty cochain; use zero_class".into()));
        };
        let (q, p) = first.degree();
        let deg = self.degree(q, p);
        let mut v = vec![BigRational::zero(); deg.basis.len()];
        for (mono, c) in cocycle {
            if mono.degree() != (q, p) {
                return Err(Error::InvalidParameters("terms of different bidegrees".into()));
            }
            let Some(&i) = deg.index.get(mono) else {
                return Err(Error::InvalidParameters(format!("{mono:?} is not a basis monomial of A*(K)")));
            };
            v[i] += c;
        }
        if let Some(d) = &deg.d_out {
            let mut image: BTreeMap<usize, BigRational> = BTreeMap::new();
            for (i, x) in v.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for &(c, e) in d.row(i) {
                    *image.entry(c).or_insert_with(BigRational::zero) += x * BigInt::from(e);
                }
            }
            if image.values().any(|x| !x.is_zero()) {
                return Err(Error::NotCocycle);
            }
        }
        Ok(self.class_from_vector(q, p, v))
    }

    /// `[u_I v_J]`
    pub fn monomial_class(&self, i: &[usize], j: &[usize]) -> Result<CohomologyClass> {
        let mono = KoszulMonomial::new(i.to_vec(), j.to_vec());
        self.class_of(&[(mono, BigRational::one())])
    }

    pub fn zero_class(&self, q: usize, p: usize) -> CohomologyClass {
        CohomologyClass::zero(q, p, self.betti(q, p))
    }

    pub fn one(&self) -> CohomologyClass {
        self.monomial_class(&[], &[]).expect("1 is a cocycle")
    }

    /// The fixed basis of `H^{-q,2p}`.
    pub fn basis(&self, q: usize, p: usize) -> Vec<CohomologyClass> {
        let deg = self.degree(q, p);
        (0..deg.classes.rows())
            .map(|r| self.class_from_vector(q, p, deg.classes.row(r).to_vec()))
            .collect()
    }

    /// Cup product of two classes via their representatives.
    pub fn cup(&self, a: &CohomologyClass, b: &CohomologyClass) -> CohomologyClass {
        let (q, p) = (a.q + b.q, a.p + b.p);
        if p > self.complex.m() || q > p {
            return CohomologyClass::zero(q, p, 0);
        }
        let deg = self.degree(q, p);
        let mut v = vec![BigRational::zero(); deg.basis.len()];
        for (x, cx) in &a.representative {
            for (y, cy) in &b.representative {
                if let Some((mono, sign)) = monomial_product(x, y, &self.complex) {
                    let c = cx * cy;
                    let idx = deg.index[&mono];
                    if sign > 0 {
                        v[idx] += c;
                    } else {
                        v[idx] -= c;
                    }
                }
            }
        }
        self.class_from_vector(q, p, v)
    }
}

/// Subtracts multiples of RREF rows to clear every pivot column.
fn reduce(v: &mut [BigRational], rows: &RationalMatrix, pivots: &[usize]) {
    for (r, &c) in pivots.iter().enumerate() {
        if v[c].is_zero() {
            continue;
        }
        let f = v[c].clone();
        for (x, y) in v.iter_mut().zip(rows.row(r)) {
            if !y.is_zero() {
                *x -= &f * y;
            }
        }
    }
}

/// `u_I v_J · u_{I'} v_{J'}` in `A*(K)`: zero unless the index sets are
/// disjoint where required and `J ∪ J' ∈ K`; the sign sorts `(I, I')`.
fn monomial_product(
    x: &KoszulMonomial,
    y: &KoszulMonomial,
    k: &SimplicialComplex,
) -> Option<(KoszulMonomial, i64)> {
    let disjoint = |a: &[usize], b: &[usize]| a.iter().all(|v| b.binary_search(v).is_err());
    if !disjoint(&x.i, &y.i) || !disjoint(&x.j, &y.j) {
        return None;
    }
    let mut i: Vec<usize> = x.i.iter().chain(&y.i).copied().collect();
    let sign = sort_sign(&i);
    i.sort_unstable();
    let mut j: Vec<usize> = x.j.iter().chain(&y.j).copied().collect();
    j.sort_unstable();
    if !disjoint(&i, &j) || !k.contains(&j) {
        return None;
    }
    Some((KoszulMonomial::new(i, j), sign))
}

/// Sign of the permutation listing `facet` in orientation order followed by
/// the complement in ascending order.
fn facet_sign(oriented: &OrientedSphereComplex, f: usize) -> (Vec<usize>, i64) {
    let k = oriented.base();
    let facet = &k.facets()[f];
    let complement: Vec<usize> = (1..=k.m()).filter(|v| facet.binary_search(v).is_err()).collect();
    let mut seq = facet.clone();
    seq.extend(&complement);
    (complement, oriented.sign(f) * sort_sign(&seq))
}

/// `[ε(I) v_I u_{[m]∖I}]` for the first facet `I`, after checking that every
/// facet yields the same nonzero class.
pub fn fundamental_class(alg: &KoszulAlgebra, oriented: &OrientedSphereComplex) -> Result<CohomologyClass> {
    let k = oriented.base();
    if k != alg.complex() {
        return Err(Error::InvalidParameters("orientation is for a different complex".into()));
    }
    let mut first: Option<CohomologyClass> = None;
    for (f, facet) in k.facets().iter().enumerate() {
        let (complement, eps) = facet_sign(oriented, f);
        let mono = KoszulMonomial::new(complement, facet.clone());
        let class = alg.class_of(&[(mono, BigRational::from_integer(BigInt::from(eps)))])?;
        match &first {
            None => {
                if class.is_zero() {
                    return Err(Error::NotPseudomanifold("top monomial is a coboundary".into()));
                }
                first = Some(class);
            }
            Some(c) if *c != class => {
                return Err(Error::InconsistentOrientation(format!(
                    "facet {facet:?} represents a different top class"
                )))
            }
            Some(_) => {}
        }
    }
    first.ok_or_else(|| Error::NotPseudomanifold("no facets".into()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairingRank {
    pub q: usize,
    pub p: usize,
    pub dim: usize,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    /// `b_{-q,2p} = b_{-(m-n)+q, 2(m-p)}` everywhere.
    pub symmetric: bool,
    pub asymmetric: Vec<(usize, usize)>,
    /// `b_{-(m-n),2m} = 1`
    pub top_class: bool,
    /// Rank of the cup pairing into the fundamental class, per bidegree;
    /// present when requested and the complex is an orientable pseudomanifold.
    pub pairings: Option<Vec<PairingRank>>,
    pub nondegenerate: Option<bool>,
}

/// Bigraded duality of the Betti table, and optionally the rank of the cup
/// pairing `H^{-q,2p} ⊗ H^{-(m-n)+q, 2(m-p)} → H^{-(m-n),2m}`.
pub fn poincare_duality_check(k: &SimplicialComplex, with_pairing: bool) -> Result<DualityReport> {
    let alg = KoszulAlgebra::new(k)?;
    let table = alg.table();
    let (m, n) = (k.m(), k.max_face_size());
    let top_q = m.saturating_sub(n);
    let mut asymmetric = Vec::new();
    for p in 0..=m {
        for q in 0..=p {
            let dual = (top_q as i64 - q as i64, m - p);
            let other = if dual.0 < 0 { 0 } else { table.get(dual.0 as usize, dual.1) };
            if table.get(q, p) != other {
                asymmetric.push((q, p));
            }
        }
    }
    let top_class = table.get(top_q, m) == 1;
    let (pairings, nondegenerate) = if with_pairing && top_class {
        match orient_sphere(k) {
            Ok(oriented) => {
                let fc = fundamental_class(&alg, &oriented)?;
                let ranks = pairing_ranks(&alg, &fc, top_q);
                let ok = ranks.iter().all(|r| r.rank == r.dim);
                (Some(ranks), Some(ok))
            }
            Err(_) => (None, None),
        }
    } else {
        (None, None)
    };
    Ok(DualityReport { symmetric: asymmetric.is_empty(), asymmetric, top_class, pairings, nondegenerate })
}

fn pairing_ranks(alg: &KoszulAlgebra, fc: &CohomologyClass, top_q: usize) -> Vec<PairingRank> {
    let m = alg.complex().m();
    // coordinate of a top-degree class relative to the fundamental class
    let pivot = fc.coords.iter().position(|c| !c.is_zero()).expect("nonzero class");
    let mut out = Vec::new();
    for p in 0..=m {
        for q in 0..=p.min(top_q) {
            let (dq, dp) = (top_q - q, m - p);
            if dq > dp {
                continue;
            }
            let left = alg.basis(q, p);
            if left.is_empty() {
                continue;
            }
            let right = alg.basis(dq, dp);
            let rows: Vec<Vec<BigRational>> = left
                .iter()
                .map(|a| right.iter().map(|b| alg.cup(a, b).coords[pivot].clone() / &fc.coords[pivot]).collect())
                .collect();
            let mut mat = RationalMatrix::from_rows(right.len(), rows);
            let rank = rref(&mut mat).len();
            out.push(PairingRank { q, p, dim: left.len(), rank });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::*;
    use crate::tor::bigraded_betti;

    #[test]
    fn table_agrees_with_strand_ranks() {
        let k = polygon(6).unwrap();
        assert_eq!(KoszulAlgebra::new(&k).unwrap().table(), bigraded_betti(&k));
    }

    #[test]
    fn unit_acts_trivially() {
        let k = polygon(5).unwrap();
        let alg = KoszulAlgebra::new(&k).unwrap();
        let c = alg.monomial_class(&[3], &[1]).unwrap();
        assert_eq!(alg.cup(&alg.one(), &c), c);
        assert_eq!(alg.cup(&c, &alg.one()), c);
    }

    #[test]
    fn non_cocycle_rejected() {
        let alg = KoszulAlgebra::new(&polygon(5).unwrap()).unwrap();
        // d(u_2 v_1) = v_1 v_2 ≠ 0 since {1,2} is an edge
        assert!(matches!(alg.monomial_class(&[2], &[1]), Err(Error::NotCocycle)));
    }

    #[test]
    fn pentagon_products() {
        let alg = KoszulAlgebra::new(&polygon(5).unwrap()).unwrap();
        let a = alg.monomial_class(&[3], &[1]).unwrap();
        let b = alg.monomial_class(&[4, 5], &[2]).unwrap();
        assert!(!alg.cup(&a, &b).is_zero());
        let c = alg.monomial_class(&[3, 4], &[1]).unwrap();
        assert!(alg.cup(&a, &c).is_zero());
    }

    #[test]
    fn fundamental_class_agrees_across_facets() {
        for k in [polygon(5).unwrap(), polygon(4).unwrap(), boundary_simplex(3), cyclic_sphere(4, 7).unwrap(), boundary_simplex(1)] {
            let alg = KoszulAlgebra::new(&k).unwrap();
            let o = orient_sphere(&k).unwrap();
            let fc = fundamental_class(&alg, &o).unwrap();
            assert_eq!(fc.total_degree(), k.m() + k.max_face_size());
            let rev = fundamental_class(&alg, &o.reversed()).unwrap();
            assert_eq!(rev.coords, fc.coords.iter().map(|c| -c).collect::<Vec<_>>());
        }
        let fc = {
            let k = polygon(4).unwrap();
            let alg = KoszulAlgebra::new(&k).unwrap();
            fundamental_class(&alg, &orient_sphere(&k).unwrap()).unwrap()
        };
        assert_eq!(fc.bidegree(), (-2, 8));
    }

    #[test]
    fn wrongly_oriented_facet_detected() {
        let k = boundary_simplex(2);
        let alg = KoszulAlgebra::new(&k).unwrap();
        // a consistent orientation from explicit orders
        let o = OrientedSphereComplex::from_orders(k.clone(), &[vec![1, 2], vec![2, 3], vec![3, 1]]).unwrap();
        assert!(fundamental_class(&alg, &o).is_ok());
    }

    #[test]
    fn duality_for_polygons_and_torus() {
        for m in 4..8 {
            let r = poincare_duality_check(&polygon(m).unwrap(), m <= 6).unwrap();
            assert!(r.symmetric && r.top_class);
            if m <= 6 {
                assert_eq!(r.nondegenerate, Some(true));
            }
        }
        let r = poincare_duality_check(&torus_9_vertex(), false).unwrap();
        assert!(r.top_class);
    }

    #[test]
    fn graded_commutativity() {
        let alg = KoszulAlgebra::new(&polygon(6).unwrap()).unwrap();
        for (q1, p1, q2, p2) in [(1, 2, 1, 2), (1, 2, 2, 3), (2, 3, 2, 3)] {
            for a in alg.basis(q1, p1) {
                for b in alg.basis(q2, p2) {
                    let ab = alg.cup(&a, &b);
                    let ba = alg.cup(&b, &a);
                    let sign = if (a.total_degree() * b.total_degree()) % 2 == 0 { 1 } else { -1 };
                    let expected: Vec<BigRational> = ba.coords.iter().map(|c| c * BigInt::from(sign)).collect();
                    assert_eq!(ab.coords, expected);
                }
            }
        }
    }
}
