//! The reproduction suite: exact checks of the worked examples and the
//! cross-validations between independent computation paths, run against a
//! corpus. Shared by the `acceptance` test target and `moment-angle reproduce`.

use std::fmt::{Debug, Display};
use std::time::{Duration, Instant};

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arrangements::{coord_complement_betti, diagonal_complement_betti, diagonal_region_count};
use crate::combinatorics::binomial;
use crate::complex::{disjoint_points, orient_sphere, polygon, simplex, SimplicialComplex};
use crate::corpus::Corpus;
use crate::error::Error;
use crate::faces::{
    chi_poly_zk, dehn_sommerville_defect, g_theorem_verdict, h_vector, predicted_defect, ubt_check,
};
use crate::linalg::{rref, IntegerMatrix, RationalMatrix};
use crate::quasitoric::{
    chi_y_genus, generic_vectors, graded_quotient_dims, signature, subtorus_free, todd, top_chern,
    vertex_genus_data, CharacteristicPair, DEFAULT_SEARCH_RADIUS,
};
use crate::tor::{bigraded_betti, cm_gorenstein_classify, hochster_betti, tor_with_forms, KoszulAlgebra};

pub const RANDOM_COMPLEXES: usize = 100;
const RANDOM_SEED: u64 = 0x6d6f_6d65_6e74;

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub id: usize,
    pub title: &'static str,
    pub passed: bool,
    /// Number of individual comparisons made.
    pub comparisons: usize,
    /// Expected-vs-actual lines for every failed comparison.
    pub failures: Vec<String>,
    #[serde(serialize_with = "as_seconds")]
    pub elapsed: Duration,
}

fn as_seconds<S: serde::Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64((d.as_secs_f64() * 1000.0).round() / 1000.0)
}

pub struct Check {
    pub id: usize,
    pub title: &'static str,
    pub tags: &'static [&'static str],
    run: fn(&Corpus, &mut Tally),
}

impl Check {
    /// Matches the id, or a case-insensitive substring of the title or a tag.
    pub fn matches(&self, filter: &str) -> bool {
        let f = filter.to_lowercase();
        f == self.id.to_string()
            || self.title.to_lowercase().contains(&f)
            || self.tags.iter().any(|t| t.contains(&f))
    }

    pub fn run(&self, corpus: &Corpus) -> CheckOutcome {
        let start = Instant::now();
        let mut tally = Tally::default();
        (self.run)(corpus, &mut tally);
        CheckOutcome {
            id: self.id,
            title: self.title,
            passed: tally.failures.is_empty() && tally.comparisons > 0,
            comparisons: tally.comparisons,
            failures: tally.failures,
            elapsed: start.elapsed(),
        }
    }
}

#[derive(Default)]
struct Tally {
    comparisons: usize,
    failures: Vec<String>,
}

impl Tally {
    fn expect<T: PartialEq + Debug>(&mut self, what: impl Display, expected: T, actual: T) {
        self.comparisons += 1;
        if expected != actual {
            self.failures.push(format!("{what}: expected {expected:?}, got {actual:?}"));
        }
    }

    fn require(&mut self, what: impl Display, ok: bool) {
        self.comparisons += 1;
        if !ok {
            self.failures.push(format!("{what}: failed"));
        }
    }

    fn error(&mut self, what: impl Display, e: Error) {
        self.comparisons += 1;
        self.failures.push(format!("{what}: {e}"));
    }

    fn missing(&mut self, name: &str) {
        self.error(name, Error::Schema("missing from the corpus".into()));
    }
}

pub static CHECKS: &[Check] = &[
    Check { id: 1, title: "oracle equivalence", tags: &["oracle", "betti", "koszul", "hochster"], run: oracle },
    Check { id: 2, title: "polygon moment-angle betti numbers", tags: &["mgon", "polygon", "betti"], run: polygons },
    Check { id: 3, title: "strand euler characteristics", tags: &["euler", "strand"], run: strands },
    Check { id: 4, title: "sphere duality", tags: &["duality", "sphere", "pairing"], run: duality },
    Check { id: 5, title: "torus dehn-sommerville", tags: &["torus", "dehn-sommerville"], run: torus },
    Check { id: 6, title: "cp2 genus data", tags: &["genus", "quasitoric", "cp2"], run: genus },
    Check { id: 7, title: "g-theorem battery", tags: &["g-theorem", "ubt", "macaulay"], run: g_theorem },
    Check { id: 8, title: "quasitoric cohomology dims", tags: &["quasitoric", "quotient", "forms"], run: quotients },
    Check { id: 9, title: "subtorus freeness", tags: &["freeness", "subtorus"], run: freeness },
    Check { id: 10, title: "arrangement complements", tags: &["arrangement", "coordinate", "diagonal"], run: arrangements },
];

/// Runs every check matching `filter` (all of them without one), in order.
pub fn run_checks(corpus: &Corpus, filter: Option<&str>) -> Vec<CheckOutcome> {
    CHECKS.iter().filter(|c| filter.is_none_or(|f| c.matches(f))).map(|c| c.run(corpus)).collect()
}

/// A homology sphere in the sense needed here: Gorenstein*, orientable, and
/// without ghost vertices.
pub fn is_corpus_sphere(k: &SimplicialComplex) -> bool {
    k.ghost_vertices().is_empty() && orient_sphere(k).is_ok() && cm_gorenstein_classify(k).gorenstein_star
}

/// Pseudo-random complexes on at most 7 labels (ghosts allowed), from a fixed
/// seed.
pub fn random_complexes(count: usize, seed: u64) -> Vec<SimplicialComplex> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let m = rng.random_range(1..=7usize);
            let gens: Vec<Vec<usize>> = (0..rng.random_range(1..=m + 2))
                .map(|_| {
                    let size = rng.random_range(1..=m.min(4));
                    let mut face: Vec<usize> = (1..=m).collect();
                    for i in 0..size {
                        let j = rng.random_range(i..m);
                        face.swap(i, j);
                    }
                    face.truncate(size);
                    face
                })
                .collect();
            SimplicialComplex::new(m, gens).expect("labels in range")
        })
        .collect()
}

fn table_entries(t: &crate::tor::BigradedBettiTable) -> Vec<(usize, usize, u64)> {
    t.iter().collect()
}

fn oracle(corpus: &Corpus, t: &mut Tally) {
    let mut complexes: Vec<(String, SimplicialComplex)> =
        corpus.complexes.iter().map(|c| (c.name.clone(), c.complex.clone())).collect();
    for (i, k) in random_complexes(RANDOM_COMPLEXES, RANDOM_SEED).into_iter().enumerate() {
        complexes.push((format!("random #{i} {:?}", k.facets()), k));
    }
    for (name, k) in complexes {
        t.expect(name, table_entries(&hochster_betti(&k)), table_entries(&bigraded_betti(&k)));
    }
}

/// `(1, 0, 0, b_3, ..., b_{m-1}, 0, 0, 1)` for the `m`-gon.
pub fn polygon_total_betti(m: usize) -> Vec<u64> {
    let m = m as i64;
    let c = |k: i64| binomial(m - 2, k);
    let mut out = vec![0u64; m as usize + 3];
    out[0] = 1;
    out[m as usize + 2] = 1;
    for k in 3..m {
        out[k as usize] = ((m - 2) * c(k - 2) - c(k - 1) - c(k - 3)) as u64;
    }
    out
}

fn padded(mut v: Vec<u64>, len: usize) -> Vec<u64> {
    v.resize(len.max(v.len()), 0);
    v
}

fn polygons(_: &Corpus, t: &mut Tally) {
    for m in 5..=7 {
        let expected = polygon_total_betti(m);
        let k = polygon(m).expect("m ≥ 3");
        let actual = padded(bigraded_betti(&k).total_betti(), expected.len());
        t.expect(format!("{m}-gon total betti"), expected, actual);
    }
}

fn strands(corpus: &Corpus, t: &mut Tally) {
    for c in &corpus.complexes {
        let k = &c.complex;
        let table = bigraded_betti(k);
        let poly = chi_poly_zk(k);
        let mut total = 0;
        for p in 0..=k.m() {
            let expected = poly.coeff(p).to_i64().expect("small");
            let actual = table.strand_euler(p);
            total += actual;
            t.expect(format!("{} strand p={p}", c.name), expected, actual);
        }
        if k.m() > k.max_face_size() {
            t.expect(format!("{} χ(Z_K)", c.name), 0, total);
        }
    }
}

fn duality(corpus: &Corpus, t: &mut Tally) {
    for c in corpus.complexes.iter().filter(|c| is_corpus_sphere(&c.complex)) {
        let k = &c.complex;
        let (m, n) = (k.m(), k.max_face_size());
        let table = bigraded_betti(k);
        let mut asymmetric = Vec::new();
        for p in 0..=m {
            for q in 0..=p {
                let dual = if q <= m - n { table.get(m - n - q, m - p) } else { 0 };
                if table.get(q, p) != dual {
                    asymmetric.push((q, p));
                }
            }
        }
        t.expect(format!("{} bigraded duality failures", c.name), Vec::new(), asymmetric);
        let defect = dehn_sommerville_defect(&h_vector(k));
        t.expect(format!("{} Dehn–Sommerville defect", c.name), vec![0; n + 1], defect);
    }
    match corpus.complex("pentagon") {
        Some(k) => pentagon_pairing(k, t),
        None => t.missing("pentagon"),
    }
}

/// `[v_i u_{i+2}] · [v_j u_{j+2} u_{j+3}]` is nonzero exactly when the five
/// indices are distinct mod 5, and the 5×5 pairing is nondegenerate.
fn pentagon_pairing(k: &SimplicialComplex, t: &mut Tally) {
    let alg = match KoszulAlgebra::new(k) {
        Ok(a) => a,
        Err(e) => return t.error("pentagon algebra", e),
    };
    let at = |i: usize| (i - 1) % 5 + 1;
    let mut rows = Vec::new();
    for i in 1..=5 {
        let mut row = Vec::new();
        for j in 1..=5 {
            let a = alg.monomial_class(&[at(i + 2)], &[i]);
            let mut u = vec![at(j + 2), at(j + 3)];
            u.sort_unstable();
            let b = alg.monomial_class(&u, &[j]);
            let (a, b) = match (a, b) {
                (Ok(a), Ok(b)) => (a, b),
                (Err(e), _) | (_, Err(e)) => return t.error(format!("pentagon classes ({i},{j})"), e),
            };
            let product = alg.cup(&a, &b);
            let value = product.coords.first().cloned().unwrap_or_else(BigRational::zero);
            let mut idx = vec![i, at(i + 2), j, at(j + 2), at(j + 3)];
            idx.sort_unstable();
            idx.dedup();
            t.expect(format!("pentagon product ({i},{j}) nonzero"), idx.len() == 5, !value.is_zero());
            row.push(value);
        }
        rows.push(row);
    }
    let mut pairing = RationalMatrix::from_rows(5, rows);
    t.expect("pentagon H^3 x H^4 pairing rank", 5, rref(&mut pairing).len());
}

fn torus(corpus: &Corpus, t: &mut Tally) {
    let Some(k) = corpus.complex("torus9") else { return t.missing("torus9") };
    let h = h_vector(k);
    t.expect("torus h-vector", vec![1, 6, 12, -1], h.clone());
    let defect = dehn_sommerville_defect(&h);
    t.expect("h_3 - h_0", -2, defect[0]);
    t.expect("h_2 - h_1", 6, defect[1]);
    t.expect("χ(T^2)", 0, k.euler_characteristic());
    t.expect("defect vs prediction at χ = 0", predicted_defect(3, 0), defect);
}

struct GenusExpectation {
    name: &'static str,
    sigma: Vec<i64>,
    indices: Vec<usize>,
    signature: i64,
    todd: i64,
    top_chern: i64,
}

fn genus(corpus: &Corpus, t: &mut Tally) {
    let cases = [
        GenusExpectation { name: "cp2-standard", sigma: vec![1, 1, 1], indices: vec![0, 1, 2], signature: 1, todd: 1, top_chern: 3 },
        GenusExpectation { name: "cp2-alt", sigma: vec![1, -1, -1], indices: vec![0, 0, 1], signature: 1, todd: 0, top_chern: -1 },
    ];
    let nu = [1, 2];
    for case in cases {
        let Some(pair) = corpus.pair(case.name) else {
            t.missing(case.name);
            continue;
        };
        // vertices in facet order: [1,2], [1,3], [2,3]
        let data = match vertex_genus_data(pair, Some(&nu)) {
            Ok(d) => d,
            Err(e) => {
                t.error(case.name, e);
                continue;
            }
        };
        let sigma: Vec<i64> = data.iter().map(|v| v.sigma).collect();
        let mut indices: Vec<usize> = data.iter().filter_map(|v| v.index).collect();
        indices.sort_unstable();
        t.expect(format!("{} σ", case.name), case.sigma, sigma);
        t.expect(format!("{} indices at ν=(1,2)", case.name), case.indices, indices);
        t.expect(format!("{} signature", case.name), Ok(case.signature), signature(pair, &nu).map_err(|e| e.to_string()));
        t.expect(format!("{} Todd genus", case.name), Ok(case.todd), todd(pair, &nu).map_err(|e| e.to_string()));
        t.expect(format!("{} c_2", case.name), Ok(case.top_chern), top_chern(pair).map_err(|e| e.to_string()));
        chi_y_invariance(case.name, pair, &nu, t);
    }
}

fn chi_y_invariance(name: &str, pair: &CharacteristicPair, nu: &[i64], t: &mut Tally) {
    let mut vectors = vec![nu.to_vec()];
    match generic_vectors(pair, 4, DEFAULT_SEARCH_RADIUS) {
        Ok(found) => vectors.extend(found),
        Err(e) => return t.error(format!("{name} generic vectors"), e),
    }
    vectors.sort();
    vectors.dedup();
    t.require(format!("{name} has ≥ 3 distinct generic ν"), vectors.len() >= 3);
    let reference = chi_y_genus(pair, nu).map(|p| p.to_i64_vec());
    for v in &vectors {
        t.expect(
            format!("{name} χ_y at ν={v:?}"),
            reference.as_ref().map_err(|e| e.to_string()).cloned(),
            chi_y_genus(pair, v).map(|p| p.to_i64_vec()).map_err(|e| e.to_string()),
        );
    }
}

const G_THEOREM_SPHERES: &[&str] = &[
    "cyclic-4-7", "cyclic-4-8", "square", "pentagon", "hexagon", "heptagon", "octagon", "delta1-boundary",
    "delta2-boundary", "delta3-boundary", "delta4-boundary", "delta5-boundary", "delta6-boundary",
];

fn g_theorem(corpus: &Corpus, t: &mut Tally) {
    for &name in G_THEOREM_SPHERES {
        let Some(k) = corpus.complex(name) else {
            t.missing(name);
            continue;
        };
        let v = g_theorem_verdict(&h_vector(k));
        t.expect(format!("{name} symmetric"), true, v.symmetric);
        t.expect(format!("{name} g ≥ 0"), true, v.nonnegative_g);
        t.expect(format!("{name} g is an M-vector"), true, v.g_is_m_vector);
    }
    let torus = g_theorem_verdict(&[1, 6, 12, -1]);
    t.expect("(1,6,12,-1) symmetric", false, torus.symmetric);
    t.expect("(1,6,12,-1) nonnegative", false, torus.nonnegative_h && torus.nonnegative_g);
    t.expect("(1,6,12,-1) passes", false, torus.passes);
    for name in ["cyclic-4-7", "cyclic-4-8"] {
        let Some(k) = corpus.complex(name) else {
            t.missing(name);
            continue;
        };
        match ubt_check(&h_vector(k), k.m(), 4) {
            Ok(r) => {
                t.expect(format!("{name} upper bound holds"), true, r.holds);
                t.expect(format!("{name} UBT equality for k ≤ 2"), vec![true; 3], r.equality[..3].to_vec());
            }
            Err(e) => t.error(name, e),
        }
    }
}

const QUOTIENT_PAIRS: &[&str] =
    &["cp1", "cp2-standard", "cp3", "cp4", "square-product", "pentagon-pair-a", "pentagon-pair-b"];

fn quotients(corpus: &Corpus, t: &mut Tally) {
    for &name in QUOTIENT_PAIRS {
        let Some(pair) = corpus.pair(name) else {
            t.missing(name);
            continue;
        };
        let k = pair.complex();
        let n = pair.n();
        let h: Vec<u64> = h_vector(k).iter().map(|&x| x as u64).collect();
        // one degree past the top, which must vanish
        let dims: Vec<u64> = graded_quotient_dims(pair, n + 1).iter().map(|&d| d as u64).collect();
        t.expect(format!("{name} quotient dims"), padded(h.clone(), n + 2), dims);
        match tor_with_forms(k, pair.lambda(), None) {
            Ok(table) => {
                let higher: Vec<(usize, usize, u64)> = table.iter().filter(|e| e.0 > 0).collect();
                t.expect(format!("{name} Tor in negative degrees"), Vec::new(), higher);
                let degree_zero: Vec<u64> = (0..=k.m()).map(|p| table.get(0, p)).collect();
                t.expect(format!("{name} Tor_0 dims"), padded(h, k.m() + 1), degree_zero);
            }
            Err(e) => t.error(name, e),
        }
    }
}

fn columns(m: usize, cols: &[Vec<i64>]) -> IntegerMatrix {
    IntegerMatrix::from_columns(m, cols).expect("consistent lengths")
}

fn unit(m: usize, j: usize) -> Vec<i64> {
    (0..m).map(|i| i64::from(i == j)).collect()
}

fn freeness(corpus: &Corpus, t: &mut Tally) {
    let verdict = |t: &mut Tally, what: String, s: &IntegerMatrix, k: &SimplicialComplex, expected: bool| {
        match subtorus_free(k, s) {
            Ok(v) => t.expect(what, expected, v.free),
            Err(e) => t.error(what, e),
        }
    };
    for c in corpus.complexes.iter().filter(|c| is_corpus_sphere(&c.complex)) {
        let k = &c.complex;
        let (m, n) = (k.m(), k.max_face_size());
        verdict(t, format!("{} diagonal circle", c.name), &columns(m, &[vec![1; m]]), k, true);
        // the diagonal plus m - n coordinate axes: rank m - n + 1
        let mut cols = vec![vec![1; m]];
        cols.extend((0..m - n).map(|j| unit(m, j)));
        verdict(t, format!("{} rank {} > m - n", c.name, m - n + 1), &columns(m, &cols), k, false);
    }
    for p in &corpus.pairs {
        let k = p.pair.complex();
        let m = k.m();
        let kernel = p.pair.lambda().integer_kernel();
        t.expect(format!("{} kernel rank", p.name), m - p.pair.n(), kernel.cols());
        let mut cols: Vec<Vec<i64>> = (0..kernel.cols())
            .map(|j| kernel.column(j).iter().map(|x| x.to_i64().expect("small")).collect())
            .collect();
        verdict(t, format!("{} ker Λ", p.name), &columns(m, &cols), k, true);
        // e_1 maps to the primitive column λ_1, so ker Λ + e_1 is still a summand
        cols.push(unit(m, 0));
        verdict(t, format!("{} ker Λ + e_1", p.name), &columns(m, &cols), k, false);
    }
}

fn arrangements(corpus: &Corpus, t: &mut Tally) {
    let trim = |mut v: Vec<u64>| {
        while v.len() > 1 && v.last() == Some(&0) {
            v.pop();
        }
        v
    };
    match corpus.complex("three-points") {
        Some(k) => t.expect("three points, coordinate complement", vec![1, 0, 0, 3, 2], trim(coord_complement_betti(k))),
        None => t.missing("three-points"),
    }
    for m in 2..=7 {
        let mut expected = vec![0u64; m + 2];
        expected[0] = 1;
        for k in 2..=m {
            expected[k + 1] = ((k as i64 - 1) * binomial(m as i64, k as i64)) as u64;
        }
        t.expect(format!("{m} points, coordinate complement"), expected, trim(coord_complement_betti(&disjoint_points(m))));
    }
    let diagonal = |t: &mut Tally, name: String, k: &SimplicialComplex, h0: u64| match diagonal_complement_betti(k) {
        Ok(b) => {
            t.expect(format!("{name} diagonal H^0"), h0, b[0]);
            t.expect(format!("{name} region count"), h0, diagonal_region_count(k) as u64);
        }
        Err(e) => t.error(name, e),
    };
    for m in 1..=6 {
        diagonal(t, format!("Δ^{}", m - 1), &simplex(m), 1);
    }
    for (name, h0) in [("two-points", 2), ("three-points", 6)] {
        match corpus.complex(name) {
            Some(k) => diagonal(t, name.to_string(), k, h0),
            None => t.missing(name),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polygon_formula_examples() {
        assert_eq!(polygon_total_betti(5), vec![1, 0, 0, 5, 5, 0, 0, 1]);
        assert_eq!(polygon_total_betti(6), vec![1, 0, 0, 9, 16, 9, 0, 0, 1]);
    }

    #[test]
    fn filters() {
        let genus: Vec<usize> = CHECKS.iter().filter(|c| c.matches("genus")).map(|c| c.id).collect();
        assert_eq!(genus, vec![6]);
        assert_eq!(CHECKS.iter().filter(|c| c.matches("9")).count(), 1);
        assert_eq!(CHECKS.len(), 10);
    }

    #[test]
    fn random_complexes_are_reproducible() {
        let a = random_complexes(20, 1);
        assert_eq!(a, random_complexes(20, 1));
        assert!(a.iter().all(|k| k.m() <= 7));
    }

    #[test]
    fn spheres_in_corpus() {
        let c = Corpus::bundled().unwrap();
        let spheres: Vec<&str> =
            c.complexes.iter().filter(|k| is_corpus_sphere(&k.complex)).map(|k| k.name.as_str()).collect();
        assert!(spheres.contains(&"pentagon") && spheres.contains(&"cyclic-4-8"));
        assert!(!spheres.contains(&"torus9") && !spheres.contains(&"three-points") && !spheres.contains(&"simplex"));
    }
}
