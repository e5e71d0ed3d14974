//! f-, h- and g-vector arithmetic, Dehn–Sommerville and g-theorem checks,
//! generating polynomials and cubical face counts.

use num_bigint::BigInt;
use serde::Serialize;

use crate::combinatorics::binomial;
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::polynomial::GradedPolynomial;

/// `(f_0, ..., f_{n-1})`, with `f_{-1} = 1` implicit.
pub type FVector = Vec<i64>;
/// `(h_0, ..., h_n)`
pub type HVector = Vec<i64>;

fn f_at(f: &[i64], i: i64) -> i64 {
    if i == -1 {
        1
    } else {
        f.get(i as usize).copied().unwrap_or(0)
    }
}

/// `h_k = Σ_{i=0}^{k} (-1)^{k-i} C(n-i, n-k) f_{i-1}` for `k = 0..=n`.
pub fn f_to_h(f: &[i64], n: usize) -> Result<HVector> {
    if f.len() > n {
        return Err(Error::InvalidParameters(format!(
            "f-vector of length {} for n = {n}",
            f.len()
        )));
    }
    let n = n as i64;
    Ok((0..=n)
        .map(|k| {
            (0..=k)
                .map(|i| {
                    let s = if (k - i) % 2 == 0 { 1 } else { -1 };
                    s * binomial(n - i, n - k) * f_at(f, i - 1)
                })
                .sum()
        })
        .collect())
}

/// `f_{k-1} = Σ_{i=0}^{k} C(n-i, k-i) h_i` for `k = 1..=n`, `n = len(h) - 1`.
pub fn h_to_f(h: &[i64]) -> FVector {
    let n = h.len() as i64 - 1;
    (1..=n)
        .map(|k| (0..=k).map(|i| binomial(n - i, k - i) * h[i as usize]).sum())
        .collect()
}

pub fn h_vector(k: &SimplicialComplex) -> HVector {
    let f: Vec<i64> = k.f_vector().into_iter().map(|x| x as i64).collect();
    f_to_h(&f, k.max_face_size()).expect("f-vector length is n")
}

/// `g_0 = h_0`, `g_i = h_i - h_{i-1}` for `i ≤ ⌊n/2⌋`.
pub fn g_vector(h: &[i64]) -> Vec<i64> {
    let n = h.len().saturating_sub(1);
    (0..=n / 2).map(|i| if i == 0 { h[0] } else { h[i] - h[i - 1] }).collect()
}

/// `(h_{n-i} - h_i)` for `i = 0..=n`.
pub fn dehn_sommerville_defect(h: &[i64]) -> Vec<i64> {
    let n = h.len() - 1;
    (0..=n).map(|i| h[n - i] - h[i]).collect()
}

/// The defect an orientable closed `(n-1)`-manifold with Euler
/// characteristic `chi` must have: `(-1)^i (chi - χ(S^{n-1})) C(n, i)`.
pub fn predicted_defect(n: usize, chi: i64) -> Vec<i64> {
    let sphere_chi = if n % 2 == 1 { 2 } else { 0 };
    (0..=n)
        .map(|i| {
            let s = if i % 2 == 0 { 1 } else { -1 };
            s * (chi - sphere_chi) * binomial(n as i64, i as i64)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DehnSommervilleReport {
    pub defect: Vec<i64>,
    pub predicted: Vec<i64>,
    pub matches_prediction: bool,
}

pub fn dehn_sommerville_report(k: &SimplicialComplex) -> DehnSommervilleReport {
    let h = h_vector(k);
    let defect = dehn_sommerville_defect(&h);
    let predicted = predicted_defect(k.max_face_size(), k.euler_characteristic());
    DehnSommervilleReport { matches_prediction: defect == predicted, defect, predicted }
}

/// `a^⟨i⟩`: write `a = C(a_i, i) + C(a_{i-1}, i-1) + ... + C(a_j, j)` greedily
/// with `a_i > ... > a_j ≥ j ≥ 1`, then `a^⟨i⟩ = Σ C(a_k + 1, k + 1)`.
pub fn binomial_upper(a: u64, i: u64) -> u128 {
    assert!(i >= 1, "binomial_upper needs i >= 1");
    let c = |n: u64, k: u64| -> u128 {
        if k > n {
            return 0;
        }
        let k = k.min(n - k);
        (0..k).fold(1u128, |acc, t| acc * (n - t) as u128 / (t + 1) as u128)
    };
    let mut rest = a as u128;
    let mut out = 0u128;
    let mut k = i;
    while rest > 0 && k >= 1 {
        // largest n with C(n, k) ≤ rest
        let mut n = k;
        while c(n + 1, k) <= rest {
            n += 1;
        }
        rest -= c(n, k);
        out += c(n + 1, k + 1);
        k -= 1;
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MVectorVerdict {
    pub is_m_vector: bool,
    pub failing_index: Option<usize>,
}

/// `k_0 = 1` and `0 ≤ k_{i+1} ≤ k_i^⟨i⟩` for `i ≥ 1` (and `k_1 ≥ 0`).
pub fn is_m_vector(k: &[i64]) -> MVectorVerdict {
    let fail = |i| MVectorVerdict { is_m_vector: false, failing_index: Some(i) };
    if k.first() != Some(&1) {
        return fail(0);
    }
    if k.len() > 1 && k[1] < 0 {
        return fail(1);
    }
    for i in 1..k.len().saturating_sub(1) {
        let next = k[i + 1];
        if next < 0 || next as u128 > binomial_upper(k[i] as u64, i as u64) {
            return fail(i + 1);
        }
    }
    MVectorVerdict { is_m_vector: true, failing_index: None }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GTheoremVerdict {
    pub symmetric: bool,
    /// Indices `i ≤ n/2` with `h_i ≠ h_{n-i}`.
    pub asymmetric_indices: Vec<usize>,
    pub nonnegative_g: bool,
    pub negative_g_indices: Vec<usize>,
    pub nonnegative_h: bool,
    pub negative_h_indices: Vec<usize>,
    pub g_is_m_vector: bool,
    pub m_vector_failing_index: Option<usize>,
    pub passes: bool,
}

pub fn g_theorem_verdict(h: &[i64]) -> GTheoremVerdict {
    let n = h.len().saturating_sub(1);
    let asymmetric_indices: Vec<usize> = (0..=n / 2).filter(|&i| h[i] != h[n - i]).collect();
    let g = g_vector(h);
    let negative_g_indices: Vec<usize> = (0..g.len()).filter(|&i| g[i] < 0).collect();
    let negative_h_indices: Vec<usize> = (0..h.len()).filter(|&i| h[i] < 0).collect();
    let m = is_m_vector(&g);
    let symmetric = asymmetric_indices.is_empty();
    let nonnegative_g = negative_g_indices.is_empty();
    GTheoremVerdict {
        symmetric,
        asymmetric_indices,
        nonnegative_g,
        negative_g_indices,
        nonnegative_h: negative_h_indices.is_empty(),
        negative_h_indices,
        g_is_m_vector: m.is_m_vector,
        m_vector_failing_index: m.failing_index,
        passes: symmetric && nonnegative_g && m.is_m_vector,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UbtReport {
    /// `h_i ≤ C(m-n+i-1, i)` for `0 ≤ i ≤ ⌊n/2⌋`.
    pub holds: bool,
    pub violations: Vec<usize>,
    /// Per index `0..=n`: whether `h_i = C(m-n+i-1, i)`.
    pub equality: Vec<bool>,
    /// Largest `q` with equality for every `i ≤ q`.
    pub equality_through: Option<usize>,
}

pub fn ubt_check(h: &[i64], m: usize, n: usize) -> Result<UbtReport> {
    if h.len() != n + 1 {
        return Err(Error::InvalidParameters(format!("h has length {} but n = {n}", h.len())));
    }
    // C(m-n-1, 0) = 1 even when m = n
    let bound = |i: usize| if i == 0 { 1 } else { binomial(m as i64 - n as i64 + i as i64 - 1, i as i64) };
    let violations: Vec<usize> = (0..=n / 2).filter(|&i| h[i] > bound(i)).collect();
    let equality: Vec<bool> = (0..=n).map(|i| h[i] == bound(i)).collect();
    let equality_through = equality.iter().position(|e| !e).unwrap_or(n + 1).checked_sub(1);
    Ok(UbtReport { holds: violations.is_empty(), violations, equality, equality_through })
}

/// `h(P × Q; t) = h(P; t) h(Q; t)`
pub fn product_h(h1: &[i64], h2: &[i64]) -> HVector {
    let mut out = vec![0i64; h1.len() + h2.len() - 1];
    for (i, a) in h1.iter().enumerate() {
        for (j, b) in h2.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

/// h-vector of a connected sum of simple polytopes of the same dimension.
pub fn connected_sum_h(h1: &[i64], h2: &[i64]) -> Result<HVector> {
    if h1.len() != h2.len() || h1.len() < 2 {
        return Err(Error::Dimension(format!(
            "connected sum of h-vectors of lengths {} and {}",
            h1.len(),
            h2.len()
        )));
    }
    let n = h1.len() - 1;
    for h in [h1, h2] {
        if h[0] != 1 || h[n] != 1 {
            return Err(Error::InvalidParameters(format!("{h:?} needs h_0 = h_n = 1")));
        }
    }
    Ok((0..=n).map(|i| if i == 0 || i == n { 1 } else { h1[i] + h2[i] }).collect())
}

/// `F(k(K); t) = h(t²) / (1 - t²)^n`: the numerator (in `t²`) and `n`.
pub fn face_ring_poincare_series(k: &SimplicialComplex) -> (GradedPolynomial, usize) {
    (GradedPolynomial::from_i64(&h_vector(k)), k.max_face_size())
}

/// `χ(Z_K; t) = (1 - t²)^{m-n} h(t²)`, as a polynomial in `t²`.
pub fn chi_poly_zk(k: &SimplicialComplex) -> GradedPolynomial {
    let (h, n) = face_ring_poincare_series(k);
    &GradedPolynomial::one_minus_x_pow(k.m() - n) * &h
}

/// `χ(Z_K, T^m; t) = χ(Z_K; t) - (1 - t²)^m`
pub fn chi_poly_rel(k: &SimplicialComplex) -> GradedPolynomial {
    &chi_poly_zk(k) - &GradedPolynomial::one_minus_x_pow(k.m())
}

/// `χ(W_K; t) = χ(Z_K; t) + (χ(K) - 1)(1 - t²)^m`
pub fn chi_poly_wk(k: &SimplicialComplex) -> GradedPolynomial {
    let c = BigInt::from(k.euler_characteristic() - 1);
    &chi_poly_zk(k) + &GradedPolynomial::one_minus_x_pow(k.m()).scale(&c)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CubicalMode {
    /// `cc(K)`: all pairs `I ⊆ J ∈ K`.
    Cc,
    /// `cub(K)`: pairs with `I` nonempty.
    Cub,
}

/// Number of `k`-dimensional cubes `C_{I⊆J}` (`k = |J| - |I|`), for
/// `k = 0..=n`.
pub fn cubical_counts(k: &SimplicialComplex, mode: CubicalMode) -> FVector {
    let n = k.max_face_size();
    let mut out = vec![0i64; n + 1];
    for j in k.faces() {
        let s = j.len() as i64;
        let lo = if mode == CubicalMode::Cub { 1 } else { 0 };
        for i in lo..=s {
            out[(s - i) as usize] += binomial(s, i);
        }
    }
    if mode == CubicalMode::Cub {
        while out.len() > 1 && out.last() == Some(&0) {
            out.pop();
        }
    }
    out
}

/// `f_k(C(P^n)) = Σ_{i=0}^{n-k} C(n-i, k) f_{n-i-1}(P)` for `k = 0..=n`.
pub fn cubical_counts_polytope(f: &[i64], n: usize) -> FVector {
    let n = n as i64;
    (0..=n)
        .map(|k| (0..=n - k).map(|i| binomial(n - i, k) * f_at(f, n - i - 1)).sum())
        .collect()
}

/// Largest `q` such that every `q`-subset of `[m]` is a face.
pub fn neighbourliness(k: &SimplicialComplex) -> usize {
    match k.min_missing_face_size() {
        Some(s) => s - 1,
        None => k.m(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::*;

    #[test]
    fn simplex_and_boundary_h_vectors() {
        for n in 1..7 {
            assert_eq!(h_vector(&boundary_simplex(n)), vec![1; n + 1]);
            let mut e = vec![0; n + 2];
            e[0] = 1;
            assert_eq!(h_vector(&simplex(n + 1)), e);
        }
    }

    #[test]
    fn torus_h_vector() {
        assert_eq!(f_to_h(&[9, 27, 18], 3).unwrap(), vec![1, 6, 12, -1]);
        assert_eq!(h_to_f(&[1, 6, 12, -1]), vec![9, 27, 18]);
        let d = dehn_sommerville_defect(&[1, 6, 12, -1]);
        assert_eq!((d[0], d[1]), (-2, 6));
        assert_eq!(d, predicted_defect(3, 0));
    }

    #[test]
    fn f_too_long_is_rejected() {
        assert!(f_to_h(&[3, 3, 1], 2).is_err());
    }

    #[test]
    fn binomial_upper_values() {
        assert_eq!(binomial_upper(2, 1), 3);
        assert_eq!(binomial_upper(0, 3), 0);
        // 5 = C(4,2) - 1 = C(3,2) + C(2,1) -> C(4,3) + C(3,2) = 7
        assert_eq!(binomial_upper(5, 2), 7);
        assert_eq!(binomial_upper(6, 2), 10);
    }

    #[test]
    fn m_vectors() {
        assert!(is_m_vector(&[1]).is_m_vector);
        assert!(is_m_vector(&[1, 7]).is_m_vector);
        assert_eq!(is_m_vector(&[1, 2, 4]).failing_index, Some(2));
        assert!(is_m_vector(&[1, 2, 3]).is_m_vector);
        assert_eq!(is_m_vector(&[2, 1]).failing_index, Some(0));
    }

    #[test]
    fn g_theorem() {
        let v = g_theorem_verdict(&h_vector(&cyclic_sphere(4, 8).unwrap()));
        assert!(v.passes);
        let v = g_theorem_verdict(&[1, 6, 12, -1]);
        assert!(!v.symmetric && !v.nonnegative_h && !v.passes);
        assert!(g_theorem_verdict(&[1, 1, 1, 1, 1]).passes);
    }

    #[test]
    fn upper_bound() {
        let k = cyclic_sphere(4, 8).unwrap();
        let r = ubt_check(&h_vector(&k), 8, 4).unwrap();
        assert!(r.holds);
        assert_eq!(r.equality_through, Some(2));
        assert!(ubt_check(&[1, 3, 1], 5, 2).unwrap().holds);
        let r = ubt_check(&[1, 10, 100, 10, 1], 7, 4).unwrap();
        assert!(!r.holds);
        assert_eq!(r.violations, vec![1, 2]);
    }

    #[test]
    fn h_arithmetic() {
        assert_eq!(product_h(&[1, 1], &[1, 1]), vec![1, 2, 1]);
        assert_eq!(connected_sum_h(&[1, 2, 1], &[1, 2, 1]).unwrap(), vec![1, 4, 1]);
        assert_eq!(h_vector(&polygon(6).unwrap()), vec![1, 4, 1]);
        assert!(connected_sum_h(&[1, 2, 1], &[1, 1, 1, 1]).is_err());
        assert!(connected_sum_h(&[1, 2, 0], &[1, 2, 1]).is_err());
    }

    #[test]
    fn poincare_series() {
        let (num, n) = face_ring_poincare_series(&simplex(4));
        assert_eq!((num, n), (GradedPolynomial::one(), 4));
        let (num, n) = face_ring_poincare_series(&simplex(1));
        assert_eq!((num, n), (GradedPolynomial::one(), 1));
    }

    #[test]
    fn chi_polynomials() {
        let p = polygon(5).unwrap();
        assert_eq!(chi_poly_zk(&p), GradedPolynomial::from_i64(&[1, 0, -5, 5, 0, -1]));
        for m in 2..8 {
            let mut e = vec![0; m + 1];
            e[0] = 1;
            e[m] = -1;
            assert_eq!(chi_poly_zk(&boundary_simplex(m - 1)), GradedPolynomial::from_i64(&e));
        }
    }

    #[test]
    fn cubical() {
        let k = boundary_simplex(2);
        assert_eq!(cubical_counts(&k, CubicalMode::Cc)[0], 7);
        assert_eq!(cubical_counts(&simplex(1), CubicalMode::Cub), vec![1]);
        for m in 3..9 {
            let p = polygon(m).unwrap();
            let f: Vec<i64> = p.f_vector().iter().map(|&x| x as i64).collect();
            assert_eq!(cubical_counts_polytope(&f, 2), cubical_counts(&p, CubicalMode::Cc));
        }
    }

    #[test]
    fn neighbourly() {
        assert_eq!(neighbourliness(&cyclic_sphere(4, 8).unwrap()), 2);
        assert_eq!(neighbourliness(&boundary_simplex(5)), 5);
        assert_eq!(neighbourliness(&polygon(6).unwrap()), 1);
        assert_eq!(neighbourliness(&SimplicialComplex::new(3, [[1, 2]]).unwrap()), 0);
    }
}
