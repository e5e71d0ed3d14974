//! Univariate integer polynomials. Generating functions in `t²` store the
//! coefficient of `t^{2k}` at index `k`; genus polynomials use powers of `y`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GradedPolynomial {
    coeffs: Vec<BigInt>,
}

impl GradedPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        GradedPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        GradedPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), 0)
    }

    pub fn monomial(c: BigInt, exponent: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); exponent + 1];
        coeffs[exponent] = c;
        Self::new(coeffs)
    }

    /// `(1 - x)^k`
    pub fn one_minus_x_pow(k: usize) -> Self {
        let base = GradedPolynomial::from_i64(&[1, -1]);
        (0..k).fold(Self::one(), |acc, _| &acc * &base)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficients as `i64`, if they all fit.
    pub fn to_i64_vec(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(ToPrimitive::to_i64).collect()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Renders with the given variable name, e.g. `1 - 5t^4 + 5t^6 - t^10`
    /// when `var = "t"` and `step = 2`.
    pub fn render(&self, var: &str, step: usize) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = i * step;
            let abs = c.abs();
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            let show_coeff = e == 0 || !abs.is_one();
            if show_coeff {
                out.push_str(&abs.to_string());
            }
            match e {
                0 => {}
                1 => out.push_str(var),
                _ => out.push_str(&format!("{var}^{e}")),
            }
        }
        out
    }
}

impl fmt::Display for GradedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("x", 1))
    }
}

impl Serialize for GradedPolynomial {
    /// A JSON array of coefficients; entries beyond `i64` become strings.
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let values: Vec<serde_json::Value> = self
            .coeffs
            .iter()
            .map(|c| match c.to_i64() {
                Some(v) => serde_json::Value::from(v),
                None => serde_json::Value::from(c.to_string()),
            })
            .collect();
        values.serialize(s)
    }
}

impl Add for &GradedPolynomial {
    type Output = GradedPolynomial;
    fn add(self, rhs: &GradedPolynomial) -> GradedPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        GradedPolynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &GradedPolynomial {
    type Output = GradedPolynomial;
    fn sub(self, rhs: &GradedPolynomial) -> GradedPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        GradedPolynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Neg for &GradedPolynomial {
    type Output = GradedPolynomial;
    fn neg(self) -> GradedPolynomial {
        GradedPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &GradedPolynomial {
    type Output = GradedPolynomial;
    fn mul(self, rhs: &GradedPolynomial) -> GradedPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return GradedPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        GradedPolynomial::new(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let p = GradedPolynomial::from_i64(&[1, 3, 1]);
        let q = &GradedPolynomial::one_minus_x_pow(3) * &p;
        assert_eq!(q, GradedPolynomial::from_i64(&[1, 0, -5, 5, 0, -1]));
        assert_eq!(q.eval(&BigInt::one()), BigInt::zero());
        assert_eq!(&(&q - &q), &GradedPolynomial::zero());
        assert_eq!(q.render("t", 2), "1 - 5t^4 + 5t^6 - t^10");
        assert_eq!(GradedPolynomial::from_i64(&[0, -1]).render("y", 1), "-y");
    }

    #[test]
    fn serializes_as_array() {
        let p = GradedPolynomial::from_i64(&[1, 0, -2]);
        assert_eq!(serde_json::to_string(&p).unwrap(), "[1,0,-2]");
    }
}
