//! Exact scalar products of monomials under the Gaussian background measure,
//! moment matrices, their determinants and a Gram–Schmidt oracle.
//!
//! For pure quaternion monomials
//! `⟨z^m, z^n⟩ = (−1)^{(n−m)/2} (m+n+1)!!` when `n − m` is even and `0` otherwise.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{domain, Result};
use crate::poly::{Polynomial, RationalPolynomial};

/// `k!!` for odd `k ≥ 1`, with `(−1)!! = 1`.
pub fn double_factorial(k: i64) -> Result<BigInt> {
    if k == -1 {
        return Ok(BigInt::one());
    }
    if k < 1 || k % 2 == 0 {
        return Err(domain("double_factorial", k as f64, "odd k ≥ −1"));
    }
    let mut acc = BigInt::one();
    let mut j = 3;
    while j <= k {
        acc *= j;
        j += 2;
    }
    Ok(acc)
}

fn odd_double_factorial(k: usize) -> BigInt {
    let mut acc = BigInt::one();
    let mut j = 3;
    while j <= k {
        acc *= j;
        j += 2;
    }
    acc
}

/// `⟨z^m, z^n⟩ = ∫ conj(z^m) z^n dμ(z)`.
pub fn monomial_inner(m: usize, n: usize) -> BigInt {
    if (m + n) % 2 == 1 {
        return BigInt::zero();
    }
    let v = odd_double_factorial(m + n + 1);
    let half = if n >= m { (n - m) / 2 } else { (m - n) / 2 };
    if half % 2 == 0 {
        v
    } else {
        -v
    }
}

/// The `(n+1) × (n+1)` matrix `s_ij = ⟨z^i, z^j⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentMatrix {
    entries: Vec<Vec<BigInt>>,
}

impl MomentMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.entries
    }
}

/// Leading `(n+1) × (n+1)` block of the scalar-product matrix.
pub fn moment_matrix(n: usize) -> MomentMatrix {
    MomentMatrix {
        entries: (0..=n)
            .map(|i| (0..=n).map(|j| monomial_inner(i, j)).collect())
            .collect(),
    }
}

/// `det D_n` by fraction-free (Bareiss) elimination.
pub fn det_d(n: usize) -> BigInt {
    bareiss_det(moment_matrix(n).entries)
}

/// Determinant of an integer matrix by Bareiss elimination with row pivoting.
pub fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let m = a.len();
    if m == 0 {
        return BigInt::one();
    }
    let mut sign = false;
    let mut prev = BigInt::one();
    for k in 0..m - 1 {
        if a[k][k].is_zero() {
            match (k + 1..m).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = !sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..m {
            for j in k + 1..m {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[m - 1][m - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

fn inner_rational(p: &RationalPolynomial, q: &RationalPolynomial) -> BigRational {
    let mut acc = BigRational::zero();
    for (i, a) in p.coeffs().iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in q.coeffs().iter().enumerate() {
            if b.is_zero() || (i + j) % 2 == 1 {
                continue;
            }
            acc += a * b * BigRational::from_integer(monomial_inner(i, j));
        }
    }
    acc
}

/// Monic orthogonal polynomials of degrees `0..=n` by classical Gram–Schmidt
/// over the rationals.
pub fn gram_schmidt_monic(n: usize) -> Vec<RationalPolynomial> {
    let mut basis: Vec<RationalPolynomial> = Vec::with_capacity(n + 1);
    let mut norms: Vec<BigRational> = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let zk: RationalPolynomial = Polynomial::monomial(k);
        let mut p = zk.clone();
        for (b, h) in basis.iter().zip(&norms) {
            let c = inner_rational(b, &zk) / h;
            if !c.is_zero() {
                p = &p - &b.scale(&c);
            }
        }
        norms.push(inner_rational(&p, &p));
        basis.push(p);
    }
    basis
}

/// Exact scalar product of two rational polynomials under the background measure.
pub fn polynomial_inner(p: &RationalPolynomial, q: &RationalPolynomial) -> BigRational {
    inner_rational(p, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn double_factorials() {
        assert_eq!(double_factorial(7).unwrap(), b(105));
        assert_eq!(double_factorial(9).unwrap(), b(945));
        assert_eq!(double_factorial(1).unwrap(), b(1));
        assert_eq!(double_factorial(-1).unwrap(), b(1));
        assert!(double_factorial(4).is_err());
    }

    #[test]
    fn gamma_identity() {
        for l in 0..=10 {
            let lhs =
                (2f64).powi(l + 1) / core::f64::consts::PI.sqrt() * libm::tgamma(l as f64 + 1.5);
            let rhs = crate::poly::big_to_f64(&double_factorial(2 * l as i64 + 1).unwrap());
            assert!((lhs - rhs).abs() <= 1e-10 * rhs);
        }
    }

    #[test]
    fn inner_examples() {
        assert_eq!(monomial_inner(0, 2), b(-3));
        assert_eq!(monomial_inner(3, 5), b(-945));
        assert_eq!(monomial_inner(2, 5), b(0));
        assert_eq!(monomial_inner(6, 6), b(135135));
    }

    #[test]
    fn sign_flip_identity() {
        for m in 0..=40 {
            for n in 0..=40 {
                assert_eq!(monomial_inner(m + 1, n), -monomial_inner(m, n + 1));
            }
        }
    }

    #[test]
    fn small_moment_matrix() {
        let d = moment_matrix(2);
        assert_eq!(
            d.rows(),
            &[
                vec![b(1), b(0), b(-3)],
                vec![b(0), b(3), b(0)],
                vec![b(-3), b(0), b(15)]
            ]
        );
    }

    #[test]
    fn small_determinants() {
        assert_eq!(det_d(0), b(1));
        assert_eq!(det_d(1), b(3));
        assert_eq!(bareiss_det(vec![vec![b(0), b(1)], vec![b(1), b(0)]]), b(-1));
        assert_eq!(bareiss_det(vec![vec![b(0), b(0)], vec![b(1), b(0)]]), b(0));
    }

    #[test]
    fn gram_schmidt_examples() {
        let ps = gram_schmidt_monic(7);
        let p2 = ps[2].to_integer().unwrap();
        assert_eq!(p2.to_string_in("z"), "z^2+3");
        let p7 = ps[7].to_integer().unwrap();
        assert_eq!(p7.to_string_in("z"), "z^7+27z^5+189z^3+315z");
        for i in 0..ps.len() {
            for j in 0..i {
                assert!(polynomial_inner(&ps[i], &ps[j]).is_zero());
            }
        }
    }
}
