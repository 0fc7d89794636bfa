//! Exact-coefficient univariate polynomials and their floating-point evaluation.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::{self, Write};
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::numeric::Dd;
use crate::quaternion::{PureQuaternion, Quaternion};

/// A polynomial with coefficients in ascending degree order.
///
/// Trailing zero coefficients are trimmed, so the zero polynomial has an
/// empty coefficient list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

/// Polynomial with arbitrary-precision integer coefficients.
pub type RealPolynomial = Polynomial<BigInt>;

/// Polynomial with exact rational coefficients.
pub type RationalPolynomial = Polynomial<BigRational>;

impl<T: Clone + Zero + One + PartialEq> Polynomial<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial::monomial(0)
    }

    /// `x^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = alloc::vec![T::zero(); k + 1];
        coeffs[k] = T::one();
        Polynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    /// True if every nonzero term has degree `≡ parity (mod 2)`.
    pub fn has_parity(&self, parity: usize) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(k, c)| k % 2 == parity % 2 || c.is_zero())
    }

    /// Multiplication by `x`.
    pub fn shift(&self) -> Self {
        if self.coeffs.is_empty() {
            return self.clone();
        }
        let mut c = Vec::with_capacity(self.coeffs.len() + 1);
        c.push(T::zero());
        c.extend(self.coeffs.iter().cloned());
        Polynomial { coeffs: c }
    }

    pub fn scale(&self, a: &T) -> Self {
        Polynomial::new(self.coeffs.iter().map(|c| c.clone() * a.clone()).collect())
    }

    /// Maps every coefficient through `f`.
    pub fn map<U: Clone + Zero + One + PartialEq, F: FnMut(usize, &T) -> U>(
        &self,
        mut f: F,
    ) -> Polynomial<U> {
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| f(k, c))
                .collect(),
        )
    }
}

impl<T: Clone + Zero + One + PartialEq> Add for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn add(self, o: &Polynomial<T>) -> Polynomial<T> {
        let n = self.coeffs.len().max(o.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }
}

impl<T: Clone + Zero + One + PartialEq + Sub<Output = T>> Sub for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn sub(self, o: &Polynomial<T>) -> Polynomial<T> {
        let n = self.coeffs.len().max(o.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }
}

impl<T: Clone + Zero + One + PartialEq> Mul for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn mul(self, o: &Polynomial<T>) -> Polynomial<T> {
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            return Polynomial::zero();
        }
        let mut c = alloc::vec![T::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] = c[i + j].clone() + a.clone() * b.clone();
            }
        }
        Polynomial::new(c)
    }
}

impl<T: Clone + Zero + One + PartialEq + Neg<Output = T>> Neg for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn neg(self) -> Polynomial<T> {
        Polynomial::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl RealPolynomial {
    /// Evaluates at a real point through double-double Horner.
    pub fn eval_f64(&self, x: f64) -> f64 {
        DdPolynomial::from_integer(self).eval_real(x)
    }

    /// Writes the polynomial in descending powers of `var`, e.g.
    /// `z^6+21z^4+105z^2+105`.
    pub fn to_string_in(&self, var: &str) -> String {
        let mut out = String::new();
        if self.coeffs.is_empty() {
            out.push('0');
            return out;
        }
        for k in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if neg {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            let mag = c.abs();
            if !mag.is_one() || k == 0 {
                let _ = write!(out, "{}", mag);
            }
            match k {
                0 => {}
                1 => out.push_str(var),
                _ => {
                    let _ = write!(out, "{}^{}", var, k);
                }
            }
        }
        out
    }
}

impl fmt::Display for RealPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_in("x"))
    }
}

impl RationalPolynomial {
    /// The integer polynomial with the same coefficients, if all are integral.
    pub fn to_integer(&self) -> Option<RealPolynomial> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            if !c.is_integer() {
                return None;
            }
            out.push(c.to_integer());
        }
        Some(Polynomial::new(out))
    }
}

/// Integer coefficients stored as double-doubles for fast, accurate
/// evaluation (about 32 significant digits per operation).
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct DdPolynomial {
    coeffs: Vec<Dd>,
}

impl DdPolynomial {
    pub fn from_integer(p: &RealPolynomial) -> Self {
        DdPolynomial {
            coeffs: p.coeffs().iter().map(Dd::from_bigint).collect(),
        }
    }

    fn horner(coeffs: impl DoubleEndedIterator<Item = Dd>, x: Dd) -> Dd {
        let mut acc = Dd::ZERO;
        for c in coeffs.rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    pub fn eval_real(&self, x: f64) -> f64 {
        Self::horner(self.coeffs.iter().copied(), Dd::from_f64(x)).to_f64()
    }

    /// Evaluates at a pure quaternion `x` using `x² = −|x|²`: writes
    /// `p(x) = A(−|x|²) + B(−|x|²)·x` with `A`, `B` collecting even and odd
    /// coefficients, and carries `|x|²` exactly in double-double.
    pub fn eval_pure(&self, x: PureQuaternion) -> Quaternion {
        let sq = |a: f64| Dd::from_f64(a).mul(Dd::from_f64(a));
        let r = sq(x.x).add(sq(x.y)).add(sq(x.z)).neg();
        let even = Self::horner(self.coeffs.iter().copied().step_by(2), r);
        let odd = Self::horner(self.coeffs.iter().copied().skip(1).step_by(2), r);
        let b = odd.to_f64();
        Quaternion::new(even.to_f64(), b * x.x, b * x.y, b * x.z)
    }
}

/// Converts a big integer to the nearest `f64` (saturating to ±inf).
pub(crate) fn big_to_f64(a: &BigInt) -> f64 {
    a.to_f64().unwrap_or(if a.is_negative() {
        f64::NEG_INFINITY
    } else {
        f64::INFINITY
    })
}
