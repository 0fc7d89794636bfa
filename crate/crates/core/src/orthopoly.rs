//! The polynomial families `P_n` (quaternion argument), `Q_n` (real argument)
//! and monic Hermite `H_n`, their norms, and stable large-`n` evaluators.
//!
//! `P_{n+1} = z P_n + β_n P_{n−1}` and `Q_{n+1} = x Q_n − β_n Q_{n−1}` with
//! `h_n = n!(n+2)` (odd `n`) or `(n+1)!` (even `n`), and `β_n = h_n / h_{n−1}`.
//! For a unit pure quaternion `u`, `P_n(us) = uⁿ Q_n(s)`.

use alloc::vec::Vec;

use num_bigint::BigInt;
#[allow(unused_imports)] // unused when std is in the build graph
use num_traits::{Float, One, Zero};

use crate::error::{domain, Error, Result};
use crate::numeric::{bisect, ln_factorial, Scaled, RESCALE_BIG};
use crate::poly::{DdPolynomial, Polynomial, RealPolynomial};
use crate::quaternion::{PureQuaternion, Quaternion};

/// Highest degree evaluated from raw coefficients. Beyond this the
/// alternating-size coefficients make direct evaluation meaningless.
pub const MAX_EXACT_DEGREE: usize = 60;

/// Highest degree accepted by [`q_zeros`].
pub const MAX_ZERO_DEGREE: usize = 40;

/// `h_n = ‖P_n‖²`.
pub fn h_norm(n: usize) -> BigInt {
    let mut f = BigInt::one();
    for k in 2..=n {
        f *= k;
    }
    if n % 2 == 1 {
        f * (n + 2)
    } else {
        f * (n + 1)
    }
}

/// `β_n = h_n / h_{n−1}`, defined for `n ≥ 1`.
pub fn beta(n: usize) -> Result<BigInt> {
    if n == 0 {
        return Err(domain("beta", 0.0, "n ≥ 1"));
    }
    Ok(BigInt::from(beta_u(n)))
}

fn beta_u(n: usize) -> usize {
    if n % 2 == 1 {
        n + 2
    } else {
        n
    }
}

/// `β_k` as a float, with `β_0 = 0` so recurrences start cleanly.
pub(crate) fn beta_f64(k: usize) -> f64 {
    if k == 0 {
        0.0
    } else {
        beta_u(k) as f64
    }
}

/// `ln h_n`.
pub fn ln_h_norm(n: usize) -> f64 {
    let extra = if n % 2 == 1 { n + 2 } else { n + 1 };
    ln_factorial(n) + (extra as f64).ln()
}

/// `h_n` and `β_n` for `0 ≤ n ≤ nmax`; immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormTable {
    h: Vec<BigInt>,
}

impl NormTable {
    pub fn new(nmax: usize) -> Self {
        let mut h = Vec::with_capacity(nmax + 1);
        let mut f = BigInt::one();
        for n in 0..=nmax {
            if n > 0 {
                f *= n;
            }
            h.push(if n % 2 == 1 {
                &f * (n + 2)
            } else {
                &f * (n + 1)
            });
        }
        NormTable { h }
    }

    pub fn nmax(&self) -> usize {
        self.h.len() - 1
    }

    pub fn h(&self, n: usize) -> &BigInt {
        &self.h[n]
    }

    /// `h_n / h_{n−1}` computed from the stored norms; `None` for `n = 0` or
    /// if the division is inexact.
    pub fn beta(&self, n: usize) -> Option<BigInt> {
        if n == 0 || n > self.nmax() {
            return None;
        }
        let (q, r) = num_integer::Integer::div_rem(&self.h[n], &self.h[n - 1]);
        r.is_zero().then_some(q)
    }
}

fn three_term(nmax: usize, sign: i64) -> Vec<RealPolynomial> {
    let mut out: Vec<RealPolynomial> = Vec::with_capacity(nmax + 1);
    out.push(Polynomial::one());
    if nmax == 0 {
        return out;
    }
    out.push(Polynomial::monomial(1));
    for n in 1..nmax {
        let b = BigInt::from(sign * beta_u(n) as i64);
        let next = &out[n].shift() + &out[n - 1].scale(&b);
        out.push(next);
    }
    out
}

/// `P_0, …, P_nmax`.
pub fn p_polys(nmax: usize) -> Vec<RealPolynomial> {
    three_term(nmax, 1)
}

/// `Q_0, …, Q_nmax`.
pub fn q_polys(nmax: usize) -> Vec<RealPolynomial> {
    three_term(nmax, -1)
}

/// Monic `P_n` with integer coefficients.
pub fn p_poly(n: usize) -> RealPolynomial {
    p_polys(n).pop().unwrap_or_else(Polynomial::one)
}

/// Monic `Q_n` with integer coefficients.
pub fn q_poly(n: usize) -> RealPolynomial {
    q_polys(n).pop().unwrap_or_else(Polynomial::one)
}

/// `H_0, …, H_nmax` (probabilists' monic Hermite).
pub fn hermite_polys(nmax: usize) -> Vec<RealPolynomial> {
    let mut out: Vec<RealPolynomial> = Vec::with_capacity(nmax + 1);
    out.push(Polynomial::one());
    if nmax == 0 {
        return out;
    }
    out.push(Polynomial::monomial(1));
    for n in 1..nmax {
        let next = &out[n].shift() - &out[n - 1].scale(&BigInt::from(n));
        out.push(next);
    }
    out
}

/// Monic probabilists' Hermite polynomial `H_n`.
pub fn hermite_monic(n: usize) -> RealPolynomial {
    hermite_polys(n).pop().unwrap_or_else(Polynomial::one)
}

/// Precomputed `P_0, …, P_m` for repeated quaternion evaluation; shared
/// freely between threads once built.
#[derive(Debug, Clone)]
pub struct PTable {
    p: Vec<DdPolynomial>,
    h: Vec<f64>,
}

impl PTable {
    /// Table up to degree `m ≤ MAX_EXACT_DEGREE + 1`.
    pub fn new(m: usize) -> Result<Self> {
        if m > MAX_EXACT_DEGREE + 1 {
            return Err(Error::ExactRange {
                n: m,
                max: MAX_EXACT_DEGREE + 1,
            });
        }
        let norms = NormTable::new(m);
        Ok(PTable {
            p: p_polys(m).iter().map(DdPolynomial::from_integer).collect(),
            h: (0..=m)
                .map(|k| crate::poly::big_to_f64(norms.h(k)))
                .collect(),
        })
    }

    pub fn max_degree(&self) -> usize {
        self.p.len() - 1
    }

    /// `P_k(x)`.
    pub fn eval(&self, k: usize, x: PureQuaternion) -> Quaternion {
        self.p[k].eval_pure(x)
    }

    /// `h_k` as a float.
    pub fn h(&self, k: usize) -> f64 {
        self.h[k]
    }
}

pub(crate) fn check_unit(what: &'static str, u: PureQuaternion) -> Result<()> {
    let r = u.norm();
    if (r - 1.0).abs() > 1e-9 || !r.is_finite() {
        return Err(domain(what, r, "|u| = 1"));
    }
    Ok(())
}

/// `H_n(x)` by the plain three-term recurrence (overflows for large `n`).
pub fn hermite_value(n: usize, x: f64) -> f64 {
    let (mut a, mut b) = (1.0, x);
    if n == 0 {
        return a;
    }
    for k in 1..n {
        let c = x * b - k as f64 * a;
        a = b;
        b = c;
    }
    b
}

/// `uⁿ` for a unit pure quaternion, using `u² = −1`.
fn unit_power(u: PureQuaternion, n: usize) -> Quaternion {
    let sign = if (n / 2).is_multiple_of(2) { 1.0 } else { -1.0 };
    if n.is_multiple_of(2) {
        Quaternion::real(sign)
    } else {
        Quaternion::from(u) * sign
    }
}

/// `P_n(us)` through the Hermite representation
/// `P_n = (uⁿ/s) H_{n+1}(s)` (even `n`) or `(uⁿ/s²)(s H_{n+1}(s) + H_n(s))` (odd `n`).
pub fn p_eval_hermite(n: usize, u: PureQuaternion, s: f64) -> Result<Quaternion> {
    if !(s > 0.0) {
        return Err(domain("p_eval_hermite", s, "s > 0"));
    }
    check_unit("p_eval_hermite", u)?;
    let hn1 = hermite_value(n + 1, s);
    let q = if n.is_multiple_of(2) {
        hn1 / s
    } else {
        (s * hn1 + hermite_value(n, s)) / (s * s)
    };
    Ok(unit_power(u, n) * q)
}

/// `(ψ_n(x), ψ_{n+1}(x))` in log-scaled form `(a, b, L)` with
/// `ψ_n = a·e^L`, `ψ_{n+1} = b·e^L`, where
/// `ψ_k(x) = e^{−x²/4} H_k(x) / √(k!)`.
pub(crate) fn hermite_function_pair(n: usize, x: f64) -> (f64, f64, f64) {
    let mut a = 1.0;
    let mut b = x;
    let mut l = -0.25 * x * x;
    for k in 1..=n {
        let c = (x * b - (k as f64).sqrt() * a) / ((k + 1) as f64).sqrt();
        a = b;
        b = c;
        let m = a.abs().max(b.abs());
        if m > RESCALE_BIG || (m < 1.0 / RESCALE_BIG && m > 0.0) {
            let e = m.ln();
            a /= m;
            b /= m;
            l += e;
        }
    }
    (a, b, l)
}

/// The normalized Hermite function `ψ_n(x) = e^{−x²/4} H_n(x)/√(n!)`.
pub fn hermite_function(n: usize, x: f64) -> f64 {
    let (a, _, l) = hermite_function_pair(n, x);
    a * l.exp()
}

/// `e^{−x²/4} H_n(x)` as a scaled value, finite for any `n`.
pub fn weighted_hermite(n: usize, x: f64) -> Scaled {
    let (a, _, l) = hermite_function_pair(n, x);
    Scaled::new(a, l + 0.5 * ln_factorial(n))
}

/// Orthonormal `q_k = Q_k/√h_k` at `s`: returns `(q_n, q_{n+1}, L)` with the
/// true values equal to the mantissas times `e^L`.
pub(crate) fn orthonormal_q_pair(n: usize, s: f64) -> (f64, f64, f64) {
    let mut a = 1.0;
    let mut b = s / beta_f64(1).sqrt();
    let mut l = 0.0;
    for k in 1..=n {
        let c = (s * b - beta_f64(k).sqrt() * a) / beta_f64(k + 1).sqrt();
        a = b;
        b = c;
        let m = a.abs().max(b.abs());
        if m > RESCALE_BIG || (m < 1.0 / RESCALE_BIG && m > 0.0) {
            a /= m;
            b /= m;
            l += m.ln();
        }
    }
    (a, b, l)
}

/// `e^{−s²/4} Q_n(s)/√h_n` as a scaled value.
///
/// Uses the Hermite-function representation for `|s| ≥ 1` and the
/// orthonormal `Q` recurrence near the origin, where the Hermite form
/// divides by `s²`.
pub fn weighted_q_scaled(n: usize, s: f64) -> Scaled {
    if s.abs() < 1.0 {
        let (a, _, l) = orthonormal_q_pair(n, s);
        return Scaled::new(a, l - 0.25 * s * s);
    }
    let (a, b, l) = hermite_function_pair(n, s);
    if n.is_multiple_of(2) {
        Scaled::new(b / s, l)
    } else {
        let v = (s * ((n + 1) as f64).sqrt() * b + a) / (s * s * ((n + 2) as f64).sqrt());
        Scaled::new(v, l)
    }
}

/// `e^{−s²/4} Q_n(s)/√h_n`, stable for `n` up to 10⁵ and beyond.
pub fn weighted_q(n: usize, s: f64) -> f64 {
    weighted_q_scaled(n, s).value()
}

/// The `n` real zeros of `Q_n`, sorted ascending, for `1 ≤ n ≤ 40`.
///
/// Brackets sign changes on a `10n`-point grid over `[−2√(n+2), 2√(n+2)]`
/// and refines each by bisection to `1e-12`.
pub fn q_zeros(n: usize) -> Result<Vec<f64>> {
    if n == 0 || n > MAX_ZERO_DEGREE {
        return Err(domain("q_zeros", n as f64, "1 ≤ n ≤ 40"));
    }
    let f = |x: f64| orthonormal_q_pair(n, x).0;
    let half = 2.0 * ((n + 2) as f64).sqrt();
    let m = 10 * n;
    let grid = |i: usize| -half + 2.0 * half * i as f64 / (m - 1) as f64;
    let mut roots = Vec::with_capacity(n);
    let mut prev_x = grid(0);
    let mut prev_f = f(prev_x);
    for i in 1..m {
        let x = grid(i);
        let fx = f(x);
        if fx == 0.0 {
            roots.push(x);
        } else if prev_f != 0.0 && (fx < 0.0) != (prev_f < 0.0) {
            roots.push(bisect(&f, prev_x, x, 1e-12));
        }
        prev_x = x;
        prev_f = fx;
    }
    if roots.len() != n {
        return Err(Error::Precondition(
            "zero bracketing did not isolate all roots",
        ));
    }
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(p: &RealPolynomial) -> Vec<i64> {
        p.coeffs()
            .iter()
            .map(|c| i64::try_from(c.clone()).unwrap())
            .collect()
    }

    #[test]
    fn p_examples() {
        assert_eq!(ints(&p_poly(0)), [1]);
        assert_eq!(ints(&p_poly(4)), [15, 0, 10, 0, 1]);
        assert_eq!(ints(&p_poly(9)), [0, 3465, 0, 2772, 0, 594, 0, 44, 0, 1]);
    }

    #[test]
    fn q_examples() {
        assert_eq!(ints(&q_poly(1)), [0, 1]);
        assert_eq!(ints(&q_poly(6)), [-105, 0, 105, 0, -21, 0, 1]);
    }

    #[test]
    fn hermite_examples() {
        assert_eq!(ints(&hermite_monic(2)), [-1, 0, 1]);
        assert_eq!(ints(&hermite_monic(3)), [0, -3, 0, 1]);
        assert_eq!(hermite_value(3, 2.0), 2.0);
    }

    #[test]
    fn norms() {
        assert_eq!(h_norm(5), BigInt::from(840));
        assert_eq!(beta(5).unwrap(), BigInt::from(7));
        assert_eq!(h_norm(8), BigInt::from(362880));
        assert_eq!(beta(8).unwrap(), BigInt::from(8));
        assert!(beta(0).is_err());
        let t = NormTable::new(30);
        for n in 1..=30 {
            assert_eq!(t.beta(n).unwrap(), beta(n).unwrap());
            assert_eq!(t.h(n), &h_norm(n));
        }
        for n in 0..=30 {
            let direct = crate::poly::big_to_f64(&h_norm(n)).ln();
            assert!((ln_h_norm(n) - direct).abs() < 1e-12 * direct.max(1.0));
        }
    }

    #[test]
    fn hermite_representation_examples() {
        let v = p_eval_hermite(2, PureQuaternion::I, 2.0).unwrap();
        assert!(v.dist(Quaternion::real(-1.0)) < 1e-14);
        let u = PureQuaternion::new(0.6, 0.0, 0.8);
        let w = p_eval_hermite(1, u, 1.7).unwrap();
        assert!(w.dist(Quaternion::from(u.scale(1.7))) < 1e-14);
        assert!(p_eval_hermite(2, u, 0.0).is_err());
        assert!(p_eval_hermite(2, u.scale(2.0), 1.0).is_err());
    }

    #[test]
    fn weighted_q_examples() {
        assert!((weighted_q(0, 1.0) - (-0.25f64).exp()).abs() < 1e-15);
        let n = 10_000;
        let v = weighted_q(n, 2.0 * (n as f64).sqrt() * 0.5);
        assert!(v.is_finite() && v != 0.0);
    }

    #[test]
    fn small_zero_sets() {
        let z = q_zeros(2).unwrap();
        assert!((z[0] + 3f64.sqrt()).abs() < 1e-11 && (z[1] - 3f64.sqrt()).abs() < 1e-11);
        let z = q_zeros(3).unwrap();
        assert!((z[0] + 5f64.sqrt()).abs() < 1e-11);
        assert!(z[1].abs() < 1e-11);
        assert!((z[2] - 5f64.sqrt()).abs() < 1e-11);
        assert!(q_zeros(0).is_err());
        assert!(q_zeros(41).is_err());
    }
}
