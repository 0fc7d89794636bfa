//! Moore (Dyson) determinants of self-dual quaternion matrices.
//!
//! The determinant is the cycle expansion
//! `Det_M A = Σ_σ sgn(σ) Π_{cycles} Re(A[a₀][a₁] A[a₁][a₂] ⋯ A[a_l][a₀])`,
//! which is real for self-dual `A`. Its square equals the ordinary
//! determinant of the `2k × 2k` complex embedding, which serves as an
//! independent check.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::quaternion::{embed, Quaternion};

/// Largest matrix size the cycle expansion accepts by default.
pub const DEFAULT_MAX_SIZE: usize = 6;

/// Relative tolerance of the self-duality check.
pub const SELF_DUAL_TOLERANCE: f64 = 1e-9;

/// A square quaternion matrix intended to satisfy `A[j][i] = conj(A[i][j])`.
///
/// Self-duality is not enforced on construction; it is checked by
/// [`validate_self_dual`] and by [`moore_det`].
#[derive(Debug, Clone, PartialEq)]
pub struct SelfDualQuaternionMatrix {
    size: usize,
    entries: Vec<Quaternion>,
}

impl SelfDualQuaternionMatrix {
    /// Builds a matrix from row-major entries.
    pub fn from_rows(size: usize, entries: Vec<Quaternion>) -> Result<Self> {
        if entries.len() != size * size {
            return Err(Error::Precondition("entry count must equal size²"));
        }
        Ok(SelfDualQuaternionMatrix { size, entries })
    }

    pub fn from_fn<F: FnMut(usize, usize) -> Quaternion>(size: usize, mut f: F) -> Self {
        let mut entries = Vec::with_capacity(size * size);
        for i in 0..size {
            for j in 0..size {
                entries.push(f(i, j));
            }
        }
        SelfDualQuaternionMatrix { size, entries }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> Quaternion {
        self.entries[i * self.size + j]
    }

    pub fn set(&mut self, i: usize, j: usize, q: Quaternion) {
        self.entries[i * self.size + j] = q;
    }

    /// Product of the real parts of the diagonal.
    pub fn diagonal_product(&self) -> f64 {
        (0..self.size).map(|i| self.get(i, i).w).product()
    }

    /// Largest diagonal magnitude (falls back to the largest entry, then 1).
    pub fn scale(&self) -> f64 {
        let d = (0..self.size)
            .map(|i| self.get(i, i).norm())
            .fold(0.0, f64::max);
        if d > 0.0 {
            return d;
        }
        let m = self.entries.iter().map(|q| q.norm()).fold(0.0, f64::max);
        if m > 0.0 {
            m
        } else {
            1.0
        }
    }
}

/// Outcome of [`validate_self_dual`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SelfDualCheck {
    pub is_self_dual: bool,
    /// `max |A[j][i] − conj(A[i][j])|` over all `i, j` (diagonal included).
    pub max_deviation: f64,
}

/// Reports how far `a` is from self-dual; accepts deviations up to
/// `1e-9 · scale`.
pub fn validate_self_dual(a: &SelfDualQuaternionMatrix) -> SelfDualCheck {
    let mut dev = 0.0f64;
    for i in 0..a.size {
        for j in i..a.size {
            dev = dev.max(a.get(j, i).dist(a.get(i, j).conj()));
        }
    }
    SelfDualCheck {
        is_self_dual: dev <= SELF_DUAL_TOLERANCE * a.scale(),
        max_deviation: dev,
    }
}

/// Moore determinant with the default size limit.
pub fn moore_det(a: &SelfDualQuaternionMatrix) -> Result<f64> {
    moore_det_with_limit(a, DEFAULT_MAX_SIZE)
}

/// Moore determinant of a self-dual matrix of size at most `max_size`.
pub fn moore_det_with_limit(a: &SelfDualQuaternionMatrix, max_size: usize) -> Result<f64> {
    if a.size > max_size || a.size > 16 {
        return Err(Error::UnsupportedSize {
            size: a.size,
            max: max_size.min(16),
        });
    }
    let check = validate_self_dual(a);
    if !check.is_self_dual {
        return Err(Error::NotSelfDual {
            deviation: check.max_deviation,
            tolerance: SELF_DUAL_TOLERANCE * a.scale(),
        });
    }
    let full = (1u32 << a.size) - 1;
    Ok(expand(a, full))
}

/// Sum over permutations of the indices in `mask`, peeling off the cycle
/// through the smallest remaining index.
fn expand(a: &SelfDualQuaternionMatrix, mask: u32) -> f64 {
    if mask == 0 {
        return 1.0;
    }
    let first = mask.trailing_zeros() as usize;
    let rest = mask & !(1 << first);
    let mut total = 0.0;
    walk(a, first, first, Quaternion::ONE, 1, rest, &mut total);
    total
}

/// Extends the open path `first → … → current` (with `len` vertices and
/// accumulated product `prod`) by either closing it or visiting a free index.
fn walk(
    a: &SelfDualQuaternionMatrix,
    first: usize,
    current: usize,
    prod: Quaternion,
    len: usize,
    free: u32,
    total: &mut f64,
) {
    let closed = prod * a.get(current, first);
    let sign = if len % 2 == 1 { 1.0 } else { -1.0 };
    *total += sign * closed.w * expand(a, free);
    let mut rem = free;
    while rem != 0 {
        let j = rem.trailing_zeros() as usize;
        rem &= rem - 1;
        walk(
            a,
            first,
            j,
            prod * a.get(current, j),
            len + 1,
            free & !(1 << j),
            total,
        );
    }
}

/// Determinant of the `2k × 2k` complex embedding, via LU with partial
/// pivoting. For self-dual input this is real and equals `moore_det(a)²`.
pub fn embedding_det(a: &SelfDualQuaternionMatrix) -> Complex64 {
    let k = a.size;
    let m = 2 * k;
    let mut mat = vec![Complex64::zero(); m * m];
    for i in 0..k {
        for j in 0..k {
            let e = embed(a.get(i, j));
            mat[(2 * i) * m + 2 * j] = e.a;
            mat[(2 * i) * m + 2 * j + 1] = e.b;
            mat[(2 * i + 1) * m + 2 * j] = e.c;
            mat[(2 * i + 1) * m + 2 * j + 1] = e.d;
        }
    }
    let mut det = Complex64::new(1.0, 0.0);
    for col in 0..m {
        let mut piv = col;
        for r in col + 1..m {
            if mat[r * m + col].norm() > mat[piv * m + col].norm() {
                piv = r;
            }
        }
        if mat[piv * m + col].is_zero() {
            return Complex64::zero();
        }
        if piv != col {
            for c in 0..m {
                mat.swap(piv * m + c, col * m + c);
            }
            det = -det;
        }
        let p = mat[col * m + col];
        det *= p;
        for r in col + 1..m {
            let f = mat[r * m + col] / p;
            if f.is_zero() {
                continue;
            }
            for c in col..m {
                let v = mat[col * m + c];
                mat[r * m + c] -= f * v;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(w: f64, x: f64, y: f64, z: f64) -> Quaternion {
        Quaternion::new(w, x, y, z)
    }

    #[test]
    fn one_by_one() {
        let a = SelfDualQuaternionMatrix::from_rows(1, vec![Quaternion::real(2.5)]).unwrap();
        assert_eq!(moore_det(&a).unwrap(), 2.5);
    }

    #[test]
    fn two_by_two_is_ac_minus_abs_b_squared() {
        let b = q(0.3, -1.0, 0.5, 2.0);
        let a = SelfDualQuaternionMatrix::from_rows(
            2,
            vec![Quaternion::real(4.0), b, b.conj(), Quaternion::real(3.0)],
        )
        .unwrap();
        let d = moore_det(&a).unwrap();
        assert!((d - (12.0 - b.norm_sqr())).abs() < 1e-13);
        let e = embedding_det(&a);
        assert!((e.re - d * d).abs() < 1e-12 * d * d);
        assert!(e.im.abs() < 1e-12);
    }

    #[test]
    fn self_duality_check() {
        let b = q(1.0, 2.0, 0.0, -1.0);
        let ok = SelfDualQuaternionMatrix::from_rows(
            2,
            vec![Quaternion::real(1.0), b, b.conj(), Quaternion::real(2.0)],
        )
        .unwrap();
        assert_eq!(
            validate_self_dual(&ok),
            SelfDualCheck {
                is_self_dual: true,
                max_deviation: 0.0
            }
        );
        let bad = SelfDualQuaternionMatrix::from_rows(
            2,
            vec![
                Quaternion::ZERO,
                Quaternion::I,
                Quaternion::I,
                Quaternion::ZERO,
            ],
        )
        .unwrap();
        let c = validate_self_dual(&bad);
        assert!(!c.is_self_dual);
        assert_eq!(c.max_deviation, 2.0);
        assert!(matches!(moore_det(&bad), Err(Error::NotSelfDual { .. })));
    }

    #[test]
    fn size_limit() {
        let a = SelfDualQuaternionMatrix::from_fn(7, |i, j| {
            if i == j {
                Quaternion::ONE
            } else {
                Quaternion::ZERO
            }
        });
        assert!(matches!(
            moore_det(&a),
            Err(Error::UnsupportedSize { size: 7, max: 6 })
        ));
        assert_eq!(moore_det_with_limit(&a, 7).unwrap(), 1.0);
    }

    #[test]
    fn diagonal_three_by_three() {
        let a = SelfDualQuaternionMatrix::from_fn(3, |i, j| {
            if i == j {
                Quaternion::real((i + 2) as f64)
            } else {
                Quaternion::ZERO
            }
        });
        assert_eq!(moore_det(&a).unwrap(), 24.0);
    }
}
