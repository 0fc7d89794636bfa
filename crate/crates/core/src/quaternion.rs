//! Quaternions, pure quaternions (points of R³), the 2×2 complex embedding
//! and the rotation action `Ad_q x = q x q⁻¹`.

use core::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{domain, Result};

/// A quaternion `w + x i + y j + z k`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Quaternion { w, x, y, z }
    }

    pub const fn real(w: f64) -> Self {
        Quaternion::new(w, 0.0, 0.0, 0.0)
    }

    pub fn conj(self) -> Self {
        Quaternion::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn norm_sqr(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn norm(self) -> f64 {
        libm::hypot(libm::hypot(self.w, self.x), libm::hypot(self.y, self.z))
    }

    /// `q⁻¹ = conj(q)/|q|²`, or `None` for `q = 0`.
    pub fn inverse(self) -> Option<Self> {
        let n2 = self.norm_sqr();
        if n2 == 0.0 {
            None
        } else {
            Some(self.conj() / n2)
        }
    }

    /// The imaginary part as a pure quaternion.
    pub fn vector(self) -> PureQuaternion {
        PureQuaternion::new(self.x, self.y, self.z)
    }

    /// Euclidean distance in R⁴, handy for tolerance checks.
    pub fn dist(self, other: Self) -> f64 {
        (self - other).norm()
    }

    /// Integer power by repeated squaring.
    pub fn powi(self, mut n: u32) -> Self {
        let mut base = self;
        let mut acc = Quaternion::ONE;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            n >>= 1;
        }
        acc
    }
}

/// Hamilton product.
pub fn mul(q: Quaternion, r: Quaternion) -> Quaternion {
    q * r
}

/// Quaternion conjugate.
pub fn conj(q: Quaternion) -> Quaternion {
    q.conj()
}

impl Mul for Quaternion {
    type Output = Quaternion;

    fn mul(self, r: Quaternion) -> Quaternion {
        let q = self;
        Quaternion::new(
            q.w * r.w - q.x * r.x - q.y * r.y - q.z * r.z,
            q.w * r.x + q.x * r.w + q.y * r.z - q.z * r.y,
            q.w * r.y - q.x * r.z + q.y * r.w + q.z * r.x,
            q.w * r.z + q.x * r.y - q.y * r.x + q.z * r.w,
        )
    }
}

impl Mul<f64> for Quaternion {
    type Output = Quaternion;

    fn mul(self, a: f64) -> Quaternion {
        Quaternion::new(self.w * a, self.x * a, self.y * a, self.z * a)
    }
}

impl Div<f64> for Quaternion {
    type Output = Quaternion;

    fn div(self, a: f64) -> Quaternion {
        Quaternion::new(self.w / a, self.x / a, self.y / a, self.z / a)
    }
}

impl Add for Quaternion {
    type Output = Quaternion;

    fn add(self, r: Quaternion) -> Quaternion {
        Quaternion::new(self.w + r.w, self.x + r.x, self.y + r.y, self.z + r.z)
    }
}

impl AddAssign for Quaternion {
    fn add_assign(&mut self, r: Quaternion) {
        *self = *self + r;
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;

    fn sub(self, r: Quaternion) -> Quaternion {
        Quaternion::new(self.w - r.w, self.x - r.x, self.y - r.y, self.z - r.z)
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;

    fn neg(self) -> Quaternion {
        Quaternion::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl From<f64> for Quaternion {
    fn from(w: f64) -> Self {
        Quaternion::real(w)
    }
}

impl From<PureQuaternion> for Quaternion {
    fn from(p: PureQuaternion) -> Self {
        Quaternion::new(0.0, p.x, p.y, p.z)
    }
}

/// A quaternion with zero real part, identified with the point `(x, y, z)` of R³.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PureQuaternion {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl PureQuaternion {
    pub const ZERO: PureQuaternion = PureQuaternion::new(0.0, 0.0, 0.0);
    pub const I: PureQuaternion = PureQuaternion::new(1.0, 0.0, 0.0);
    pub const J: PureQuaternion = PureQuaternion::new(0.0, 1.0, 0.0);
    pub const K: PureQuaternion = PureQuaternion::new(0.0, 0.0, 1.0);

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        PureQuaternion { x, y, z }
    }

    pub fn norm_sqr(self) -> f64 {
        self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn norm(self) -> f64 {
        libm::hypot(libm::hypot(self.x, self.y), self.z)
    }

    pub fn dot(self, o: Self) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(self, o: Self) -> Self {
        PureQuaternion::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    pub fn scale(self, a: f64) -> Self {
        PureQuaternion::new(self.x * a, self.y * a, self.z * a)
    }

    pub fn to_quaternion(self) -> Quaternion {
        self.into()
    }

    /// Polar form `x = u·s` with `s = |x|` and `|u| = 1`.
    ///
    /// For `x = 0` this returns `(i, 0)`; callers that divide by `s` must
    /// handle that case before using `u`.
    pub fn polar(self) -> (PureQuaternion, f64) {
        let s = self.norm();
        if s == 0.0 {
            (PureQuaternion::I, 0.0)
        } else {
            (self.scale(1.0 / s), s)
        }
    }
}

/// Polar decomposition of a point; see [`PureQuaternion::polar`].
pub fn polar(x: PureQuaternion) -> (PureQuaternion, f64) {
    x.polar()
}

impl Add for PureQuaternion {
    type Output = PureQuaternion;

    fn add(self, o: Self) -> Self {
        PureQuaternion::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for PureQuaternion {
    type Output = PureQuaternion;

    fn sub(self, o: Self) -> Self {
        PureQuaternion::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for PureQuaternion {
    type Output = PureQuaternion;

    fn neg(self) -> Self {
        PureQuaternion::new(-self.x, -self.y, -self.z)
    }
}

impl Mul for PureQuaternion {
    type Output = Quaternion;

    fn mul(self, o: Self) -> Quaternion {
        Quaternion::from(self) * Quaternion::from(o)
    }
}

/// `q x q⁻¹`, a rotation of `x` when `q ≠ 0`.
pub fn adjoint_action(q: Quaternion, x: PureQuaternion) -> Result<PureQuaternion> {
    let inv = q
        .inverse()
        .ok_or_else(|| domain("adjoint_action", 0.0, "q must be nonzero"))?;
    Ok((q * Quaternion::from(x) * inv).vector())
}

/// The complex 2×2 matrix `[[a, b], [c, d]]` representing a quaternion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexEmbedding {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
}

impl ComplexEmbedding {
    pub fn trace(&self) -> Complex64 {
        self.a + self.d
    }

    pub fn det(&self) -> Complex64 {
        self.a * self.d - self.b * self.c
    }

    pub fn matmul(&self, o: &Self) -> Self {
        ComplexEmbedding {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    /// Largest entrywise modulus of `self − o`.
    pub fn max_abs_diff(&self, o: &Self) -> f64 {
        [self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d]
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }
}

/// `φ(w + x₁i + x₂j + x₃k) = [[w + x₁i, x₂ + x₃i], [−x₂ + x₃i, w − x₁i]]`.
pub fn embed(q: Quaternion) -> ComplexEmbedding {
    ComplexEmbedding {
        a: Complex64::new(q.w, q.x),
        b: Complex64::new(q.y, q.z),
        c: Complex64::new(-q.y, q.z),
        d: Complex64::new(q.w, -q.x),
    }
}
