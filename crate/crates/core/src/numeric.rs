//! Small floating-point helpers: double-double arithmetic for exact-coefficient
//! evaluation, log-scaled values, and log-factorials.

use num_bigint::BigInt;
#[allow(unused_imports)] // unused when std is in the build graph
use num_traits::{Float, FromPrimitive, ToPrimitive};

/// An unevaluated sum `hi + lo` carrying roughly 106 bits of precision.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, libm::fma(a, b, -p))
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };

    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    /// Nearest double-double to an integer (exact for |a| < 2^106).
    pub fn from_bigint(a: &BigInt) -> Dd {
        let hi = a.to_f64().unwrap_or(f64::NAN);
        if !hi.is_finite() {
            return Dd { hi, lo: 0.0 };
        }
        let rest = match BigInt::from_f64(hi) {
            Some(h) => a - h,
            None => return Dd { hi, lo: 0.0 },
        };
        let lo = rest.to_f64().unwrap_or(0.0);
        let (hi, lo) = quick_two_sum(hi, lo);
        Dd { hi, lo }
    }

    pub fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Dd { hi, lo }
    }

    pub fn mul(self, o: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, o.hi);
        let e = e + (self.hi * o.lo + self.lo * o.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    pub fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

/// A real number stored as `mantissa · exp(ln_scale)`, for quantities such as
/// `√(n!)` or `H_n(s)` that leave the range of `f64` for large `n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scaled {
    pub mantissa: f64,
    pub ln_scale: f64,
}

impl Scaled {
    pub fn new(mantissa: f64, ln_scale: f64) -> Self {
        Scaled { mantissa, ln_scale }
    }

    /// The represented value; may overflow to infinity or underflow to zero.
    pub fn value(&self) -> f64 {
        self.mantissa * self.ln_scale.exp()
    }

    /// `ln |value|` (`-inf` for zero).
    pub fn ln_abs(&self) -> f64 {
        self.mantissa.abs().ln() + self.ln_scale
    }

    /// The value multiplied by `exp(-ln_unit)`.
    pub fn in_units_of(&self, ln_unit: f64) -> f64 {
        self.mantissa * (self.ln_scale - ln_unit).exp()
    }
}

/// `ln(n!)`.
pub fn ln_factorial(n: usize) -> f64 {
    if n < 2 {
        return 0.0;
    }
    if n <= 20 {
        let mut p = 1.0f64;
        for k in 2..=n {
            p *= k as f64;
        }
        return p.ln();
    }
    libm::lgamma(n as f64 + 1.0)
}

/// Rescaling threshold for three-term recurrences run in log-scaled form.
pub(crate) const RESCALE_BIG: f64 = 1e150;

/// `sin(x)/x` with the removable singularity filled in.
pub fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

/// Bisection on a sign change of `f` in `[a, b]` down to an interval of width `tol`.
pub(crate) fn bisect<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let mut fa = f(a);
    if fa == 0.0 {
        return a;
    }
    for _ in 0..200 {
        if (b - a).abs() <= tol {
            break;
        }
        let m = 0.5 * (a + b);
        let fm = f(m);
        if fm == 0.0 {
            return m;
        }
        if (fm < 0.0) == (fa < 0.0) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}
