//! The kernel `K_n(x, y) = Σ_{k=0}^{n} P_k(x) conj(P_k(y)) / h_k`, its closed
//! form, correlation functions and densities.
//!
//! Convention: the kernel sums `k = 0..=n`, so the field has `N = n + 1`
//! points. For `x = us`, `y = vt`,
//! `K_n = ρ_n(s,t)(1 − uv)/2 + (−1)ⁿ δ_n(s,t)(1 + uv)/2` where
//! `ρ_n(s,t) = Σ Q_k(s)Q_k(t)/h_k` and `(−1)ⁿ δ_n(s,t) = ρ_n(s, −t)`.

use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)] // unused when std is in the build graph
use num_traits::Float;

use crate::error::{domain, Error, Result};
use crate::moore::{moore_det, SelfDualQuaternionMatrix};
use crate::numeric::RESCALE_BIG;
use crate::orthopoly::{beta_f64, check_unit, PTable, MAX_EXACT_DEGREE};
use crate::quadrature::GaussLegendre;
use crate::quaternion::{PureQuaternion, Quaternion};

/// Number of points of the field built from `K_n`.
pub const fn point_count(n: usize) -> usize {
    n + 1
}

/// Highest `n` accepted by [`cd_residual`].
pub const MAX_CD_DEGREE: usize = 40;

/// `K_n(us, vt)` together with its scalar decomposition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelValue {
    pub value: Quaternion,
    pub rho: f64,
    pub delta: f64,
    /// `(−1)ⁿ`.
    pub parity_sign: f64,
    pub u_dot_v: f64,
}

impl KernelValue {
    /// Rebuilds the quaternion value from `(ρ, δ)` and the two axes.
    pub fn reconstruct(&self, u: PureQuaternion, v: PureQuaternion) -> Quaternion {
        assemble(self.rho, self.parity_sign * self.delta, u, v)
    }
}

fn parity(n: usize) -> f64 {
    if n.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// `ρ(1 − uv)/2 + σδ(1 + uv)/2` with `sd = σδ`.
fn assemble(rho: f64, sd: f64, u: PureQuaternion, v: PureQuaternion) -> Quaternion {
    let uv = u * v;
    let one = Quaternion::ONE;
    (one - uv) * (0.5 * rho) + (one + uv) * (0.5 * sd)
}

/// `ρ_n(s, t)·e^{−(s²+t²)/4}` for arbitrary real `s`, `t`.
///
/// Runs the orthonormal recurrence `q_k = Q_k(s)/√h_k` jointly with the
/// normalized divided differences `e_k = (Q_k(t) − Q_k(s))/((t − s)√h_k)`,
/// which obey `e_{k+1} = (t e_k + q_k − √β_k e_{k−1})/√β_{k+1}`, then applies
/// Christoffel–Darboux in the form `√β_{n+1}(q_n e_{n+1} − q_{n+1} e_n)`.
/// There is no division by `t − s`, so `t = s` needs no special branch.
/// The `Q` recurrence runs on the argument of smaller modulus: the final
/// combination cancels `Q_n(s)Q_{n+1}(s)`, which is harmless only when
/// `Q(s)` is not exponentially larger than `Q(t)` relative to the weights.
pub fn cd_weighted(n: usize, s: f64, t: f64) -> f64 {
    let (s, t) = if s.abs() <= t.abs() { (s, t) } else { (t, s) };
    let r3 = beta_f64(1).sqrt();
    let (mut qa, mut qb, mut lq) = (1.0f64, s / r3, 0.0f64);
    let (mut ea, mut eb, mut le) = (0.0f64, 1.0 / r3, 0.0f64);
    let mut q_in_e = 1.0f64;
    let mut sb = r3;
    for k in 1..=n {
        let sb1 = beta_f64(k + 1).sqrt();
        let qc = (s * qb - sb * qa) / sb1;
        let ec = (t * eb + qb * q_in_e - sb * ea) / sb1;
        qa = qb;
        qb = qc;
        ea = eb;
        eb = ec;
        sb = sb1;
        let mq = qa.abs().max(qb.abs());
        let me = ea.abs().max(eb.abs());
        let mut changed = false;
        if mq > RESCALE_BIG || (mq < 1.0 / RESCALE_BIG && mq > 0.0) {
            qa /= mq;
            qb /= mq;
            lq += mq.ln();
            changed = true;
        }
        if me > RESCALE_BIG || (me < 1.0 / RESCALE_BIG && me > 0.0) {
            ea /= me;
            eb /= me;
            le += me.ln();
            changed = true;
        }
        if changed {
            q_in_e = (lq - le).exp();
        }
    }
    let m = sb * (qa * eb - qb * ea);
    if m == 0.0 {
        return 0.0;
    }
    m.signum() * (m.abs().ln() + lq + le - 0.25 * (s * s + t * t)).exp()
}

fn check_radius(what: &'static str, s: f64) -> Result<()> {
    if s > 0.0 && s.is_finite() {
        Ok(())
    } else {
        Err(domain(what, s, "radius > 0"))
    }
}

/// `(ρ_n(s,t), δ_n(s,t))` for `s, t > 0`, unweighted.
///
/// Overflows for large `n` or radii; use [`rho_delta_weighted`] there.
pub fn rho_delta(n: usize, s: f64, t: f64) -> Result<(f64, f64)> {
    let (r, d) = rho_delta_weighted(n, s, t)?;
    let w = (0.25 * (s * s + t * t)).exp();
    Ok((r * w, d * w))
}

/// `(ρ_n(s,t), δ_n(s,t))·e^{−(s²+t²)/4}` for `s, t > 0`.
pub fn rho_delta_weighted(n: usize, s: f64, t: f64) -> Result<(f64, f64)> {
    check_radius("rho_delta", s)?;
    check_radius("rho_delta", t)?;
    Ok((cd_weighted(n, s, t), parity(n) * cd_weighted(n, s, -t)))
}

/// The one-point function `ρ_n(s) = ρ_n(s, s)`.
pub fn rho_confluent(n: usize, s: f64) -> Result<f64> {
    Ok(rho_delta(n, s, s)?.0)
}

/// `δ_n(s) = δ_n(s, s) = Q_n(s)Q_{n+1}(s)/(s h_n)`.
pub fn delta_confluent(n: usize, s: f64) -> Result<f64> {
    Ok(rho_delta(n, s, s)?.1)
}

fn closed(
    n: usize,
    u: PureQuaternion,
    s: f64,
    v: PureQuaternion,
    t: f64,
    weighted: bool,
) -> Result<KernelValue> {
    check_unit("kernel_closed", u)?;
    check_unit("kernel_closed", v)?;
    let (mut rho, mut delta) = rho_delta_weighted(n, s, t)?;
    if !weighted {
        let w = (0.25 * (s * s + t * t)).exp();
        rho *= w;
        delta *= w;
    }
    let sign = parity(n);
    Ok(KernelValue {
        value: assemble(rho, sign * delta, u, v),
        rho,
        delta,
        parity_sign: sign,
        u_dot_v: u.dot(v),
    })
}

/// `K_n(us, vt)` from the closed form; valid for `n` up to 10⁵ as long as the
/// unweighted value fits in `f64`.
pub fn kernel_closed(
    n: usize,
    u: PureQuaternion,
    s: f64,
    v: PureQuaternion,
    t: f64,
) -> Result<KernelValue> {
    closed(n, u, s, v, t, false)
}

/// `K_n(us, vt)·e^{−(s²+t²)/4}`, with `rho` and `delta` weighted the same way.
pub fn kernel_closed_weighted(
    n: usize,
    u: PureQuaternion,
    s: f64,
    v: PureQuaternion,
    t: f64,
) -> Result<KernelValue> {
    closed(n, u, s, v, t, true)
}

/// `K_n(x, y)·√(f(x) f(y))` up to the constant `(2π)^{−3/2}`, i.e.
/// `K_n(x, y)·e^{−(|x|²+|y|²)/4}`, for any points including the origin.
pub fn kernel_at_weighted(n: usize, x: PureQuaternion, y: PureQuaternion) -> Quaternion {
    let (u, s) = x.polar();
    let (v, t) = y.polar();
    assemble(cd_weighted(n, s, t), cd_weighted(n, s, -t), u, v)
}

/// `K_n(x, y)` for any points, by the closed form.
pub fn kernel_at(n: usize, x: PureQuaternion, y: PureQuaternion) -> Quaternion {
    let w = (0.25 * (x.norm_sqr() + y.norm_sqr())).exp();
    kernel_at_weighted(n, x, y) * w
}

/// `K_n(x, y)` from the defining sum with exact-coefficient polynomials.
pub fn kernel_sum(n: usize, x: PureQuaternion, y: PureQuaternion) -> Result<Quaternion> {
    if n > MAX_EXACT_DEGREE {
        return Err(Error::ExactRange {
            n,
            max: MAX_EXACT_DEGREE,
        });
    }
    kernel_sum_with(&PTable::new(n)?, n, x, y)
}

/// [`kernel_sum`] reusing a prebuilt table (which must reach degree `n`).
pub fn kernel_sum_with(
    table: &PTable,
    n: usize,
    x: PureQuaternion,
    y: PureQuaternion,
) -> Result<Quaternion> {
    if n > table.max_degree() || n > MAX_EXACT_DEGREE {
        return Err(Error::ExactRange {
            n,
            max: table.max_degree().min(MAX_EXACT_DEGREE),
        });
    }
    let mut acc = Quaternion::ZERO;
    for k in 0..=n {
        acc += table.eval(k, x) * table.eval(k, y).conj() * (1.0 / table.h(k));
    }
    Ok(acc)
}

/// Residual of the Christoffel–Darboux relation together with the scale it
/// should be compared against.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CdResidual {
    /// `|x K + K ȳ − [P_{n+1}(x) conj(P_n(y)) + P_n(x) conj(P_{n+1}(y))]/h_n|`.
    pub residual: f64,
    /// Sum of the magnitudes of the terms entering the residual.
    pub scale: f64,
}

/// Christoffel–Darboux residual for `n ≤ 40`, using [`kernel_sum`].
pub fn cd_residual(n: usize, x: PureQuaternion, y: PureQuaternion) -> Result<CdResidual> {
    if n > MAX_CD_DEGREE {
        return Err(domain("cd_residual", n as f64, "n ≤ 40"));
    }
    let table = PTable::new(n + 1)?;
    let k = kernel_sum_with(&table, n, x, y)?;
    let (xq, yq) = (Quaternion::from(x), Quaternion::from(y));
    let lhs = xq * k + k * yq.conj();
    let (pn_x, pn_y) = (table.eval(n, x), table.eval(n, y));
    let (pm_x, pm_y) = (table.eval(n + 1, x), table.eval(n + 1, y));
    let h = table.h(n);
    let rhs = (pm_x * pn_y.conj() + pn_x * pm_y.conj()) * (1.0 / h);
    let scale = x.norm() * k.norm()
        + k.norm() * y.norm()
        + (pm_x.norm() * pn_y.norm() + pn_x.norm() * pm_y.norm()) / h;
    Ok(CdResidual {
        residual: (lhs - rhs).norm(),
        scale,
    })
}

/// `(2π)^{−3/2}`.
pub const GAUSS3_NORM: f64 = 0.063_493_635_934_240_97;

/// Background density `f(x) = (2π)^{−3/2} e^{−|x|²/2}`.
pub fn background_density(x: PureQuaternion) -> f64 {
    GAUSS3_NORM * (-0.5 * x.norm_sqr()).exp()
}

/// One-point function with respect to the background measure, `ρ_n(s)`.
pub fn intensity_background(n: usize, s: f64) -> Result<f64> {
    check_radius("intensity_background", s)?;
    rho_confluent(n, s)
}

/// One-point function with respect to Lebesgue measure,
/// `ρ_n(|x|) f(x)`; finite everywhere including `x = 0`.
pub fn intensity_lebesgue(n: usize, x: PureQuaternion) -> f64 {
    intensity_lebesgue_radial(n, x.norm())
}

/// [`intensity_lebesgue`] as a function of the radius.
pub fn intensity_lebesgue_radial(n: usize, r: f64) -> f64 {
    GAUSS3_NORM * cd_weighted(n, r, r)
}

/// Expected number of points per unit radius, `4πr² ρ_n(r) f(r)`.
pub fn radial_density(n: usize, r: f64) -> Result<f64> {
    if !(r >= 0.0) || !r.is_finite() {
        return Err(domain("radial_density", r, "r ≥ 0"));
    }
    Ok(4.0 * PI * r * r * intensity_lebesgue_radial(n, r))
}

/// Radius beyond which the intensity is negligible (`< e^{−70}` relative).
pub fn radial_cutoff(n: usize) -> f64 {
    2.0 * (n as f64 + 2.0).sqrt() + 12.0
}

/// Expected number of points in the ball of radius `r`, by composite
/// Gauss–Legendre quadrature of [`radial_density`].
pub fn radial_mass(n: usize, r: f64) -> Result<f64> {
    if !(r >= 0.0) {
        return Err(domain("radial_mass", r, "r ≥ 0"));
    }
    let gl = GaussLegendre::new(16);
    let panels = (r / 0.25).ceil().max(1.0) as usize;
    Ok(gl.integrate_composite(0.0, r, panels, |x| {
        4.0 * PI * x * x * intensity_lebesgue_radial(n, x)
    }))
}

/// Per-point radial distribution function: `radial_mass(n, r)/(n + 1)`.
pub fn radial_cdf(n: usize, r: f64) -> Result<f64> {
    Ok((radial_mass(n, r)? / point_count(n) as f64).min(1.0))
}

/// `∫_{R³} ρ_n f`, which equals the point count `n + 1`.
pub fn total_mass(n: usize) -> f64 {
    radial_mass(n, radial_cutoff(n)).unwrap_or(f64::NAN)
}

/// Gram matrix `[K_n(x_i, x_j)]`; the lower triangle is filled by conjugation.
pub fn gram_matrix(n: usize, points: &[PureQuaternion]) -> SelfDualQuaternionMatrix {
    let m = points.len();
    let mut g = SelfDualQuaternionMatrix::from_fn(m, |_, _| Quaternion::ZERO);
    for i in 0..m {
        for j in i..m {
            let mut k = kernel_at(n, points[i], points[j]);
            if i == j {
                k = Quaternion::real(k.w);
            }
            g.set(i, j, k);
            g.set(j, i, k.conj());
        }
    }
    g
}

fn check_nonzero(what: &'static str, x: PureQuaternion) -> Result<f64> {
    let s = x.norm();
    if s > 0.0 {
        Ok(s)
    } else {
        Err(domain(what, s, "point must be nonzero"))
    }
}

/// Two-point correlation `ρ(s)ρ(t) − [ρ(s,t)²(1+cos α)/2 + δ(s,t)²(1−cos α)/2]`.
pub fn pair_correlation(n: usize, x: PureQuaternion, y: PureQuaternion) -> Result<f64> {
    let s = check_nonzero("pair_correlation", x)?;
    let t = check_nonzero("pair_correlation", y)?;
    let c = (x.dot(y) / (s * t)).clamp(-1.0, 1.0);
    let (rs, _) = rho_delta(n, s, s)?;
    let (rt, _) = rho_delta(n, t, t)?;
    let (r, d) = rho_delta(n, s, t)?;
    Ok(rs * rt - (r * r * (1.0 + c) + d * d * (1.0 - c)) / 2.0)
}

/// Two-point correlation as the Moore determinant of the 2×2 Gram matrix.
pub fn pair_correlation_moore(n: usize, x: PureQuaternion, y: PureQuaternion) -> Result<f64> {
    moore_det(&gram_matrix(n, &[x, y]))
}

/// Three-point correlation on a sphere, which vanishes identically.
pub fn triple_gram_det(n: usize, points: &[PureQuaternion; 3]) -> Result<f64> {
    let r: Vec<f64> = points.iter().map(|p| p.norm()).collect();
    let rmax = r.iter().copied().fold(0.0, f64::max);
    let rmin = r.iter().copied().fold(f64::INFINITY, f64::min);
    if rmax - rmin > 1e-9 * rmax.max(1.0) {
        return Err(Error::Precondition(
            "triple_gram_det needs points of equal radius",
        ));
    }
    moore_det(&gram_matrix(n, points))
}
