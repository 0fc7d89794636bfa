//! Large-`n` approximations: Plancherel–Rotach and center approximations of
//! Hermite polynomials, bulk limits of the density and kernel, and the
//! kernel near the origin.
//!
//! Every approximation here is meant to be compared against the exact
//! finite-`n` quantities from [`crate::kernel`] and [`crate::orthopoly`].

use core::f64::consts::PI;

#[allow(unused_imports)] // unused when std is in the build graph
use num_traits::Float;

use crate::error::{domain, Result};
use crate::kernel::{
    intensity_lebesgue_radial, kernel_closed_weighted, radial_density, GAUSS3_NORM,
};
use crate::numeric::{ln_factorial, sinc, Scaled};
use crate::orthopoly::check_unit;
use crate::quaternion::{PureQuaternion, Quaternion};

/// Distance kept from the edge of the bulk: `x₀ ∈ [ε, 1 − ε]`, and radii in
/// `[ε√n, (2 − ε)√n]`.
pub const BULK_EPSILON: f64 = 0.2;

/// Smallest admissible `φ` (and `π − φ`) for [`pr_weighted_hermite`].
pub const PR_PHI_MARGIN: f64 = 0.05;

/// Radii accepted by the center approximations.
pub const CENTER_RANGE: (f64, f64) = (0.2, 5.0);

/// `ac(x) = sin 2x − 2x`.
pub fn ac(x: f64) -> f64 {
    (2.0 * x).sin() - 2.0 * x
}

/// `ac(φ)`, `ac(ψ)` and the phase combinations
/// `daleth_n = (n + 3/2)/2·(ac φ − ac ψ)`, `shin_n = (n + 3/2)/2·(ac φ + ac ψ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AcTriple {
    pub ac_phi: f64,
    pub ac_psi: f64,
    pub daleth: f64,
    pub shin: f64,
}

impl AcTriple {
    pub fn new(n: usize, phi: f64, psi: f64) -> Self {
        let h = 0.5 * (n as f64 + 1.5);
        let (a, b) = (ac(phi), ac(psi));
        AcTriple {
            ac_phi: a,
            ac_psi: b,
            daleth: h * (a - b),
            shin: h * (a + b),
        }
    }
}

/// Leading Plancherel–Rotach term for `e^{−x²/4} H_n(x)` at
/// `x = 2√(n + 1/2) cos φ`:
/// `(2/(πn))^{1/4} √(n!) (sin φ)^{−1/2} sin[((2n+1)/4)(sin 2φ − 2φ) + 3π/4]`.
///
/// The `√(n!)` factor is returned in `ln_scale`.
pub fn pr_weighted_hermite(n: usize, phi: f64) -> Result<Scaled> {
    if n == 0 {
        return Err(domain("pr_weighted_hermite", 0.0, "n ≥ 1"));
    }
    if !(PR_PHI_MARGIN..=PI - PR_PHI_MARGIN).contains(&phi) {
        return Err(domain("pr_weighted_hermite", phi, "φ ∈ [0.05, π − 0.05]"));
    }
    let nf = n as f64;
    let amp = (2.0 / (PI * nf)).powf(0.25) / phi.sin().sqrt();
    let phase = (2.0 * nf + 1.0) / 4.0 * ac(phi) + 0.75 * PI;
    Ok(Scaled::new(amp * phase.sin(), 0.5 * ln_factorial(n)))
}

/// `x = 2√(n + 1/2) cos φ`, the abscissa matching [`pr_weighted_hermite`].
pub fn pr_abscissa(n: usize, phi: f64) -> f64 {
    2.0 * (n as f64 + 0.5).sqrt() * phi.cos()
}

/// `ln A_n`, the Gamma-function prefactor of the center approximation:
/// `Γ(n/2 + 1) 2^{(n+1)/2} / √(π(n + 1/2))` for odd `n`,
/// `Γ((n+1)/2) 2^{n/2} / √π` for even `n`.
pub fn center_hermite_ln_amplitude(n: usize) -> f64 {
    let nf = n as f64;
    if n % 2 == 1 {
        libm::lgamma(nf / 2.0 + 1.0) - 0.5 * (PI * (nf + 0.5)).ln() + 0.5 * (nf + 1.0) * 2f64.ln()
    } else {
        libm::lgamma((nf + 1.0) / 2.0) - 0.5 * PI.ln() + 0.5 * nf * 2f64.ln()
    }
}

fn center_bracket(n: usize, s: f64, odd_sign: f64) -> f64 {
    let r = (n as f64 + 0.5).sqrt();
    let arg = s * r;
    let corr = s * s * s / (24.0 * r);
    if n % 2 == 1 {
        let sign = if ((n - 1) / 2).is_multiple_of(2) {
            1.0
        } else {
            -1.0
        };
        sign * (arg.sin() + odd_sign * corr * arg.cos())
    } else {
        let sign = if (n / 2).is_multiple_of(2) { 1.0 } else { -1.0 };
        sign * (arg.cos() + corr * arg.sin())
    }
}

fn check_center_s(what: &'static str, s: f64) -> Result<()> {
    if s.abs() <= 10.0 {
        Ok(())
    } else {
        Err(domain(what, s, "|s| ≤ 10"))
    }
}

/// Approximation of `H_n(s)` for fixed `s` and large `n`:
/// `H_n(s) ≈ A_n e^{s²/4} × bracket`, with bracket
/// `(−1)^{(n−1)/2}(sin(s r) − s³/(24r) cos(s r))` for odd `n` and
/// `(−1)^{n/2}(cos(s r) + s³/(24r) sin(s r))` for even `n`, `r = √(n + 1/2)`.
///
/// The relative error is `O(1/n)` uniformly for `|s| ≤ 10`.
pub fn center_hermite(n: usize, s: f64) -> Result<Scaled> {
    check_center_s("center_hermite", s)?;
    Ok(Scaled::new(
        center_bracket(n, s, -1.0),
        center_hermite_ln_amplitude(n) + 0.25 * s * s,
    ))
}

/// The same approximation with the printed normalization: no `e^{s²/4}`
/// factor and a `+` on the odd-`n` correction term. Kept for comparison.
pub fn center_hermite_printed(n: usize, s: f64) -> Result<Scaled> {
    check_center_s("center_hermite_printed", s)?;
    Ok(Scaled::new(
        center_bracket(n, s, 1.0),
        center_hermite_ln_amplitude(n),
    ))
}

/// A limit density value; outside the support the value is `0` and
/// `in_support` is false.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitValue {
    pub value: f64,
    pub in_support: bool,
}

fn limit_domain(what: &'static str, s: f64) -> Result<()> {
    if s > 0.0 && s.is_finite() {
        Ok(())
    } else {
        Err(domain(what, s, "s > 0"))
    }
}

/// Bulk density limit `ρ(s) = √(1 − s²)/((2π)² s²)` on `(0, 1)`, zero beyond.
pub fn rho_limit(s: f64) -> Result<LimitValue> {
    limit_domain("rho_limit", s)?;
    Ok(if s < 1.0 {
        LimitValue {
            value: (1.0 - s * s).sqrt() / (4.0 * PI * PI * s * s),
            in_support: true,
        }
    } else {
        LimitValue {
            value: 0.0,
            in_support: false,
        }
    })
}

/// Radial density limit `√(1 − s²)/π` on `(0, 1)`, zero beyond.
pub fn radial_limit(s: f64) -> Result<LimitValue> {
    limit_domain("radial_limit", s)?;
    Ok(if s < 1.0 {
        LimitValue {
            value: (1.0 - s * s).sqrt() / PI,
            in_support: true,
        }
    } else {
        LimitValue {
            value: 0.0,
            in_support: false,
        }
    })
}

/// Rescaled bulk coordinates `φ = arccos x₀` and
/// `s_n = 2√(n+3/2) cos(φ + σ/(2n sin²φ))`, `t_n` likewise with `τ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BulkCoordinates {
    pub n: usize,
    pub x0: f64,
    pub phi: f64,
    pub sigma: f64,
    pub tau: f64,
    pub s_n: f64,
    pub t_n: f64,
}

impl BulkCoordinates {
    pub fn new(n: usize, x0: f64, sigma: f64, tau: f64) -> Result<Self> {
        if n == 0 {
            return Err(domain("BulkCoordinates", 0.0, "n ≥ 1"));
        }
        if !(BULK_EPSILON..=1.0 - BULK_EPSILON).contains(&x0) {
            return Err(domain("BulkCoordinates", x0, "x₀ ∈ [0.2, 0.8]"));
        }
        let phi = x0.acos();
        let r = 2.0 * (n as f64 + 1.5).sqrt();
        let k = 1.0 / (2.0 * phi.sin().powi(2) * n as f64);
        let s_n = r * (phi + sigma * k).cos();
        let t_n = r * (phi + tau * k).cos();
        if !(s_n > 0.0 && t_n > 0.0) {
            return Err(domain(
                "BulkCoordinates",
                sigma.abs().max(tau.abs()),
                "offsets keep radii positive",
            ));
        }
        Ok(BulkCoordinates {
            n,
            x0,
            phi,
            sigma,
            tau,
            s_n,
            t_n,
        })
    }
}

/// `KK_n = 2√(n+3/2)/ρ(x₀) · K_n(u s_n, v t_n) √(f(s_n) f(t_n))`.
pub fn bulk_kernel_kk(
    n: usize,
    u: PureQuaternion,
    sigma: f64,
    v: PureQuaternion,
    tau: f64,
    x0: f64,
) -> Result<Quaternion> {
    let c = BulkCoordinates::new(n, x0, sigma, tau)?;
    let k = kernel_closed_weighted(n, u, c.s_n, v, c.t_n)?;
    let scale = 2.0 * (n as f64 + 1.5).sqrt() * GAUSS3_NORM / rho_limit(x0)?.value;
    Ok(k.value * scale)
}

/// The same rescaling applied to the `δ` part only:
/// `δ_n(s_n, t_n) e^{−(s_n²+t_n²)/4}`.
pub fn bulk_delta_weighted(n: usize, sigma: f64, tau: f64, x0: f64) -> Result<f64> {
    let c = BulkCoordinates::new(n, x0, sigma, tau)?;
    Ok(crate::kernel::rho_delta_weighted(n, c.s_n, c.t_n)?.1)
}

/// Bulk limit `sin(τ − σ)/(τ − σ) · (1 − uv)/2`.
pub fn bulk_kernel_limit(u: PureQuaternion, sigma: f64, v: PureQuaternion, tau: f64) -> Quaternion {
    (Quaternion::ONE - u * v) * (0.5 * sinc(tau - sigma))
}

fn check_bulk_radii(what: &'static str, n: usize, s: f64, t: f64) -> Result<()> {
    let r = (n as f64).sqrt();
    for x in [s, t] {
        if !(x >= BULK_EPSILON * r && x <= (2.0 - BULK_EPSILON) * r) {
            return Err(domain(what, x, "radius in [ε√n, (2 − ε)√n]"));
        }
    }
    if s == t {
        return Err(domain(what, s, "s ≠ t"));
    }
    Ok(())
}

/// Main term of `ρ_n(s,t) e^{−(s²+t²)/4}` in the bulk, as printed:
/// `√(2/π)/8 (n+3/2)^{−3/2} / [(cos φ − cos ψ) cos φ cos ψ √(sin φ sin ψ)]
///  × ½{cos(ד − φ) − cos(ד + ψ) − sin(ש − ψ) + sin(ש − φ)}`
/// with `φ = arccos(s/(2√(n+3/2)))` and `ψ` likewise for `t`.
pub fn bulk_rho_mainterm(n: usize, s: f64, t: f64) -> Result<f64> {
    check_bulk_radii("bulk_rho_mainterm", n, s, t)?;
    let nn = n as f64 + 1.5;
    let r = 2.0 * nn.sqrt();
    let (phi, psi) = ((s / r).acos(), (t / r).acos());
    let a = AcTriple::new(n, phi, psi);
    let pre = (2.0 / PI).sqrt() / 8.0 * nn.powf(-1.5)
        / ((phi.cos() - psi.cos()) * phi.cos() * psi.cos() * (phi.sin() * psi.sin()).sqrt());
    let br = (a.daleth - phi).cos() - (a.daleth + psi).cos() - (a.shin - psi).sin()
        + (a.shin - phi).sin();
    Ok(pre * 0.5 * br)
}

/// Two-index Plancherel–Rotach form of `ρ_n(s,t) e^{−(s²+t²)/4}` that
/// precedes the simplified main term:
/// `√(2/π)/((s − t)st) [ (sin φ₂ sin ψ₁)^{−1/2} S(n/2+5/4, φ₂) S(n/2+3/4, ψ₁)
///  − (sin φ₁ sin ψ₂)^{−1/2} S(n/2+5/4, ψ₂) S(n/2+3/4, φ₁) ]`,
/// `S(c, θ) = sin(c·ac(θ) + 3π/4)`, `φ_j = arccos(s/(2√(n + j + 1/2)))`.
pub fn bulk_rho_two_index(n: usize, s: f64, t: f64) -> Result<f64> {
    check_bulk_radii("bulk_rho_two_index", n, s, t)?;
    let nf = n as f64;
    let a1 = |x: f64| (x / (2.0 * (nf + 1.5).sqrt())).acos();
    let a2 = |x: f64| (x / (2.0 * (nf + 2.5).sqrt())).acos();
    let (p1, p2, q1, q2) = (a1(s), a2(s), a1(t), a2(t));
    let sw = |c: f64, x: f64| (c * ac(x) + 0.75 * PI).sin();
    let (hi, lo) = (nf / 2.0 + 1.25, nf / 2.0 + 0.75);
    let br = (p2.sin() * q1.sin()).powf(-0.5) * sw(hi, p2) * sw(lo, q1)
        - (p1.sin() * q2.sin()).powf(-0.5) * sw(hi, q2) * sw(lo, p1);
    Ok((2.0 / PI).sqrt() / ((s - t) * s * t) * br)
}

fn check_center_radii(what: &'static str, s: f64, t: f64) -> Result<()> {
    for x in [s, t] {
        if !(x >= CENTER_RANGE.0 && x <= CENTER_RANGE.1) {
            return Err(domain(what, x, "radius in [0.2, 5]"));
        }
    }
    Ok(())
}

/// `sin(√n d)/d`, continuous at `d = 0`.
fn sin_ratio(n: usize, d: f64) -> f64 {
    let r = (n as f64).sqrt();
    r * sinc(r * d)
}

fn center(n: usize, u: PureQuaternion, s: f64, v: PureQuaternion, t: f64, plus: f64) -> Quaternion {
    let c = (2.0 / PI).sqrt() / (s * t);
    let uv = u * v;
    let one = Quaternion::ONE;
    (one - uv) * (0.5 * c * sin_ratio(n, t - s))
        + (one + uv) * (0.5 * plus * c * sin_ratio(n, t + s))
}

/// Approximation of `K_n(us, vt) e^{−(s²+t²)/4}` near the origin:
/// `√(2/π)/(st) [sin(√n(t−s))/(t−s)·(1−uv)/2 − sin(√n(t+s))/(t+s)·(1+uv)/2]`.
///
/// The second term enters with a minus sign for both parities of `n`; the
/// residual is `O(n^{−1/2})`. At `s = t` the first ratio is taken as `√n`.
pub fn center_kernel_approx(
    n: usize,
    u: PureQuaternion,
    s: f64,
    v: PureQuaternion,
    t: f64,
) -> Result<Quaternion> {
    check_unit("center_kernel_approx", u)?;
    check_unit("center_kernel_approx", v)?;
    check_center_radii("center_kernel_approx", s, t)?;
    Ok(center(n, u, s, v, t, -1.0))
}

/// [`center_kernel_approx`] with the printed `+` sign on the second term.
pub fn center_kernel_approx_printed(
    n: usize,
    u: PureQuaternion,
    s: f64,
    v: PureQuaternion,
    t: f64,
) -> Result<Quaternion> {
    check_unit("center_kernel_approx_printed", u)?;
    check_unit("center_kernel_approx_printed", v)?;
    check_center_radii("center_kernel_approx_printed", s, t)?;
    Ok(center(n, u, s, v, t, 1.0))
}

/// Scalar parts of [`center_kernel_approx`]: approximations of
/// `ρ_n(s,t) e^{−(s²+t²)/4}` and `(−1)ⁿ δ_n(s,t) e^{−(s²+t²)/4}`.
pub fn center_rho_delta_approx(n: usize, s: f64, t: f64) -> Result<(f64, f64)> {
    check_center_radii("center_rho_delta_approx", s, t)?;
    let c = (2.0 / PI).sqrt() / (s * t);
    Ok((c * sin_ratio(n, t - s), -c * sin_ratio(n, t + s)))
}

/// Finite-`n` value, limit and error of a density convergence check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitCheck {
    pub approx: f64,
    pub limit: f64,
    pub abs_err: f64,
    /// `abs_err / limit`, or `abs_err` itself where the limit vanishes.
    pub rel_err: f64,
}

fn limit_check(approx: f64, limit: f64) -> LimitCheck {
    let abs_err = (approx - limit).abs();
    LimitCheck {
        approx,
        limit,
        abs_err,
        rel_err: if limit > 0.0 {
            abs_err / limit
        } else {
            abs_err
        },
    }
}

/// `2√n·ρ_n^{Leb}(2√n·us)` against `ρ(s)`.
pub fn density_limit_check(n: usize, s: f64) -> Result<LimitCheck> {
    let limit = rho_limit(s)?.value;
    let r = 2.0 * (n as f64).sqrt();
    Ok(limit_check(r * intensity_lebesgue_radial(n, r * s), limit))
}

/// `p_n(2√n s)/(2√n)` against `√(1 − s²)/π`.
pub fn radial_limit_check(n: usize, s: f64) -> Result<LimitCheck> {
    let limit = radial_limit(s)?.value;
    let r = 2.0 * (n as f64).sqrt();
    Ok(limit_check(radial_density(n, r * s)? / r, limit))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn limit_values() {
        let v = rho_limit(1.0 / 2f64.sqrt()).unwrap();
        assert!((v.value - 2f64.sqrt() / (4.0 * PI * PI)).abs() < 1e-15);
        assert!((v.value - 0.0358224).abs() < 1e-7);
        assert!((radial_limit(0.6).unwrap().value - 0.254648).abs() < 1e-6);
        let out = rho_limit(1.2).unwrap();
        assert_eq!(
            out,
            LimitValue {
                value: 0.0,
                in_support: false
            }
        );
        assert!(rho_limit(0.0).is_err());
        for s in [0.1, 0.35, 0.5, 0.9] {
            let a = 4.0 * PI * s * s * rho_limit(s).unwrap().value;
            assert!((a - radial_limit(s).unwrap().value).abs() < 1e-15);
        }
    }

    #[test]
    fn ac_triple_algebra() {
        let t = AcTriple::new(17, 0.7, 1.1);
        assert!((t.daleth + t.shin - 18.5 * ac(0.7)).abs() < 1e-12);
        let mut prev = ac(0.0);
        for i in 1..100 {
            let x = i as f64 * PI / 200.0;
            assert!(ac(x) < prev);
            assert!((ac(-x) + ac(x)).abs() < 1e-15);
            prev = ac(x);
        }
    }

    #[test]
    fn pr_parity_and_range() {
        let n = 37;
        let a = pr_weighted_hermite(n, 1.0).unwrap();
        let b = pr_weighted_hermite(n, PI - 1.0).unwrap();
        assert!((a.mantissa + b.mantissa).abs() < 1e-12);
        assert!(pr_weighted_hermite(n, 0.01).is_err());
        let big = pr_weighted_hermite(10_000, 1.2).unwrap();
        assert!(big.mantissa.is_finite() && big.ln_scale.is_finite());
    }

    #[test]
    fn odd_center_approximation_is_odd() {
        for n in [401, 403] {
            let a = center_hermite(n, 1.3).unwrap();
            let b = center_hermite(n, -1.3).unwrap();
            assert!((a.mantissa + b.mantissa).abs() < 1e-14);
        }
        assert!(center_hermite(5, 11.0).is_err());
    }

    #[test]
    fn bulk_limit_on_the_diagonal() {
        let u = PureQuaternion::new(0.0, 0.6, 0.8);
        let l = bulk_kernel_limit(u, 0.4, u, 0.4);
        assert!(l.dist(Quaternion::ONE) < 1e-15);
        assert!(BulkCoordinates::new(100, 0.1, 0.0, 0.0).is_err());
        assert!(BulkCoordinates::new(100, 0.5, 0.0, 1.0).is_ok());
    }

    #[test]
    fn outside_bulk_density_vanishes() {
        let c = density_limit_check(2000, 1.2).unwrap();
        assert_eq!(c.limit, 0.0);
        assert!(c.approx < 1e-6);
    }

    #[test]
    fn bulk_mainterm_domain() {
        let n = 1000;
        let r = (n as f64).sqrt();
        assert!(bulk_rho_mainterm(n, 0.1 * r, r).is_err());
        assert!(bulk_rho_mainterm(n, r, r).is_err());
        assert!(bulk_rho_mainterm(n, r, 1.1 * r).unwrap().is_finite());
    }
}
