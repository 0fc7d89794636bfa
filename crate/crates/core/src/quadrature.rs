//! Gauss–Hermite (probabilists' weight) and Gauss–Legendre rules.

use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)] // unused when std is in the build graph
use num_traits::Float;

use crate::error::{domain, Result};
use crate::numeric::{bisect, RESCALE_BIG};
use crate::orthopoly::hermite_function;

/// Nodes and weights for `∫ g(x) e^{−x²/2}/√(2π) dx ≈ Σ wᵢ g(xᵢ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussHermite {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussHermite {
    /// Rule with `m` nodes (`1 ≤ m ≤ 2000`). Exact for polynomials of degree
    /// below `2m`.
    ///
    /// Nodes are the zeros of `H_m`, located by sign changes of the Hermite
    /// function `ψ_m` on a fine grid and refined by bisection. Weights are
    /// `e^{−x²/2} / Σ_{k<m} ψ_k(x)²`.
    pub fn new(m: usize) -> Result<Self> {
        if m == 0 || m > 2000 {
            return Err(domain("GaussHermite::new", m as f64, "1 ≤ m ≤ 2000"));
        }
        let half = 2.0 * (m as f64 + 1.0).sqrt();
        let steps = 40 * m;
        let f = |x: f64| hermite_function(m, x);
        let mut pos = Vec::with_capacity(m / 2 + 1);
        let mut prev_x = 0.0;
        let mut prev_f = f(0.0);
        if prev_f == 0.0 {
            pos.push(0.0);
        }
        for i in 1..=steps {
            let x = half * i as f64 / steps as f64;
            let fx = f(x);
            if prev_f != 0.0 && fx != 0.0 && (fx < 0.0) != (prev_f < 0.0) {
                pos.push(bisect(&f, prev_x, x, 1e-15));
            }
            prev_x = x;
            prev_f = fx;
        }
        let mut nodes: Vec<f64> = pos.iter().rev().filter(|&&x| x > 0.0).map(|x| -x).collect();
        nodes.extend(pos.iter().copied());
        if nodes.len() != m {
            return Err(domain("GaussHermite::new", m as f64, "node search failed"));
        }
        let weights = nodes.iter().map(|&x| weight_at(m, x)).collect();
        Ok(GaussHermite { nodes, weights })
    }

    /// `Σ wᵢ g(xᵢ)`.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut g: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * g(x))
            .sum()
    }
}

/// `e^{−x²/2} / Σ_{k<m} ψ_k(x)²`, with the sum accumulated in log-scaled form.
fn weight_at(m: usize, x: f64) -> f64 {
    let mut a = 1.0f64;
    let mut b = x;
    let mut l = -0.25 * x * x;
    let mut sum = a * a;
    let mut sum_l = 2.0 * l;
    let mut k = 1;
    while k < m {
        let t = b * b;
        sum += t * (2.0 * l - sum_l).exp();
        let c = (x * b - (k as f64).sqrt() * a) / ((k + 1) as f64).sqrt();
        a = b;
        b = c;
        let mag = a.abs().max(b.abs());
        if mag > RESCALE_BIG {
            a /= mag;
            b /= mag;
            l += mag.ln();
        }
        if sum > RESCALE_BIG {
            sum_l += sum.ln();
            sum = 1.0;
        }
        k += 1;
    }
    (-0.5 * x * x - sum_l - sum.ln()).exp()
}

/// Nodes and weights on `[−1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    /// Rule with `m ≥ 1` nodes, by Newton iteration on `P_m`.
    pub fn new(m: usize) -> Self {
        let mut nodes = alloc::vec![0.0; m];
        let mut weights = alloc::vec![0.0; m];
        for i in 0..m.div_ceil(2) {
            let mut x = (PI * (i as f64 + 0.75) / (m as f64 + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (p, d) = legendre(m, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(m, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[m - 1 - i] = x;
            weights[i] = w;
            weights[m - 1 - i] = w;
        }
        GaussLegendre { nodes, weights }
    }

    /// `∫_a^b g`.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut g: F) -> f64 {
        let c = 0.5 * (a + b);
        let h = 0.5 * (b - a);
        h * self
            .nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * g(c + h * x))
            .sum::<f64>()
    }

    /// `∫_a^b g` over `panels` equal sub-intervals.
    pub fn integrate_composite<F: FnMut(f64) -> f64>(
        &self,
        a: f64,
        b: f64,
        panels: usize,
        mut g: F,
    ) -> f64 {
        let panels = panels.max(1);
        let h = (b - a) / panels as f64;
        (0..panels)
            .map(|p| {
                let lo = a + h * p as f64;
                self.integrate(lo, lo + h, &mut g)
            })
            .sum()
    }
}

/// `(P_m(x), P_m'(x))` for the Legendre polynomial.
fn legendre(m: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if m == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=m {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    let d = m as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}
