//! Rejection sampling of the `N = n + 1` point field for `n ≤ 2`, with
//! radial and angular estimators.
//!
//! Each proposal draws the `N` points independently from the normalized
//! one-point density `ρ_n(|x|) f(x) / N` and is accepted with probability
//! `Det_M[K_n(x_i, x_j)] / Π K_n(x_i, x_i)`, which lies in `[0, 1]` by the
//! Hadamard–Fischer inequality. Proposal density times acceptance
//! probability is proportional to the joint density
//! `Det_M[K_n(x_i, x_j)] Π f(x_i) / N!`, and the expected acceptance rate is
//! `N!/N^N`.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)] // unused when std is in the build graph
use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{domain, Error, Result};
use crate::kernel::{cd_weighted, gram_matrix, point_count, radial_cutoff, GAUSS3_NORM};
use crate::moore::moore_det;
use crate::orthopoly::q_poly;
use crate::poly::big_to_f64;
use crate::quadrature::GaussLegendre;
use crate::quaternion::PureQuaternion;

/// Largest `n` the sampler accepts.
pub const MAX_SAMPLER_DEGREE: usize = 2;

/// Slack allowed above 1 for the acceptance ratio before the envelope is
/// declared violated.
pub const ENVELOPE_SLACK: f64 = 1e-9;

/// Minimum number of configurations for the estimators.
pub const MIN_ESTIMATOR_SAMPLES: usize = 10_000;

/// Number of histogram bins in both estimators.
pub const HISTOGRAM_BINS: usize = 50;

/// Upper edge of the radial histogram.
pub const RADIAL_HISTOGRAM_MAX: f64 = 6.0;

/// One sample of the field: `N = n + 1` points.
#[derive(Debug, Clone, PartialEq)]
pub struct PointConfiguration {
    pub points: Vec<PureQuaternion>,
}

/// Sampler settings; `seed` and `workers` together determine the output.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SamplerConfig {
    pub n: usize,
    /// Number of accepted configurations to produce.
    pub target: usize,
    pub seed: u64,
    pub workers: usize,
}

impl SamplerConfig {
    pub fn new(n: usize, target: usize, seed: u64) -> Self {
        SamplerConfig {
            n,
            target,
            seed,
            workers: 1,
        }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n > MAX_SAMPLER_DEGREE {
            return Err(domain("SamplerConfig", self.n as f64, "n ≤ 2"));
        }
        if self.workers == 0 {
            return Err(domain("SamplerConfig", 0.0, "at least one worker"));
        }
        Ok(())
    }

    /// Accepted configurations assigned to worker `w`.
    pub fn quota(&self, w: usize) -> usize {
        let base = self.target / self.workers;
        base + usize::from(w < self.target % self.workers)
    }

    /// The random stream of worker `w`: ChaCha8 keyed by the seed, with the
    /// worker index as stream id.
    pub fn worker_rng(&self, w: usize) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(w as u64);
        rng
    }
}

/// Output of a single worker.
#[derive(Debug, Clone, PartialEq)]
pub struct WorkerOutput {
    pub worker: usize,
    pub configurations: Vec<PointConfiguration>,
    pub proposals: u64,
    pub max_ratio: f64,
}

/// Merged output of all workers, in worker order.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleRun {
    pub config: SamplerConfig,
    pub configurations: Vec<PointConfiguration>,
    pub proposals: u64,
    pub accepted: u64,
    pub max_ratio: f64,
}

impl SampleRun {
    pub fn acceptance_rate(&self) -> f64 {
        if self.proposals == 0 {
            0.0
        } else {
            self.accepted as f64 / self.proposals as f64
        }
    }
}

/// Radial law `∝ r² Q_k(r)² e^{−r²/2}` sampled by rejection from a mixture
/// of χ laws: by Cauchy–Schwarz `Q_k(r)² ≤ m Σ c_j² r^{2j}` with `m` the
/// number of nonzero coefficients, and `r^{2j+2} e^{−r²/2}` is a χ law with
/// `2j + 3` degrees of freedom of mass `(2j+1)!!·√(π/2)`.
#[derive(Debug, Clone)]
struct RadialComponent {
    coeffs: Vec<f64>,
    terms: Vec<(usize, f64)>,
    total: f64,
    m: f64,
}

impl RadialComponent {
    fn new(k: usize) -> Self {
        let coeffs: Vec<f64> = q_poly(k).coeffs().iter().map(big_to_f64).collect();
        let mut terms = Vec::new();
        let mut total = 0.0;
        let mut dfact = 1.0;
        for (j, &c) in coeffs.iter().enumerate() {
            if j > 0 {
                dfact *= (2 * j + 1) as f64;
            }
            if c != 0.0 {
                let w = c * c * dfact;
                total += w;
                terms.push((j, w));
            }
        }
        RadialComponent {
            m: terms.len() as f64,
            coeffs,
            terms,
            total,
        }
    }

    fn q(&self, r: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * r + c)
    }

    fn bound(&self, r: f64) -> f64 {
        self.m
            * self
                .terms
                .iter()
                .map(|&(j, _)| self.coeffs[j] * self.coeffs[j] * r.powi(2 * j as i32))
                .sum::<f64>()
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        loop {
            let mut pick = rng.random::<f64>() * self.total;
            let mut dof = 2 * self.terms[self.terms.len() - 1].0 + 3;
            for &(j, w) in &self.terms {
                if pick < w {
                    dof = 2 * j + 3;
                    break;
                }
                pick -= w;
            }
            let r = (0..dof)
                .map(|_| {
                    let g: f64 = rng.sample(StandardNormal);
                    g * g
                })
                .sum::<f64>()
                .sqrt();
            let q = self.q(r);
            let b = self.bound(r);
            if b <= 0.0 || rng.random::<f64>() * b <= q * q {
                return r;
            }
        }
    }
}

/// Draws independent points from the normalized one-point density
/// `ρ_n(|x|) f(x) / (n + 1)`, an equal-weight mixture of
/// `Q_k(|x|)² f(x) / h_k` for `k = 0..=n`.
#[derive(Debug, Clone)]
pub struct OnePointSampler {
    components: Vec<RadialComponent>,
}

impl OnePointSampler {
    pub fn new(n: usize) -> Self {
        OnePointSampler {
            components: (0..=n).map(RadialComponent::new).collect(),
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> PureQuaternion {
        let k = rng.random_range(0..self.components.len());
        let r = self.components[k].sample(rng);
        loop {
            let g = PureQuaternion::new(
                rng.sample(StandardNormal),
                rng.sample(StandardNormal),
                rng.sample(StandardNormal),
            );
            let m = g.norm();
            if m > 1e-12 {
                return g.scale(r / m);
            }
        }
    }
}

fn check_count(n: usize, pts: &[PureQuaternion]) -> Result<()> {
    if pts.len() != point_count(n) {
        return Err(Error::PointCount {
            n,
            got: pts.len(),
            expected: point_count(n),
        });
    }
    Ok(())
}

/// Joint density `Det_M[K_n(x_i, x_j)] Π f(x_i) / N!` of the `N = n + 1`
/// points, with respect to Lebesgue measure on `(R³)^N`.
pub fn joint_density(n: usize, pts: &PointConfiguration) -> Result<f64> {
    if n > MAX_SAMPLER_DEGREE {
        return Err(domain("joint_density", n as f64, "n ≤ 2"));
    }
    check_count(n, &pts.points)?;
    let det = moore_det(&gram_matrix(n, &pts.points))?;
    let f: f64 = pts
        .points
        .iter()
        .map(|p| GAUSS3_NORM * (-0.5 * p.norm_sqr()).exp())
        .product();
    let nfact: f64 = (1..=point_count(n)).map(|k| k as f64).product();
    Ok(det * f / nfact)
}

/// `Det_M[K_n(x_i, x_j)] / Π K_n(x_i, x_i)`.
pub fn acceptance_ratio(n: usize, pts: &[PureQuaternion]) -> Result<f64> {
    let g = gram_matrix(n, pts);
    let det = moore_det(&g)?;
    Ok(det / g.diagonal_product())
}

/// Runs worker `w` to its quota.
pub fn run_worker(cfg: &SamplerConfig, w: usize) -> Result<WorkerOutput> {
    cfg.validate()?;
    let mut rng = cfg.worker_rng(w);
    let proposal = OnePointSampler::new(cfg.n);
    let quota = cfg.quota(w);
    let npts = point_count(cfg.n);
    let mut out = Vec::with_capacity(quota);
    let mut proposals = 0u64;
    let mut max_ratio = 0.0f64;
    while out.len() < quota {
        let pts: Vec<PureQuaternion> = (0..npts).map(|_| proposal.sample(&mut rng)).collect();
        proposals += 1;
        let ratio = acceptance_ratio(cfg.n, &pts)?;
        if ratio > 1.0 + ENVELOPE_SLACK {
            return Err(Error::Envelope { ratio, points: pts });
        }
        max_ratio = max_ratio.max(ratio);
        if rng.random::<f64>() < ratio {
            out.push(PointConfiguration { points: pts });
        }
    }
    Ok(WorkerOutput {
        worker: w,
        configurations: out,
        proposals,
        max_ratio,
    })
}

/// Concatenates worker outputs in worker-index order.
pub fn merge(cfg: &SamplerConfig, mut outputs: Vec<WorkerOutput>) -> SampleRun {
    outputs.sort_by_key(|o| o.worker);
    let mut run = SampleRun {
        config: *cfg,
        configurations: Vec::with_capacity(cfg.target),
        proposals: 0,
        accepted: 0,
        max_ratio: 0.0,
    };
    for o in outputs {
        run.proposals += o.proposals;
        run.accepted += o.configurations.len() as u64;
        run.max_ratio = run.max_ratio.max(o.max_ratio);
        run.configurations.extend(o.configurations);
    }
    run
}

/// Runs all workers one after another on the current thread. The result is
/// identical to running them concurrently and merging.
pub fn rejection_sample(cfg: &SamplerConfig) -> Result<SampleRun> {
    cfg.validate()?;
    let outputs = (0..cfg.workers)
        .map(|w| run_worker(cfg, w))
        .collect::<Result<Vec<_>>>()?;
    Ok(merge(cfg, outputs))
}

/// Uniform-bin histogram.
#[derive(Debug, Clone, PartialEq)]
pub struct Histogram {
    pub edges: Vec<f64>,
    pub counts: Vec<u64>,
    /// Observations outside `[edges[0], edges[last]]`.
    pub outside: u64,
}

impl Histogram {
    pub fn new(lo: f64, hi: f64, bins: usize) -> Self {
        Histogram {
            edges: (0..=bins)
                .map(|i| lo + (hi - lo) * i as f64 / bins as f64)
                .collect(),
            counts: vec![0; bins],
            outside: 0,
        }
    }

    pub fn add(&mut self, x: f64) {
        let bins = self.counts.len();
        let (lo, hi) = (self.edges[0], self.edges[bins]);
        if !(x >= lo && x <= hi) {
            self.outside += 1;
            return;
        }
        let i = (((x - lo) / (hi - lo)) * bins as f64) as usize;
        self.counts[i.min(bins - 1)] += 1;
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum::<u64>() + self.outside
    }
}

/// Histograms and acceptance statistics of a run.
#[derive(Debug, Clone, PartialEq)]
pub struct EstimatorResult {
    /// Per-point radii, 50 bins over `[0, 6]`.
    pub radial: Histogram,
    /// `cos α` over all point pairs, 50 bins over `[−1, 1]`; empty for `n = 0`.
    pub angular: Histogram,
    pub acceptance_rate: f64,
    pub max_ratio: f64,
    pub configurations: usize,
}

fn check_samples(run: &SampleRun) -> Result<()> {
    if run.configurations.len() < MIN_ESTIMATOR_SAMPLES {
        return Err(Error::Precondition(
            "estimators need at least 10⁴ configurations",
        ));
    }
    Ok(())
}

fn empty_result(run: &SampleRun) -> EstimatorResult {
    EstimatorResult {
        radial: Histogram::new(0.0, RADIAL_HISTOGRAM_MAX, HISTOGRAM_BINS),
        angular: Histogram::new(-1.0, 1.0, HISTOGRAM_BINS),
        acceptance_rate: run.acceptance_rate(),
        max_ratio: run.max_ratio,
        configurations: run.configurations.len(),
    }
}

/// Per-point radial histogram.
pub fn estimate_radial(run: &SampleRun) -> Result<EstimatorResult> {
    check_samples(run)?;
    let mut r = empty_result(run);
    for c in &run.configurations {
        for p in &c.points {
            r.radial.add(p.norm());
        }
    }
    Ok(r)
}

/// Histogram of `cos α` over all point pairs of each configuration.
pub fn estimate_angular(run: &SampleRun) -> Result<EstimatorResult> {
    check_samples(run)?;
    let mut r = empty_result(run);
    for c in &run.configurations {
        for (i, a) in c.points.iter().enumerate() {
            for b in &c.points[i + 1..] {
                r.angular.add(cos_angle(*a, *b));
            }
        }
    }
    Ok(r)
}

/// Both histograms at once.
pub fn estimate(run: &SampleRun) -> Result<EstimatorResult> {
    let mut r = estimate_angular(run)?;
    for c in &run.configurations {
        for p in &c.points {
            r.radial.add(p.norm());
        }
    }
    Ok(r)
}

/// Cosine of the angle between two points seen from the origin.
pub fn cos_angle(a: PureQuaternion, b: PureQuaternion) -> f64 {
    (a.dot(b) / (a.norm() * b.norm())).clamp(-1.0, 1.0)
}

/// Kolmogorov–Smirnov distance between the empirical law of `radii` and the
/// exact per-point radial law of the `n + 1` point field.
///
/// The exact CDF is accumulated by Gauss–Legendre quadrature between
/// consecutive sorted radii.
pub fn radial_ks_distance(n: usize, radii: &[f64]) -> Result<f64> {
    if radii.is_empty() {
        return Err(Error::Precondition("no radii given"));
    }
    let mut sorted: Vec<f64> = radii.to_vec();
    sorted.sort_by(|a, b| a.total_cmp(b));
    if !(sorted[0] >= 0.0) {
        return Err(domain("radial_ks_distance", sorted[0], "radii ≥ 0"));
    }
    let gl = GaussLegendre::new(12);
    let scale = 4.0 * PI * GAUSS3_NORM / point_count(n) as f64;
    let dens = |r: f64| scale * r * r * cd_weighted(n, r, r);
    let m = sorted.len() as f64;
    let mut cdf = 0.0;
    let mut prev = 0.0;
    let mut d = 0.0f64;
    for (i, &r) in sorted.iter().enumerate() {
        if r > prev {
            let panels = ((r - prev) / 0.25).ceil().max(1.0) as usize;
            cdf += gl.integrate_composite(prev, r, panels, dens);
            prev = r;
        }
        let hi = (i + 1) as f64 / m;
        let lo = i as f64 / m;
        d = d.max((hi - cdf).abs()).max((cdf - lo).abs());
    }
    Ok(d)
}

/// Coefficients `(a, b)` of the exact density `a + b c` of `c = cos α` for a
/// uniformly chosen ordered pair of distinct points.
///
/// The two-point function is affine in `c`; integrating it against
/// `f(s) f(t) s² t²` over the radii and the remaining angles gives
/// `a = 8π²/(N(N−1)) ∫∫ [ρ(s)ρ(t) − (ρ(s,t)² + δ(s,t)²)/2] f f s² t²` and
/// `b = 8π²/(N(N−1)) ∫∫ [δ(s,t)² − ρ(s,t)²]/2 · f f s² t²`.
pub fn angular_density_coefficients(n: usize) -> Result<(f64, f64)> {
    if n == 0 {
        return Err(domain("angular_density_coefficients", 0.0, "n ≥ 1"));
    }
    let gl = GaussLegendre::new(10);
    let rmax = radial_cutoff(n);
    let panels = (rmax / 0.5).ceil() as usize;
    let h = rmax / panels as f64;
    let mut nodes = Vec::with_capacity(panels * gl.nodes.len());
    for p in 0..panels {
        let c = (p as f64 + 0.5) * h;
        for (x, w) in gl.nodes.iter().zip(&gl.weights) {
            nodes.push((c + 0.5 * h * x, 0.5 * h * w));
        }
    }
    let diag: Vec<f64> = nodes.iter().map(|&(s, _)| cd_weighted(n, s, s)).collect();
    let (mut a, mut b) = (0.0, 0.0);
    for (i, &(s, ws)) in nodes.iter().enumerate() {
        for (j, &(t, wt)) in nodes.iter().enumerate() {
            let r = cd_weighted(n, s, t);
            let d = cd_weighted(n, s, -t);
            let w = ws * wt * s * s * t * t;
            a += w * (diag[i] * diag[j] - 0.5 * (r * r + d * d));
            b += w * 0.5 * (d * d - r * r);
        }
    }
    let npts = point_count(n) as f64;
    let c = 8.0 * PI * PI * GAUSS3_NORM * GAUSS3_NORM / (npts * (npts - 1.0));
    Ok((c * a, c * b))
}

/// Exact probability of each bin `[edges[i], edges[i+1]]` under the density
/// from [`angular_density_coefficients`].
pub fn angular_bin_probabilities(n: usize, edges: &[f64]) -> Result<Vec<f64>> {
    let (a, b) = angular_density_coefficients(n)?;
    Ok(edges
        .windows(2)
        .map(|e| a * (e[1] - e[0]) + 0.5 * b * (e[1] * e[1] - e[0] * e[0]))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quotas_cover_target() {
        let c = SamplerConfig::new(1, 103, 7).with_workers(4);
        let q: Vec<usize> = (0..4).map(|w| c.quota(w)).collect();
        assert_eq!(q, vec![26, 26, 26, 25]);
        assert!(SamplerConfig::new(3, 10, 1).validate().is_err());
        assert!(SamplerConfig::new(1, 10, 1)
            .with_workers(0)
            .validate()
            .is_err());
    }

    #[test]
    fn n0_accepts_everything() {
        let run = rejection_sample(&SamplerConfig::new(0, 500, 3)).unwrap();
        assert_eq!(run.proposals, 500);
        assert_eq!(run.acceptance_rate(), 1.0);
        assert!((run.max_ratio - 1.0).abs() < 1e-12);
    }

    #[test]
    fn joint_density_examples() {
        let x = PureQuaternion::new(0.3, -0.4, 1.0);
        let f = GAUSS3_NORM * (-0.5 * x.norm_sqr()).exp();
        let p = PointConfiguration { points: vec![x] };
        assert!((joint_density(0, &p).unwrap() - f).abs() < 1e-16);
        let pair = PointConfiguration { points: vec![x, x] };
        assert!(joint_density(1, &pair).unwrap().abs() < 1e-14);
        assert!(matches!(
            joint_density(1, &p),
            Err(Error::PointCount { expected: 2, .. })
        ));
    }

    #[test]
    fn same_seed_same_output() {
        let c = SamplerConfig::new(1, 300, 11).with_workers(3);
        let a = rejection_sample(&c).unwrap();
        let b = rejection_sample(&c).unwrap();
        assert_eq!(a, b);
        let d = rejection_sample(&SamplerConfig::new(1, 300, 12).with_workers(3)).unwrap();
        assert_ne!(a.configurations, d.configurations);
    }

    #[test]
    fn angular_density_is_normalized_and_repulsive() {
        let (a, b) = angular_density_coefficients(1).unwrap();
        assert!((2.0 * a - 1.0).abs() < 1e-10, "a = {a}");
        assert!(b < 0.0);
        let edges: Vec<f64> = (0..=4).map(|i| -1.0 + 0.5 * i as f64).collect();
        let p = angular_bin_probabilities(1, &edges).unwrap();
        assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn histogram_binning() {
        let mut h = Histogram::new(0.0, 1.0, 4);
        for x in [0.0, 0.1, 0.3, 0.99, 1.0, 1.5, -0.1] {
            h.add(x);
        }
        assert_eq!(h.counts, vec![2, 1, 0, 2]);
        assert_eq!(h.outside, 2);
        assert_eq!(h.total(), 7);
    }
}
