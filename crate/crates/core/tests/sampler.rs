//! Sampler contracts: determinism, envelope, and agreement with exact laws.

use quatfield::kernel::{kernel_at, GAUSS3_NORM};
use quatfield::sampler::{
    angular_bin_probabilities, estimate, joint_density, merge, radial_ks_distance,
    rejection_sample, run_worker, PointConfiguration, SamplerConfig,
};
use quatfield::PureQuaternion;

fn radii(run: &quatfield::sampler::SampleRun) -> Vec<f64> {
    run.configurations
        .iter()
        .flat_map(|c| c.points.iter().map(|p| p.norm()))
        .collect()
}

#[test]
fn two_point_density_by_expansion() {
    let x = PureQuaternion::new(0.4, -0.2, 1.1);
    let y = PureQuaternion::new(-0.7, 0.5, 0.3);
    let f = |p: PureQuaternion| GAUSS3_NORM * (-0.5 * p.norm_sqr()).exp();
    let kxy = kernel_at(1, x, y);
    let want = (kernel_at(1, x, x).w * kernel_at(1, y, y).w - kxy.norm_sqr()) * f(x) * f(y) / 2.0;
    let got = joint_density(1, &PointConfiguration { points: vec![x, y] }).unwrap();
    assert!((got - want).abs() <= 1e-14 * want.abs().max(1e-300));
    assert!(joint_density(3, &PointConfiguration { points: vec![x; 4] }).is_err());
}

#[test]
fn threaded_and_sequential_runs_agree() {
    let cfg = SamplerConfig::new(2, 400, 99).with_workers(3);
    let seq = rejection_sample(&cfg).unwrap();
    let outs = std::thread::scope(|s| {
        let handles: Vec<_> = (0..cfg.workers)
            .rev()
            .map(|w| s.spawn(move || run_worker(&cfg, w).unwrap()))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().unwrap())
            .collect::<Vec<_>>()
    });
    assert_eq!(merge(&cfg, outs), seq);
    assert_eq!(seq.configurations.len(), 400);
    assert!(seq.configurations.iter().all(|c| c.points.len() == 3));
}

#[test]
fn acceptance_rate_is_n_factorial_over_n_to_the_n() {
    for (n, want) in [(1usize, 0.5), (2, 6.0 / 27.0)] {
        let run = rejection_sample(&SamplerConfig::new(n, 20_000, 5)).unwrap();
        let p = run.acceptance_rate();
        let sd = (want * (1.0 - want) / run.proposals as f64).sqrt();
        assert!((p - want).abs() < 5.0 * sd, "n={n} rate {p} want {want}");
        assert!(run.max_ratio <= 1.0 + 1e-9);
    }
}

#[test]
fn n0_radii_follow_chi3() {
    let run = rejection_sample(&SamplerConfig::new(0, 20_000, 17)).unwrap();
    let d = radial_ks_distance(0, &radii(&run)).unwrap();
    assert!(d < 0.015, "KS {d}");
}

#[test]
fn n2_radial_and_angular_laws() {
    let run = rejection_sample(&SamplerConfig::new(2, 20_000, 23).with_workers(2)).unwrap();
    let d = radial_ks_distance(2, &radii(&run)).unwrap();
    assert!(d < 0.015, "KS {d}");
    let est = estimate(&run).unwrap();
    let m = est.angular.total() as f64;
    assert_eq!(m, 3.0 * 20_000.0);
    let probs = angular_bin_probabilities(2, &est.angular.edges).unwrap();
    let mean: f64 = est
        .angular
        .counts
        .iter()
        .zip(est.angular.edges.windows(2))
        .map(|(&c, e)| c as f64 * 0.5 * (e[0] + e[1]))
        .sum::<f64>()
        / m;
    assert!(mean < 0.0);
    let worst = est
        .angular
        .counts
        .iter()
        .zip(&probs)
        .map(|(&c, &p)| (c as f64 - m * p).abs() / (m * p * (1.0 - p)).sqrt())
        .fold(0.0f64, f64::max);
    assert!(worst < 4.5, "worst bin {worst} σ");
}

#[test]
fn estimators_need_enough_samples() {
    let run = rejection_sample(&SamplerConfig::new(1, 100, 1)).unwrap();
    assert!(estimate(&run).is_err());
}

#[test]
fn doubling_samples_reduces_median_ks() {
    let median_ks = |count: usize, seed0: u64| {
        let mut ks: Vec<f64> = (0..5)
            .map(|i| {
                let run = rejection_sample(&SamplerConfig::new(1, count, seed0 + i)).unwrap();
                radial_ks_distance(1, &radii(&run)).unwrap()
            })
            .collect();
        ks.sort_by(f64::total_cmp);
        ks[2]
    };
    let small = median_ks(10_000, 700);
    let large = median_ks(20_000, 800);
    println!("median KS: {small} at 1e4, {large} at 2e4");
    assert!(large < small);
}
