//! The kernel, its correlation functions and the one-point density against
//! direct summation, the complex embedding and quadrature.

mod common;

use quatfield::kernel::{
    cd_residual, cd_weighted, delta_confluent, gram_matrix, intensity_lebesgue, kernel_at,
    kernel_closed, kernel_sum, pair_correlation, pair_correlation_moore, radial_cdf, rho_confluent,
    rho_delta, total_mass, triple_gram_det,
};
use quatfield::moore::{embedding_det, moore_det};
use quatfield::orthopoly::{hermite_function, p_eval_hermite, q_poly, q_zeros, weighted_q};
use quatfield::quadrature::GaussHermite;
use quatfield::{PureQuaternion, Quaternion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn unit(rng: &mut ChaCha8Rng) -> PureQuaternion {
    loop {
        let p = PureQuaternion::new(
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        );
        let r = p.norm();
        if r > 0.1 && r <= 1.0 {
            return p.scale(1.0 / r);
        }
    }
}

fn point(rng: &mut ChaCha8Rng, rmax: f64) -> PureQuaternion {
    unit(rng).scale(rng.random_range(0.05..rmax))
}

#[test]
fn exact_sum_matches_recurrence_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..200 {
        let n = rng.random_range(0..=20);
        let (x, y) = (point(&mut rng, 4.0), point(&mut rng, 4.0));
        let a = kernel_sum(n, x, y).unwrap();
        let b = common::kernel_direct(n, x, y);
        assert!(a.dist(b) <= 1e-12 * common::kernel_scale(n, x, y), "n={n}");
    }
}

#[test]
fn closed_form_matches_sum_including_near_diagonal() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..300 {
        let n = rng.random_range(0..=20);
        let (u, v) = (unit(&mut rng), unit(&mut rng));
        let s = rng.random_range(0.1..5.0);
        let gap = [1e-8, 1e-6, 1e-3, 0.5][rng.random_range(0..4)];
        for t in [s + gap, s, rng.random_range(0.1..5.0)] {
            let k = kernel_closed(n, u, s, v, t).unwrap().value;
            let e = common::kernel_direct(n, u.scale(s), v.scale(t));
            assert!(
                k.dist(e)
                    <= 1e-9 * e.norm().max(1e-300)
                        + 1e-12 * common::kernel_scale(n, u.scale(s), v.scale(t))
            );
        }
    }
}

#[test]
fn kernel_at_origin_and_zero_radius() {
    let x = PureQuaternion::new(0.3, -1.2, 0.4);
    for n in 0..=12 {
        let k = kernel_at(n, PureQuaternion::ZERO, x);
        let e = common::kernel_direct(n, PureQuaternion::ZERO, x);
        assert!(
            k.dist(e) <= 1e-12 * common::kernel_scale(n, PureQuaternion::ZERO, x),
            "n={n}"
        );
    }
}

#[test]
fn christoffel_darboux_residual() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..100 {
        let n = rng.random_range(0..=20);
        let r = cd_residual(n, point(&mut rng, 4.0), point(&mut rng, 4.0)).unwrap();
        assert!(r.residual < 1e-9 * r.scale, "n={n} {r:?}");
    }
}

#[test]
fn hermite_representation() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..100 {
        let n = rng.random_range(0..=15);
        let u = unit(&mut rng);
        let s = rng.random_range(0.1..5.0);
        let direct = common::p_values(n, u.scale(s))[n];
        let un = Quaternion::from(u).powi(n as u32);
        let h = if n % 2 == 0 {
            un * (common::hermite(n + 1, s) / s)
        } else {
            un * ((s * common::hermite(n + 1, s) + common::hermite(n, s)) / (s * s))
        };
        assert!(h.dist(direct) <= 1e-10 * direct.norm().max(1.0), "n={n}");
        let lib = p_eval_hermite(n, u, s).unwrap();
        assert!(lib.dist(direct) <= 1e-10 * direct.norm().max(1.0), "n={n}");
        let q = q_poly(n).eval_f64(s);
        assert!(
            (un * q).dist(direct) <= 1e-10 * direct.norm().max(1.0),
            "n={n}"
        );
    }
}

#[test]
fn weighted_q_matches_exact_polynomial() {
    for n in 0..=30 {
        let h = common::h(n);
        let c: Vec<f64> = q_poly(n)
            .coeffs()
            .iter()
            .map(|c| c.to_string().parse().unwrap())
            .collect();
        for i in 0..=80 {
            let s = -4.0 + 0.1 * i as f64;
            let exact = q_poly(n).eval_f64(s) * (-0.25 * s * s).exp() / h.sqrt();
            let scale: f64 = c
                .iter()
                .enumerate()
                .map(|(j, a)| a.abs() * s.abs().powi(j as i32))
                .sum::<f64>()
                * (-0.25 * s * s).exp()
                / h.sqrt();
            let w = weighted_q(n, s);
            assert!(
                (w - exact).abs() <= 1e-11 * scale,
                "n={n} s={s} {w} {exact}"
            );
        }
    }
}

#[test]
fn cd_weighted_matches_orthonormal_sum() {
    for n in [0, 1, 2, 5, 12, 25] {
        for &(s, t) in &[
            (0.0, 0.0),
            (0.3, 0.3),
            (1.0, -2.0),
            (2.5, 2.5000001),
            (-3.0, 0.7),
            (4.0, 4.0),
        ] {
            let exact: f64 = (0..=n).map(|k| weighted_q(k, s) * weighted_q(k, t)).sum();
            let scale: f64 = (0..=n)
                .map(|k| (weighted_q(k, s) * weighted_q(k, t)).abs())
                .sum();
            assert!(
                (cd_weighted(n, s, t) - exact).abs() <= 1e-12 * scale.max(1e-300),
                "n={n} s={s} t={t}"
            );
        }
    }
}

#[test]
fn cd_weighted_is_accurate_for_separated_radii() {
    for n in [50usize, 200, 1000] {
        let edge = 2.0 * (n as f64 + 1.5).sqrt();
        let radii: Vec<f64> = [-1.1, -0.6, 0.0, 0.05, 0.3, 0.5, 0.8, 0.95, 1.05, 1.2]
            .iter()
            .map(|f| f * edge)
            .collect();
        let wq: Vec<Vec<f64>> = radii
            .iter()
            .map(|&s| (0..=n).map(|k| weighted_q(k, s)).collect())
            .collect();
        for (i, &s) in radii.iter().enumerate() {
            for (j, &t) in radii.iter().enumerate() {
                let exact: f64 = (0..=n).map(|k| wq[i][k] * wq[j][k]).sum();
                let scale: f64 = (0..=n).map(|k| (wq[i][k] * wq[j][k]).abs()).sum();
                let got = cd_weighted(n, s, t);
                assert!(
                    (got - exact).abs() <= 1e-10 * scale.max(1e-300),
                    "n={n} s={s} t={t}: {got} vs {exact}"
                );
            }
        }
    }
}

#[test]
fn large_degree_weighted_values_are_finite() {
    for n in [1000, 10_000, 100_000] {
        for s in [0.0, 0.5, 3.0, 2.0 * (n as f64).sqrt()] {
            assert!(weighted_q(n, s).is_finite());
            assert!(cd_weighted(n, s, s + 0.1).is_finite());
            assert!(cd_weighted(n, s, s) >= 0.0);
        }
    }
}

#[test]
fn moore_squared_is_embedding_determinant() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..200 {
        let n = rng.random_range(1..=15);
        let k = rng.random_range(1..=4);
        let pts: Vec<PureQuaternion> = (0..k).map(|_| point(&mut rng, 3.0)).collect();
        let g = gram_matrix(n, &pts);
        let m = moore_det(&g).unwrap();
        let e = common::embedded_det(k, |i, j| g.get(i, j));
        let scale = g.diagonal_product().powi(2);
        assert!((m * m - e.re).abs() <= 1e-9 * scale, "k={k} {m} {e}");
        assert!(e.im.abs() <= 1e-9 * scale);
        assert!((embedding_det(&g) - e).norm() <= 1e-9 * scale);
        assert!(m >= -1e-9 * g.diagonal_product());
        assert!(m <= g.diagonal_product() * (1.0 + 1e-9));
    }
}

#[test]
fn pair_correlation_matches_moore() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..10_000 {
        let n = rng.random_range(0..=15);
        let (x, y) = (point(&mut rng, 4.0), point(&mut rng, 4.0));
        let a = pair_correlation(n, x, y).unwrap();
        let b = pair_correlation_moore(n, x, y).unwrap();
        let scale = rho_confluent(n, x.norm()).unwrap() * rho_confluent(n, y.norm()).unwrap();
        assert!((a - b).abs() <= 1e-8 * scale, "n={n} {a} {b}");
    }
}

#[test]
fn equal_radius_and_collinear_pair_displays() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for _ in 0..500 {
        let n = rng.random_range(0..=15);
        let (u, v) = (unit(&mut rng), unit(&mut rng));
        let (s, t) = (rng.random_range(0.1..4.0), rng.random_range(0.1..4.0));
        let (rs, ds) = (rho_confluent(n, s).unwrap(), delta_confluent(n, s).unwrap());
        let rt = rho_confluent(n, t).unwrap();
        let equal = (rs * rs - ds * ds) * (1.0 - u.dot(v)) / 2.0;
        let moore = pair_correlation_moore(n, u.scale(s), v.scale(s)).unwrap();
        assert!(
            (equal - moore).abs() <= 1e-9 * rs * rs,
            "n={n} {equal} {moore}"
        );
        let rst = rho_delta(n, s, t).unwrap().0;
        let collinear = rs * rt - rst * rst;
        let moore = pair_correlation_moore(n, u.scale(s), u.scale(t)).unwrap();
        assert!(
            (collinear - moore).abs() <= 1e-9 * rs * rt,
            "n={n} {collinear} {moore}"
        );
    }
}

#[test]
fn equal_radius_triples_vanish() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..1000 {
        let n = rng.random_range(0..=15);
        let r = rng.random_range(0.1..4.0);
        let pts = [
            unit(&mut rng).scale(r),
            unit(&mut rng).scale(r),
            unit(&mut rng).scale(r),
        ];
        let d = triple_gram_det(n, &pts).unwrap();
        let rho = rho_confluent(n, r).unwrap();
        assert!(d.abs() <= 1e-8 * rho.powi(3), "n={n} {d}");
    }
}

#[test]
fn rho_delta_define_the_kernel() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..200 {
        let n = rng.random_range(0..=15);
        let (u, v) = (unit(&mut rng), unit(&mut rng));
        let (s, t) = (rng.random_range(0.1..4.0), rng.random_range(0.1..4.0));
        let (rho, delta) = rho_delta(n, s, t).unwrap();
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        let uv = u * v;
        let k =
            (Quaternion::ONE - uv) * (rho / 2.0) + (Quaternion::ONE + uv) * (sign * delta / 2.0);
        let e = common::kernel_direct(n, u.scale(s), v.scale(t));
        assert!(k.dist(e) <= 1e-10 * common::kernel_scale(n, u.scale(s), v.scale(t)));
    }
}

#[test]
fn q_polynomials_are_orthogonal_under_nu() {
    let gh = GaussHermite::new(200).unwrap();
    for m in 0..=15 {
        for n in 0..=15 {
            let ip = gh.integrate(|x| x * x * q_poly(m).eval_f64(x) * q_poly(n).eval_f64(x));
            let hn = common::h(n);
            let want = if m == n { hn } else { 0.0 };
            assert!((ip - want).abs() <= 1e-8 * hn, "m={m} n={n} {ip}");
        }
    }
}

#[test]
fn zeros_interlace() {
    let mut prev = q_zeros(1).unwrap();
    assert!(prev[0].abs() < 1e-12);
    for n in 2..=40 {
        let z = q_zeros(n).unwrap();
        assert_eq!(z.len(), n);
        for i in 0..n - 1 {
            assert!(z[i] < prev[i] && prev[i] < z[i + 1], "n={n} i={i}");
        }
        prev = z;
    }
}

#[test]
fn total_mass_counts_points() {
    for n in 0..=10 {
        assert!((total_mass(n) - (n + 1) as f64).abs() < 1e-6, "n={n}");
        assert!((radial_cdf(n, 60.0).unwrap() - 1.0).abs() < 1e-9);
    }
    for n in [0, 3] {
        let x = PureQuaternion::new(0.2, 0.1, -0.3);
        let f = (2.0 * std::f64::consts::PI).powf(-1.5) * (-0.5 * x.norm_sqr()).exp();
        let direct = common::kernel_direct(n, x, x).w * f;
        assert!((intensity_lebesgue(n, x) - direct).abs() < 1e-14);
    }
}

#[test]
fn hermite_functions_are_orthonormal() {
    let gh = GaussHermite::new(120).unwrap();
    for m in [0, 3, 10, 40] {
        for n in [0, 3, 10, 40] {
            let v = gh.integrate(|x| {
                hermite_function(m, x) * hermite_function(n, x) * (0.5 * x * x).exp()
            });
            let want = if m == n { 1.0 } else { 0.0 };
            assert!((v - want).abs() < 1e-10, "m={m} n={n} {v}");
        }
    }
}
