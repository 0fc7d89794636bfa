//! Property tests for the algebraic invariants.

mod common;

use proptest::prelude::*;
use quatfield::kernel::{kernel_at, kernel_closed, pair_correlation, rho_confluent};
use quatfield::moore::{moore_det, validate_self_dual, SelfDualQuaternionMatrix};
use quatfield::orthopoly::PTable;
use quatfield::quaternion::{adjoint_action, embed};
use quatfield::{PureQuaternion, Quaternion};

fn quat() -> impl Strategy<Value = Quaternion> {
    (-3.0..3.0f64, -3.0..3.0f64, -3.0..3.0f64, -3.0..3.0f64)
        .prop_map(|(w, x, y, z)| Quaternion::new(w, x, y, z))
}

fn nonzero_quat() -> impl Strategy<Value = Quaternion> {
    quat().prop_filter("nonzero", |q| q.norm() > 0.1)
}

fn pure(rmax: f64) -> impl Strategy<Value = PureQuaternion> {
    (-rmax..rmax, -rmax..rmax, -rmax..rmax).prop_map(|(x, y, z)| PureQuaternion::new(x, y, z))
}

fn away_from_origin(rmax: f64) -> impl Strategy<Value = PureQuaternion> {
    pure(rmax).prop_filter("away from origin", |p| p.norm() > 0.05)
}

proptest! {
    #[test]
    fn norm_is_multiplicative(p in quat(), q in quat()) {
        let lhs = (p * q).norm();
        prop_assert!((lhs - p.norm() * q.norm()).abs() <= 1e-12 * (1.0 + lhs));
    }

    #[test]
    fn embedding_is_a_homomorphism(p in quat(), q in quat()) {
        let lhs = embed(p * q);
        let rhs = embed(p).matmul(&embed(q));
        prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-12 * (1.0 + p.norm() * q.norm()));
        prop_assert!((embed(p).det().re - p.norm_sqr()).abs() <= 1e-12 * (1.0 + p.norm_sqr()));
    }

    #[test]
    fn conjugation_reverses_products(p in quat(), q in quat()) {
        prop_assert!((p * q).conj().dist(q.conj() * p.conj()) <= 1e-12 * (1.0 + p.norm() * q.norm()));
    }

    #[test]
    fn adjoint_action_is_a_rotation(q in nonzero_quat(), x in pure(3.0), y in pure(3.0)) {
        let (ax, ay) = (adjoint_action(q, x).unwrap(), adjoint_action(q, y).unwrap());
        prop_assert!((ax.norm() - x.norm()).abs() <= 1e-12 * (1.0 + x.norm()));
        prop_assert!((ax.dot(ay) - x.dot(y)).abs() <= 1e-11 * (1.0 + x.norm() * y.norm()));
        let c = ax.cross(ay) - adjoint_action(q, x.cross(y)).unwrap();
        prop_assert!(c.norm() <= 1e-11 * (1.0 + x.norm() * y.norm()));
    }

    #[test]
    fn kernel_is_self_dual(n in 0usize..=15, x in pure(4.0), y in pure(4.0)) {
        let k = kernel_at(n, x, y);
        let kt = kernel_at(n, y, x);
        prop_assert!(k.conj().dist(kt) <= 1e-12 * common::kernel_scale(n, x, y).max(1e-300));
    }

    #[test]
    fn kernel_is_rotation_covariant(
        n in 0usize..=15, q in nonzero_quat(), x in away_from_origin(4.0), y in away_from_origin(4.0)
    ) {
        let (ax, ay) = (adjoint_action(q, x).unwrap(), adjoint_action(q, y).unwrap());
        let lhs = kernel_at(n, ax, ay);
        let qi = q.inverse().unwrap();
        let rhs = q * kernel_at(n, x, y) * qi;
        let scale = common::kernel_scale(n, x, y);
        prop_assert!(lhs.dist(rhs) <= 1e-10 * scale);
        prop_assert!((lhs.w - kernel_at(n, x, y).w).abs() <= 1e-10 * scale);
        prop_assert!((lhs.norm() - kernel_at(n, x, y).norm()).abs() <= 1e-10 * scale);
    }

    #[test]
    fn correlations_are_rotation_invariant(
        n in 0usize..=15, q in nonzero_quat(), x in away_from_origin(4.0), y in away_from_origin(4.0)
    ) {
        let (ax, ay) = (adjoint_action(q, x).unwrap(), adjoint_action(q, y).unwrap());
        let a = pair_correlation(n, x, y).unwrap();
        let b = pair_correlation(n, ax, ay).unwrap();
        let scale = rho_confluent(n, x.norm()).unwrap() * rho_confluent(n, y.norm()).unwrap();
        prop_assert!((a - b).abs() <= 1e-9 * scale);
    }

    #[test]
    fn p_and_q_sign_relation(n in 0usize..=20, u in away_from_origin(1.0), s in 0.1..4.0f64) {
        let u = u.scale(1.0 / u.norm());
        let p = PTable::new(20).unwrap().eval(n, u.scale(s));
        let q = quatfield::orthopoly::q_poly(n).eval_f64(s);
        let un = Quaternion::from(u).powi(n as u32);
        prop_assert!(p.dist(un * q) <= 1e-11 * (1.0 + p.norm()));
    }

    #[test]
    fn gram_matrices_satisfy_hadamard(
        n in 0usize..=10, pts in proptest::collection::vec(pure(3.0), 1..=4)
    ) {
        let g = quatfield::kernel::gram_matrix(n, &pts);
        prop_assert!(validate_self_dual(&g).is_self_dual);
        let d = moore_det(&g).unwrap();
        let diag = g.diagonal_product();
        prop_assert!(d >= -1e-9 * diag);
        prop_assert!(d <= diag * (1.0 + 1e-9));
    }

    #[test]
    fn random_self_dual_moore_squared(entries in proptest::collection::vec(quat(), 16)) {
        let k = 4;
        let b = |i: usize, j: usize| entries[i * k + j];
        let a = SelfDualQuaternionMatrix::from_fn(k, |i, j| {
            (0..k).fold(Quaternion::ZERO, |acc, l| acc + b(i, l) * b(j, l).conj())
        });
        let m = moore_det(&a).unwrap();
        let e = common::embedded_det(k, |i, j| a.get(i, j));
        let scale = a.diagonal_product().powi(2);
        prop_assert!((m * m - e.re).abs() <= 1e-9 * scale);
        prop_assert!(m >= -1e-9 * a.diagonal_product());
    }

    #[test]
    fn closed_form_has_no_seam_near_the_diagonal(
        n in 0usize..=20,
        u in away_from_origin(1.0),
        v in away_from_origin(1.0),
        s in 0.2..4.0f64,
        gap in prop_oneof![Just(0.0), 1e-12..1e-6f64],
    ) {
        let (u, v) = (u.scale(1.0 / u.norm()), v.scale(1.0 / v.norm()));
        let k = kernel_closed(n, u, s, v, s + gap).unwrap().value;
        let e = common::kernel_direct(n, u.scale(s), v.scale(s + gap));
        prop_assert!(k.dist(e) <= 1e-10 * common::kernel_scale(n, u.scale(s), v.scale(s + gap)));
    }
}
