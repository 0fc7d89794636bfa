//! Independent reference implementations shared by the integration tests.

#![allow(dead_code)]

use num_complex::Complex64;
use quatfield::{PureQuaternion, Quaternion};

/// `h_k` from its closed form, as a float.
pub fn h(k: usize) -> f64 {
    let fact: f64 = (1..=k).map(|i| i as f64).product();
    if k % 2 == 1 {
        fact * (k + 2) as f64
    } else {
        fact * (k + 1) as f64
    }
}

/// `β_k = h_k/h_{k−1}`.
pub fn beta(k: usize) -> f64 {
    if k % 2 == 1 {
        (k + 2) as f64
    } else {
        k as f64
    }
}

/// `P_0(x), …, P_n(x)` by the quaternion recurrence `P_{k+1} = x P_k + β_k P_{k−1}`.
pub fn p_values(n: usize, x: PureQuaternion) -> Vec<Quaternion> {
    let xq = Quaternion::from(x);
    let mut out = vec![Quaternion::ONE];
    if n >= 1 {
        out.push(xq);
    }
    for k in 1..n {
        let next = xq * out[k] + out[k - 1] * beta(k);
        out.push(next);
    }
    out
}

/// `Σ_{k≤n} P_k(x) conj(P_k(y)) / h_k`.
pub fn kernel_direct(n: usize, x: PureQuaternion, y: PureQuaternion) -> Quaternion {
    let px = p_values(n, x);
    let py = p_values(n, y);
    (0..=n).fold(Quaternion::ZERO, |acc, k| {
        acc + px[k] * py[k].conj() * (1.0 / h(k))
    })
}

/// Scale `Σ |P_k(x)||P_k(y)|/h_k` for relative comparisons of the kernel.
pub fn kernel_scale(n: usize, x: PureQuaternion, y: PureQuaternion) -> f64 {
    let px = p_values(n, x);
    let py = p_values(n, y);
    (0..=n).map(|k| px[k].norm() * py[k].norm() / h(k)).sum()
}

/// Complex 2×2 block `[[w + x i, y + z i], [−y + z i, w − x i]]`.
pub fn block(q: Quaternion) -> [[Complex64; 2]; 2] {
    [
        [Complex64::new(q.w, q.x), Complex64::new(q.y, q.z)],
        [Complex64::new(-q.y, q.z), Complex64::new(q.w, -q.x)],
    ]
}

/// Determinant of a complex matrix by Gaussian elimination with partial pivoting.
pub fn complex_det(mut a: Vec<Vec<Complex64>>) -> Complex64 {
    let m = a.len();
    let mut det = Complex64::new(1.0, 0.0);
    for c in 0..m {
        let p = (c..m)
            .max_by(|&i, &j| a[i][c].norm().total_cmp(&a[j][c].norm()))
            .unwrap();
        if a[p][c].norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= a[c][c];
        let (top, bottom) = a.split_at_mut(c + 1);
        let pivot = &top[c];
        for row in bottom {
            let f = row[c] / pivot[c];
            for (x, &v) in row[c..].iter_mut().zip(&pivot[c..]) {
                *x -= f * v;
            }
        }
    }
    det
}

/// Determinant of the `2k × 2k` complex embedding of a quaternion matrix.
pub fn embedded_det(k: usize, entry: impl Fn(usize, usize) -> Quaternion) -> Complex64 {
    let mut a = vec![vec![Complex64::new(0.0, 0.0); 2 * k]; 2 * k];
    for i in 0..k {
        for j in 0..k {
            let b = block(entry(i, j));
            for r in 0..2 {
                for c in 0..2 {
                    a[2 * i + r][2 * j + c] = b[r][c];
                }
            }
        }
    }
    complex_det(a)
}

/// `H_n(x)` for the probabilists' weight, from `H_{k+1} = x H_k − k H_{k−1}`.
pub fn hermite(n: usize, x: f64) -> f64 {
    let (mut a, mut b) = (0.0, 1.0);
    for k in 0..n {
        let c = x * b - k as f64 * a;
        a = b;
        b = c;
    }
    b
}
