//! Lyapunov exponents from products of 2x2 tangent Jacobians.
//!
//! At each point the tangent plane of `S` is charted by the two coordinates
//! other than the one with the largest `|df/dx_m|`.

use num_complex::Complex64;
use serde::Serialize;

use crate::params::ThetaParams;
use crate::surface::{f_gradient, mat_vec, word_apply_jacobian, SurfacePoint};
use crate::word::CoxeterWord;

use super::orbit::ORBIT_ESCAPE;

type Mat2 = [[Complex64; 2]; 2];

#[derive(Debug, Clone, Serialize)]
pub struct LyapunovEstimate {
    /// Nats per word application.
    pub l_plus: f64,
    pub l_minus: f64,
    pub iterations: usize,
    pub seed: SurfacePoint,
    /// Set when the orbit escaped before `n` steps.
    pub unreliable: bool,
}

impl LyapunovEstimate {
    pub fn sum(&self) -> f64 {
        self.l_plus + self.l_minus
    }
}

/// Index eliminated in the chart at `x`, and the remaining two.
fn chart(x: &SurfacePoint, theta: &ThetaParams) -> (usize, [usize; 2], [Complex64; 3]) {
    let g = f_gradient(x, theta);
    let m = (0..3)
        .max_by(|&a, &b| g[a].norm().total_cmp(&g[b].norm()))
        .unwrap_or(0);
    let rest = match m {
        0 => [1, 2],
        1 => [0, 2],
        _ => [0, 1],
    };
    (m, rest, g)
}

/// Tangent vectors at `x` lifting the chart directions.
fn tangent_basis(x: &SurfacePoint, theta: &ThetaParams) -> [[Complex64; 3]; 2] {
    let (m, rest, g) = chart(x, theta);
    rest.map(|p| {
        let mut v = [Complex64::new(0.0, 0.0); 3];
        v[p] = Complex64::new(1.0, 0.0);
        v[m] = -g[p] / g[m];
        v
    })
}

fn mul2(a: &Mat2, b: &Mat2) -> Mat2 {
    std::array::from_fn(|i| std::array::from_fn(|j| a[i][0] * b[0][j] + a[i][1] * b[1][j]))
}

/// `M = Q R`; returns `(Q, |R11|, |R22|)`.
fn qr2(m: &Mat2) -> (Mat2, f64, f64) {
    let c0 = [m[0][0], m[1][0]];
    let c1 = [m[0][1], m[1][1]];
    let r11 = (c0[0].norm_sqr() + c0[1].norm_sqr()).sqrt();
    let q0 = [c0[0] / r11, c0[1] / r11];
    let r12 = q0[0].conj() * c1[0] + q0[1].conj() * c1[1];
    let w = [c1[0] - r12 * q0[0], c1[1] - r12 * q0[1]];
    let r22 = (w[0].norm_sqr() + w[1].norm_sqr()).sqrt();
    let q1 = [w[0] / r22, w[1] / r22];
    ([[q0[0], q1[0]], [q0[1], q1[1]]], r11, r22)
}

/// Estimates both exponents over `n` applications of `w`, orthonormalising
/// every `stride` steps.
pub fn lyapunov(
    w: &CoxeterWord,
    x0: &SurfacePoint,
    theta: &ThetaParams,
    n: usize,
    stride: usize,
) -> LyapunovEstimate {
    let stride = stride.max(1);
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let ident: Mat2 = [[one, zero], [zero, one]];
    let mut q = ident;
    let mut acc = ident;
    let (mut s1, mut s2) = (0.0f64, 0.0f64);
    let mut x = *x0;
    let mut done = 0;
    let mut unreliable = false;
    for step in 1..=n {
        let Ok((y, jac)) = word_apply_jacobian(w, &x, theta) else {
            unreliable = true;
            break;
        };
        if !(y.norm() <= ORBIT_ESCAPE) {
            unreliable = true;
            break;
        }
        let basis = tangent_basis(&x, theta);
        let (_, rest, _) = chart(&y, theta);
        let images = basis.map(|v| mat_vec(&jac, &v));
        let local: Mat2 = std::array::from_fn(|r| std::array::from_fn(|c| images[c][rest[r]]));
        acc = mul2(&local, &acc);
        x = y;
        done = step;
        if step % stride == 0 || step == n {
            let (nq, r11, r22) = qr2(&mul2(&acc, &q));
            s1 += r11.ln();
            s2 += r22.ln();
            q = nq;
            acc = ident;
        }
    }
    if done > 0 && done % stride != 0 && done != n {
        let (_, r11, r22) = qr2(&mul2(&acc, &q));
        s1 += r11.ln();
        s2 += r22.ln();
    }
    let denom = done.max(1) as f64;
    LyapunovEstimate {
        l_plus: s1 / denom,
        l_minus: s2 / denom,
        iterations: done,
        seed: *x0,
        unreliable,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ergodic::orbit::real_seed;
    use crate::params::{rh, KappaParams};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn qr_reconstructs() {
        let m: Mat2 = [
            [Complex64::new(1.0, 2.0), Complex64::new(-0.5, 0.1)],
            [Complex64::new(0.3, 0.0), Complex64::new(2.0, -1.0)],
        ];
        let (q, r11, r22) = qr2(&m);
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        assert!((det.norm() - r11 * r22).abs() < 1e-12);
        let qd = q[0][0] * q[1][1] - q[0][1] * q[1][0];
        assert!((qd.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn exponents_cancel() {
        let theta = rh(&KappaParams::generic());
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let x = real_seed(&theta, &mut rng).unwrap();
        let est = lyapunov(&CoxeterWord::eight_loop(), &x, &theta, 4000, 1);
        assert!(!est.unreliable);
        assert!(est.sum().abs() < 1e-3, "{est:?}");
        assert!(est.l_plus >= 0.0);
    }
}
