//! The affine cubic surface
//! `f(x, theta) = x1 x2 x3 + x1^2 + x2^2 + x3^2 - t1 x1 - t2 x2 - t3 x3 + t4`
//! and the involutions `sigma_i` swapping the two roots of `f` in `x_i`.

pub mod lines;
pub mod projective;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::params::ThetaParams;
use crate::word::CoxeterWord;

pub use lines::{line_exchange_check, lines_catalog, LineLabel, LineSpec};
pub use projective::{sigma_projective, ProjPoint};

pub type Mat3 = [[Complex64; 3]; 3];

/// Coordinates above which a composition is reported as escaping.
pub const ESCAPE_RADIUS: f64 = 1e150;

/// Relative tolerance for membership in the surface.
pub const ON_SURFACE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum SurfaceError {
    #[error("orbit escaped (|x| > {radius:e}) after {steps} letters")]
    Escape { steps: usize, radius: f64 },
    #[error("point is the indeterminacy point of sigma_{0}")]
    Indeterminate(u8),
    #[error("surface is singular (|discriminant| = {0:e})")]
    Singular(f64),
    #[error("line {0} does not lie on the surface (residual {1:e})")]
    LineOffSurface(LineLabel, f64),
}

/// A point of `C^3`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SurfacePoint(pub [Complex64; 3]);

impl SurfacePoint {
    pub fn new(x1: Complex64, x2: Complex64, x3: Complex64) -> Self {
        Self([x1, x2, x3])
    }

    pub fn from_real(x: [f64; 3]) -> Self {
        Self(x.map(|v| Complex64::new(v, 0.0)))
    }

    /// Euclidean norm.
    pub fn norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn dist(&self, other: &SurfacePoint) -> f64 {
        (0..3)
            .map(|i| (self.0[i] - other.0[i]).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// `|f| <= tol (1 + |x|^3)`.
    pub fn on_surface(&self, theta: &ThetaParams, tol: f64) -> bool {
        f_eval(self, theta).norm() <= tol * (1.0 + self.norm().powi(3))
    }
}

/// `(i, j, k)` cyclic, 0-based, starting at the 1-based index `i`.
pub(crate) fn cyclic(i: u8) -> (usize, usize, usize) {
    let a = usize::from(i - 1);
    (a, (a + 1) % 3, (a + 2) % 3)
}

pub fn f_eval(x: &SurfacePoint, theta: &ThetaParams) -> Complex64 {
    let [x1, x2, x3] = x.0;
    let t = theta.0;
    x1 * x2 * x3 + x1 * x1 + x2 * x2 + x3 * x3 - t[0] * x1 - t[1] * x2 - t[2] * x3 + t[3]
}

/// `(df/dx1, df/dx2, df/dx3)`.
pub fn f_gradient(x: &SurfacePoint, theta: &ThetaParams) -> [Complex64; 3] {
    let [x1, x2, x3] = x.0;
    let t = theta.0;
    [
        x2 * x3 + x1 * 2.0 - t[0],
        x1 * x3 + x2 * 2.0 - t[1],
        x1 * x2 + x3 * 2.0 - t[2],
    ]
}

/// `x_i -> theta_i - x_i - x_j x_k`.
pub fn sigma_apply(i: u8, x: &SurfacePoint, theta: &ThetaParams) -> SurfacePoint {
    let (a, b, c) = cyclic(i);
    let mut y = x.0;
    y[a] = theta.0[a] - x.0[a] - x.0[b] * x.0[c];
    SurfacePoint(y)
}

/// Ambient Jacobian of `sigma_i` at `x`. It differs from the identity only
/// in row `i`, whose diagonal entry is `-1`, so its determinant is `-1`.
pub fn sigma_jacobian(i: u8, x: &SurfacePoint) -> Mat3 {
    let (a, b, c) = cyclic(i);
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let mut m = [[zero; 3]; 3];
    for (r, row) in m.iter_mut().enumerate() {
        row[r] = one;
    }
    m[a][a] = -one;
    m[a][b] = -x.0[c];
    m[a][c] = -x.0[b];
    m
}

/// How the letters of a word act on points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompositionOrder {
    /// `s_{i1} ... s_{in}` acts as `sigma_{i1} o ... o sigma_{in}`.
    RightmostFirst,
    /// `s_{i1} ... s_{in}` acts as `sigma_{in} o ... o sigma_{i1}`.
    LeftmostFirst,
}

/// The convention under which `g_i^2 = s_i s_{i+1}`.
pub const COMPOSITION_ORDER: CompositionOrder = CompositionOrder::RightmostFirst;

/// Letters of `w` in the order they are applied to a point.
pub fn application_order(w: &CoxeterWord, order: CompositionOrder) -> Vec<u8> {
    match order {
        CompositionOrder::RightmostFirst => w.letters().iter().rev().copied().collect(),
        CompositionOrder::LeftmostFirst => w.letters().to_vec(),
    }
}

pub fn word_apply_with(
    order: CompositionOrder,
    w: &CoxeterWord,
    x: &SurfacePoint,
    theta: &ThetaParams,
) -> Result<SurfacePoint, SurfaceError> {
    let mut y = *x;
    for (steps, l) in application_order(w, order).into_iter().enumerate() {
        y = sigma_apply(l, &y, theta);
        if !(y.max_abs() <= ESCAPE_RADIUS) {
            return Err(SurfaceError::Escape {
                steps: steps + 1,
                radius: ESCAPE_RADIUS,
            });
        }
    }
    Ok(y)
}

/// Applies `w` under [`COMPOSITION_ORDER`].
pub fn word_apply(
    w: &CoxeterWord,
    x: &SurfacePoint,
    theta: &ThetaParams,
) -> Result<SurfacePoint, SurfaceError> {
    word_apply_with(COMPOSITION_ORDER, w, x, theta)
}

pub fn mat_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    let mut out = [[Complex64::new(0.0, 0.0); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j];
        }
    }
    out
}

pub fn mat_vec(a: &Mat3, v: &[Complex64; 3]) -> [Complex64; 3] {
    std::array::from_fn(|i| a[i][0] * v[0] + a[i][1] * v[1] + a[i][2] * v[2])
}

pub fn det3(m: &Mat3) -> Complex64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Image of `x` under `w` together with the ambient Jacobian (chain rule).
pub fn word_apply_jacobian(
    w: &CoxeterWord,
    x: &SurfacePoint,
    theta: &ThetaParams,
) -> Result<(SurfacePoint, Mat3), SurfaceError> {
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let mut jac = [[zero; 3]; 3];
    for (r, row) in jac.iter_mut().enumerate() {
        row[r] = one;
    }
    let mut y = *x;
    for (steps, l) in application_order(w, COMPOSITION_ORDER).into_iter().enumerate() {
        jac = mat_mul(&sigma_jacobian(l, &y), &jac);
        y = sigma_apply(l, &y, theta);
        if !(y.max_abs() <= ESCAPE_RADIUS) {
            return Err(SurfaceError::Escape {
                steps: steps + 1,
                radius: ESCAPE_RADIUS,
            });
        }
    }
    Ok((y, jac))
}

/// Half-monodromy map `g_i : S(theta) -> S(theta')` with
/// `(x_i', x_j', x_k') = (theta_j - x_j - x_k x_i, x_i, x_k)` and
/// `theta_i, theta_j` exchanged, for `(i, j, k)` cyclic.
pub fn g_apply(i: u8, x: &SurfacePoint, theta: &ThetaParams) -> (SurfacePoint, ThetaParams) {
    let (a, b, c) = cyclic(i);
    let mut y = x.0;
    y[a] = theta.0[b] - x.0[b] - x.0[c] * x.0[a];
    y[b] = x.0[a];
    y[c] = x.0[c];
    (SurfacePoint(y), theta.swapped(a + 1, b + 1))
}

/// Solves `f = 0` for `x3` given `x1, x2`, returning both roots.
pub fn solve_x3(x1: Complex64, x2: Complex64, theta: &ThetaParams) -> [Complex64; 2] {
    let t = theta.0;
    // x3^2 + (x1 x2 - t3) x3 + (x1^2 + x2^2 - t1 x1 - t2 x2 + t4) = 0
    let b = x1 * x2 - t[2];
    let c = x1 * x1 + x2 * x2 - t[0] * x1 - t[1] * x2 + t[3];
    quadratic_roots(b, c)
}

/// Roots of `z^2 + b z + c`, computed without cancellation.
pub fn quadratic_roots(b: Complex64, c: Complex64) -> [Complex64; 2] {
    let disc = (b * b - c * 4.0).sqrt();
    let s = if (b.conj() * disc).re >= 0.0 { -b - disc } else { -b + disc };
    if s.norm() == 0.0 {
        return [Complex64::new(0.0, 0.0); 2];
    }
    let r1 = s / 2.0;
    let r2 = c * 2.0 / s;
    [r1, r2]
}
