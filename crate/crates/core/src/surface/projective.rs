//! Projective closure in `P^3` with coordinates `[X0 : X1 : X2 : X3]`.

use num_complex::Complex64;
use serde::Serialize;

use super::{cyclic, SurfaceError, SurfacePoint};
use crate::params::ThetaParams;

/// Representative images below this size (after normalising the input)
/// count as vanishing.
const DEGENERATE_TOL: f64 = 1e-12;

/// A point of `P^3`, stored with unit max-modulus.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProjPoint(pub [Complex64; 4]);

impl ProjPoint {
    /// Normalises so that the largest coordinate is `1`. Returns `None` for
    /// the zero vector.
    pub fn new(x: [Complex64; 4]) -> Option<Self> {
        let (idx, m) = x
            .iter()
            .enumerate()
            .map(|(i, z)| (i, z.norm()))
            .fold((0, 0.0), |acc, (i, n)| if n > acc.1 { (i, n) } else { acc });
        if !(m > 0.0) || !m.is_finite() {
            return None;
        }
        let s = x[idx];
        Some(Self(x.map(|z| z / s)))
    }

    pub fn from_affine(x: &SurfacePoint) -> Self {
        let one = Complex64::new(1.0, 0.0);
        Self::new([one, x.0[0], x.0[1], x.0[2]]).expect("nonzero")
    }

    /// The coordinate point `e_i` at infinity, `i` in `1..=3`.
    pub fn coordinate(i: u8) -> Self {
        let mut x = [Complex64::new(0.0, 0.0); 4];
        x[usize::from(i)] = Complex64::new(1.0, 0.0);
        Self(x)
    }

    pub fn to_affine(&self) -> Option<SurfacePoint> {
        let x0 = self.0[0];
        if x0.norm() < 1e-300 {
            return None;
        }
        Some(SurfacePoint([self.0[1] / x0, self.0[2] / x0, self.0[3] / x0]))
    }

    pub fn at_infinity(&self, tol: f64) -> bool {
        self.0[0].norm() <= tol
    }

    /// Distance between the normalised representatives, minimised over the
    /// phase ambiguity.
    pub fn dist(&self, other: &ProjPoint) -> f64 {
        let dot: Complex64 = (0..4).map(|i| other.0[i].conj() * self.0[i]).sum();
        let n2: f64 = other.0.iter().map(|z| z.norm_sqr()).sum();
        let phase = dot / n2;
        (0..4)
            .map(|i| (self.0[i] - other.0[i] * phase).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

/// Homogeneous cubic
/// `X1 X2 X3 + X0 (X1^2 + X2^2 + X3^2) - X0^2 (t1 X1 + t2 X2 + t3 X3) + t4 X0^3`.
pub fn f_homogeneous(x: &[Complex64; 4], theta: &ThetaParams) -> Complex64 {
    let [x0, x1, x2, x3] = *x;
    let t = theta.0;
    x1 * x2 * x3 + x0 * (x1 * x1 + x2 * x2 + x3 * x3)
        - x0 * x0 * (t[0] * x1 + t[1] * x2 + t[2] * x3)
        + t[3] * x0 * x0 * x0
}

/// Extension of `sigma_i` to the projective closure.
///
/// Two representatives of the same rational map on the surface are used:
/// `[X0^2 : t_i X0^2 - X0 X_i - X_j X_k : X0 X_j : X0 X_k]` and, from the
/// product of the two roots in `x_i`,
/// `[X0 X_i : X_j^2 + X_k^2 - t_j X_j X0 - t_k X_k X0 + t4 X0^2 : X_i X_j : X_i X_k]`.
/// The larger one is returned; both vanish only at `p_i`.
pub fn sigma_projective(
    i: u8,
    x: &ProjPoint,
    theta: &ThetaParams,
) -> Result<ProjPoint, SurfaceError> {
    let (a, b, c) = cyclic(i);
    let (ia, ib, ic) = (a + 1, b + 1, c + 1);
    let t = theta.0;
    let xs = x.0;
    let x0 = xs[0];

    let mut first = [Complex64::new(0.0, 0.0); 4];
    first[0] = x0 * x0;
    first[ia] = t[a] * x0 * x0 - x0 * xs[ia] - xs[ib] * xs[ic];
    first[ib] = x0 * xs[ib];
    first[ic] = x0 * xs[ic];

    let mut second = [Complex64::new(0.0, 0.0); 4];
    second[0] = x0 * xs[ia];
    second[ia] = xs[ib] * xs[ib] + xs[ic] * xs[ic] - t[b] * xs[ib] * x0 - t[c] * xs[ic] * x0
        + t[3] * x0 * x0;
    second[ib] = xs[ia] * xs[ib];
    second[ic] = xs[ia] * xs[ic];

    let size = |v: &[Complex64; 4]| v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let (s1, s2) = (size(&first), size(&second));
    if s1.max(s2) <= DEGENERATE_TOL {
        return Err(SurfaceError::Indeterminate(i));
    }
    let pick = if s1 >= s2 { first } else { second };
    ProjPoint::new(pick).ok_or(SurfaceError::Indeterminate(i))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{rh, KappaParams};
    use crate::surface::sigma_apply;

    #[test]
    fn affine_points_agree() {
        let theta = rh(&KappaParams::generic());
        let x1 = Complex64::new(0.4, -0.3);
        let x2 = Complex64::new(1.1, 0.2);
        let x3 = crate::surface::solve_x3(x1, x2, &theta)[0];
        let p = SurfacePoint::new(x1, x2, x3);
        for i in 1..=3 {
            let img = sigma_projective(i, &ProjPoint::from_affine(&p), &theta).unwrap();
            let want = ProjPoint::from_affine(&sigma_apply(i, &p, &theta));
            assert!(img.dist(&want) < 1e-12);
        }
    }

    #[test]
    fn coordinate_points() {
        let theta = rh(&KappaParams::generic());
        for i in 1..=3u8 {
            let pi = ProjPoint::coordinate(i);
            assert!(matches!(
                sigma_projective(i, &pi, &theta),
                Err(SurfaceError::Indeterminate(_))
            ));
            for j in (1..=3).filter(|&j| j != i) {
                let img = sigma_projective(i, &ProjPoint::coordinate(j), &theta).unwrap();
                assert!(img.dist(&pi) < 1e-14);
            }
        }
    }
}
