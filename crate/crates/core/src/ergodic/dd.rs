//! Double-double complex evaluation of the surface maps (about 32 digits).

use num_complex::{Complex, Complex64};
use twofloat::TwoFloat;

use crate::params::ThetaParams;
use crate::surface::{application_order, CompositionOrder, COMPOSITION_ORDER};
use crate::word::CoxeterWord;

pub type DdComplex = Complex<TwoFloat>;
pub type DdPoint = [DdComplex; 3];

pub fn lift(z: Complex64) -> DdComplex {
    Complex::new(TwoFloat::from(z.re), TwoFloat::from(z.im))
}

pub fn lower(z: DdComplex) -> Complex64 {
    Complex64::new(f64::from(z.re), f64::from(z.im))
}

pub fn lift_point(x: &[Complex64; 3]) -> DdPoint {
    x.map(lift)
}

pub fn lower_point(x: &DdPoint) -> [Complex64; 3] {
    x.map(lower)
}

fn theta_dd(theta: &ThetaParams) -> [DdComplex; 4] {
    theta.0.map(lift)
}

pub fn norm(x: &DdPoint) -> f64 {
    lower_point(x).iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// `x - y` rounded to `f64`.
pub fn diff(x: &DdPoint, y: &DdPoint) -> [Complex64; 3] {
    std::array::from_fn(|m| lower(x[m] - y[m]))
}

pub fn f_eval(x: &DdPoint, theta: &ThetaParams) -> DdComplex {
    let t = theta_dd(theta);
    let [x1, x2, x3] = *x;
    x1 * x2 * x3 + x1 * x1 + x2 * x2 + x3 * x3 - t[0] * x1 - t[1] * x2 - t[2] * x3 + t[3]
}

pub fn sigma_apply(i: u8, x: &DdPoint, theta: &ThetaParams) -> DdPoint {
    let a = usize::from(i - 1);
    let (b, c) = ((a + 1) % 3, (a + 2) % 3);
    let mut y = *x;
    y[a] = lift(theta.0[a]) - x[a] - x[b] * x[c];
    y
}

pub fn word_apply(w: &CoxeterWord, x: &DdPoint, theta: &ThetaParams) -> DdPoint {
    word_apply_with(COMPOSITION_ORDER, w, x, theta)
}

pub fn word_apply_with(
    order: CompositionOrder,
    w: &CoxeterWord,
    x: &DdPoint,
    theta: &ThetaParams,
) -> DdPoint {
    application_order(w, order)
        .into_iter()
        .fold(*x, |y, l| sigma_apply(l, &y, theta))
}
