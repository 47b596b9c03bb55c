//! The coupled parameter spaces: Painlevé parameters `kappa`, local monodromy
//! traces `a`, eigenvalue parameters `b` and cubic-surface parameters `theta`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParamError {
    #[error("kappa violates 2k0 + k1 + k2 + k3 + k4 = 1 (residual {0:e})")]
    KappaConstraint(f64),
    #[error("b parameter b{0} is zero")]
    ZeroB(usize),
    #[error("non-finite parameter value")]
    NonFinite,
    #[error("parameter file: {0}")]
    File(String),
}

const KAPPA_TOL: f64 = 1e-12;

/// Default tolerance for the wall test.
pub const WALL_TOL: f64 = 1e-9;

fn finite(z: &[Complex64]) -> bool {
    z.iter().all(|c| c.re.is_finite() && c.im.is_finite())
}

/// `(k0, k1, k2, k3, k4)` with `2 k0 + k1 + k2 + k3 + k4 = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KappaParams(pub [Complex64; 5]);

impl KappaParams {
    pub fn new(k: [Complex64; 5]) -> Result<Self, ParamError> {
        if !finite(&k) {
            return Err(ParamError::NonFinite);
        }
        let r = (k[0] * 2.0 + k[1] + k[2] + k[3] + k[4] - 1.0).norm();
        if r > KAPPA_TOL {
            return Err(ParamError::KappaConstraint(r));
        }
        Ok(Self(k))
    }

    pub fn from_real(k: [f64; 5]) -> Result<Self, ParamError> {
        Self::new(k.map(|x| Complex64::new(x, 0.0)))
    }

    /// A generic off-wall point, `(3/16, 1/8, 1/8, 1/8, 1/4)`.
    pub fn generic() -> Self {
        Self::from_real([3.0 / 16.0, 0.125, 0.125, 0.125, 0.25]).expect("valid constant")
    }

    pub fn kappa(&self, i: usize) -> Complex64 {
        self.0[i]
    }
}

/// Traces `(a1, a2, a3, a4)` of the local monodromies.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MonodromyData(pub [Complex64; 4]);

/// Eigenvalue parameters with `a_i = b_i + 1/b_i`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BParams(pub [Complex64; 4]);

impl BParams {
    pub fn new(b: [Complex64; 4]) -> Result<Self, ParamError> {
        if !finite(&b) {
            return Err(ParamError::NonFinite);
        }
        if let Some(i) = b.iter().position(|z| z.norm() == 0.0) {
            return Err(ParamError::ZeroB(i + 1));
        }
        Ok(Self(b))
    }

    /// `b_i`, 1-based.
    pub fn get(&self, i: usize) -> Complex64 {
        self.0[i - 1]
    }

    pub fn to_a(&self) -> MonodromyData {
        MonodromyData(self.0.map(|b| b + b.inv()))
    }

    pub fn to_theta(&self) -> ThetaParams {
        a_to_theta(&self.to_a())
    }
}

/// Parameters `(t1, t2, t3, t4)` of the cubic surface.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThetaParams(pub [Complex64; 4]);

impl ThetaParams {
    pub fn new(t: [Complex64; 4]) -> Result<Self, ParamError> {
        if !finite(&t) {
            return Err(ParamError::NonFinite);
        }
        Ok(Self(t))
    }

    pub fn from_real(t: [f64; 4]) -> Self {
        Self(t.map(|x| Complex64::new(x, 0.0)))
    }

    /// `theta_i`, 1-based.
    pub fn get(&self, i: usize) -> Complex64 {
        self.0[i - 1]
    }

    /// Swaps `theta_i` and `theta_j` (1-based).
    pub fn swapped(&self, i: usize, j: usize) -> ThetaParams {
        let mut t = self.0;
        t.swap(i - 1, j - 1);
        ThetaParams(t)
    }
}

pub fn kappa_to_a(k: &KappaParams) -> MonodromyData {
    let c = |z: Complex64| (z * PI).cos() * 2.0;
    MonodromyData([c(k.0[1]), c(k.0[2]), c(k.0[3]), -c(k.0[4])])
}

pub fn a_to_theta(a: &MonodromyData) -> ThetaParams {
    let [a1, a2, a3, a4] = a.0;
    ThetaParams([
        a1 * a4 + a2 * a3,
        a2 * a4 + a3 * a1,
        a3 * a4 + a1 * a2,
        a1 * a2 * a3 * a4 + a1 * a1 + a2 * a2 + a3 * a3 + a4 * a4 - 4.0,
    ])
}

pub fn kappa_to_b(k: &KappaParams) -> BParams {
    let e = |z: Complex64| (Complex64::i() * PI * z).exp();
    BParams([e(k.0[1]), e(k.0[2]), e(k.0[3]), -e(k.0[4])])
}

/// Parameter-level Riemann-Hilbert map `kappa -> theta`.
pub fn rh(k: &KappaParams) -> ThetaParams {
    a_to_theta(&kappa_to_a(k))
}

/// A wall relation satisfied (within tolerance) by `kappa`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum WallWitness {
    /// `kappa_i` is close to the integer `m`.
    IntegerKappa { index: usize, m: i64 },
    /// `k1 + s2 k2 + s3 k3 + s4 k4` is close to the odd integer `value`.
    OddSignedSum { signs: [i8; 3], value: i64 },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WallReport {
    pub on_wall: bool,
    pub witnesses: Vec<WallWitness>,
}

fn near_integer(z: Complex64, tol: f64) -> Option<i64> {
    let m = z.re.round();
    ((z - m).norm() <= tol).then_some(m as i64)
}

/// Tests whether `kappa` lies on one of the affine hyperplanes
/// `kappa_i = m` or `k1 +- k2 +- k3 +- k4 = 2m + 1`.
pub fn on_wall(k: &KappaParams, tol: f64) -> WallReport {
    let mut witnesses = Vec::new();
    for index in 1..=4 {
        if let Some(m) = near_integer(k.0[index], tol) {
            witnesses.push(WallWitness::IntegerKappa { index, m });
        }
    }
    // k1 +- k2 +- k3 +- k4: eight sign choices.
    for mask in 0..8u8 {
        let signs = [0, 1, 2].map(|b| if mask >> b & 1 == 1 { -1i8 } else { 1 });
        let s = k.0[1]
            + k.0[2] * f64::from(signs[0])
            + k.0[3] * f64::from(signs[1])
            + k.0[4] * f64::from(signs[2]);
        if let Some(m) = near_integer(s, tol) {
            if m.rem_euclid(2) == 1 {
                witnesses.push(WallWitness::OddSignedSum { signs, value: m });
            }
        }
    }
    WallReport {
        on_wall: !witnesses.is_empty(),
        witnesses,
    }
}

/// Exact wall test for rational `kappa` given as `(numerator, denominator)`.
pub fn on_wall_exact(k: [(i64, i64); 5]) -> bool {
    use num_integer::Integer;
    let is_int = |(p, q): (i64, i64)| p.mod_floor(&q) == 0;
    if k[1..].iter().any(|&x| is_int(x)) {
        return true;
    }
    let l = k[1..].iter().fold(1i64, |acc, &(_, q)| acc.lcm(&q));
    let scaled: Vec<i64> = k[1..].iter().map(|&(p, q)| p * (l / q)).collect();
    (0..8u8).any(|mask| {
        let mut s = scaled[0];
        for b in 0..3 {
            s += if mask >> b & 1 == 1 { -scaled[b + 1] } else { scaled[b + 1] };
        }
        // s / l is an odd integer
        s.mod_floor(&l) == 0 && (s / l).rem_euclid(2) == 1
    })
}

/// Discriminant of the projective cubic in terms of `b`.
pub fn discriminant(b: &BParams) -> Complex64 {
    let mut d = Complex64::new(1.0, 0.0);
    for &bl in &b.0 {
        let t = bl - bl.inv();
        d *= t * t;
    }
    for mask in 0..16u8 {
        let mut be = Complex64::new(1.0, 0.0);
        for (l, &bl) in b.0.iter().enumerate() {
            be *= if mask >> l & 1 == 1 { bl.inv() } else { bl };
        }
        d *= be - 1.0;
    }
    d
}

/// Where the surface parameters come from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ParameterSet {
    Kappa(KappaParams),
    Theta(ThetaParams),
    B(BParams),
}

impl ParameterSet {
    pub fn theta(&self) -> ThetaParams {
        match self {
            ParameterSet::Kappa(k) => rh(k),
            ParameterSet::Theta(t) => *t,
            ParameterSet::B(b) => b.to_theta(),
        }
    }

    /// `b` when it can be derived; a bare `theta` does not determine it.
    pub fn b(&self) -> Option<BParams> {
        match self {
            ParameterSet::Kappa(k) => Some(kappa_to_b(k)),
            ParameterSet::B(b) => Some(*b),
            ParameterSet::Theta(_) => None,
        }
    }

    pub fn kappa(&self) -> Option<KappaParams> {
        match self {
            ParameterSet::Kappa(k) => Some(*k),
            _ => None,
        }
    }

    /// Parses `{"kappa": [...]}`, `{"theta": [...]}` or `{"b": [...]}` with
    /// complex entries written as `[re, im]` (a bare number is also accepted).
    pub fn from_json(text: &str) -> Result<Self, ParamError> {
        let v: serde_json::Value =
            serde_json::from_str(text).map_err(|e| ParamError::File(e.to_string()))?;
        let obj = v
            .as_object()
            .ok_or_else(|| ParamError::File("expected a JSON object".into()))?;
        if obj.len() != 1 {
            return Err(ParamError::File(
                "exactly one of kappa, theta, b must be given".into(),
            ));
        }
        let (key, val) = obj.iter().next().expect("len 1");
        let values = parse_complex_list(val)?;
        match key.as_str() {
            "kappa" => Ok(ParameterSet::Kappa(KappaParams::new(fixed(values)?)?)),
            "theta" => Ok(ParameterSet::Theta(ThetaParams::new(fixed(values)?)?)),
            "b" => Ok(ParameterSet::B(BParams::new(fixed(values)?)?)),
            other => Err(ParamError::File(format!("unknown key `{other}`"))),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let list = |z: &[Complex64]| -> serde_json::Value {
            z.iter().map(|c| serde_json::json!([c.re, c.im])).collect()
        };
        match self {
            ParameterSet::Kappa(k) => serde_json::json!({ "kappa": list(&k.0) }),
            ParameterSet::Theta(t) => serde_json::json!({ "theta": list(&t.0) }),
            ParameterSet::B(b) => serde_json::json!({ "b": list(&b.0) }),
        }
    }
}

fn fixed<const N: usize>(v: Vec<Complex64>) -> Result<[Complex64; N], ParamError> {
    let len = v.len();
    v.try_into()
        .map_err(|_| ParamError::File(format!("expected {N} entries, got {len}")))
}

fn parse_complex_list(v: &serde_json::Value) -> Result<Vec<Complex64>, ParamError> {
    let arr = v
        .as_array()
        .ok_or_else(|| ParamError::File("expected an array".into()))?;
    arr.iter()
        .map(|e| match e {
            serde_json::Value::Number(n) => Ok(Complex64::new(n.as_f64().unwrap_or(f64::NAN), 0.0)),
            serde_json::Value::Array(p) if p.len() == 2 => {
                let re = p[0].as_f64();
                let im = p[1].as_f64();
                match (re, im) {
                    (Some(re), Some(im)) => Ok(Complex64::new(re, im)),
                    _ => Err(ParamError::File("complex entries must be numbers".into())),
                }
            }
            _ => Err(ParamError::File(
                "complex numbers are written as [re, im]".into(),
            )),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    fn kappa_with(k1: f64, k2: f64, k3: f64, k4: f64) -> KappaParams {
        let k0 = (1.0 - k1 - k2 - k3 - k4) / 2.0;
        KappaParams::from_real([k0, k1, k2, k3, k4]).unwrap()
    }

    #[test]
    fn kappa_to_a_examples() {
        let a = kappa_to_a(&kappa_with(0.0, 0.3, 0.2, 0.0));
        assert!(close(a.0[0], c(2.0), 1e-15));
        assert!(close(a.0[3], c(-2.0), 1e-15));
        let a = kappa_to_a(&kappa_with(0.5, 0.3, 0.2, 0.1));
        assert!(close(a.0[0], c(0.0), 1e-15));
    }

    #[test]
    fn a_to_theta_examples() {
        let t = a_to_theta(&MonodromyData([c(0.0); 4]));
        assert_eq!(t.0, [c(0.0), c(0.0), c(0.0), c(-4.0)]);
        let t = a_to_theta(&MonodromyData([c(2.0); 4]));
        assert_eq!(t.0, [c(8.0), c(8.0), c(8.0), c(28.0)]);
        let a = [c(0.3), c(-1.1), c(2.5), c(0.7)];
        let t = a_to_theta(&MonodromyData(a));
        let tp = a_to_theta(&MonodromyData([a[2], a[0], a[1], a[3]]));
        assert!(close(t.0[3], tp.0[3], 1e-14));
    }

    #[test]
    fn kappa_to_b_examples() {
        let b = kappa_to_b(&kappa_with(0.0, 0.3, 0.2, 0.0));
        assert!(close(b.0[0], c(1.0), 1e-15));
        assert!(close(b.0[3], c(-1.0), 1e-15));
        assert!(close(b.to_a().0[3], c(-2.0), 1e-15));
        let b = kappa_to_b(&kappa_with(0.5, 0.3, 0.2, 0.1));
        assert!(close(b.0[0], Complex64::i(), 1e-15));
        assert!(close(b.to_a().0[0], c(0.0), 1e-15));
    }

    #[test]
    fn wall_examples() {
        let k = kappa_with(0.0, 0.3, 0.2, 0.1);
        let r = on_wall(&k, WALL_TOL);
        assert!(r.on_wall);
        assert!(r
            .witnesses
            .contains(&WallWitness::IntegerKappa { index: 1, m: 0 }));

        let k = KappaParams::from_real([0.0, 0.25, 0.25, 0.25, 0.25]).unwrap();
        let r = on_wall(&k, WALL_TOL);
        assert!(r.on_wall);
        assert!(r.witnesses.contains(&WallWitness::OddSignedSum {
            signs: [1, 1, 1],
            value: 1
        }));

        assert!(!on_wall(&KappaParams::generic(), WALL_TOL).on_wall);
    }

    #[test]
    fn exact_wall_matches_float_wall() {
        assert!(!on_wall_exact([(3, 16), (1, 8), (1, 8), (1, 8), (1, 4)]));
        assert!(on_wall_exact([(0, 1), (1, 4), (1, 4), (1, 4), (1, 4)]));
        assert!(on_wall_exact([(1, 2), (0, 1), (1, 5), (1, 5), (-2, 5)]));
        // k1 - k2 + k3 - k4 = -1
        assert!(on_wall_exact([(1, 2), (1, 3), (2, 3), (1, 3), (-1, 3)]));
    }

    #[test]
    fn kappa_constraint_enforced() {
        assert!(matches!(
            KappaParams::from_real([0.0, 0.1, 0.1, 0.1, 0.1]),
            Err(ParamError::KappaConstraint(_))
        ));
    }

    #[test]
    fn discriminant_vanishing_cases() {
        let b = BParams::new([c(1.0), c(3.0), c(5.0), c(7.0)]).unwrap();
        assert_eq!(discriminant(&b), c(0.0));
        let b = BParams::new([c(2.0), c(0.5), c(3.0), c(1.0 / 3.0)]).unwrap();
        assert!(discriminant(&b).norm() < 1e-12);
    }

    /// Direct expansion grouped by the number of inverted entries, compared
    /// with the mask loop above.
    #[test]
    fn discriminant_two_evaluations_agree() {
        let b = [2.0f64, 3.0, 5.0, 7.0];
        let mut lhs = 1.0f64;
        for x in b {
            lhs *= (x - 1.0 / x).powi(2);
        }
        let mut prod = 1.0f64;
        for e1 in [1, -1] {
            for e2 in [1, -1] {
                for e3 in [1, -1] {
                    for e4 in [1, -1] {
                        let v = b[0].powi(e1) * b[1].powi(e2) * b[2].powi(e3) * b[3].powi(e4);
                        prod *= v - 1.0;
                    }
                }
            }
        }
        let expected = lhs * prod;
        let got = discriminant(&BParams::new(b.map(c)).unwrap());
        assert!(expected != 0.0);
        assert!((got.re - expected).abs() <= 1e-12 * expected.abs());
        assert!(got.im.abs() <= 1e-12 * expected.abs());
    }

    #[test]
    fn parameter_json() {
        let p = ParameterSet::from_json(r#"{"theta": [[1,0],[2,0],[3,0.5],4]}"#).unwrap();
        assert_eq!(p.theta().0[2], Complex64::new(3.0, 0.5));
        assert!(p.b().is_none());
        let p = ParameterSet::from_json(&ParameterSet::Kappa(KappaParams::generic()).to_json().to_string())
            .unwrap();
        assert_eq!(p.kappa(), Some(KappaParams::generic()));
        assert!(ParameterSet::from_json(r#"{"theta": [1,2,3]}"#).is_err());
        assert!(ParameterSet::from_json(r#"{"theta": [1,2,3,4], "b": [1,1,1,1]}"#).is_err());
        assert!(ParameterSet::from_json(r#"{"b": [1,0,1,1]}"#).is_err());
    }
}
