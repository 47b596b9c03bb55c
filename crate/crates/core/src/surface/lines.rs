//! The 27 lines of the smooth projective cubic, parametrised by `b`.
//!
//! For `(i, j, k)` cyclic, `L_i(p, q; r, s)` is cut out by
//! `X_i = (pq + 1/(pq)) X0` and `X_j + pq X_k = (p (s + 1/s) + q (r + 1/r)) X0`.

use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::projective::{f_homogeneous, sigma_projective, ProjPoint};
use super::{cyclic, SurfaceError};
use crate::params::{discriminant, BParams};

/// Below this `|discriminant|` the surface is treated as singular.
pub const SINGULAR_TOL: f64 = 1e-8;

/// Tolerance for `F = 0` on sampled points of a line.
pub const LINE_RESIDUAL_TOL: f64 = 1e-10;

/// Tolerance for the exchange check of `sigma_i`.
pub const EXCHANGE_TOL: f64 = 1e-9;

/// Default number of sampled points per line.
pub const SAMPLES_PER_LINE: usize = 20;

/// Labels in the exceptional-curve basis `E0, ..., E6`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LineLabel {
    E(u8),
    F(u8, u8),
    G(u8),
}

impl LineLabel {
    /// `F_ab` with `a < b`.
    pub fn f(a: u8, b: u8) -> Self {
        LineLabel::F(a.min(b), a.max(b))
    }

    /// Class in `Z^7` with respect to `E0, ..., E6`.
    pub fn class(&self) -> [i64; 7] {
        let mut v = [0i64; 7];
        match *self {
            LineLabel::E(a) => v[usize::from(a)] = 1,
            LineLabel::F(a, b) => {
                v[0] = 1;
                v[usize::from(a)] = -1;
                v[usize::from(b)] = -1;
            }
            LineLabel::G(a) => {
                v[0] = 2;
                for (idx, e) in v.iter_mut().enumerate().skip(1) {
                    if idx != usize::from(a) {
                        *e = -1;
                    }
                }
            }
        }
        v
    }

    /// Intersection number of the two classes under `diag(1, -1, ..., -1)`.
    pub fn intersection(&self, other: &LineLabel) -> i64 {
        let (u, v) = (self.class(), other.class());
        u[0] * v[0] - (1..7).map(|t| u[t] * v[t]).sum::<i64>()
    }
}

impl fmt::Display for LineLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LineLabel::E(a) => write!(f, "E{a}"),
            LineLabel::F(a, b) => write!(f, "F{a}{b}"),
            LineLabel::G(a) => write!(f, "G{a}"),
        }
    }
}

impl Serialize for LineLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// One line of the catalogue.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LineSpec {
    pub label: LineLabel,
    /// The `i` of the family `L_i(...)`, or of the line `L_i` at infinity.
    pub family: u8,
    /// `(p, q, r, s)` for finite lines.
    pub args: Option<[Complex64; 4]>,
    /// Two linear forms in `(X0, X1, X2, X3)` vanishing on the line.
    pub equations: [[Complex64; 4]; 2],
}

impl LineSpec {
    pub fn at_infinity(&self) -> bool {
        self.args.is_none()
    }

    /// `L_i(p, q; r, s)`.
    pub fn finite(label: LineLabel, i: u8, p: Complex64, q: Complex64, r: Complex64, s: Complex64) -> Self {
        let (a, b, c) = cyclic(i);
        let zero = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        let pq = p * q;
        let mut e1 = [zero; 4];
        e1[a + 1] = one;
        e1[0] = -(pq + pq.inv());
        let mut e2 = [zero; 4];
        e2[b + 1] = one;
        e2[c + 1] = pq;
        e2[0] = -(p * (s + s.inv()) + q * (r + r.inv()));
        Self {
            label,
            family: i,
            args: Some([p, q, r, s]),
            equations: [e1, e2],
        }
    }

    /// `L_i = {X0 = X_i = 0}`.
    pub fn infinity(i: u8) -> Self {
        let zero = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        let mut e1 = [zero; 4];
        e1[0] = one;
        let mut e2 = [zero; 4];
        e2[usize::from(i)] = one;
        Self {
            label: LineLabel::f(i, i + 3),
            family: i,
            args: None,
            equations: [e1, e2],
        }
    }

    /// Largest normalised value `|l(X)| / (|l| |X|)` of the two equations.
    pub fn residual(&self, x: &ProjPoint) -> f64 {
        let xn = norm4(&x.0);
        self.equations
            .iter()
            .map(|e| dot(e, &x.0).norm() / (norm4(e) * xn))
            .fold(0.0, f64::max)
    }

    /// Two vectors spanning the line in `C^4`.
    pub fn basis(&self) -> [[Complex64; 4]; 2] {
        let [e1, e2] = self.equations;
        let mut best = (0usize, 1usize, 0.0f64);
        for p in 0..4 {
            for q in p + 1..4 {
                let d = (e1[p] * e2[q] - e1[q] * e2[p]).norm();
                if d > best.2 {
                    best = (p, q, d);
                }
            }
        }
        let (p, q, _) = best;
        let det = e1[p] * e2[q] - e1[q] * e2[p];
        let free: Vec<usize> = (0..4).filter(|&t| t != p && t != q).collect();
        std::array::from_fn(|n| {
            let f = free[n];
            let mut v = [Complex64::new(0.0, 0.0); 4];
            v[f] = Complex64::new(1.0, 0.0);
            // e1[p] v_p + e1[q] v_q = -e1[f], same for e2
            let (r1, r2) = (-e1[f], -e2[f]);
            v[p] = (r1 * e2[q] - r2 * e1[q]) / det;
            v[q] = (e1[p] * r2 - e2[p] * r1) / det;
            v
        })
    }

    /// `n` points `u + t v` with `t = rho e^{i phi}`, deterministic in `seed`.
    pub fn sample(&self, n: usize, seed: u64) -> Vec<ProjPoint> {
        let [u, v] = orthonormal(self.basis());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..n)
            .filter_map(|_| {
                let phi: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
                let rho: f64 = rng.gen_range(0.2..5.0);
                let t = Complex64::from_polar(rho, phi);
                ProjPoint::new(std::array::from_fn(|m| u[m] + t * v[m]))
            })
            .collect()
    }
}

fn dot(a: &[Complex64; 4], b: &[Complex64; 4]) -> Complex64 {
    (0..4).map(|m| a[m] * b[m]).sum()
}

fn norm4(a: &[Complex64; 4]) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn orthonormal([u, v]: [[Complex64; 4]; 2]) -> [[Complex64; 4]; 2] {
    let nu = norm4(&u);
    let u: [Complex64; 4] = u.map(|z| z / nu);
    let proj: Complex64 = (0..4).map(|m| u[m].conj() * v[m]).sum();
    let w: [Complex64; 4] = std::array::from_fn(|m| v[m] - proj * u[m]);
    let nw = norm4(&w);
    [u, w.map(|z| z / nw)]
}

/// `|det|` of the four equations of two lines after orthonormalising each
/// pair; zero exactly when the lines meet.
pub fn meeting_defect(a: &LineSpec, b: &LineSpec) -> f64 {
    let conj = |e: [Complex64; 4]| e.map(|z| z.conj());
    let [a1, a2] = orthonormal(a.equations.map(conj));
    let [b1, b2] = orthonormal(b.equations.map(conj));
    det4([a1, a2, b1, b2]).norm()
}

fn det4(m: [[Complex64; 4]; 4]) -> Complex64 {
    let mut a = m;
    let mut det = Complex64::new(1.0, 0.0);
    for k in 0..4 {
        let piv = (k..4)
            .max_by(|&r, &s| a[r][k].norm().total_cmp(&a[s][k].norm()))
            .unwrap_or(k);
        if a[piv][k].norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if piv != k {
            a.swap(piv, k);
            det = -det;
        }
        det *= a[k][k];
        for r in k + 1..4 {
            let factor = a[r][k] / a[k][k];
            for c in k..4 {
                let sub = factor * a[k][c];
                a[r][c] -= sub;
            }
        }
    }
    det
}

/// Labels of the `F` lines are the ones for which geometric incidence
/// agrees with the intersection form.
///
/// The 24 finite lines followed by `L1 = F14`, `L2 = F25`, `L3 = F36`, each
/// checked on sampled points against the projective cubic.
pub fn lines_catalog(b: &BParams) -> Result<Vec<LineSpec>, SurfaceError> {
    let d = discriminant(b).norm();
    if d < SINGULAR_TOL {
        return Err(SurfaceError::Singular(d));
    }
    let lines = raw_catalog(b);
    let theta = b.to_theta();
    for (n, line) in lines.iter().enumerate() {
        let worst = line
            .sample(SAMPLES_PER_LINE, n as u64)
            .iter()
            .map(|x| f_homogeneous(&x.0, &theta).norm())
            .fold(0.0, f64::max);
        if !(worst < LINE_RESIDUAL_TOL) {
            return Err(SurfaceError::LineOffSurface(line.label, worst));
        }
    }
    Ok(lines)
}

/// Catalogue without the on-surface verification.
pub fn raw_catalog(b: &BParams) -> Vec<LineSpec> {
    let mut out = Vec::with_capacity(27);
    for i in 1..=3u8 {
        let (ia, ib, ic) = cyclic(i);
        let (bi, bj, bk, b4) = (b.0[ia], b.0[ib], b.0[ic], b.0[3]);
        let (j, k) = (ib as u8 + 1, ic as u8 + 1);
        let inv = |z: Complex64| z.inv();
        out.push(LineSpec::finite(LineLabel::E(i), i, bi, b4, bj, bk));
        out.push(LineSpec::finite(LineLabel::G(i + 3), i, inv(bi), inv(b4), bj, bk));
        out.push(LineSpec::finite(LineLabel::E(i + 3), i, bj, bk, bi, b4));
        out.push(LineSpec::finite(LineLabel::G(i), i, inv(bj), inv(bk), bi, b4));
        out.push(LineSpec::finite(LineLabel::f(j + 3, k + 3), i, inv(bi), b4, bj, bk));
        out.push(LineSpec::finite(LineLabel::f(j, k), i, bi, inv(b4), bj, bk));
        out.push(LineSpec::finite(LineLabel::f(j, k + 3), i, inv(bj), bk, bi, b4));
        out.push(LineSpec::finite(LineLabel::f(j + 3, k), i, bj, inv(bk), bi, b4));
    }
    for i in 1..=3u8 {
        out.push(LineSpec::infinity(i));
    }
    out
}

pub fn find_line(lines: &[LineSpec], label: LineLabel) -> Option<&LineSpec> {
    lines.iter().find(|l| l.label == label)
}

/// The four pairs exchanged by `sigma_i`:
/// `E_j <-> G_{j+3}`, `E_{j+3} <-> G_j`, `E_k <-> G_{k+3}`, `E_{k+3} <-> G_k`.
pub fn exchanged_pairs(i: u8) -> [(LineLabel, LineLabel); 4] {
    let (_, b, c) = cyclic(i);
    let (j, k) = (b as u8 + 1, c as u8 + 1);
    [
        (LineLabel::E(j), LineLabel::G(j + 3)),
        (LineLabel::E(j + 3), LineLabel::G(j)),
        (LineLabel::E(k), LineLabel::G(k + 3)),
        (LineLabel::E(k + 3), LineLabel::G(k)),
    ]
}

/// Outcome of [`line_exchange_check`] for one ordered pair.
#[derive(Debug, Clone, Serialize)]
pub struct ExchangeResult {
    pub from: LineLabel,
    pub to: LineLabel,
    /// Worst residual of `sigma_i` images against the target equations.
    pub image_residual: f64,
    /// Smallest residual of the unmapped points against the target.
    pub unmapped_residual: f64,
}

impl ExchangeResult {
    pub fn passed(&self) -> bool {
        self.image_residual < EXCHANGE_TOL
    }
}

/// Maps sampled points of each line in [`exchanged_pairs`] through
/// `sigma_i` and measures them against the partner line, in both directions.
pub fn line_exchange_report(i: u8, b: &BParams) -> Result<Vec<ExchangeResult>, SurfaceError> {
    let lines = lines_catalog(b)?;
    let theta = b.to_theta();
    let mut out = Vec::new();
    for (n, (x, y)) in exchanged_pairs(i).into_iter().enumerate() {
        for (from, to) in [(x, y), (y, x)] {
            let src = find_line(&lines, from).expect("catalogue is complete");
            let dst = find_line(&lines, to).expect("catalogue is complete");
            let pts = src.sample(SAMPLES_PER_LINE, 1000 + 10 * u64::from(i) + n as u64);
            let mut image_residual = 0.0f64;
            let mut unmapped_residual = f64::INFINITY;
            for p in &pts {
                let img = sigma_projective(i, p, &theta)?;
                image_residual = image_residual.max(dst.residual(&img));
                unmapped_residual = unmapped_residual.min(dst.residual(p));
            }
            out.push(ExchangeResult {
                from,
                to,
                image_residual,
                unmapped_residual,
            });
        }
    }
    Ok(out)
}

/// `true` when every pair of [`exchanged_pairs`] is exchanged by `sigma_i`.
pub fn line_exchange_check(i: u8, b: &BParams) -> bool {
    line_exchange_report(i, b).is_ok_and(|r| r.iter().all(ExchangeResult::passed))
}

/// Catalogue as a JSON object keyed by label.
pub fn catalog_json(lines: &[LineSpec]) -> serde_json::Value {
    use crate::json;
    let mut map = serde_json::Map::new();
    for l in lines {
        let mut obj = serde_json::Map::new();
        obj.insert("family".into(), l.family.into());
        obj.insert("at_infinity".into(), l.at_infinity().into());
        obj.insert(
            "args".into(),
            l.args.map_or(serde_json::Value::Null, |a| json::complex_list(&a)),
        );
        obj.insert(
            "equations".into(),
            serde_json::Value::Array(l.equations.iter().map(|e| json::complex_list(e)).collect()),
        );
        map.insert(l.label.to_string(), serde_json::Value::Object(obj));
    }
    serde_json::Value::Object(map)
}
