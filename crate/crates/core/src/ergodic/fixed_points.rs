//! Multi-start Gauss-Newton search for the periodic points of a word.
//!
//! Starts are driven to a root of a letter-by-letter shooting system, then
//! refined on the ambient residual `(w^N(x) - x, f(x))` in `C^4` over `x` in
//! `C^3`. Accepted roots are polished in double-double arithmetic and
//! deduplicated.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use super::{dd, ErgodicError};
use crate::cohomology::periodic_count;
use crate::json;
use crate::params::{discriminant, ParameterSet, ThetaParams};
use crate::surface::{
    application_order, f_gradient, word_apply_jacobian, Mat3, SurfacePoint, COMPOSITION_ORDER,
};
use crate::word::CoxeterWord;

/// The oracle refuses below this `|discriminant|`.
pub const DISCRIMINANT_FLOOR: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixedPointOptions {
    pub starts: usize,
    /// Standard deviation of the real and imaginary parts of each start.
    pub scale: f64,
    pub tol_resid: f64,
    pub tol_dedupe: f64,
    pub seed: u64,
    pub max_iter: usize,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
}

impl Default for FixedPointOptions {
    fn default() -> Self {
        Self {
            starts: 2000,
            scale: 3.0,
            tol_resid: 1e-10,
            tol_dedupe: 1e-6,
            seed: 0,
            max_iter: 80,
            threads: None,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FixedPoint {
    pub x: SurfacePoint,
    pub residual: f64,
    /// Number of starts that converged here.
    pub basin: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct FixedPointSet {
    pub word: String,
    pub period: u32,
    pub formula_count: i64,
    pub points: Vec<FixedPoint>,
    pub starts: usize,
    pub tol_resid: f64,
    pub tol_dedupe: f64,
}

impl FixedPointSet {
    pub fn found(&self) -> usize {
        self.points.len()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "word": self.word,
            "N": self.period,
            "formula_count": self.formula_count,
            "found_count": self.found(),
            "starts": self.starts,
            "points": self.points.iter().map(|p| json!({
                "x": json::complex_list(&p.x.0),
                "residual": json::float(p.residual),
                "basin": p.basin,
            })).collect::<Vec<_>>(),
        })
    }

    /// Index of a point within dedupe distance of `x`.
    pub fn locate(&self, x: &SurfacePoint) -> Option<usize> {
        self.points
            .iter()
            .position(|p| same_point(&p.x, x, self.tol_dedupe))
    }
}

fn same_point(a: &SurfacePoint, b: &SurfacePoint, tol: f64) -> bool {
    a.dist(b) <= tol * (1.0 + a.norm().max(b.norm()))
}

/// Scale-aware residual: `max(|w^N x - x| / (1 + |x|), |f| / (1 + |x|^3))`.
pub fn relative_residual(w_n: &CoxeterWord, x: &SurfacePoint, theta: &ThetaParams) -> f64 {
    let xd = dd::lift_point(&x.0);
    dd_relative_residual(w_n, &xd, theta)
}

fn dd_relative_residual(w_n: &CoxeterWord, x: &dd::DdPoint, theta: &ThetaParams) -> f64 {
    let y = dd::word_apply(w_n, x, theta);
    let d = dd::diff(&y, x);
    let nx = dd::norm(x);
    let move_ = d.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt() / (1.0 + nx);
    let fv = dd::lower(dd::f_eval(x, theta)).norm() / (1.0 + nx.powi(3));
    move_.max(fv)
}

/// `(r, J)` with `r = (w(x) - x, f(x))` and `J` its Jacobian.
fn system(
    w_n: &CoxeterWord,
    x: &SurfacePoint,
    theta: &ThetaParams,
) -> Option<([Complex64; 4], [[Complex64; 3]; 4])> {
    let (y, jac): (SurfacePoint, Mat3) = word_apply_jacobian(w_n, x, theta).ok()?;
    let mut r = [Complex64::new(0.0, 0.0); 4];
    let mut j = [[Complex64::new(0.0, 0.0); 3]; 4];
    for a in 0..3 {
        r[a] = y.0[a] - x.0[a];
        j[a] = jac[a];
        j[a][a] -= 1.0;
    }
    r[3] = crate::surface::f_eval(x, theta);
    j[3] = f_gradient(x, theta);
    Some((r, j))
}

fn norm4(r: &[Complex64; 4]) -> f64 {
    r.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Solves `(J^H J + mu I) dx = -J^H r`.
fn lm_step(r: &[Complex64; 4], j: &[[Complex64; 3]; 4], mu: f64) -> Option<[Complex64; 3]> {
    let mut a = [[Complex64::new(0.0, 0.0); 3]; 3];
    let mut g = [Complex64::new(0.0, 0.0); 3];
    for p in 0..3 {
        for q in 0..3 {
            a[p][q] = (0..4).map(|k| j[k][p].conj() * j[k][q]).sum();
        }
        a[p][p] += mu;
        g[p] = -(0..4).map(|k| j[k][p].conj() * r[k]).sum::<Complex64>();
    }
    solve3(a, g)
}

fn solve3(a: [[Complex64; 3]; 3], b: [Complex64; 3]) -> Option<[Complex64; 3]> {
    let x = solve_dense(a.iter().map(|r| r.to_vec()).collect(), b.to_vec())?;
    Some([x[0], x[1], x[2]])
}

/// Gaussian elimination with partial pivoting.
fn solve_dense(mut a: Vec<Vec<Complex64>>, mut b: Vec<Complex64>) -> Option<Vec<Complex64>> {
    let n = b.len();
    for k in 0..n {
        let piv = (k..n).max_by(|&r, &s| a[r][k].norm().total_cmp(&a[s][k].norm()))?;
        if !(a[piv][k].norm() > 0.0) {
            return None;
        }
        a.swap(k, piv);
        b.swap(k, piv);
        for r in k + 1..n {
            let f = a[r][k] / a[k][k];
            if f.norm() == 0.0 {
                continue;
            }
            for c in k..n {
                let sub = f * a[k][c];
                a[r][c] -= sub;
            }
            let sub = f * b[k];
            b[r] -= sub;
        }
    }
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for k in (0..n).rev() {
        let s: Complex64 = (k + 1..n).map(|c| a[k][c] * x[c]).sum();
        x[k] = (b[k] - s) / a[k][k];
    }
    x.iter().all(|z| z.re.is_finite() && z.im.is_finite()).then_some(x)
}

/// Letter-level shooting. With letters `l_0, ..., l_{L-1}` in application
/// order, unknown `u_m` is the coordinate written by letter `m`. Periodicity
/// means the value of coordinate `c` seen by letter `m` is the `u` of the
/// most recent letter (cyclically) that wrote `c`.
struct Shooting {
    letters: Vec<usize>,
    /// `prev[m][c]`: index of the letter whose output is coordinate `c` as
    /// seen by letter `m`.
    prev: Vec<[usize; 3]>,
    /// Letter holding the final value of each coordinate.
    last: [usize; 3],
    theta: [Complex64; 4],
}

impl Shooting {
    fn new(w_n: &CoxeterWord, theta: &ThetaParams) -> Option<Self> {
        let letters: Vec<usize> = application_order(w_n, COMPOSITION_ORDER)
            .into_iter()
            .map(|l| usize::from(l - 1))
            .collect();
        let len = letters.len();
        let mut last = [usize::MAX; 3];
        for (m, &c) in letters.iter().enumerate() {
            last[c] = m;
        }
        if last.contains(&usize::MAX) {
            return None;
        }
        let mut prev = Vec::with_capacity(len);
        let mut cur = last;
        for (m, &c) in letters.iter().enumerate() {
            prev.push(cur);
            cur[c] = m;
        }
        Some(Self { letters, prev, last, theta: theta.0 })
    }

    fn len(&self) -> usize {
        self.letters.len()
    }

    fn point(&self, u: &[Complex64]) -> SurfacePoint {
        SurfacePoint(self.last.map(|m| u[m]))
    }

    /// Residuals `u_m + u_{p_i} + u_{p_j} u_{p_k} - theta_i` and `f(x)`,
    /// with the Jacobian in row-major form.
    fn system(&self, u: &[Complex64]) -> (Vec<Complex64>, Vec<Vec<Complex64>>) {
        let n = self.len();
        let zero = Complex64::new(0.0, 0.0);
        let mut r = vec![zero; n + 1];
        let mut jac = vec![vec![zero; n]; n + 1];
        for m in 0..n {
            let a = self.letters[m];
            let (b, c) = ((a + 1) % 3, (a + 2) % 3);
            let [pa, pb, pc] = [self.prev[m][a], self.prev[m][b], self.prev[m][c]];
            r[m] = u[m] + u[pa] + u[pb] * u[pc] - self.theta[a];
            jac[m][m] += 1.0;
            jac[m][pa] += 1.0;
            jac[m][pb] += u[pc];
            jac[m][pc] += u[pb];
        }
        let x = self.point(u);
        let theta = ThetaParams(self.theta);
        r[n] = crate::surface::f_eval(&x, &theta);
        let g = f_gradient(&x, &theta);
        for c in 0..3 {
            jac[n][self.last[c]] += g[c];
        }
        (r, jac)
    }

    /// Damped Gauss-Newton on the shooting system.
    fn converge(&self, mut u: Vec<Complex64>, max_iter: usize) -> Option<SurfacePoint> {
        let n = self.len();
        let norm = |v: &[Complex64]| v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let (mut r, mut jac) = self.system(&u);
        let mut rn = norm(&r);
        let mut mu = 1e-3;
        for _ in 0..max_iter {
            if rn <= 1e-14 * (1.0 + norm(&u)) {
                break;
            }
            let mut improved = false;
            for _ in 0..12 {
                let mut a = vec![vec![Complex64::new(0.0, 0.0); n]; n];
                let mut g = vec![Complex64::new(0.0, 0.0); n];
                for row in 0..=n {
                    for p in 0..n {
                        let jp = jac[row][p].conj();
                        if jp.norm() == 0.0 {
                            continue;
                        }
                        g[p] -= jp * r[row];
                        for q in 0..n {
                            a[p][q] += jp * jac[row][q];
                        }
                    }
                }
                for (p, row) in a.iter_mut().enumerate() {
                    row[p] += mu;
                }
                let dx = solve_dense(a, g)?;
                let trial: Vec<Complex64> = u.iter().zip(&dx).map(|(a, b)| a + b).collect();
                let (tr, tj) = self.system(&trial);
                let tn = norm(&tr);
                if tn < rn {
                    improved = norm(&dx) > 1e-16 * (1.0 + norm(&trial));
                    u = trial;
                    r = tr;
                    jac = tj;
                    rn = tn;
                    mu = (mu / 5.0).max(1e-15);
                    break;
                }
                mu *= 8.0;
            }
            if !improved {
                break;
            }
        }
        Some(self.point(&u))
    }
}

/// Levenberg-Marquardt damped Gauss-Newton from one start.
fn converge(
    w_n: &CoxeterWord,
    start: SurfacePoint,
    theta: &ThetaParams,
    max_iter: usize,
) -> Option<SurfacePoint> {
    let mut x = start;
    let (mut r, mut j) = system(w_n, &x, theta)?;
    let mut rn = norm4(&r);
    let mut mu = 1e-3;
    for _ in 0..max_iter {
        if rn <= 1e-14 * (1.0 + x.norm().powi(3)) {
            break;
        }
        let mut improved = false;
        for _ in 0..12 {
            let dx = lm_step(&r, &j, mu)?;
            let trial = SurfacePoint(std::array::from_fn(|m| x.0[m] + dx[m]));
            if let Some((tr, tj)) = system(w_n, &trial, theta) {
                let tn = norm4(&tr);
                if tn < rn {
                    x = trial;
                    r = tr;
                    j = tj;
                    let step = dx.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                    rn = tn;
                    mu = (mu / 5.0).max(1e-15);
                    improved = step > 1e-16 * (1.0 + x.norm());
                    break;
                }
            }
            mu *= 8.0;
        }
        if !improved {
            break;
        }
    }
    Some(x)
}

/// Newton refinement with residuals evaluated in double-double.
fn polish(w_n: &CoxeterWord, x: SurfacePoint, theta: &ThetaParams) -> (SurfacePoint, f64) {
    let mut xd = dd::lift_point(&x.0);
    let mut best = (xd, dd_relative_residual(w_n, &xd, theta));
    for _ in 0..4 {
        let x64 = SurfacePoint(dd::lower_point(&xd));
        let Some((_, j)) = system(w_n, &x64, theta) else { break };
        let y = dd::word_apply(w_n, &xd, theta);
        let d = dd::diff(&y, &xd);
        let r = [d[0], d[1], d[2], dd::lower(dd::f_eval(&xd, theta))];
        let Some(dx) = lm_step(&r, &j, 0.0) else { break };
        for m in 0..3 {
            xd[m] += dd::lift(dx[m]);
        }
        let res = dd_relative_residual(w_n, &xd, theta);
        if res < best.1 {
            best = (xd, res);
        }
    }
    (SurfacePoint(dd::lower_point(&best.0)), best.1)
}

fn refuse_near_discriminant(params: &ParameterSet) -> Result<(), ErgodicError> {
    if let Some(b) = params.b() {
        let d = discriminant(&b).norm();
        if d < DISCRIMINANT_FLOOR {
            return Err(ErgodicError::NearDiscriminant(d));
        }
    }
    Ok(())
}

/// Searches for `Per_N(w)` on the affine surface.
pub fn find_fixed_points(
    w: &CoxeterWord,
    period: u32,
    params: &ParameterSet,
    opts: &FixedPointOptions,
) -> Result<FixedPointSet, ErgodicError> {
    let formula = periodic_count(w, period)?;
    refuse_near_discriminant(params)?;
    let theta = params.theta();
    let w_n = w.pow(period as usize);
    let shooting = Shooting::new(&w_n, &theta).ok_or(ErgodicError::BadOption("word"))?;
    let normal = Normal::new(0.0, opts.scale).map_err(|_| ErgodicError::BadOption("scale"))?;

    let run = || -> Vec<Option<(SurfacePoint, f64)>> {
        (0..opts.starts)
            .into_par_iter()
            .map(|k| {
                let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
                rng.set_stream(k as u64);
                let start: Vec<Complex64> = (0..shooting.len())
                    .map(|_| Complex64::new(normal.sample(&mut rng), normal.sample(&mut rng)))
                    .collect();
                let x = shooting.converge(start, opts.max_iter)?;
                let x = converge(&w_n, x, &theta, opts.max_iter)?;
                if !x.is_finite() {
                    return None;
                }
                if relative_residual(&w_n, &x, &theta) > 1e3 * opts.tol_resid {
                    return None;
                }
                let (x, res) = polish(&w_n, x, &theta);
                (res < opts.tol_resid).then_some((x, res))
            })
            .collect()
    };
    let hits = match opts.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|_| ErgodicError::BadOption("threads"))?
            .install(run),
        None => run(),
    };

    let mut points: Vec<FixedPoint> = Vec::new();
    for (x, residual) in hits.into_iter().flatten() {
        match points
            .iter_mut()
            .find(|p| same_point(&p.x, &x, opts.tol_dedupe))
        {
            Some(p) => {
                p.basin += 1;
                if residual < p.residual {
                    p.x = x;
                    p.residual = residual;
                }
            }
            None => points.push(FixedPoint { x, residual, basin: 1 }),
        }
    }
    points.sort_by(|a, b| {
        let key = |p: &FixedPoint| (p.x.0[0].re, p.x.0[0].im, p.x.0[1].re, p.x.0[1].im);
        key(a).partial_cmp(&key(b)).unwrap_or(std::cmp::Ordering::Equal)
    });

    Ok(FixedPointSet {
        word: w.to_string(),
        period,
        formula_count: i64::try_from(&formula.affine).unwrap_or(i64::MAX),
        points,
        starts: opts.starts,
        tol_resid: opts.tol_resid,
        tol_dedupe: opts.tol_dedupe,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CountStatus {
    Match,
    Deficit,
    Excess,
}

#[derive(Debug, Clone, Serialize)]
pub struct CountRow {
    pub period: u32,
    pub formula: i64,
    pub found: usize,
    pub starts: usize,
    pub escalated: bool,
    pub status: CountStatus,
}

fn status(found: usize, formula: i64) -> CountStatus {
    match (found as i64).cmp(&formula) {
        std::cmp::Ordering::Equal => CountStatus::Match,
        std::cmp::Ordering::Less => CountStatus::Deficit,
        std::cmp::Ordering::Greater => CountStatus::Excess,
    }
}

/// Oracle counts against the closed form for `N = 1..=n_max`. A deficit is
/// re-run once with four times as many starts before it is reported.
pub fn count_consistency(
    w: &CoxeterWord,
    params: &ParameterSet,
    n_max: u32,
    opts: &FixedPointOptions,
) -> Result<Vec<CountRow>, ErgodicError> {
    let mut rows = Vec::new();
    for period in 1..=n_max {
        let mut set = find_fixed_points(w, period, params, opts)?;
        let mut escalated = false;
        if (set.found() as i64) < set.formula_count {
            let bigger = FixedPointOptions {
                starts: opts.starts * 4,
                ..*opts
            };
            set = find_fixed_points(w, period, params, &bigger)?;
            escalated = true;
        }
        rows.push(CountRow {
            period,
            formula: set.formula_count,
            found: set.found(),
            starts: set.starts,
            escalated,
            status: status(set.found(), set.formula_count),
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::KappaParams;

    #[test]
    fn solve3_small_system() {
        let c = |x: f64| Complex64::new(x, 0.0);
        let a = [[c(2.0), c(1.0), c(0.0)], [c(1.0), c(3.0), c(1.0)], [c(0.0), c(1.0), c(4.0)]];
        let x = solve3(a, [c(3.0), c(5.0), c(5.0)]).unwrap();
        for v in x {
            assert!((v - c(1.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn eight_loop_period_one() {
        let params = ParameterSet::Kappa(KappaParams::generic());
        let opts = FixedPointOptions {
            starts: 400,
            ..Default::default()
        };
        let set = find_fixed_points(&CoxeterWord::eight_loop(), 1, &params, &opts).unwrap();
        assert_eq!(set.formula_count, 10);
        assert!(set.found() <= 10);
        for p in &set.points {
            assert!(p.residual < 1e-10);
        }
    }

    #[test]
    fn elementary_is_rejected() {
        let params = ParameterSet::Kappa(KappaParams::generic());
        let w = CoxeterWord::new(vec![1, 2]).unwrap();
        assert!(find_fixed_points(&w, 1, &params, &FixedPointOptions::default()).is_err());
    }
}
