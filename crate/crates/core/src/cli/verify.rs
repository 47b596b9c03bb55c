//! The invariant suite behind `pvi verify`.

use num_bigint::BigInt;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::Serialize;
use serde_json::{json, Value};

use crate::cohomology::{
    bilinear_form, char_poly_v, char_poly_v_closed_form, decompose_check_word, reflection,
    s_adjugate, s_matrix, s_product, sigma_star_product, PullbackGenerators, COXETER_STAR,
};
use crate::cohomology::matrix::{IntMatrix3, IntMatrix7};
use crate::params::{discriminant, ParameterSet, ThetaParams};
use crate::surface::lines::{line_exchange_report, lines_catalog, SINGULAR_TOL};
use crate::surface::{
    det3, f_eval, f_gradient, g_apply, sigma_apply, sigma_jacobian, solve_x3, word_apply,
    SurfacePoint,
};
use crate::word::CoxeterWord;

const POINTS: usize = 1000;
const WORDS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
}

impl Check {
    fn new(name: &'static str, ok: bool, detail: impl Into<String>) -> Self {
        Self {
            name,
            status: if ok { Status::Pass } else { Status::Fail },
            detail: detail.into(),
        }
    }

    fn skipped(name: &'static str, detail: impl Into<String>) -> Self {
        Self {
            name,
            status: Status::Skipped,
            detail: detail.into(),
        }
    }

    pub fn line(&self) -> String {
        let tag = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        };
        format!("{tag} {}: {}", self.name, self.detail)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn failures(&self) -> Vec<&'static str> {
        self.checks
            .iter()
            .filter(|c| c.status == Status::Fail)
            .map(|c| c.name)
            .collect()
    }

    pub fn passed(&self) -> bool {
        self.failures().is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({ "passed": self.passed(), "checks": self.checks })
    }
}

fn random_point<R: Rng>(rng: &mut R, scale: f64) -> SurfacePoint {
    let n = Normal::new(0.0, scale).expect("positive scale");
    SurfacePoint(std::array::from_fn(|_| {
        Complex64::new(n.sample(rng), n.sample(rng))
    }))
}

/// A random point of `S(theta)`.
pub fn random_surface_point<R: Rng>(rng: &mut R, theta: &ThetaParams) -> SurfacePoint {
    let p = random_point(rng, 1.0);
    let x3 = solve_x3(p.0[0], p.0[1], theta)[rng.gen_range(0..2)];
    SurfacePoint([p.0[0], p.0[1], x3])
}

fn worst<I: IntoIterator<Item = f64>>(it: I) -> f64 {
    it.into_iter().fold(0.0, f64::max)
}

pub fn check_f_invariance(rng: &mut ChaCha8Rng, theta: &ThetaParams) -> Check {
    let w = worst((0..POINTS).flat_map(|_| {
        let x = random_point(rng, 3.0);
        let f0 = f_eval(&x, theta);
        (1..=3).map(move |i| {
            (f_eval(&sigma_apply(i, &x, theta), theta) - f0).norm() / (1.0 + x.norm().powi(3))
        })
    }));
    Check::new("f_invariance", w < 1e-12, format!("max relative change {w:.2e}"))
}

pub fn check_involution(rng: &mut ChaCha8Rng, theta: &ThetaParams) -> Check {
    let w = worst((0..POINTS).flat_map(|_| {
        let x = random_point(rng, 3.0);
        (1..=3).map(move |i| {
            let y = sigma_apply(i, &sigma_apply(i, &x, theta), theta);
            y.dist(&x) / (1.0 + x.norm().powi(2))
        })
    }));
    Check::new("involution", w < 1e-12, format!("max relative error {w:.2e}"))
}

pub fn check_jacobian(rng: &mut ChaCha8Rng) -> Check {
    let ok = (0..POINTS).all(|_| {
        let x = random_point(rng, 3.0);
        (1..=3).all(|i| det3(&sigma_jacobian(i, &x)) == Complex64::new(-1.0, 0.0))
    });
    Check::new("jacobian_det", ok, "det D(sigma_i) = -1")
}

pub fn check_gradient_flip(rng: &mut ChaCha8Rng, theta: &ThetaParams) -> Check {
    let w = worst((0..POINTS).flat_map(|_| {
        let x = random_point(rng, 3.0);
        (1..=3u8).map(move |i| {
            let a = usize::from(i - 1);
            let g0 = f_gradient(&x, theta)[a];
            let g1 = f_gradient(&sigma_apply(i, &x, theta), theta)[a];
            (g0 + g1).norm() / (1.0 + x.norm().powi(2))
        })
    }));
    Check::new("gradient_flip", w < 1e-10, format!("max relative error {w:.2e}"))
}

pub fn check_g_squared(rng: &mut ChaCha8Rng, theta: &ThetaParams) -> Check {
    let mut w = 0.0f64;
    for _ in 0..POINTS {
        let x = random_surface_point(rng, theta);
        for i in 1..=3u8 {
            let (y, t1) = g_apply(i, &x, theta);
            let (z, t2) = g_apply(i, &y, &t1);
            let next = i % 3 + 1;
            let word = CoxeterWord::new(vec![i, next]).expect("valid letters");
            let Ok(expect) = word_apply(&word, &x, theta) else {
                continue;
            };
            w = w.max(z.dist(&expect) / (1.0 + x.norm().powi(4)));
            if t2 != *theta {
                w = f64::INFINITY;
            }
        }
    }
    Check::new("g_squared", w < 1e-10, format!("max relative error {w:.2e}"))
}

pub fn check_lines(params: &ParameterSet) -> Vec<Check> {
    let Some(b) = params.b() else {
        let msg = "needs b parameters (theta alone does not fix the lines)";
        return vec![Check::skipped("line_catalogue", msg), Check::skipped("line_exchange", msg)];
    };
    let d = discriminant(&b).norm();
    if d < SINGULAR_TOL {
        let msg = format!("singular surface, |discriminant| = {d:.2e}");
        return vec![
            Check::skipped("line_catalogue", msg.clone()),
            Check::skipped("line_exchange", msg),
        ];
    }
    let cat = match lines_catalog(&b) {
        Ok(l) => Check::new("line_catalogue", l.len() == 27, format!("{} lines on the surface", l.len())),
        Err(e) => Check::new("line_catalogue", false, e.to_string()),
    };
    let mut worst_res = 0.0f64;
    let mut ok = true;
    for i in 1..=3 {
        match line_exchange_report(i, &b) {
            Ok(rows) => {
                for r in rows {
                    worst_res = worst_res.max(r.image_residual);
                    ok &= r.passed();
                }
            }
            Err(_) => ok = false,
        }
    }
    let exch = Check::new("line_exchange", ok, format!("max residual {worst_res:.2e}"));
    vec![cat, exch]
}

fn random_words(rng: &mut ChaCha8Rng, count: usize, max_len: usize) -> Vec<CoxeterWord> {
    (0..count)
        .map(|_| {
            let len = rng.gen_range(1..=max_len);
            CoxeterWord::random_reduced(rng, len)
        })
        .collect()
}

pub fn check_matrices(rng: &mut ChaCha8Rng) -> Check {
    let b = bilinear_form();
    for i in 1..=3u8 {
        let s = s_matrix(i);
        let r = reflection(i);
        if &s * &s != s
            || &r * &r != IntMatrix3::identity()
            || &(&r.transpose() * &b) * &r != b
            || s.adjugate() != s_adjugate(i)
        {
            return Check::new("matrix_identities", false, format!("generator {i}"));
        }
    }
    for w in random_words(rng, WORDS, 20) {
        let sp = s_product(&w);
        let (first, last) = (w.first(), w.last());
        let n = w.len() as u32;
        let expect = if first == last {
            BigInt::from(-1).pow(n - 1)
        } else {
            BigInt::from(-1).pow(n)
        };
        if sp.adjugate().trace() != expect {
            return Check::new("matrix_identities", false, format!("adjugate trace for `{w}`"));
        }
        if w.len() >= 2 && w.is_analytically_stable() {
            match char_poly_v(&w) {
                Ok(p) if p == char_poly_v_closed_form(&w) => {}
                _ => return Check::new("matrix_identities", false, format!("char poly for `{w}`")),
            }
        }
    }
    Check::new("matrix_identities", true, format!("generators and {WORDS} random words"))
}

pub fn check_decomposition(rng: &mut ChaCha8Rng, fault: bool) -> Check {
    let gens = if fault {
        PullbackGenerators::with_fault()
    } else {
        PullbackGenerators::default()
    };
    if gens.product(&CoxeterWord::coxeter_element()) != IntMatrix7::from_i64(COXETER_STAR)
        || sigma_star_product(&CoxeterWord::coxeter_element()) != IntMatrix7::from_i64(COXETER_STAR)
    {
        return Check::new("decompose_check", false, "c* differs from the printed matrix");
    }
    for w in random_words(rng, WORDS, 20) {
        if let Err(e) = decompose_check_word(&gens, &w) {
            return Check::new("decompose_check", false, e.to_string());
        }
    }
    Check::new("decompose_check", true, format!("c* and {WORDS} random words"))
}

/// Runs every check; `fault` corrupts one pullback generator.
pub fn run_suite(params: &ParameterSet, seed: u64, fault: bool) -> SuiteReport {
    let theta = params.theta();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = vec![
        check_f_invariance(&mut rng, &theta),
        check_involution(&mut rng, &theta),
        check_jacobian(&mut rng),
        check_gradient_flip(&mut rng, &theta),
        check_g_squared(&mut rng, &theta),
    ];
    checks.extend(check_lines(params));
    checks.push(check_matrices(&mut rng));
    checks.push(check_decomposition(&mut rng, fault));
    SuiteReport { checks }
}
