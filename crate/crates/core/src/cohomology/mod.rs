//! Action of words on the second cohomology of the compactified cubic
//! surface, and everything that follows from it exactly: traces, dynamical
//! degrees, characteristic polynomials and periodic-point counts.
//!
//! Two models are kept side by side. The rank-seven lattice
//! `H^2 = Z E0 + ... + Z E6` carries the pullbacks `sigma_i^*` as printed
//! integer matrices. The three-dimensional subspace `V` spanned by the lines
//! at infinity `L1, L2, L3` carries the projections `s_i = (1 + r_i) / 2` of
//! the geometric representation. Each model is checked against the other.

pub mod matrix;
pub mod surd;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde_json::{json, Value};
use thiserror::Error;

pub use matrix::{big_ln, IntMatrix, IntMatrix3, IntMatrix7, IntPoly};
pub use surd::QuadraticSurd;

use crate::json;
use crate::word::{canonical_form, classify, CoxeterWord, WordClass};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CohomologyError {
    #[error("word `{0}` is not freely reduced")]
    NotReduced(String),
    #[error(
        "word `{0}` is not analytically stable (first letter equals last); \
         cyclically reduce it first"
    )]
    NotStable(String),
    #[error("word `{0}` is elementary: the counting formula needs a non-elementary word")]
    Elementary(String),
    #[error("the trivial word has no dynamics")]
    Trivial,
    #[error("decomposition check failed: {0}")]
    Decompose(String),
}

/// Symmetric form on `V`: `1` on the diagonal, `-1` elsewhere.
pub fn bilinear_form() -> IntMatrix3 {
    IntMatrix3::from_i64([[1, -1, -1], [-1, 1, -1], [-1, -1, 1]])
}

/// Reflection `r_i(v) = v - 2 B(e_i, v) e_i`.
pub fn reflection(i: u8) -> IntMatrix3 {
    linear_from_form(i, 2)
}

/// Projection `s_i(v) = v - B(e_i, v) e_i`.
pub fn s_matrix(i: u8) -> IntMatrix3 {
    linear_from_form(i, 1)
}

fn linear_from_form(i: u8, scale: i64) -> IntMatrix3 {
    let b = bilinear_form();
    let r = usize::from(i - 1);
    let mut m = IntMatrix3::identity();
    // column j is the image of e_j; only row r changes
    for j in 0..3 {
        let v = m.get(r, j) - BigInt::from(scale) * b.get(r, j);
        m.set(r, j, v);
    }
    m
}

/// Adjugates of `s_1, s_2, s_3`; only the `i`-th row is nonzero.
pub fn s_adjugate(i: u8) -> IntMatrix3 {
    let mut rows = [[0i64; 3]; 3];
    let r = usize::from(i - 1);
    for (j, v) in rows[r].iter_mut().enumerate() {
        *v = if j == r { 1 } else { -1 };
    }
    IntMatrix3::from_i64(rows)
}

const SIGMA1: [[i64; 7]; 7] = [
    [6, 3, 2, 2, 3, 2, 2],
    [-3, -2, -1, -1, -1, -1, -1],
    [-2, -1, -1, -1, -1, 0, -1],
    [-2, -1, -1, -1, -1, -1, 0],
    [-3, -1, -1, -1, -2, -1, -1],
    [-2, -1, 0, -1, -1, -1, -1],
    [-2, -1, -1, 0, -1, -1, -1],
];

const SIGMA2: [[i64; 7]; 7] = [
    [6, 2, 3, 2, 2, 3, 2],
    [-2, -1, -1, -1, 0, -1, -1],
    [-3, -1, -2, -1, -1, -1, -1],
    [-2, -1, -1, -1, -1, -1, 0],
    [-2, 0, -1, -1, -1, -1, -1],
    [-3, -1, -1, -1, -1, -2, -1],
    [-2, -1, -1, 0, -1, -1, -1],
];

const SIGMA3: [[i64; 7]; 7] = [
    [6, 2, 2, 3, 2, 2, 3],
    [-2, -1, -1, -1, 0, -1, -1],
    [-2, -1, -1, -1, -1, 0, -1],
    [-3, -1, -1, -2, -1, -1, -1],
    [-2, 0, -1, -1, -1, -1, -1],
    [-2, -1, 0, -1, -1, -1, -1],
    [-3, -1, -1, -1, -1, -1, -2],
];

/// Pullback by the Coxeter element `s1 s2 s3`, as printed.
pub const COXETER_STAR: [[i64; 7]; 7] = [
    [12, 6, 4, 3, 6, 4, 3],
    [-3, -2, -1, -1, -1, -1, -1],
    [-4, -2, -2, -1, -2, -1, -1],
    [-6, -3, -2, -2, -3, -2, -1],
    [-3, -1, -1, -1, -2, -1, -1],
    [-4, -2, -1, -1, -2, -2, -1],
    [-6, -3, -2, -1, -3, -2, -2],
];

/// Intersection form on `H^2`: `diag(1, -1, ..., -1)`.
pub fn intersection_form() -> IntMatrix7 {
    let mut m = IntMatrix7::scalar(-1);
    m.set(0, 0, BigInt::one());
    m
}

/// The three generator matrices `sigma_i^*` on `H^2` in the basis `E0..E6`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PullbackGenerators {
    mats: [IntMatrix7; 3],
}

impl Default for PullbackGenerators {
    fn default() -> Self {
        Self {
            mats: [
                IntMatrix7::from_i64(SIGMA1),
                IntMatrix7::from_i64(SIGMA2),
                IntMatrix7::from_i64(SIGMA3),
            ],
        }
    }
}

impl PullbackGenerators {
    pub fn get(&self, i: u8) -> &IntMatrix7 {
        &self.mats[usize::from(i - 1)]
    }

    /// Copy with one entry of `sigma_1^*` altered, for negative controls.
    pub fn with_fault() -> Self {
        let mut g = Self::default();
        let v = g.mats[0].get(2, 5) + 1;
        g.mats[0].set(2, 5, v);
        g
    }

    /// `sigma_{i_n}^* ... sigma_{i_1}^*`.
    pub fn product(&self, w: &CoxeterWord) -> IntMatrix7 {
        w.letters()
            .iter()
            .fold(IntMatrix7::identity(), |acc, &l| self.get(l) * &acc)
    }
}

pub fn sigma_star(i: u8) -> IntMatrix7 {
    PullbackGenerators::default().get(i).clone()
}

pub fn sigma_star_product(w: &CoxeterWord) -> IntMatrix7 {
    PullbackGenerators::default().product(w)
}

/// `s_{i_n} ... s_{i_2} s_{i_1}`: the last letter of the word acts last.
pub fn s_product(w: &CoxeterWord) -> IntMatrix3 {
    w.letters()
        .iter()
        .fold(IntMatrix3::identity(), |acc, &l| &s_matrix(l) * &acc)
}

fn require_reduced(w: &CoxeterWord) -> Result<(), CohomologyError> {
    if w.is_reduced() {
        Ok(())
    } else {
        Err(CohomologyError::NotReduced(w.to_string()))
    }
}

fn require_stable(w: &CoxeterWord) -> Result<(), CohomologyError> {
    require_reduced(w)?;
    if w.is_empty() {
        return Err(CohomologyError::Trivial);
    }
    if !w.is_analytically_stable() {
        return Err(CohomologyError::NotStable(w.to_string()));
    }
    Ok(())
}

/// Trace of `s_product(w)` for a reduced, analytically stable word.
pub fn alpha(w: &CoxeterWord) -> Result<BigInt, CohomologyError> {
    require_stable(w)?;
    Ok(s_product(w).trace())
}

/// Characteristic polynomial of `s_product(w)`, computed from the matrix.
pub fn char_poly_v(w: &CoxeterWord) -> Result<IntPoly, CohomologyError> {
    require_reduced(w)?;
    Ok(s_product(w).char_poly())
}

/// `x (x^2 - alpha x + c)` with `c = (-1)^(n-1)` when the end letters agree
/// and `(-1)^n` otherwise; `alpha` is the trace of `s_product(w)`.
pub fn char_poly_v_closed_form(w: &CoxeterWord) -> IntPoly {
    let n = w.len();
    let a = s_product(w).trace();
    let same_ends = n > 0 && w.first() == w.last();
    let exponent = if same_ends { n + 1 } else { n };
    let c: i64 = if exponent % 2 == 0 { 1 } else { -1 };
    IntPoly::new(vec![BigInt::zero(), BigInt::from(c), -a, BigInt::one()])
}

/// Change of basis from `H^2 = span(E0..E6)` to
/// `(L1, L2, L3, 2E0 - E1 - ... - E6, E1 - E4, E2 - E5, E3 - E6)`;
/// columns are the new basis vectors.
pub fn decomposition_basis() -> IntMatrix7 {
    IntMatrix7::from_i64([
        [1, 1, 1, 2, 0, 0, 0],
        [-1, 0, 0, -1, 1, 0, 0],
        [0, -1, 0, -1, 0, 1, 0],
        [0, 0, -1, -1, 0, 0, 1],
        [-1, 0, 0, -1, -1, 0, 0],
        [0, -1, 0, -1, 0, -1, 0],
        [0, 0, -1, -1, 0, 0, -1],
    ])
}

/// Result of splitting a pullback along `V + V^perp`.
#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition {
    pub v_block: IntMatrix3,
    pub perp_scalar: BigInt,
}

/// Expresses `m` in the decomposition basis and checks that it is block
/// diagonal with a scalar block on `V^perp`.
pub fn decompose_check(m: &IntMatrix7) -> Result<Decomposition, CohomologyError> {
    let p = decomposition_basis();
    let det = p.det();
    let conj = &(&p.adjugate() * m) * &p;
    let mut q = IntMatrix7::zero();
    for i in 0..7 {
        for j in 0..7 {
            let (quot, rem) = conj.get(i, j).div_rem(&det);
            if !rem.is_zero() {
                return Err(CohomologyError::Decompose(format!(
                    "entry ({i},{j}) is not integral in the new basis"
                )));
            }
            q.set(i, j, quot);
        }
    }
    for i in 0..7 {
        for j in 0..7 {
            if (i < 3) != (j < 3) && !q.get(i, j).is_zero() {
                return Err(CohomologyError::Decompose(format!(
                    "off-diagonal block entry ({i},{j}) = {}",
                    q.get(i, j)
                )));
            }
        }
    }
    let perp_scalar = q.get(3, 3).clone();
    for i in 3..7 {
        for j in 3..7 {
            let expect = if i == j { perp_scalar.clone() } else { BigInt::zero() };
            if q.get(i, j) != &expect {
                return Err(CohomologyError::Decompose(format!(
                    "V-perp block is not scalar at ({i},{j})"
                )));
            }
        }
    }
    let mut v_block = IntMatrix3::zero();
    for i in 0..3 {
        for j in 0..3 {
            v_block.set(i, j, q.get(i, j).clone());
        }
    }
    Ok(Decomposition {
        v_block,
        perp_scalar,
    })
}

/// Checks the full product for `w` against `s_product(w)` and `(-1)^n`.
pub fn decompose_check_word(
    gens: &PullbackGenerators,
    w: &CoxeterWord,
) -> Result<Decomposition, CohomologyError> {
    let d = decompose_check(&gens.product(w))?;
    if d.v_block != s_product(w) {
        return Err(CohomologyError::Decompose(format!(
            "V-block of `{w}` differs from s_product"
        )));
    }
    let expected = if w.is_even() { 1 } else { -1 };
    if d.perp_scalar != BigInt::from(expected) {
        return Err(CohomologyError::Decompose(format!(
            "V-perp scalar of `{w}` is {} instead of {expected}",
            d.perp_scalar
        )));
    }
    Ok(d)
}

/// Exact periodic-point counts for one period.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicCount {
    pub period: u32,
    pub affine: BigInt,
    pub projective: BigInt,
}

/// `#Per_N = t_N + 4 (-1)^(nN)` on the affine surface and one more on its
/// compactification, where `t_N = lambda^N + lambdabar^N`.
pub fn periodic_count(w: &CoxeterWord, period: u32) -> Result<PeriodicCount, CohomologyError> {
    require_stable(w)?;
    if classify(w).is_elementary() {
        return Err(CohomologyError::Elementary(w.to_string()));
    }
    let surd = QuadraticSurd::for_length(alpha(w)?, w.len());
    let t = surd.trace_recurrence(period);
    let odd = (w.len() as u64 * u64::from(period)) % 2 == 1;
    let affine = t + BigInt::from(if odd { -4 } else { 4 });
    let projective = &affine + 1;
    Ok(PeriodicCount {
        period,
        affine,
        projective,
    })
}

/// `||(sigma^*)^N||^(1/N)` for `N = 1..=n_max` with the max-entry norm.
pub fn spectral_radius_limit_check(w: &CoxeterWord, n_max: u32) -> Vec<f64> {
    let m = sigma_star_product(w);
    let mut acc = IntMatrix7::identity();
    (1..=n_max)
        .map(|n| {
            acc = &m * &acc;
            let norm = acc.max_abs_entry();
            if norm.is_zero() {
                0.0
            } else {
                (big_ln(&norm) / f64::from(n)).exp()
            }
        })
        .collect()
}

/// Entropy and counting data for the conjugacy class of a word.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralReport {
    /// The word as given, freely reduced.
    pub word: CoxeterWord,
    /// Analytically stable representative used for the computation.
    pub representative: CoxeterWord,
    pub class: WordClass,
    pub n: usize,
    pub alpha: BigInt,
    pub surd: QuadraticSurd,
    pub lambda: f64,
    pub entropy: f64,
    pub counts: Vec<PeriodicCount>,
}

impl SpectralReport {
    /// Dynamical degree and entropy of `w`; elementary classes report
    /// `lambda = 1`.
    pub fn lambda1(w: &CoxeterWord) -> Result<SpectralReport, CohomologyError> {
        let word = w.free_reduce();
        let class = classify(&word);
        let (rep, _) = canonical_form(&word);
        match class {
            WordClass::Trivial => return Err(CohomologyError::Trivial),
            WordClass::Elementary { .. } => {
                // lambda = 1 is the double root of x^2 - 2x + 1.
                let surd = QuadraticSurd::new(BigInt::from(2), -1);
                return Ok(SpectralReport {
                    n: rep.len(),
                    alpha: BigInt::from(2),
                    surd,
                    lambda: 1.0,
                    entropy: 0.0,
                    word,
                    representative: rep,
                    class,
                    counts: Vec::new(),
                });
            }
            _ => {}
        }
        let a = alpha(&rep)?;
        let surd = QuadraticSurd::for_length(a.clone(), rep.len());
        let entropy = surd.ln();
        Ok(SpectralReport {
            n: rep.len(),
            alpha: a,
            lambda: surd.to_f64(),
            entropy,
            surd,
            word,
            representative: rep,
            class,
            counts: Vec::new(),
        })
    }

    /// Adds exact counts for `periods`.
    pub fn with_counts(
        mut self,
        periods: impl IntoIterator<Item = u32>,
    ) -> Result<SpectralReport, CohomologyError> {
        for p in periods {
            self.counts.push(periodic_count(&self.representative, p)?);
        }
        Ok(self)
    }

    pub fn to_json(&self) -> Value {
        let counts: Vec<Value> = self
            .counts
            .iter()
            .map(|c| {
                json!({
                    "N": c.period,
                    "affine": json::bigint(&c.affine),
                    "projective": json::bigint(&c.projective),
                })
            })
            .collect();
        json!({
            "word": self.word.to_string(),
            "representative": self.representative.to_string(),
            "class": self.class.name(),
            "n": self.n,
            "alpha": json::bigint(&self.alpha),
            "lambda": {
                "surd": [json::bigint(&self.surd.alpha), self.surd.sign],
                "closed_form": self.surd.to_string(),
                "float": json::float(self.lambda),
            },
            "entropy": json::float(self.entropy),
            "counts": counts,
        })
    }
}
