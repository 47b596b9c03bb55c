use std::io::{self, Write};

use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use crate::params::ThetaParams;
use crate::surface::{f_eval, quadratic_roots, word_apply, SurfacePoint};
use crate::word::CoxeterWord;

/// Orbits whose norm passes this bound are flagged as escaping.
pub const ORBIT_ESCAPE: f64 = 1e8;

#[derive(Debug, Clone, Serialize)]
pub struct OrbitSample {
    pub step: usize,
    pub x: SurfacePoint,
    pub abs_f: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitRecord {
    pub seed: SurfacePoint,
    pub word: String,
    /// Word applications actually carried out.
    pub iterations: usize,
    pub requested: usize,
    pub samples: Vec<OrbitSample>,
    pub escaped: bool,
    /// `max |f(x_k) - f(x_0)| / (1 + |x_k|^3)` over the orbit.
    pub max_f_drift: f64,
}

impl OrbitRecord {
    pub fn last(&self) -> &SurfacePoint {
        &self.samples.last().expect("seed is always recorded").x
    }

    /// CSV with columns `step, re(x1), im(x1), ..., |f|` and a trailing
    /// comment line carrying the escape flag.
    pub fn write_csv<W: Write>(&self, out: W) -> io::Result<()> {
        let mut wtr = csv::Writer::from_writer(out);
        wtr.write_record(["step", "re_x1", "im_x1", "re_x2", "im_x2", "re_x3", "im_x3", "abs_f"])?;
        for s in &self.samples {
            let mut row = vec![s.step.to_string()];
            for z in s.x.0 {
                row.push(format!("{:.16e}", z.re));
                row.push(format!("{:.16e}", z.im));
            }
            row.push(format!("{:.16e}", s.abs_f));
            wtr.write_record(&row)?;
        }
        let mut inner = wtr.into_inner().map_err(|e| e.into_error())?;
        writeln!(
            inner,
            "# escaped={} iterations={} max_f_drift={:.6e}",
            self.escaped, self.iterations, self.max_f_drift
        )
    }
}

/// Applies `w` to `x0` up to `n` times, keeping every `stride`-th point.
pub fn iterate_orbit(
    w: &CoxeterWord,
    x0: &SurfacePoint,
    theta: &ThetaParams,
    n: usize,
    stride: usize,
) -> OrbitRecord {
    let stride = stride.max(1);
    let f0 = f_eval(x0, theta);
    let sample = |step, x: SurfacePoint| OrbitSample {
        step,
        x,
        abs_f: f_eval(&x, theta).norm(),
    };
    let mut rec = OrbitRecord {
        seed: *x0,
        word: w.to_string(),
        iterations: 0,
        requested: n,
        samples: vec![sample(0, *x0)],
        escaped: false,
        max_f_drift: 0.0,
    };
    let mut x = *x0;
    for step in 1..=n {
        match word_apply(w, &x, theta) {
            Ok(y) => x = y,
            Err(_) => {
                rec.escaped = true;
                break;
            }
        }
        rec.iterations = step;
        let drift = (f_eval(&x, theta) - f0).norm() / (1.0 + x.norm().powi(3));
        rec.max_f_drift = rec.max_f_drift.max(drift);
        let escaping = !(x.norm() <= ORBIT_ESCAPE);
        if step % stride == 0 || step == n || escaping {
            rec.samples.push(sample(step, x));
        }
        if escaping {
            rec.escaped = true;
            break;
        }
    }
    rec
}

/// A real point of `S(theta)` in the cube `[-2, 2]^3`, found by rejection.
/// For real parameters with `|a_i| < 2` such points lie on the compact real
/// component, whose orbits stay bounded.
pub fn real_seed<R: Rng>(theta: &ThetaParams, rng: &mut R) -> Option<SurfacePoint> {
    if theta.0.iter().any(|t| t.im.abs() > 1e-12) {
        return None;
    }
    let t: [f64; 4] = theta.0.map(|z| z.re);
    for _ in 0..10_000 {
        let x1: f64 = rng.gen_range(-2.0..2.0);
        let x2: f64 = rng.gen_range(-2.0..2.0);
        let b = x1 * x2 - t[2];
        let c = x1 * x1 + x2 * x2 - t[0] * x1 - t[1] * x2 + t[3];
        if b * b - 4.0 * c < 0.0 {
            continue;
        }
        let roots = quadratic_roots(Complex64::new(b, 0.0), Complex64::new(c, 0.0));
        for r in roots {
            if r.re.abs() <= 2.0 {
                return Some(SurfacePoint::from_real([x1, x2, r.re]));
            }
        }
    }
    None
}
