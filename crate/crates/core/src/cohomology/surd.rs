//! Exact arithmetic for the dynamical degree
//! `lambda = (alpha + sqrt(alpha^2 + 4 sign)) / 2`, the larger root of
//! `x^2 - alpha x - sign = 0`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::matrix::big_ln;

/// Quadratic surd `(alpha + sqrt(alpha^2 + 4 sign)) / 2` with `sign = +-1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct QuadraticSurd {
    #[serde(serialize_with = "ser_big")]
    pub alpha: BigInt,
    pub sign: i8,
}

fn ser_big<S: serde::Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    serde::Serialize::serialize(&crate::json::bigint(n), s)
}

/// `(u + v sqrt(D)) / 2^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurdValue {
    pub u: BigInt,
    pub v: BigInt,
    pub k: u32,
}

impl QuadraticSurd {
    pub fn new(alpha: BigInt, sign: i8) -> Self {
        assert!(sign == 1 || sign == -1, "sign must be +-1");
        Self { alpha, sign }
    }

    /// The larger root of `x^2 - alpha x + (-1)^n`, i.e. `sign = (-1)^(n+1)`.
    pub fn for_length(alpha: BigInt, n: usize) -> Self {
        Self::new(alpha, if n % 2 == 0 { -1 } else { 1 })
    }

    /// `alpha^2 + 4 sign`.
    pub fn discriminant(&self) -> BigInt {
        &self.alpha * &self.alpha + BigInt::from(4 * i64::from(self.sign))
    }

    /// Product of the two conjugate roots, `-sign`.
    pub fn norm(&self) -> i64 {
        -i64::from(self.sign)
    }

    pub fn to_f64(&self) -> f64 {
        self.ln().exp()
    }

    /// `log lambda`, accurate also when `alpha` exceeds the `f64` range.
    pub fn ln(&self) -> f64 {
        if self.alpha.is_zero() {
            // only meaningful for sign = +1: lambda = 1
            return 0.5 * (self.discriminant().to_f64().unwrap_or(0.0)).sqrt().ln();
        }
        let a = self.alpha.abs();
        if a.bits() < 500 {
            let af = self.alpha.to_f64().expect("small");
            let d = af * af + 4.0 * f64::from(self.sign);
            // (a + sqrt(d))/2 without cancellation for a > 0
            let lam = if af >= 0.0 {
                0.5 * (af + d.sqrt())
            } else {
                -2.0 * f64::from(self.sign) / (af - d.sqrt())
            };
            return lam.ln();
        }
        // alpha huge and positive: lambda = alpha (1 + sqrt(1 + 4s/alpha^2)) / 2
        big_ln(&a)
    }

    /// `lambda^N` in the form `(u + v sqrt(D)) / 2^N`.
    pub fn pow(&self, n: u32) -> SurdValue {
        let d = self.discriminant();
        let mut u = BigInt::one();
        let mut v = BigInt::zero();
        for _ in 0..n {
            // (u + v r)(alpha + r) with r^2 = d
            let nu = &u * &self.alpha + &v * &d;
            let nv = &u + &v * &self.alpha;
            u = nu;
            v = nv;
        }
        SurdValue { u, v, k: n }
    }

    /// `lambda^N + lambdabar^N` evaluated from the surd power; always an integer.
    pub fn trace_of_power(&self, n: u32) -> BigInt {
        let p = self.pow(n);
        let two_u = p.u * 2;
        if n == 0 {
            return two_u;
        }
        let denom = BigInt::one() << p.k;
        let (q, r) = two_u.div_rem(&denom);
        assert!(r.is_zero(), "trace of a surd power is integral");
        q
    }

    /// Same quantity from the integer recurrence
    /// `t0 = 2, t1 = alpha, t_{N+1} = alpha t_N + sign t_{N-1}`.
    pub fn trace_recurrence(&self, n: u32) -> BigInt {
        let mut prev = BigInt::from(2);
        let mut cur = self.alpha.clone();
        if n == 0 {
            return prev;
        }
        for _ in 1..n {
            let next = &self.alpha * &cur + BigInt::from(self.sign) * &prev;
            prev = cur;
            cur = next;
        }
        cur
    }
}

impl std::fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let d = self.discriminant();
        if d.is_zero() {
            return if self.alpha.is_even() {
                write!(f, "{}", &self.alpha / 2)
            } else {
                write!(f, "{}/2", self.alpha)
            };
        }
        // Pull out square factors of d for a readable closed form.
        let mut outside = BigInt::one();
        let mut inside = d.clone();
        let mut p = BigInt::from(2);
        while &p * &p <= inside && p < BigInt::from(10_000) {
            let sq = &p * &p;
            while (&inside % &sq).is_zero() {
                inside /= &sq;
                outside *= &p;
            }
            p += 1;
        }
        if self.alpha.is_even() && outside.is_even() {
            let a: BigInt = &self.alpha / 2;
            let o: BigInt = &outside / 2;
            if o.is_one() {
                write!(f, "{a} + sqrt({inside})")
            } else {
                write!(f, "{a} + {o}*sqrt({inside})")
            }
        } else if outside.is_one() {
            write!(f, "({} + sqrt({inside}))/2", self.alpha)
        } else {
            write!(f, "({} + {outside}*sqrt({inside}))/2", self.alpha)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_closed_forms() {
        assert_eq!(QuadraticSurd::for_length(6.into(), 4).to_string(), "3 + 2*sqrt(2)");
        assert_eq!(QuadraticSurd::for_length(18.into(), 6).to_string(), "9 + 4*sqrt(5)");
        assert_eq!(QuadraticSurd::for_length(4.into(), 3).to_string(), "2 + sqrt(5)");
    }

    #[test]
    fn float_values() {
        let s = QuadraticSurd::for_length(6.into(), 4);
        assert!((s.to_f64() - (3.0 + 2.0 * 2f64.sqrt())).abs() < 1e-14);
        let s = QuadraticSurd::for_length(2.into(), 2);
        assert_eq!(s.to_f64(), 1.0);
    }

    #[test]
    fn recurrence_matches_surd_powers() {
        for (alpha, n) in [(6, 4usize), (18, 6), (4, 3), (11, 5), (2, 2)] {
            let s = QuadraticSurd::for_length(alpha.into(), n);
            for k in 0..=20 {
                assert_eq!(s.trace_of_power(k), s.trace_recurrence(k), "alpha={alpha} N={k}");
            }
        }
    }
}
