//! Square matrices and polynomials over arbitrary-precision integers.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// `N x N` integer matrix acting on column vectors.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix<const N: usize> {
    rows: [[BigInt; N]; N],
}

pub type IntMatrix3 = IntMatrix<3>;
pub type IntMatrix7 = IntMatrix<7>;

impl<const N: usize> IntMatrix<N> {
    pub fn zero() -> Self {
        Self {
            rows: std::array::from_fn(|_| std::array::from_fn(|_| BigInt::zero())),
        }
    }

    pub fn identity() -> Self {
        Self::scalar(1)
    }

    pub fn scalar(c: i64) -> Self {
        let mut m = Self::zero();
        for i in 0..N {
            m.rows[i][i] = BigInt::from(c);
        }
        m
    }

    pub fn from_i64(rows: [[i64; N]; N]) -> Self {
        Self {
            rows: rows.map(|r| r.map(BigInt::from)),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.rows[i][j] = v;
    }

    /// Entries as `i64` when they all fit.
    pub fn to_i64(&self) -> Option<[[i64; N]; N]> {
        let mut out = [[0i64; N]; N];
        for i in 0..N {
            for j in 0..N {
                out[i][j] = self.rows[i][j].to_i64()?;
            }
        }
        Some(out)
    }

    pub fn trace(&self) -> BigInt {
        (0..N).map(|i| &self.rows[i][i]).sum()
    }

    pub fn transpose(&self) -> Self {
        Self {
            rows: std::array::from_fn(|i| std::array::from_fn(|j| self.rows[j][i].clone())),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn max_abs_entry(&self) -> BigInt {
        self.rows
            .iter()
            .flat_map(|r| r.iter())
            .map(|x| x.abs())
            .max()
            .unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().flatten().all(Zero::is_zero)
    }

    pub fn det(&self) -> BigInt {
        det_bareiss(self.rows.iter().map(|r| r.to_vec()).collect())
    }

    /// Adjugate (transposed cofactor matrix), so that `A adj(A) = det(A) I`.
    pub fn adjugate(&self) -> Self {
        let mut out = Self::zero();
        if N == 1 {
            out.rows[0][0] = BigInt::one();
            return out;
        }
        for i in 0..N {
            for j in 0..N {
                let minor: Vec<Vec<BigInt>> = (0..N)
                    .filter(|&r| r != j)
                    .map(|r| {
                        (0..N)
                            .filter(|&c| c != i)
                            .map(|c| self.rows[r][c].clone())
                            .collect()
                    })
                    .collect();
                let d = det_bareiss(minor);
                out.rows[i][j] = if (i + j) % 2 == 0 { d } else { -d };
            }
        }
        out
    }

    /// Characteristic polynomial `det(x I - A)` by the Faddeev-LeVerrier
    /// recursion. Every division is exact over the integers.
    pub fn char_poly(&self) -> IntPoly {
        // coefficients c_N = 1, c_{N-1}, ..., c_0 of x^N + ... + c_0
        let mut coeffs = vec![BigInt::zero(); N + 1];
        coeffs[N] = BigInt::one();
        let mut m = Self::zero();
        for k in 1..=N {
            // M_k = A M_{k-1} + c_{N-k+1} I,  c_{N-k} = -tr(A M_k) / k
            let mut next = self * &m;
            for i in 0..N {
                next.rows[i][i] += &coeffs[N - k + 1];
            }
            m = next;
            let t = (self * &m).trace();
            let (q, r) = t.div_rem(&BigInt::from(k));
            debug_assert!(r.is_zero());
            coeffs[N - k] = -q;
        }
        IntPoly::new(coeffs)
    }
}

impl<const N: usize> Mul for &IntMatrix<N> {
    type Output = IntMatrix<N>;

    fn mul(self, rhs: &IntMatrix<N>) -> IntMatrix<N> {
        let mut out = IntMatrix::<N>::zero();
        for i in 0..N {
            for k in 0..N {
                let a = &self.rows[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..N {
                    out.rows[i][j] += a * &rhs.rows[k][j];
                }
            }
        }
        out
    }
}

impl<const N: usize> fmt::Debug for IntMatrix<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f)?;
        for r in &self.rows {
            let cells: Vec<String> = r.iter().map(|x| format!("{x:>4}")).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

fn det_bareiss(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Integer polynomial, coefficients stored from the constant term up.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `x - r`.
    pub fn linear(r: i64) -> Self {
        Self::from_i64(&[-r, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(IntPoly::from_i64(&[1]), |acc, _| &acc * self)
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;

    fn mul(self, rhs: &IntPoly) -> IntPoly {
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() && self.coeffs.len() > 1 {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let show_mag = k == 0 || !mag.is_one();
            if show_mag {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

/// Natural logarithm of a positive big integer.
pub fn big_ln(x: &BigInt) -> f64 {
    assert!(x.is_positive(), "logarithm of a non-positive integer");
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().expect("fits").ln();
    }
    let shift = bits - 64;
    let top: BigInt = x >> shift;
    top.to_f64().expect("64 bits").ln() + shift as f64 * std::f64::consts::LN_2
}
