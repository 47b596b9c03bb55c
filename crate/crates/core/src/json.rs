//! Number formatting for machine-readable output.
//!
//! Floats are written with 17 significant digits and big integers verbatim,
//! so identical runs produce byte-identical files.

use num_bigint::BigInt;
use num_complex::Complex64;
use serde_json::{Number, Value};

/// A float with 17 significant digits; non-finite values become `null`.
pub fn float(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let text = format!("{x:.16e}");
    Value::Number(text.parse::<Number>().expect("formatted float is a JSON number"))
}

pub fn bigint(n: &BigInt) -> Value {
    Value::Number(
        n.to_string()
            .parse::<Number>()
            .expect("decimal integer is a JSON number"),
    )
}

/// `[re, im]`.
pub fn complex(z: Complex64) -> Value {
    Value::Array(vec![float(z.re), float(z.im)])
}

pub fn complex_list(z: &[Complex64]) -> Value {
    Value::Array(z.iter().map(|&c| complex(c)).collect())
}

/// Pretty-printed JSON with a trailing newline.
pub fn to_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serialisable");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits() {
        assert_eq!(float(0.1).to_string(), "1.0000000000000001e-1");
        assert_eq!(float(f64::NAN), Value::Null);
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        assert_eq!(bigint(&big).to_string(), "123456789012345678901234567890");
    }
}
