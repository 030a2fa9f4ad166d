//! Deterministic output formatting. JSON is the canonical format: struct
//! field order is preserved, every float is rounded to 12 significant
//! digits, negative zero is normalized, and nothing time- or
//! machine-dependent is ever emitted, so identical inputs produce
//! byte-identical output.

use num_complex::Complex64;
use serde_json::Value;

/// Round to 12 significant digits; -0.0 becomes 0.0.
pub fn round_sig(x: f64) -> f64 {
    const DIGITS: i32 = 12;
    if !x.is_finite() {
        return x;
    }
    if x == 0.0 {
        return 0.0;
    }
    let magnitude = x.abs().log10().floor() as i32;
    if !(-300..=300).contains(&magnitude) {
        return x;
    }
    let factor = 10f64.powi(DIGITS - 1 - magnitude);
    let rounded = (x * factor).round() / factor;
    if rounded == 0.0 {
        0.0
    } else {
        rounded
    }
}

/// Walk a JSON value, rounding every float.
pub fn canonicalize(value: Value) -> Value {
    match value {
        Value::Number(num) => {
            if num.is_f64() {
                if let Some(f) = num.as_f64() {
                    if let Some(n) = serde_json::Number::from_f64(round_sig(f)) {
                        return Value::Number(n);
                    }
                }
            }
            Value::Number(num)
        }
        Value::Array(items) => Value::Array(items.into_iter().map(canonicalize).collect()),
        Value::Object(map) => Value::Object(
            map.into_iter()
                .map(|(key, val)| (key, canonicalize(val)))
                .collect(),
        ),
        other => other,
    }
}

/// Canonical JSON text with a trailing newline.
pub fn to_canonical_json(value: Value) -> String {
    let mut text = serde_json::to_string_pretty(&canonicalize(value))
        .expect("canonical JSON values always serialize");
    text.push('\n');
    text
}

/// Rounded float as its shortest exact decimal form (for CSV and tables).
pub fn fmt_f64(x: f64) -> String {
    format!("{}", round_sig(x))
}

/// Human-readable amplitude: real part alone when the state is real.
pub fn fmt_amp(z: Complex64) -> String {
    if z.im.abs() < 1e-12 {
        format!("{:+.6}", z.re)
    } else {
        format!("({:+.6}{:+.6}i)", z.re, z.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding() {
        assert_eq!(round_sig(0.0), 0.0);
        assert!(round_sig(-0.0).is_sign_positive());
        assert_eq!(round_sig(1.0), 1.0);
        assert_eq!(round_sig(1.234567890123456), 1.23456789012);
        assert_eq!(round_sig(9.87654321098765e-5), 9.87654321099e-5);
        assert_eq!(round_sig(-0.4999999999999998), -0.5);
        assert_eq!(round_sig(123456789012345.0), 123456789012000.0);
        assert_eq!(fmt_f64(1.0 / 3.0), "0.333333333333");
    }

    #[test]
    fn canonical_json_is_stable() {
        let value = serde_json::json!({
            "b": 0.1 + 0.2,
            "a": [1, -0.0, 2.5000000000001],
        });
        let once = to_canonical_json(value.clone());
        let twice = to_canonical_json(value);
        assert_eq!(once, twice);
        assert!(once.contains("0.3"));
        assert!(!once.contains("-0.0"));
    }
}
