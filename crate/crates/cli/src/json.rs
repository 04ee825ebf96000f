//! Exact JSON encodings. Integers are emitted as JSON numbers of any size,
//! rationals as `[num, den]` pairs with `den > 0` in lowest terms.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{Number, Value};

use spectral_affine::{DigitSet, IntMatrix, RationalPoint};

pub fn big(x: &BigInt) -> Value {
    Value::Number(x.to_string().parse::<Number>().expect("integer literal"))
}

pub fn rational(x: &BigRational) -> Value {
    Value::Array(vec![big(x.numer()), big(x.denom())])
}

pub fn point(p: &RationalPoint) -> Value {
    Value::Array(p.coords().iter().map(rational).collect())
}

pub fn points<'a>(it: impl IntoIterator<Item = &'a RationalPoint>) -> Value {
    Value::Array(it.into_iter().map(point).collect())
}

pub fn int_vector(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(big).collect())
}

pub fn matrix(m: &IntMatrix) -> Value {
    Value::Array(m.rows().map(int_vector).collect())
}

pub fn digits(d: &DigitSet) -> Value {
    Value::Array(d.iter().map(|v| int_vector(v)).collect())
}

/// Finite floats as numbers; NaN and infinities as strings.
pub fn float(x: f64) -> Value {
    match Number::from_f64(x) {
        Some(n) => Value::Number(n),
        None => Value::String(x.to_string()),
    }
}

pub fn floats(v: &[f64]) -> Value {
    Value::Array(v.iter().copied().map(float).collect())
}
