//! Schoolbook arithmetic on polynomials with nonnegative big-integer
//! coefficients, stored lowest degree first. The zero polynomial is the
//! empty vector; results are always trimmed of trailing zeros.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

pub type Coeffs = Vec<BigUint>;

pub fn one() -> Coeffs {
    vec![BigUint::one()]
}

pub fn trim(mut p: Coeffs) -> Coeffs {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

pub fn from_u64(c: &[u64]) -> Coeffs {
    trim(c.iter().map(|&x| BigUint::from(x)).collect())
}

pub fn add(a: &[BigUint], b: &[BigUint]) -> Coeffs {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, s) in out.iter_mut().zip(short) {
        *o += s;
    }
    trim(out)
}

/// `a - b`; panics if any coefficient would go negative.
pub fn sub(a: &[BigUint], b: &[BigUint]) -> Coeffs {
    assert!(b.len() <= a.len() || b[a.len()..].iter().all(Zero::is_zero), "negative difference");
    let mut out = a.to_vec();
    for (o, s) in out.iter_mut().zip(b) {
        assert!(*o >= *s, "negative coefficient in difference");
        *o -= s;
    }
    trim(out)
}

pub fn mul(a: &[BigUint], b: &[BigUint]) -> Coeffs {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigUint::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

/// Multiplies by `x`.
pub fn shift(a: &[BigUint]) -> Coeffs {
    if a.is_empty() {
        return Vec::new();
    }
    let mut out = Vec::with_capacity(a.len() + 1);
    out.push(BigUint::zero());
    out.extend_from_slice(a);
    out
}

pub fn pow(base: &[BigUint], mut exp: u64) -> Coeffs {
    let mut result = one();
    let mut b = base.to_vec();
    while exp > 0 {
        if exp & 1 == 1 {
            result = mul(&result, &b);
        }
        exp >>= 1;
        if exp > 0 {
            b = mul(&b, &b);
        }
    }
    result
}

pub fn eval_rational(p: &[BigUint], x: &BigRational) -> BigRational {
    p.iter().rev().fold(BigRational::zero(), |acc, c| {
        acc * x + BigRational::from_integer(BigInt::from(c.clone()))
    })
}

pub fn eval_f64(p: &[BigUint], x: f64) -> f64 {
    p.iter()
        .rev()
        .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::INFINITY))
}

pub fn sum(p: &[BigUint]) -> BigUint {
    p.iter().sum()
}

/// JSON rendering: a list of decimal strings.
pub fn to_json(p: &[BigUint]) -> serde_json::Value {
    serde_json::Value::Array(p.iter().map(|c| serde_json::Value::String(c.to_string())).collect())
}
