//! The polynomial family `Q_j` attached to complete `d`-ary trees.
//!
//! `Q_1 = Q_2 = 1` and `Q_j = Q_{j-1} + d x Q_{j-2}`, equivalently
//! `Q_j = (u^j - v^j)/(u - v)` with `u, v = (1 +- sqrt(1 + 4dx))/2`. Then
//! `tau(C_h, x) = Q_h / Q_{h+1}` and
//! `M(C_h, x) = Q_{h+1} * prod_{j=1..h} Q_j^((d-1) d^(h-j))`.

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::poly::{self, Coeffs};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QPolynomial {
    pub d: usize,
    pub j: usize,
    pub coeffs: Coeffs,
}

impl QPolynomial {
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, x: f64) -> f64 {
        poly::eval_f64(&self.coeffs, x)
    }
}

/// `Q_1 ..= Q_jmax` by the three-term recursion.
pub fn q_family(d: usize, jmax: usize) -> Vec<QPolynomial> {
    let dx = vec![BigUint::from(0u32), BigUint::from(d)];
    let mut out: Vec<QPolynomial> = Vec::with_capacity(jmax);
    for j in 1..=jmax {
        let coeffs = if j <= 2 {
            poly::one()
        } else {
            poly::add(&out[j - 2].coeffs, &poly::mul(&dx, &out[j - 3].coeffs))
        };
        out.push(QPolynomial { d, j, coeffs });
    }
    out
}

pub fn q_poly(d: usize, j: usize) -> Result<QPolynomial> {
    if d == 0 || j == 0 {
        return Err(Error::InvalidParams(format!("Q_j needs d >= 1 and j >= 1, got d={d}, j={j}")));
    }
    Ok(q_family(d, j).pop().expect("j >= 1"))
}

/// Zeros of `Q_j`: `-1/(2d(1 + cos(2k pi/j)))` for `k = 1 ..= (j-1)/2`.
pub fn q_zeros(d: usize, j: usize) -> Vec<f64> {
    let df = d as f64;
    (1..=(j.saturating_sub(1)) / 2)
        .map(|k| {
            let c = (2.0 * k as f64 * std::f64::consts::PI / j as f64).cos();
            -1.0 / (2.0 * df * (1.0 + c))
        })
        .collect()
}

/// `u(x)`, `v(x)` with `u + v = 1` and `u v = -d x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFormBasis {
    pub u: f64,
    pub v: f64,
}

impl ClosedFormBasis {
    pub fn new(d: usize, x: f64) -> Self {
        let s = (1.0 + 4.0 * d as f64 * x).sqrt();
        ClosedFormBasis { u: (1.0 + s) / 2.0, v: (1.0 - s) / 2.0 }
    }
}

/// `tau(C_h, x) = (u^h - v^h) / (u^(h+1) - v^(h+1))`.
pub fn tau_complete_closed_form(d: usize, h: usize, x: f64) -> f64 {
    let ClosedFormBasis { u, v } = ClosedFormBasis::new(d, x);
    let h = h as i32;
    (u.powi(h) - v.powi(h)) / (u.powi(h + 1) - v.powi(h + 1))
}

/// `tau(C_h, x)` by iterating `tau(C_h) = 1/(1 + d x tau(C_{h-1}))` from
/// `tau(C_0) = 0`; this is the branch recursion with `d` equal branches.
pub fn tau_complete_recursion(d: usize, h: usize, x: f64) -> f64 {
    (0..h).fold(0.0, |t, _| 1.0 / (1.0 + d as f64 * x * t))
}

/// The limit `2/(1 + sqrt(1 + 4dx))` of `tau(C_h, x)`.
pub fn tau_complete_limit(d: usize, x: f64) -> f64 {
    2.0 / (1.0 + (1.0 + 4.0 * d as f64 * x).sqrt())
}

/// `M(C_h, x)` as a product of `Q_j` powers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactoredCompletePoly {
    pub d: usize,
    pub h: usize,
    /// `(j, exponent)`: `(h+1, 1)` and `(j, (d-1) d^(h-j))` for `j = 1..=h`.
    pub factors: Vec<(usize, u64)>,
}

impl FactoredCompletePoly {
    pub fn expand(&self) -> Coeffs {
        let qs = q_family(self.d, self.h + 1);
        self.factors
            .iter()
            .filter(|&&(j, e)| j > 2 && e > 0)
            .fold(poly::one(), |acc, &(j, e)| poly::mul(&acc, &poly::pow(&qs[j - 1].coeffs, e)))
    }
}

pub fn matching_poly_complete_factored(d: usize, h: usize) -> Result<FactoredCompletePoly> {
    if d == 0 || h == 0 {
        return Err(Error::InvalidParams(format!("need d >= 1 and h >= 1, got d={d}, h={h}")));
    }
    let mut factors = Vec::with_capacity(h + 1);
    for j in 1..=h {
        let e = (d as u64 - 1)
            .checked_mul((d as u64).checked_pow((h - j) as u32).ok_or_else(|| overflow(d, h))?)
            .ok_or_else(|| overflow(d, h))?;
        factors.push((j, e));
    }
    factors.push((h + 1, 1));
    Ok(FactoredCompletePoly { d, h, factors })
}

fn overflow(d: usize, h: usize) -> Error {
    Error::SizeLimit(format!("exponents of M(C_h) overflow for d={d}, h={h}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::from_u64;

    #[test]
    fn small_q() {
        for d in 1..5u64 {
            assert_eq!(q_poly(d as usize, 1).unwrap().coeffs, from_u64(&[1]));
            assert_eq!(q_poly(d as usize, 2).unwrap().coeffs, from_u64(&[1]));
            assert_eq!(q_poly(d as usize, 3).unwrap().coeffs, from_u64(&[1, d]));
            assert_eq!(q_poly(d as usize, 4).unwrap().coeffs, from_u64(&[1, 2 * d]));
            assert_eq!(q_poly(d as usize, 5).unwrap().coeffs, from_u64(&[1, 3 * d, d * d]));
        }
        for j in 1..20 {
            assert_eq!(q_poly(3, j).unwrap().degree(), (j - 1) / 2);
        }
        assert!(q_poly(0, 3).is_err());
    }

    #[test]
    fn zeros() {
        for d in 1..6 {
            let z = q_zeros(d, 4);
            assert_eq!(z.len(), 1);
            assert!((z[0] + 1.0 / (2.0 * d as f64)).abs() < 1e-15);
            assert!(q_zeros(d, 1).is_empty() && q_zeros(d, 2).is_empty());
        }
        let q5 = q_poly(2, 5).unwrap();
        let z = q_zeros(2, 5);
        assert_eq!(z.len(), 2);
        for r in z {
            assert!(q5.eval(r).abs() < 1e-10);
        }
    }

    #[test]
    fn basis_identities() {
        for &(d, x) in &[(1, 0.1), (3, 1.0), (5, 10.0)] {
            let b = ClosedFormBasis::new(d, x);
            assert!((b.u + b.v - 1.0).abs() < 1e-14);
            assert!((b.u * b.v + d as f64 * x).abs() < 1e-12 * (d as f64 * x));
        }
    }

    #[test]
    fn closed_form_tau() {
        for d in 1..5 {
            for &x in &[0.3, 1.0, 7.0] {
                assert!((tau_complete_closed_form(d, 1, x) - 1.0).abs() < 1e-15);
                assert_eq!(tau_complete_closed_form(d, 0, x), 0.0);
            }
        }
        assert!((tau_complete_closed_form(2, 2, 1.0) - 1.0 / 3.0).abs() < 1e-15);
        let lim = 2.0 / (1.0 + 17f64.sqrt());
        assert!((lim - 0.3903882).abs() < 1e-7);
        assert!((tau_complete_closed_form(2, 60, 2.0) - lim).abs() < 1e-12);
    }

    #[test]
    fn factored_small() {
        let f = matching_poly_complete_factored(2, 2).unwrap();
        assert_eq!(f.expand(), from_u64(&[1, 2]));
        let f = matching_poly_complete_factored(3, 1).unwrap();
        assert_eq!(f.expand(), from_u64(&[1]));
        assert!(matching_poly_complete_factored(2, 0).is_err());
    }
}
