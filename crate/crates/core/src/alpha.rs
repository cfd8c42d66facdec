//! The growth constant `alpha_d` of the minimal energy and the gap
//! `E(T*(n, d)) - alpha_d n`.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::coulson::{energy_coulson, QuadratureConfig};
use crate::error::{Error, Result};
use crate::expansion::extremal_tree;
use crate::tree::TreeClassParams;

/// The `d` values tabulated in the reference table of `alpha_d`.
pub const TABLE_DS: [usize; 12] = [2, 3, 4, 5, 6, 7, 8, 9, 10, 20, 50, 100];

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AlphaConstant {
    pub d: usize,
    pub value: f64,
    pub truncation_j_max: usize,
    /// Bound on the neglected tail `j > truncation_j_max`.
    pub error_bound: f64,
}

/// `cot(pi/2j) - 1` for even `j`, `csc(pi/2j) - 1` for odd `j`.
pub fn parity_term(j: usize) -> f64 {
    let y = PI / (2.0 * j as f64);
    if j.is_multiple_of(2) {
        1.0 / y.tan() - 1.0
    } else {
        1.0 / y.sin() - 1.0
    }
}

/// `alpha_d = 2 sqrt(d) (d-1)^2 sum_{j>=1} d^-j t_j` with `t_j` from
/// [`parity_term`], truncated at
/// `j_max = max(50, ceil((ln(1/precision) + ln 100) / ln d))`.
///
/// Since `t_j <= 2j/pi`, the tail after `j_max` is bounded by
/// `2 sqrt(d) (d-1)^2 (2/pi) sum_{j > j_max} j d^-j`, which has a closed form.
pub fn alpha(d: usize, precision: f64) -> Result<AlphaConstant> {
    if d < 2 {
        return Err(Error::InvalidParams(format!("alpha_d needs d >= 2, got {d}")));
    }
    if precision.is_nan() || precision < 1e-14 {
        return Err(Error::Precision(precision));
    }
    let df = d as f64;
    let j_max = (((1.0 / precision).ln() + 100f64.ln()) / df.ln()).ceil().max(50.0) as usize;
    let prefactor = 2.0 * df.sqrt() * (df - 1.0) * (df - 1.0);
    // sum from the smallest terms up
    let series: f64 = (1..=j_max).rev().map(|j| df.powi(-(j as i32)) * parity_term(j)).sum();
    let r = 1.0 / df;
    let jm = j_max as f64;
    // sum_{j > J} j r^j = r^(J+1) ((J+1) - J r) / (1-r)^2
    let tail = r.powi(j_max as i32 + 1) * ((jm + 1.0) - jm * r) / ((1.0 - r) * (1.0 - r));
    let error_bound = prefactor * 2.0 / PI * tail;
    if error_bound >= precision {
        return Err(Error::Precision(precision));
    }
    Ok(AlphaConstant { d, value: prefactor * series, truncation_j_max: j_max, error_bound })
}

pub fn alpha_table(precision: f64) -> Result<Vec<AlphaConstant>> {
    TABLE_DS.iter().map(|&d| alpha(d, precision)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GapRow {
    pub n: usize,
    pub d: usize,
    pub energy: f64,
    pub alpha_n: f64,
    pub gap: f64,
    /// `gap / ln n`; undefined for `n = 1`.
    pub gap_over_log_n: Option<f64>,
}

/// Energies of `T*(n, d)` through the Coulson integral, against `alpha_d n`.
/// Rows come back in the order of `n_list`.
pub fn asymptotic_gap(d: usize, n_list: &[usize], cfg: &QuadratureConfig) -> Result<Vec<GapRow>> {
    let a = alpha(d, 1e-12)?.value;
    n_list
        .par_iter()
        .map(|&n| {
            let tree = extremal_tree(TreeClassParams::new(n, d)?)?;
            let energy = energy_coulson(&tree, cfg)?.value;
            let alpha_n = a * n as f64;
            let gap = energy - alpha_n;
            let gap_over_log_n = (n > 1).then(|| gap / (n as f64).ln());
            Ok(GapRow { n, d, energy, alpha_n, gap, gap_over_log_n })
        })
        .collect()
}
