//! Adjacency spectra and energy: a cyclic Jacobi eigensolver for explicit
//! trees, and the closed forms for complete `d`-ary trees.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::tree::{complete_size, FreeTree};

/// Eigenvalues closer than this are merged into one entry.
pub const MERGE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum EnergyMethod {
    Spectral,
    Coulson,
    ClosedForm,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyValue {
    pub value: f64,
    pub method: EnergyMethod,
}

/// Eigenvalue/multiplicity pairs, eigenvalues sorted descending.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Spectrum {
    pub entries: Vec<(f64, usize)>,
}

impl Spectrum {
    /// Groups sorted values; a value joins the current group while it lies
    /// within `tol` of the group's first member.
    pub fn from_values(mut values: Vec<f64>, tol: f64) -> Self {
        values.sort_by(|a, b| b.total_cmp(a));
        let mut entries: Vec<(f64, usize)> = Vec::new();
        let mut group: Vec<f64> = Vec::new();
        let flush = |group: &mut Vec<f64>, entries: &mut Vec<(f64, usize)>| {
            if !group.is_empty() {
                let mean = group.iter().sum::<f64>() / group.len() as f64;
                entries.push((mean, group.len()));
                group.clear();
            }
        };
        for v in values {
            if group.first().is_some_and(|&g| (g - v).abs() > tol) {
                flush(&mut group, &mut entries);
            }
            group.push(v);
        }
        flush(&mut group, &mut entries);
        Spectrum { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.iter().map(|e| e.1).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Every eigenvalue expanded by multiplicity, descending.
    pub fn values(&self) -> Vec<f64> {
        self.entries.iter().flat_map(|&(v, m)| std::iter::repeat_n(v, m)).collect()
    }

    /// True iff `lambda` and `-lambda` occur with equal multiplicity.
    pub fn is_symmetric(&self, tol: f64) -> bool {
        let e = &self.entries;
        (0..e.len()).all(|i| {
            let (a, m) = e[i];
            let (b, mb) = e[e.len() - 1 - i];
            (a + b).abs() <= tol && m == mb
        })
    }
}

/// Dense adjacency matrix, row-major.
pub fn adjacency_matrix(tree: &FreeTree) -> Vec<f64> {
    let n = tree.len();
    let mut a = vec![0.0; n * n];
    for &(u, v) in tree.edges() {
        a[u * n + v] = 1.0;
        a[v * n + u] = 1.0;
    }
    a
}

/// Eigenvalues of a real symmetric `n x n` matrix (row-major) by cyclic
/// Jacobi rotations. Sweeps stop once the off-diagonal Frobenius norm is
/// below `1e-12 * n`.
pub fn jacobi_eigenvalues(mut a: Vec<f64>, n: usize) -> Vec<f64> {
    assert_eq!(a.len(), n * n);
    let threshold = 1e-12 * n as f64;
    const MAX_SWEEPS: usize = 100;
    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i * n + j] * a[i * n + j])
            .sum::<f64>()
            .sqrt();
        if off < threshold {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                a[p * n + p] -= t * apq;
                a[q * n + q] += t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let arp = a[r * n + p];
                    let arq = a[r * n + q];
                    let new_rp = c * arp - s * arq;
                    let new_rq = s * arp + c * arq;
                    a[r * n + p] = new_rp;
                    a[p * n + r] = new_rp;
                    a[r * n + q] = new_rq;
                    a[q * n + r] = new_rq;
                }
            }
        }
    }
    (0..n).map(|i| a[i * n + i]).collect()
}

/// Raw eigenvalues of the adjacency matrix, unmerged, descending.
pub fn eigenvalue_list(tree: &FreeTree) -> Vec<f64> {
    let mut v = jacobi_eigenvalues(adjacency_matrix(tree), tree.len());
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

pub fn eigenvalues(tree: &FreeTree) -> Spectrum {
    Spectrum::from_values(eigenvalue_list(tree), MERGE_TOLERANCE)
}

pub fn energy_from_spectrum(s: &Spectrum) -> EnergyValue {
    let value = s.entries.iter().map(|&(l, m)| m as f64 * l.abs()).sum();
    EnergyValue { value, method: EnergyMethod::Spectral }
}

/// Energy through the eigensolver, summing absolute eigenvalues before
/// any merging.
pub fn energy_spectral(tree: &FreeTree) -> EnergyValue {
    let value = eigenvalue_list(tree).iter().map(|l| l.abs()).sum();
    EnergyValue { value, method: EnergyMethod::Spectral }
}

/// Spectrum of `C_h`: `+-2 sqrt(d) cos(k pi/j)` for `k = 1..=(j-1)/2` with
/// multiplicity `(d-1) d^(h-j)` for `j <= h` and 1 for `j = h + 1`; the rest
/// are zeros.
pub fn spectrum_complete(d: usize, h: usize) -> Spectrum {
    let n = complete_size(d, h);
    let sd = (d as f64).sqrt();
    let mut pairs: Vec<(f64, usize)> = Vec::new();
    for j in 1..=h + 1 {
        let mult = if j == h + 1 { 1 } else { (d - 1) * d.pow((h - j) as u32) };
        if mult == 0 {
            continue;
        }
        for k in 1..=(j - 1) / 2 {
            let l = 2.0 * sd * (k as f64 * PI / j as f64).cos();
            pairs.push((l, mult));
            pairs.push((-l, mult));
        }
    }
    let nonzero: usize = pairs.iter().map(|p| p.1).sum();
    pairs.push((0.0, n - nonzero));
    // merge coinciding values such as cos(pi/3) = cos(2pi/6)
    pairs.sort_by(|a, b| b.0.total_cmp(&a.0));
    let mut entries: Vec<(f64, usize)> = Vec::new();
    for (l, m) in pairs {
        match entries.last_mut() {
            Some(last) if (last.0 - l).abs() <= MERGE_TOLERANCE => last.1 += m,
            _ if m > 0 => entries.push((l, m)),
            _ => {}
        }
    }
    Spectrum { entries }
}

/// `E(C_h)` in closed form with `cot(pi/2j) - 1` terms for even `j` and
/// `csc(pi/2j) - 1` terms for odd `j`, plus the `j = h + 1` boundary term.
pub fn energy_complete_closed(d: usize, h: usize) -> EnergyValue {
    let df = d as f64;
    let sd = df.sqrt();
    let term = |j: usize| {
        let y = PI / (2.0 * j as f64);
        if j.is_multiple_of(2) {
            1.0 / y.tan() - 1.0
        } else {
            1.0 / y.sin() - 1.0
        }
    };
    let bulk: f64 = (1..=h).map(|j| df.powi((h - j) as i32) * term(j)).sum();
    let value = 2.0 * sd * (df - 1.0) * bulk + 2.0 * sd * term(h + 1);
    EnergyValue { value, method: EnergyMethod::ClosedForm }
}
