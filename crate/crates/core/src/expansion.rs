//! Digital expansions of `(d-1)n + 1` and the extremal trees `T*(n, d)`.
//!
//! `T*(n, d)` is a chain `v_0 - v_1 - ... - v_l`. For `k < l`, `v_k` carries
//! `d - 1` branches, each `C_k` or `C_{k+2}`, and `r_k` of them are `C_{k+2}`.
//! The last vertex `v_l` carries `d` branches described by [`TerminalKind`].
//! Since `(d-1)|C_m| + 1 = d^m`, the vertex count satisfies
//! `(d-1)n + 1 = sum a_k d^k` with `a_k = (d-1)(1 + (d+1) r_k)` for `k < l`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tree::{complete_size, FreeTree, TreeClassParams};

/// Shape of the `d` branches at the end of the chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TerminalKind {
    /// All `d` branches are `C_{l-1}`; digit `a_l = 1`.
    AllCEllMinus1,
    /// All `d` branches are `C_l`; digit `a_l = d`.
    AllCEll,
    /// Branches drawn from `C_l`, `C_{l+1}`, `C_{l+2}` with `q >= 2` copies of
    /// `C_{l+1}` and `r` copies of `C_{l+2}`; digit `a_l = d + (d-1)q + (d^2-1)r`.
    Mixed { q: usize, r: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DigitalExpansion {
    pub n: usize,
    pub d: usize,
    pub ell: usize,
    /// `a_0 ..= a_l`.
    pub digits: Vec<u64>,
    /// `r_0 .. r_{l-1}`.
    pub r: Vec<usize>,
    pub terminal: TerminalKind,
}

impl DigitalExpansion {
    pub fn value(&self) -> u128 {
        self.digits
            .iter()
            .rev()
            .fold(0u128, |acc, &a| acc * self.d as u128 + a as u128)
    }

    /// Checks every invariant of the expansion against `n` and `d`.
    pub fn check(&self) -> Result<()> {
        let (n, d) = (self.n as u128, self.d as u64);
        let fail = |msg: String| Err(Error::Expansion { n: self.n as u64, d, msg });
        if self.digits.len() != self.ell + 1 || self.r.len() != self.ell {
            return fail("length mismatch".into());
        }
        if self.value() != (d as u128 - 1) * n + 1 {
            return fail(format!("digits sum to {}", self.value()));
        }
        for (k, (&a, &r)) in self.digits.iter().zip(&self.r).enumerate() {
            if r >= self.d || a != nonterminal_digit(d, r as u64) {
                return fail(format!("digit {k} is {a} with r={r}"));
            }
        }
        if terminal_kind(self.digits[self.ell], d, self.ell) != Some(self.terminal) {
            return fail("terminal digit does not match its kind".into());
        }
        Ok(())
    }
}

fn nonterminal_digit(d: u64, r: u64) -> u64 {
    (d - 1) * (1 + (d + 1) * r)
}

/// Classifies `a` as a terminal digit at level `ell`, if it is one.
fn terminal_kind(a: u64, d: u64, ell: usize) -> Option<TerminalKind> {
    if a == 1 && ell >= 1 {
        return Some(TerminalKind::AllCEllMinus1);
    }
    if a == d {
        return Some(TerminalKind::AllCEll);
    }
    // a = d + (d-1)(q + (d+1)r) with 2 <= q, q + r <= d; q < d+1 makes the
    // split of (a-d)/(d-1) into q and r unique
    if a <= d || !(a - d).is_multiple_of(d - 1) {
        return None;
    }
    let m = (a - d) / (d - 1);
    let (r, q) = (m / (d + 1), m % (d + 1));
    (q >= 2 && q + r <= d).then_some(TerminalKind::Mixed { q: q as usize, r: r as usize })
}

/// The unique expansion of `(d-1)n + 1`. Digits are extracted least
/// significant first; every level where the remaining value is a terminal
/// digit is recorded and exactly one such level must exist.
pub fn digital_expansion(params: TreeClassParams) -> Result<DigitalExpansion> {
    let TreeClassParams { n, d } = params;
    if n == 0 || d < 2 {
        return Err(Error::InvalidParams(format!(
            "digital expansion needs n >= 1 and d >= 2, got n={n}, d={d}"
        )));
    }
    let dd = d as u64;
    let mut value = (dd - 1) * n as u64 + 1;
    let mut digits = Vec::new();
    let mut rs = Vec::new();
    let mut found = Vec::new();
    loop {
        let ell = digits.len();
        if let Some(kind) = terminal_kind(value, dd, ell) {
            let mut all = digits.clone();
            all.push(value);
            found.push(DigitalExpansion { n, d, ell, digits: all, r: rs.clone(), terminal: kind });
        }
        // each residue class mod d holds exactly one non-terminal digit
        let r = (0..dd)
            .find(|&r| nonterminal_digit(dd, r) % dd == value % dd)
            .expect("non-terminal digits cover every residue");
        let a = nonterminal_digit(dd, r);
        if a >= value {
            break;
        }
        value = (value - a) / dd;
        digits.push(a);
        rs.push(r as usize);
    }
    match found.len() {
        1 => {
            let e = found.pop().unwrap();
            e.check()?;
            Ok(e)
        }
        0 => Err(Error::Expansion { n: n as u64, d: dd, msg: "no termination point".into() }),
        k => Err(Error::Expansion { n: n as u64, d: dd, msg: format!("{k} termination points") }),
    }
}

/// Heights of the complete subtrees hanging off each chain vertex.
pub fn branch_heights(e: &DigitalExpansion) -> Vec<Vec<usize>> {
    let d = e.d;
    let mut out = Vec::with_capacity(e.ell + 1);
    for (k, &r) in e.r.iter().enumerate() {
        let mut hs = vec![k; d - 1 - r];
        hs.extend(std::iter::repeat_n(k + 2, r));
        out.push(hs);
    }
    let l = e.ell;
    out.push(match e.terminal {
        TerminalKind::AllCEllMinus1 => vec![l - 1; d],
        TerminalKind::AllCEll => vec![l; d],
        TerminalKind::Mixed { q, r } => {
            let mut hs = vec![l; d - q - r];
            hs.extend(std::iter::repeat_n(l + 1, q));
            hs.extend(std::iter::repeat_n(l + 2, r));
            hs
        }
    });
    out
}

/// `T*(n, d)`. For `d = 1` the class holds only the path.
pub fn extremal_tree(params: TreeClassParams) -> Result<FreeTree> {
    let TreeClassParams { n, d } = TreeClassParams::new(params.n, params.d)?;
    if d == 1 {
        return Ok(FreeTree::path(n));
    }
    let e = digital_expansion(params)?;
    let chain = e.ell + 1;
    let mut edges: Vec<(usize, usize)> = (1..chain).map(|k| (k - 1, k)).collect();
    let mut next = chain;
    for (k, heights) in branch_heights(&e).into_iter().enumerate() {
        for h in heights {
            attach_complete(&mut edges, &mut next, k, d, h);
        }
    }
    if next != n {
        return Err(Error::Expansion {
            n: n as u64,
            d: d as u64,
            msg: format!("assembled {next} vertices"),
        });
    }
    FreeTree::new(n, edges)
}

/// Appends a copy of `C_h` whose root is joined to `anchor`.
fn attach_complete(edges: &mut Vec<(usize, usize)>, next: &mut usize, anchor: usize, d: usize, h: usize) {
    let size = complete_size(d, h);
    if size == 0 {
        return;
    }
    let base = *next;
    edges.push((anchor, base));
    for v in 1..size {
        edges.push((base + (v - 1) / d, base + v));
    }
    *next += size;
}
