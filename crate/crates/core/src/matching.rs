//! Matching-generating polynomials of trees.
//!
//! For a rooted tree with branches `T_1, ..., T_l`:
//!
//! ```text
//! M_0(T) = prod M(T_i)
//! M_1(T) = x * sum_i M_0(T_i) prod_{j != i} M(T_j)
//! tau(T) = M_0(T) / M(T) = 1 / (1 + x sum_i tau(T_i))
//! ```
//!
//! The empty tree has `M_0 = 0` and `M_1 = 1`, so empty branches can be
//! attached without changing anything.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{self, Coeffs};
use crate::tree::{FreeTree, RootedTree};

/// `m(T, k)` for `k = 0, 1, ...`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingPolynomial {
    pub coeffs: Coeffs,
}

impl MatchingPolynomial {
    /// `M(T, 1)`, the total number of matchings.
    pub fn hosoya(&self) -> BigUint {
        poly::sum(&self.coeffs)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        poly::eval_rational(&self.coeffs, x)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        poly::eval_f64(&self.coeffs, x)
    }

    /// Size of a maximum matching.
    pub fn matching_number(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }
}

/// Root-uncovered (`m0`) and root-covered (`m1`) parts of `M(T, x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootStatePolynomials {
    pub m0: Coeffs,
    pub m1: Coeffs,
}

impl RootStatePolynomials {
    pub fn empty_tree() -> Self {
        RootStatePolynomials { m0: Vec::new(), m1: poly::one() }
    }

    pub fn total(&self) -> MatchingPolynomial {
        MatchingPolynomial { coeffs: poly::add(&self.m0, &self.m1) }
    }

    /// Combines the states of the branches below a new root.
    fn join<'a, I: IntoIterator<Item = &'a RootStatePolynomials>>(branches: I) -> Self {
        // fold keeps prod M(T_j) and sum_i M_0(T_i) prod_{j != i} M(T_j)
        let mut prod = poly::one();
        let mut cross = Vec::new();
        for b in branches {
            let total = poly::add(&b.m0, &b.m1);
            cross = poly::add(&poly::mul(&cross, &total), &poly::mul(&prod, &b.m0));
            prod = poly::mul(&prod, &total);
        }
        RootStatePolynomials { m0: prod, m1: poly::shift(&cross) }
    }
}

pub fn matching_polynomial(tree: &RootedTree) -> RootStatePolynomials {
    let Some(root) = tree.root() else {
        return RootStatePolynomials::empty_tree();
    };
    let mut state: Vec<Option<RootStatePolynomials>> = vec![None; tree.len()];
    for v in tree.postorder() {
        let branches: Vec<RootStatePolynomials> =
            tree.children(v).iter().map(|&c| state[c].take().expect("child before parent")).collect();
        state[v] = Some(RootStatePolynomials::join(&branches));
    }
    state[root].take().expect("root state")
}

pub fn free_matching_polynomial(tree: &FreeTree) -> MatchingPolynomial {
    matching_polynomial(&RootedTree::from_free(tree, 0)).total()
}

/// Product of the matching polynomials of the components left after deleting
/// the `removed` vertices.
pub fn forest_matching_polynomial(tree: &FreeTree, removed: &[bool]) -> Coeffs {
    let n = tree.len();
    let mut seen = removed.to_vec();
    let mut result = poly::one();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut order = vec![s];
        let mut parent = vec![usize::MAX; n];
        let mut i = 0;
        while i < order.len() {
            let u = order[i];
            for &w in tree.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = u;
                    order.push(w);
                }
            }
            i += 1;
        }
        let mut state: Vec<Option<RootStatePolynomials>> = vec![None; n];
        for &u in order.iter().rev() {
            let branches: Vec<RootStatePolynomials> = tree
                .neighbors(u)
                .iter()
                .filter(|&&w| parent[w] == u && !removed[w])
                .map(|&w| state[w].take().expect("child before parent"))
                .collect();
            state[u] = Some(RootStatePolynomials::join(&branches));
        }
        let total = state[s].take().expect("component root").total();
        result = poly::mul(&result, &total.coeffs);
    }
    result
}

pub fn hosoya(tree: &FreeTree) -> BigUint {
    free_matching_polynomial(tree).hosoya()
}

/// `tau(T, x)` through the all-positive recursion.
pub fn tau(tree: &RootedTree, x: f64) -> f64 {
    let Some(root) = tree.root() else { return 0.0 };
    let mut t = vec![0.0; tree.len()];
    for v in tree.postorder() {
        let s: f64 = tree.children(v).iter().map(|&c| t[c]).sum();
        t[v] = 1.0 / (1.0 + x * s);
    }
    t[root]
}

/// `tau(T, x)` in exact rational arithmetic through the recursion.
pub fn tau_exact(tree: &RootedTree, x: &BigRational) -> BigRational {
    let Some(root) = tree.root() else { return BigRational::zero() };
    let mut t: Vec<BigRational> = vec![BigRational::zero(); tree.len()];
    for v in tree.postorder() {
        let s = tree.children(v).iter().fold(BigRational::zero(), |acc, &c| acc + &t[c]);
        t[v] = (BigRational::one() + x * s).recip();
    }
    std::mem::take(&mut t[root])
}

/// `M_0(T, x) / M(T, x)` from the exact polynomials.
pub fn tau_from_polys(tree: &RootedTree, x: &BigRational) -> BigRational {
    let s = matching_polynomial(tree);
    let total = s.total().eval_rational(x);
    poly::eval_rational(&s.m0, x) / total
}

/// Characteristic polynomial `sum_k (-1)^k m(T,k) x^(n-2k)`, lowest degree
/// first, length `n + 1`.
pub fn char_poly(tree: &FreeTree) -> Vec<BigInt> {
    let n = tree.len();
    let m = free_matching_polynomial(tree);
    let mut out = vec![BigInt::zero(); n + 1];
    for (k, c) in m.coeffs.iter().enumerate() {
        let c = BigInt::from(c.clone());
        out[n - 2 * k] = if k % 2 == 0 { c } else { -c };
    }
    out
}

/// Matchings of a tree split by whether the marked vertices `v`, `w` are
/// covered: `m10` counts those covering `v` but not `w`, and so on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairStatePolynomials {
    pub m00: Coeffs,
    pub m10: Coeffs,
    pub m01: Coeffs,
    pub m11: Coeffs,
}

impl PairStatePolynomials {
    pub fn total(&self) -> Coeffs {
        poly::add(&poly::add(&self.m00, &self.m10), &poly::add(&self.m01, &self.m11))
    }
}

/// Uncovered vertices are the same as deleted vertices, so the four parts
/// follow by inclusion-exclusion from `M(T)`, `M(T-v)`, `M(T-w)`, `M(T-v-w)`.
pub fn pair_matching_polys(tree: &FreeTree, v: usize, w: usize) -> Result<PairStatePolynomials> {
    let n = tree.len();
    if v >= n || w >= n {
        return Err(Error::InvalidParams(format!("marked vertices {v}, {w} out of range for n={n}")));
    }
    if v == w {
        return Err(Error::InvalidParams("marked vertices must differ".into()));
    }
    let without = |vs: &[usize]| {
        let mut removed = vec![false; n];
        for &u in vs {
            removed[u] = true;
        }
        forest_matching_polynomial(tree, &removed)
    };
    let all = free_matching_polynomial(tree).coeffs;
    let no_v = without(&[v]);
    let no_w = without(&[w]);
    let neither = without(&[v, w]);
    let m10 = poly::sub(&no_w, &neither);
    let m01 = poly::sub(&no_v, &neither);
    let m11 = poly::sub(&poly::sub(&poly::sub(&all, &neither), &m10), &m01);
    Ok(PairStatePolynomials { m00: neither, m10, m01, m11 })
}

fn rational(c: &[BigUint], x: &BigRational) -> BigRational {
    poly::eval_rational(c, x)
}

/// Checks `M(T,x) = G(L, R; x) * prod M(L_i,x) * prod M(R_i,x)` where `T` is
/// `t0` with the roots of the `L_i` joined to `v` and those of the `R_i`
/// joined to `w`, and
///
/// ```text
/// G = M00 (1 + x SL)(1 + x SR) + M10 (1 + x SR) + M01 (1 + x SL) + M11
/// ```
///
/// with `SL = sum tau(L_i, x)`, `SR = sum tau(R_i, x)` and `Mij` the pair
/// polynomials of `t0` at `(v, w)`. Exact rational arithmetic throughout.
pub fn exchange_identity_check(
    t0: &FreeTree,
    v: usize,
    w: usize,
    left: &[RootedTree],
    right: &[RootedTree],
    d: usize,
    x: &BigRational,
) -> Result<bool> {
    if left.len() != d || right.len() != d {
        return Err(Error::InvalidParams(format!(
            "expected {d} left and {d} right branches, got {} and {}",
            left.len(),
            right.len()
        )));
    }
    if *x <= BigRational::zero() {
        return Err(Error::InvalidParams("x must be positive".into()));
    }
    let pair = pair_matching_polys(t0, v, w)?;
    let host = attach_all(t0, v, w, left, right)?;
    host.check_degree_bound(d + 1)?;

    let lhs = free_matching_polynomial(&host).eval_rational(x);

    let one = BigRational::one();
    let sum_tau = |bs: &[RootedTree]| bs.iter().fold(BigRational::zero(), |acc, b| acc + tau_exact(b, x));
    let fl = &one + x * sum_tau(left);
    let fr = &one + x * sum_tau(right);
    let g = rational(&pair.m00, x) * &fl * &fr
        + rational(&pair.m10, x) * &fr
        + rational(&pair.m01, x) * &fl
        + rational(&pair.m11, x);
    let branches = left
        .iter()
        .chain(right)
        .fold(one.clone(), |acc, b| acc * matching_polynomial(b).total().eval_rational(x));
    Ok(lhs == g * branches)
}

/// `t0` with every non-empty `left` branch hung off `v` and every non-empty
/// `right` branch hung off `w`.
pub fn attach_all(t0: &FreeTree, v: usize, w: usize, left: &[RootedTree], right: &[RootedTree]) -> Result<FreeTree> {
    let mut edges = t0.edges().to_vec();
    let mut next = t0.len();
    for (anchor, b) in left.iter().map(|b| (v, b)).chain(right.iter().map(|b| (w, b))) {
        let Some(root) = b.root() else { continue };
        for u in 0..b.len() {
            if let Some(p) = b.parent(u) {
                edges.push((next + p, next + u));
            }
        }
        edges.push((anchor, next + root));
        next += b.len();
    }
    FreeTree::new(next, edges)
}

/// Size of a maximum matching, by greedily matching leaves upwards.
pub fn matching_number(tree: &FreeTree) -> usize {
    let rooted = RootedTree::from_free(tree, 0);
    let mut matched = vec![false; tree.len()];
    let mut count = 0;
    for v in rooted.postorder() {
        if let Some(p) = rooted.parent(v) {
            if !matched[v] && !matched[p] {
                matched[v] = true;
                matched[p] = true;
                count += 1;
            }
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::from_u64;
    use crate::tree::complete_dary;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn empty_and_single() {
        let e = matching_polynomial(&RootedTree::empty());
        assert!(e.m0.is_empty());
        assert_eq!(e.m1, from_u64(&[1]));
        let s = matching_polynomial(&RootedTree::single());
        assert_eq!(s.m0, from_u64(&[1]));
        assert!(s.m1.is_empty());
        assert_eq!(s.total().hosoya(), BigUint::from(1u32));
    }

    #[test]
    fn path4_from_end() {
        let p = RootedTree::from_free(&FreeTree::path(4), 0);
        let s = matching_polynomial(&p);
        assert_eq!(s.total().coeffs, from_u64(&[1, 3, 1]));
        // root uncovered: matchings of the 3-path
        assert_eq!(s.m0, from_u64(&[1, 2]));
        assert_eq!(s.m1, from_u64(&[0, 1, 1]));
    }

    #[test]
    fn hosoya_small() {
        assert_eq!(hosoya(&FreeTree::path(2)), BigUint::from(2u32));
        assert_eq!(hosoya(&FreeTree::path(3)), BigUint::from(3u32));
        let t6 = crate::extremal_tree(crate::TreeClassParams::new(6, 2).unwrap()).unwrap();
        assert_eq!(hosoya(&t6), BigUint::from(10u32));
    }

    #[test]
    fn root_independence() {
        let t = FreeTree::parse("0 1\n1 2\n1 3\n3 4\n3 5\n5 6").unwrap();
        let reference = free_matching_polynomial(&t);
        for r in 0..t.len() {
            assert_eq!(matching_polynomial(&RootedTree::from_free(&t, r)).total(), reference);
        }
    }

    #[test]
    fn tau_values() {
        assert_eq!(tau(&RootedTree::empty(), 1.0), 0.0);
        assert_eq!(tau(&RootedTree::single(), 3.7), 1.0);
        let c2 = complete_dary(2, 2);
        assert!((tau(&c2, 1.0) - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(tau_exact(&c2, &q(1, 1)), q(1, 3));
        assert_eq!(tau_from_polys(&c2, &q(1, 1)), q(1, 3));
        let c4 = complete_dary(3, 4);
        assert_eq!(tau_exact(&c4, &q(2, 5)), tau_from_polys(&c4, &q(2, 5)));
    }

    #[test]
    fn char_poly_small() {
        let to = |v: &[i64]| v.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>();
        assert_eq!(char_poly(&FreeTree::single()), to(&[0, 1]));
        assert_eq!(char_poly(&FreeTree::path(2)), to(&[-1, 0, 1]));
        assert_eq!(char_poly(&FreeTree::path(3)), to(&[0, -2, 0, 1]));
    }

    #[test]
    fn pair_polys_small() {
        let e = pair_matching_polys(&FreeTree::path(2), 0, 1).unwrap();
        assert_eq!(e.m00, from_u64(&[1]));
        assert_eq!(e.m11, from_u64(&[0, 1]));
        assert!(e.m10.is_empty() && e.m01.is_empty());

        // v - c - w
        let p = FreeTree::parse("0 1\n1 2").unwrap();
        let s = pair_matching_polys(&p, 0, 2).unwrap();
        assert_eq!(s.m00, from_u64(&[1]));
        assert_eq!(s.m10, from_u64(&[0, 1]));
        assert_eq!(s.m01, from_u64(&[0, 1]));
        assert!(s.m11.is_empty());

        assert!(pair_matching_polys(&p, 1, 1).is_err());
        assert!(pair_matching_polys(&p, 0, 3).is_err());
    }

    #[test]
    fn exchange_identity_small() {
        let empty = RootedTree::empty;
        let edge = FreeTree::path(2);
        // all branches empty: G is M(T0)
        assert!(exchange_identity_check(&edge, 0, 1, &[empty(), empty()], &[empty(), empty()], 2, &q(1, 1)).unwrap());
        assert!(exchange_identity_check(
            &edge,
            0,
            1,
            &[RootedTree::single(), empty()],
            &[empty(), empty()],
            2,
            &q(1, 1)
        )
        .unwrap());
        let err = exchange_identity_check(
            &FreeTree::star(3),
            0,
            1,
            &[RootedTree::single(), empty()],
            &[empty(), empty()],
            2,
            &q(1, 1),
        );
        assert!(matches!(err, Err(Error::DegreeBound { .. })));
    }

    #[test]
    fn matching_numbers() {
        assert_eq!(matching_number(&FreeTree::single()), 0);
        assert_eq!(matching_number(&FreeTree::path(5)), 2);
        assert_eq!(matching_number(&FreeTree::path(6)), 3);
        assert_eq!(matching_number(&FreeTree::star(5)), 1);
    }
}
