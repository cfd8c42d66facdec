//! Exhaustive generation of unlabeled free trees with a degree bound, and a
//! brute-force matching counter used as an oracle.
//!
//! Every free tree is generated exactly once from its centroid. With a single
//! centroid the tree is a root whose branches all have fewer than `n/2`
//! vertices; with two centroids (only for even `n`) it is an edge joining two
//! rooted trees of exactly `n/2` vertices. Rooted trees are built bottom-up
//! as non-increasing multisets of smaller rooted trees, so the degree bound
//! is enforced while generating.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matching::MatchingPolynomial;
use crate::poly;
use crate::tree::FreeTree;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationParams {
    pub n: usize,
    pub max_degree: usize,
    /// `(index, count)`: keep only trees whose position modulo `count` is
    /// `index`.
    pub shard: Option<(usize, usize)>,
}

impl EnumerationParams {
    pub fn new(n: usize, max_degree: usize) -> Self {
        EnumerationParams { n, max_degree, shard: None }
    }

    pub fn with_shard(mut self, index: usize, count: usize) -> Self {
        self.shard = Some((index, count));
        self
    }
}

/// A rooted tree shape: its branches as `(size, index)` into the table of
/// shapes of that size, in non-increasing order.
type Shape = Vec<(usize, usize)>;

/// All rooted trees of size `1..=max_size` where every vertex has at most
/// `max_children` children.
fn rooted_shapes(max_size: usize, max_children: usize) -> Vec<Vec<Shape>> {
    let mut table: Vec<Vec<Shape>> = vec![Vec::new(); max_size + 1];
    for s in 1..=max_size {
        let mut out = Vec::new();
        multisets(&table, s - 1, (s - 1, usize::MAX), max_children, &mut Vec::new(), &mut out);
        table[s] = out;
    }
    table
}

/// Non-increasing sequences of `(size, index)` with sizes summing to
/// `remaining`, each item at most `bound`, at most `slots` items.
fn multisets(
    table: &[Vec<Shape>],
    remaining: usize,
    bound: (usize, usize),
    slots: usize,
    current: &mut Shape,
    out: &mut Vec<Shape>,
) {
    if remaining == 0 {
        out.push(current.clone());
        return;
    }
    if slots == 0 {
        return;
    }
    for size in (1..=bound.0.min(remaining)).rev() {
        // the remaining items are no larger than this one
        if size * slots < remaining {
            break;
        }
        let count = table[size].len();
        let top = if size == bound.0 { bound.1.min(count.saturating_sub(1)) } else { count.saturating_sub(1) };
        if count == 0 {
            continue;
        }
        for idx in (0..=top).rev() {
            current.push((size, idx));
            multisets(table, remaining - size, (size, idx), slots - 1, current, out);
            current.pop();
        }
    }
}

enum Descriptor {
    Centroid(Shape),
    Bicentroid(usize, usize),
}

fn expand(table: &[Vec<Shape>], size: usize, idx: usize, parent: Option<usize>, edges: &mut Vec<(usize, usize)>, next: &mut usize) {
    let me = *next;
    *next += 1;
    if let Some(p) = parent {
        edges.push((p, me));
    }
    for &(s, i) in &table[size][idx] {
        expand(table, s, i, Some(me), edges, next);
    }
}

/// One representative per isomorphism class of trees on `p.n` vertices with
/// maximum degree at most `p.max_degree`, in a fixed order.
pub fn enumerate_trees(p: &EnumerationParams) -> Result<impl Iterator<Item = FreeTree>> {
    let EnumerationParams { n, max_degree, shard } = *p;
    if n == 0 || max_degree == 0 {
        return Err(Error::InvalidParams(format!("need n >= 1 and max_degree >= 1, got n={n}, max_degree={max_degree}")));
    }
    let (shard_index, shard_count) = shard.unwrap_or((0, 1));
    if shard_count == 0 || shard_index >= shard_count {
        return Err(Error::InvalidParams(format!("bad shard {shard_index}/{shard_count}")));
    }
    let table = rooted_shapes(n / 2, max_degree - 1);
    let mut descriptors = Vec::new();
    let mut roots = Vec::new();
    multisets(&table, n - 1, ((n - 1) / 2, usize::MAX), max_degree, &mut Vec::new(), &mut roots);
    descriptors.extend(roots.into_iter().map(Descriptor::Centroid));
    if n % 2 == 0 {
        let k = table[n / 2].len();
        for i in 0..k {
            for j in i..k {
                descriptors.push(Descriptor::Bicentroid(i, j));
            }
        }
    }
    Ok(descriptors
        .into_iter()
        .enumerate()
        .filter(move |(i, _)| i % shard_count == shard_index)
        .map(move |(_, desc)| {
            let mut edges = Vec::with_capacity(n - 1);
            let mut next = 0;
            match desc {
                Descriptor::Centroid(children) => {
                    next = 1;
                    for (s, i) in children {
                        expand(&table, s, i, Some(0), &mut edges, &mut next);
                    }
                }
                Descriptor::Bicentroid(i, j) => {
                    expand(&table, n / 2, i, None, &mut edges, &mut next);
                    let second = next;
                    expand(&table, n / 2, j, None, &mut edges, &mut next);
                    edges.push((0, second));
                }
            }
            debug_assert_eq!(next, n);
            FreeTree::new(n, edges).expect("generated shape is a tree")
        }))
}

/// Largest tree accepted by [`brute_force_matchings`].
pub const BRUTE_FORCE_LIMIT: usize = 24;

/// Counts matchings by walking every subset of edges, pruning as soon as
/// two chosen edges share a vertex.
pub fn brute_force_matchings(tree: &FreeTree) -> Result<MatchingPolynomial> {
    if tree.len() > BRUTE_FORCE_LIMIT {
        return Err(Error::SizeLimit(format!(
            "brute-force matching count is limited to {BRUTE_FORCE_LIMIT} vertices, got {}",
            tree.len()
        )));
    }
    fn walk(edges: &[(usize, usize)], i: usize, used: u32, size: usize, counts: &mut Vec<u64>) {
        if i == edges.len() {
            counts[size] += 1;
            return;
        }
        walk(edges, i + 1, used, size, counts);
        let (u, v) = edges[i];
        let mask = (1u32 << u) | (1u32 << v);
        if used & mask == 0 {
            walk(edges, i + 1, used | mask, size + 1, counts);
        }
    }
    let mut counts = vec![0u64; tree.len() / 2 + 1];
    walk(tree.edges(), 0, 0, 0, &mut counts);
    Ok(MatchingPolynomial { coeffs: poly::from_u64(&counts) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::canonical_code;
    use std::collections::HashSet;

    fn count(n: usize, max_degree: usize) -> usize {
        enumerate_trees(&EnumerationParams::new(n, max_degree)).unwrap().count()
    }

    #[test]
    fn small_counts() {
        assert_eq!(count(1, 1), 1);
        assert_eq!(count(2, 1), 1);
        assert_eq!(count(3, 1), 0);
        assert_eq!(count(4, 3), 2);
        assert_eq!(count(4, 2), 1);
        // unrestricted counts of free trees: 1 1 1 2 3 6 11 23 47 106
        let unrestricted = [1, 1, 1, 2, 3, 6, 11, 23, 47, 106];
        for (i, &c) in unrestricted.iter().enumerate() {
            assert_eq!(count(i + 1, i + 1), c, "n={}", i + 1);
        }
    }

    #[test]
    fn distinct_and_bounded() {
        for n in 1..=12 {
            let trees: Vec<FreeTree> = enumerate_trees(&EnumerationParams::new(n, 4)).unwrap().collect();
            let codes: HashSet<_> = trees.iter().map(canonical_code).collect();
            assert_eq!(codes.len(), trees.len());
            assert!(trees.iter().all(|t| t.len() == n && t.max_degree() <= 4));
        }
    }

    #[test]
    fn shards_partition() {
        let all: Vec<_> = enumerate_trees(&EnumerationParams::new(11, 3)).unwrap().collect();
        let mut merged = Vec::new();
        for i in 0..3 {
            merged.extend(enumerate_trees(&EnumerationParams::new(11, 3).with_shard(i, 3)).unwrap());
        }
        assert_eq!(merged.len(), all.len());
        let a: HashSet<_> = all.iter().map(canonical_code).collect();
        let b: HashSet<_> = merged.iter().map(canonical_code).collect();
        assert_eq!(a, b);
        assert!(enumerate_trees(&EnumerationParams::new(5, 3).with_shard(3, 3)).is_err());
    }

    #[test]
    fn brute_force_small() {
        assert_eq!(brute_force_matchings(&FreeTree::path(2)).unwrap().coeffs, poly::from_u64(&[1, 1]));
        assert_eq!(brute_force_matchings(&FreeTree::path(4)).unwrap().coeffs, poly::from_u64(&[1, 3, 1]));
        assert_eq!(brute_force_matchings(&FreeTree::star(3)).unwrap().coeffs, poly::from_u64(&[1, 3]));
        assert!(brute_force_matchings(&FreeTree::path(25)).is_err());
    }
}
