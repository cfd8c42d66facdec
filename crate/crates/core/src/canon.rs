//! Canonical codes for trees up to isomorphism.
//!
//! A rooted tree is encoded as `(` followed by the sorted codes of its
//! branches and `)`. A free tree is encoded by rooting it at its center; with
//! two centers the lexicographically smaller of the two rooted codes wins.

use std::fmt;

use crate::tree::{FreeTree, RootedTree};

/// Isomorphism-invariant code of a free tree. Two free trees have equal
/// codes iff they are isomorphic. Codes are totally ordered.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize, serde::Deserialize)]
#[serde(transparent)]
pub struct CanonicalCode(pub String);

impl CanonicalCode {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

pub fn canonical_code(tree: &FreeTree) -> CanonicalCode {
    let code = centers(tree)
        .into_iter()
        .map(|c| rooted_code(&RootedTree::from_free(tree, c)))
        .min()
        .expect("a tree has at least one center");
    CanonicalCode(code)
}

/// Code of a rooted tree; the empty tree encodes as the empty string.
pub fn rooted_code(tree: &RootedTree) -> String {
    let mut codes: Vec<String> = vec![String::new(); tree.len()];
    for v in tree.postorder() {
        let mut parts: Vec<String> =
            tree.children(v).iter().map(|&c| std::mem::take(&mut codes[c])).collect();
        parts.sort_unstable();
        let mut s = String::with_capacity(2 + parts.iter().map(String::len).sum::<usize>());
        s.push('(');
        for p in parts {
            s.push_str(&p);
        }
        s.push(')');
        codes[v] = s;
    }
    match tree.root() {
        Some(r) => std::mem::take(&mut codes[r]),
        None => String::new(),
    }
}

/// The one or two central vertices, found by repeatedly stripping leaves.
pub fn centers(tree: &FreeTree) -> Vec<usize> {
    let n = tree.len();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut degree: Vec<usize> = (0..n).map(|v| tree.degree(v)).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &leaf in &layer {
            for &w in tree.neighbors(leaf) {
                degree[w] -= 1;
                if degree[w] == 1 {
                    next.push(w);
                }
            }
        }
        layer = next;
    }
    layer.sort_unstable();
    layer
}
