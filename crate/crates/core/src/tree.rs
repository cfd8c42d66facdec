//! Rooted and free trees.
//!
//! Vertices are 0-based contiguous indices. Child order carries no meaning;
//! trees are compared up to isomorphism through [`crate::canon`].

use std::fmt::Write as _;

use rand::Rng;

use crate::error::{Error, Result};

/// A rooted tree. The empty tree (no vertices, no root) is a valid value and
/// plays the role of `C_0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedTree {
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    root: Option<usize>,
}

impl RootedTree {
    pub fn empty() -> Self {
        RootedTree { parent: Vec::new(), children: Vec::new(), root: None }
    }

    pub fn single() -> Self {
        RootedTree { parent: vec![None], children: vec![Vec::new()], root: Some(0) }
    }

    /// Builds a tree from a parent array. Exactly one entry must be `None`.
    pub fn from_parents(parent: Vec<Option<usize>>) -> Result<Self> {
        let n = parent.len();
        if n == 0 {
            return Ok(Self::empty());
        }
        let mut children = vec![Vec::new(); n];
        let mut root = None;
        for (v, p) in parent.iter().enumerate() {
            match *p {
                None if root.is_some() => {
                    return Err(Error::InvalidTree("more than one root".into()))
                }
                None => root = Some(v),
                Some(p) if p >= n || p == v => {
                    return Err(Error::InvalidTree(format!("bad parent {p} for vertex {v}")))
                }
                Some(p) => children[p].push(v),
            }
        }
        let root = root.ok_or_else(|| Error::InvalidTree("no root".into()))?;
        let tree = RootedTree { parent, children, root: Some(root) };
        if tree.preorder().len() != n {
            return Err(Error::InvalidTree("parent array contains a cycle".into()));
        }
        Ok(tree)
    }

    /// A new root whose branches are the given trees. Empty branches are
    /// skipped, matching the convention that `C_0` can be attached freely.
    pub fn with_branches<'a, I>(branches: I) -> Self
    where
        I: IntoIterator<Item = &'a RootedTree>,
    {
        let mut parent = vec![None];
        let mut children = vec![Vec::new()];
        for b in branches {
            let Some(broot) = b.root else { continue };
            let offset = parent.len();
            for (v, p) in b.parent.iter().enumerate() {
                parent.push(Some(p.map_or(0, |p| p + offset)));
                children.push(b.children[v].iter().map(|c| c + offset).collect());
            }
            children[0].push(broot + offset);
        }
        RootedTree { parent, children, root: Some(0) }
    }

    /// Roots a free tree at `root`.
    pub fn from_free(tree: &FreeTree, root: usize) -> Self {
        let n = tree.len();
        let mut parent = vec![None; n];
        let mut children = vec![Vec::new(); n];
        let mut seen = vec![false; n];
        let mut stack = vec![root];
        seen[root] = true;
        while let Some(u) = stack.pop() {
            for &w in tree.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(u);
                    children[u].push(w);
                    stack.push(w);
                }
            }
        }
        RootedTree { parent, children, root: Some(root) }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.root.is_none()
    }

    pub fn root(&self) -> Option<usize> {
        self.root
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn preorder(&self) -> Vec<usize> {
        let mut order = Vec::with_capacity(self.len());
        if let Some(r) = self.root {
            let mut stack = vec![r];
            while let Some(u) = stack.pop() {
                order.push(u);
                stack.extend(self.children[u].iter().rev());
            }
        }
        order
    }

    /// Vertices ordered so that every child precedes its parent.
    pub fn postorder(&self) -> Vec<usize> {
        let mut order = self.preorder();
        order.reverse();
        order
    }

    pub fn max_children(&self) -> usize {
        self.children.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// The underlying free tree, or `None` for the empty tree.
    pub fn to_free(&self) -> Option<FreeTree> {
        self.root?;
        let edges = self
            .parent
            .iter()
            .enumerate()
            .filter_map(|(v, p)| p.map(|p| (p, v)))
            .collect();
        Some(FreeTree::new(self.len(), edges).expect("rooted tree is a tree"))
    }
}

/// The complete `d`-ary tree `C_h`: empty for `h = 0`, a single vertex for
/// `h = 1`, otherwise a root carrying `d` copies of `C_{h-1}`.
pub fn complete_dary(d: usize, h: usize) -> RootedTree {
    if h == 0 {
        return RootedTree::empty();
    }
    let n = complete_size(d, h);
    let mut parent = Vec::with_capacity(n);
    parent.push(None);
    // level-order numbering: the children of vertex v on levels < h-1 are
    // d*v+1 ..= d*v+d
    for v in 1..n {
        parent.push(Some((v - 1) / d));
    }
    let mut children = vec![Vec::new(); n];
    for v in 1..n {
        children[(v - 1) / d].push(v);
    }
    RootedTree { parent, children, root: Some(0) }
}

/// `|C_h| = (d^h - 1)/(d - 1)`, or `h` when `d = 1`.
pub fn complete_size(d: usize, h: usize) -> usize {
    if d == 1 {
        return h;
    }
    (0..h).fold(0usize, |acc, _| acc * d + 1)
}

/// Parameters `(n, d)` of the class of trees on `n` vertices with maximum
/// degree at most `d + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct TreeClassParams {
    pub n: usize,
    pub d: usize,
}

impl TreeClassParams {
    pub fn new(n: usize, d: usize) -> Result<Self> {
        if n == 0 || d == 0 {
            return Err(Error::InvalidParams(format!("need n >= 1 and d >= 1, got n={n}, d={d}")));
        }
        Ok(TreeClassParams { n, d })
    }

    pub fn max_degree(&self) -> usize {
        self.d + 1
    }
}

/// An unrooted tree on vertices `0..n`. Edges are stored normalized as
/// `(min, max)` and sorted, so equal edge sets compare equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeTree {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl FreeTree {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidTree("a free tree needs at least one vertex".into()));
        }
        let mut dsu = Dsu::new(n);
        let mut norm = Vec::with_capacity(edges.len());
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidTree(format!("edge {u}-{v} out of range for n={n}")));
            }
            if u == v {
                return Err(Error::InvalidTree(format!("self-loop at {u}")));
            }
            if !dsu.union(u, v) {
                return Err(Error::Cycle(u, v));
            }
            norm.push((u.min(v), u.max(v)));
        }
        if norm.len() != n - 1 {
            return Err(Error::Disconnected { components: n - norm.len() });
        }
        norm.sort_unstable();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &norm {
            adj[u].push(v);
            adj[v].push(u);
        }
        Ok(FreeTree { n, edges: norm, adj })
    }

    pub fn single() -> Self {
        FreeTree { n: 1, edges: Vec::new(), adj: vec![Vec::new()] }
    }

    pub fn path(n: usize) -> Self {
        FreeTree::new(n, (1..n).map(|v| (v - 1, v)).collect()).expect("path")
    }

    pub fn star(leaves: usize) -> Self {
        FreeTree::new(leaves + 1, (1..=leaves).map(|v| (0, v)).collect()).expect("star")
    }

    pub fn len(&self) -> usize {
        self.n
    }

    /// Always false: free trees have at least one vertex.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn check_degree_bound(&self, bound: usize) -> Result<()> {
        match (0..self.n).find(|&v| self.degree(v) > bound) {
            Some(v) => Err(Error::DegreeBound { vertex: v, degree: self.degree(v), bound }),
            None => Ok(()),
        }
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> FreeTree {
        FreeTree::new(self.n, self.edges.iter().map(|&(u, v)| (perm[u], perm[v])).collect())
            .expect("relabeling preserves tree structure")
    }

    /// Serializes to the edge-list text format: `n <count>` followed by one
    /// `u v` line per edge.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("n {}\n", self.n);
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    /// Parses the edge-list text format. The `n <count>` header may be
    /// omitted, in which case `n` is one more than the largest index seen.
    /// Blank lines and `#` comments are ignored.
    pub fn parse(text: &str) -> Result<FreeTree> {
        let mut declared = None;
        let mut edges = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            let num = |s: &str| {
                s.parse::<usize>().map_err(|_| Error::Parse {
                    line: i + 1,
                    msg: format!("expected a nonnegative integer, found {s:?}"),
                })
            };
            match toks.as_slice() {
                ["n", count] if declared.is_none() && edges.is_empty() => {
                    declared = Some(num(count)?)
                }
                [u, v] => edges.push((num(u)?, num(v)?)),
                _ => {
                    return Err(Error::Parse {
                        line: i + 1,
                        msg: format!("expected `u v` or `n <count>`, found {line:?}"),
                    })
                }
            }
        }
        let n = match declared {
            Some(n) => n,
            None if edges.is_empty() => {
                return Err(Error::Parse { line: 0, msg: "empty input without `n` header".into() })
            }
            None => edges.iter().map(|&(u, v)| u.max(v)).max().unwrap_or(0) + 1,
        };
        FreeTree::new(n, edges)
    }
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

/// Random rooted tree on `n` vertices in which every vertex has at most
/// `max_children` children. Vertex `i > 0` picks its parent uniformly among
/// the earlier vertices that still have room.
pub fn random_rooted_tree<R: Rng + ?Sized>(rng: &mut R, n: usize, max_children: usize) -> RootedTree {
    if n == 0 {
        return RootedTree::empty();
    }
    assert!(max_children >= 1 || n == 1, "cannot grow past one vertex with no children allowed");
    let mut parent = vec![None];
    let mut count = vec![0usize];
    let mut open: Vec<usize> = vec![0];
    for v in 1..n {
        let slot = rng.gen_range(0..open.len());
        let p = open[slot];
        parent.push(Some(p));
        count[p] += 1;
        if count[p] == max_children {
            open.swap_remove(slot);
        }
        count.push(0);
        open.push(v);
    }
    RootedTree::from_parents(parent).expect("parent array is a tree")
}

/// Random free tree on `n` vertices with maximum degree at most `max_degree`.
pub fn random_free_tree<R: Rng + ?Sized>(rng: &mut R, n: usize, max_degree: usize) -> FreeTree {
    assert!(n >= 1);
    if n <= 2 {
        return FreeTree::path(n);
    }
    assert!(max_degree >= 2, "trees with n >= 3 need degree >= 2");
    let mut degree = vec![0usize; n];
    let mut open: Vec<usize> = vec![0];
    let mut edges = Vec::with_capacity(n - 1);
    for v in 1..n {
        let slot = rng.gen_range(0..open.len());
        let p = open[slot];
        edges.push((p, v));
        degree[p] += 1;
        degree[v] = 1;
        if degree[p] == max_degree {
            open.swap_remove(slot);
        }
        open.push(v);
    }
    // shuffle labels so vertex 0 is not always a hub
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    FreeTree::new(n, edges).expect("random tree").relabel(&perm)
}
