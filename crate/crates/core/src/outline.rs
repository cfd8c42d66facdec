//! Outline graphs: every maximal complete `d`-ary subtree is collapsed into a
//! labelled leaf `C_k`, and vertices with spare degree are padded with `C_0`
//! leaves so that all internal vertices become full.

use crate::error::{Error, Result};
use crate::tree::{FreeTree, RootedTree};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutlineNode {
    Internal,
    /// A special leaf standing for `C_k`.
    Leaf(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutlineGraph {
    pub nodes: Vec<OutlineNode>,
    pub adj: Vec<Vec<usize>>,
    pub root: Option<usize>,
}

impl OutlineGraph {
    fn new(root: bool) -> Self {
        OutlineGraph { nodes: Vec::new(), adj: Vec::new(), root: root.then_some(0) }
    }

    fn push(&mut self, node: OutlineNode) -> usize {
        self.nodes.push(node);
        self.adj.push(Vec::new());
        self.nodes.len() - 1
    }

    fn link(&mut self, a: usize, b: usize) {
        self.adj[a].push(b);
        self.adj[b].push(a);
    }

    fn pad(&mut self, node: usize, target_degree: usize) {
        while self.adj[node].len() < target_degree {
            let leaf = self.push(OutlineNode::Leaf(0));
            self.link(node, leaf);
        }
    }

    fn single_leaf(k: usize, rooted: bool) -> Self {
        let mut g = OutlineGraph::new(rooted);
        g.push(OutlineNode::Leaf(k));
        g
    }

    /// Leaf labels with the node they are attached to (`None` for an
    /// isolated leaf).
    pub fn leaves(&self) -> Vec<(usize, Option<usize>)> {
        self.nodes
            .iter()
            .enumerate()
            .filter_map(|(i, node)| match node {
                OutlineNode::Leaf(k) => Some((*k, self.adj[i].first().copied())),
                OutlineNode::Internal => None,
            })
            .collect()
    }

    /// Checks the structural invariants: internal vertices of a rooted
    /// outline have exactly `d` children, those of a free outline have degree
    /// `d + 1`, and leaves have degree at most 1.
    pub fn check(&self, d: usize) -> Result<()> {
        for (i, node) in self.nodes.iter().enumerate() {
            let deg = self.adj[i].len();
            let ok = match node {
                OutlineNode::Leaf(_) => deg <= 1 || (self.root == Some(i) && deg <= d),
                OutlineNode::Internal if self.root == Some(i) => deg == d,
                OutlineNode::Internal => deg == d + 1,
            };
            if !ok {
                return Err(Error::InvalidTree(format!("outline node {i} has degree {deg}")));
            }
        }
        Ok(())
    }

    /// The smallest leaf label `j`, how often `C_j` occurs, and whether all
    /// copies hang off one common vertex.
    pub fn minimal_leaf_cluster(&self) -> Option<(usize, usize, bool)> {
        let leaves = self.leaves();
        let j = leaves.iter().map(|&(k, _)| k).min()?;
        let anchors: Vec<Option<usize>> =
            leaves.iter().filter(|&&(k, _)| k == j).map(|&(_, a)| a).collect();
        let shared = anchors.windows(2).all(|w| w[0] == w[1]);
        Some((j, anchors.len(), shared))
    }
}

/// Height label of a complete branch: `Some(k)` iff the branch is `C_k`.
fn complete_label<I: IntoIterator<Item = Option<usize>>>(branch_labels: I, count: usize, d: usize) -> Option<usize> {
    if count == 0 {
        return Some(1);
    }
    if count != d {
        return None;
    }
    let mut labels = branch_labels.into_iter();
    let first = labels.next()??;
    labels.all(|l| l == Some(first)).then_some(first + 1)
}

pub fn outline_rooted(tree: &RootedTree, d: usize) -> Result<OutlineGraph> {
    let Some(root) = tree.root() else {
        return Ok(OutlineGraph::single_leaf(0, true));
    };
    for v in 0..tree.len() {
        if tree.children(v).len() > d {
            let degree = tree.children(v).len() + usize::from(v != root);
            let bound = if v == root { d } else { d + 1 };
            return Err(Error::DegreeBound { vertex: v, degree, bound });
        }
    }
    let mut label = vec![None; tree.len()];
    for v in tree.postorder() {
        let ch = tree.children(v);
        label[v] = complete_label(ch.iter().map(|&c| label[c]), ch.len(), d);
    }
    if let Some(k) = label[root] {
        return Ok(OutlineGraph::single_leaf(k, true));
    }
    let mut g = OutlineGraph::new(true);
    let mut stack = vec![(root, g.push(OutlineNode::Internal))];
    while let Some((v, node)) = stack.pop() {
        for &c in tree.children(v) {
            match label[c] {
                Some(k) => {
                    let leaf = g.push(OutlineNode::Leaf(k));
                    g.link(node, leaf);
                }
                None => {
                    let child = g.push(OutlineNode::Internal);
                    g.link(node, child);
                    stack.push((c, child));
                }
            }
        }
        // d children everywhere: d total for the root, d+1 with the parent
        // edge elsewhere
        let target = if v == root { d } else { d + 1 };
        g.pad(node, target);
    }
    Ok(g)
}

pub fn outline_free(tree: &FreeTree, d: usize) -> Result<OutlineGraph> {
    tree.check_degree_bound(d + 1)?;
    let n = tree.len();
    if n == 1 {
        return Ok(OutlineGraph::single_leaf(1, false));
    }
    let rooted = RootedTree::from_free(tree, 0);
    // down[v]: branch rooted at v away from its parent.
    // up[v]: branch rooted at parent(v) away from v.
    let mut down = vec![None; n];
    for v in rooted.postorder() {
        let ch = rooted.children(v);
        down[v] = complete_label(ch.iter().map(|&c| down[c]), ch.len(), d);
    }
    let mut up = vec![None; n];
    for p in rooted.preorder() {
        for &c in rooted.children(p) {
            let others = rooted
                .children(p)
                .iter()
                .filter(|&&o| o != c)
                .map(|&o| down[o])
                .chain(rooted.parent(p).map(|_| up[p]));
            up[c] = complete_label(others, tree.degree(p) - 1, d);
        }
    }

    // label of the branch rooted at y, seen from its neighbour x
    let branch_label = |x: usize, y: usize| {
        if rooted.parent(y) == Some(x) {
            down[y]
        } else {
            up[x]
        }
    };

    // the whole tree is C_k rooted somewhere
    for v in 0..n {
        let labels = tree.neighbors(v).iter().map(|&y| branch_label(v, y));
        if let Some(k) = complete_label(labels, tree.degree(v), d) {
            return Ok(OutlineGraph::single_leaf(k, false));
        }
    }

    // x is absorbed iff it lies in some complete branch: below a complete
    // down-branch, or outside the subtree of some v with a complete up-branch
    let up_total = (0..n).filter(|&v| up[v].is_some()).count();
    let mut below_down = vec![false; n];
    let mut up_on_path = vec![0usize; n];
    for v in rooted.preorder() {
        let (pd, pu) = rooted.parent(v).map_or((false, 0), |p| (below_down[p], up_on_path[p]));
        below_down[v] = pd || down[v].is_some();
        up_on_path[v] = pu + usize::from(up[v].is_some());
    }
    let internal: Vec<bool> =
        (0..n).map(|v| !below_down[v] && up_on_path[v] == up_total).collect();

    let mut g = OutlineGraph::new(false);
    if !internal.iter().any(|&b| b) {
        // the whole tree splits along one edge into two complete branches
        for v in 1..n {
            if let (Some(a), Some(b)) = (down[v], up[v]) {
                let x = g.push(OutlineNode::Leaf(a));
                let y = g.push(OutlineNode::Leaf(b));
                g.link(x, y);
                return Ok(g);
            }
        }
        return Err(Error::InvalidTree("tree is covered by complete branches but has no splitting edge".into()));
    }
    let mut id = vec![usize::MAX; n];
    for v in (0..n).filter(|&v| internal[v]) {
        id[v] = g.push(OutlineNode::Internal);
    }
    for &(u, v) in tree.edges() {
        match (internal[u], internal[v]) {
            (true, true) => g.link(id[u], id[v]),
            (true, false) | (false, true) => {
                let (x, y) = if internal[u] { (u, v) } else { (v, u) };
                let k = branch_label(x, y).expect("absorbed neighbour of an internal vertex heads a complete branch");
                let leaf = g.push(OutlineNode::Leaf(k));
                g.link(id[x], leaf);
            }
            (false, false) => {}
        }
    }
    for v in (0..n).filter(|&v| internal[v]) {
        g.pad(id[v], d + 1);
    }
    Ok(g)
}
