use std::collections::BTreeSet;

use etrees::enumerate::{enumerate_trees, EnumerationParams};
use etrees::matching::hosoya;
use etrees::outline::{outline_free, outline_rooted};
use etrees::tree::{random_free_tree, random_rooted_tree};
use etrees::{canonical_code, complete_dary, digital_expansion, extremal_tree, FreeTree, TreeClassParams};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Decodes a Prüfer sequence into the edges of a labeled tree.
fn pruefer_tree(seq: &[usize], n: usize) -> FreeTree {
    let mut degree = vec![1; n];
    for &v in seq {
        degree[v] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &v in seq {
        let leaf = (0..n).find(|&u| degree[u] == 1).unwrap();
        edges.push((leaf, v));
        degree[leaf] -= 1;
        degree[v] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&u| degree[u] == 1).collect();
    edges.push((rest[0], rest[1]));
    FreeTree::new(n, edges).unwrap()
}

/// Isomorphism classes of all labeled trees on `n` vertices with maximum
/// degree at most `max_degree`.
fn labeled_classes(n: usize, max_degree: usize) -> BTreeSet<String> {
    if n <= 2 {
        return BTreeSet::from([canonical_code(&FreeTree::path(n)).0]);
    }
    let mut seq = vec![0; n - 2];
    let mut codes = BTreeSet::new();
    loop {
        let t = pruefer_tree(&seq, n);
        if t.max_degree() <= max_degree {
            codes.insert(canonical_code(&t).0);
        }
        let mut i = 0;
        while i < seq.len() && seq[i] == n - 1 {
            seq[i] = 0;
            i += 1;
        }
        if i == seq.len() {
            return codes;
        }
        seq[i] += 1;
    }
}

#[test]
fn cayley_trees_on_four_vertices() {
    let mut count = 0;
    let mut codes = BTreeSet::new();
    for a in 0..4 {
        for b in 0..4 {
            codes.insert(canonical_code(&pruefer_tree(&[a, b], 4)));
            count += 1;
        }
    }
    assert_eq!(count, 16);
    assert_eq!(codes.len(), 2);
}

#[test]
fn enumeration_matches_labeled_oracle() {
    for n in 1..=8 {
        for max_degree in 2..=4 {
            let ours: BTreeSet<String> = enumerate_trees(&EnumerationParams::new(n, max_degree))
                .unwrap()
                .map(|t| canonical_code(&t).0)
                .collect();
            assert_eq!(ours, labeled_classes(n, max_degree), "n={n} max_degree={max_degree}");
        }
    }
}

#[test]
fn known_chemical_tree_counts() {
    // trees with maximum degree at most 4 (alkane carbon skeletons)
    let expected = [1, 1, 1, 2, 3, 5, 9, 18, 35, 75, 159, 355];
    for (i, &c) in expected.iter().enumerate() {
        assert_eq!(enumerate_trees(&EnumerationParams::new(i + 1, 4)).unwrap().count(), c, "n={}", i + 1);
    }
}

#[test]
fn complete_tree_sizes() {
    assert_eq!(complete_dary(3, 0).len(), 0);
    assert_eq!(complete_dary(2, 3).len(), 7);
    assert_eq!(complete_dary(4, 3).len(), 21);
    for d in 1usize..=5 {
        for h in 0..=6 {
            let expect = if d == 1 { h } else { (d.pow(h as u32) - 1) / (d - 1) };
            assert_eq!(complete_dary(d, h).len(), expect);
        }
    }
}

#[test]
fn expansion_sums_and_sizes() {
    for d in 2..=10 {
        for n in 1..=1000 {
            let p = TreeClassParams::new(n, d).unwrap();
            let e = digital_expansion(p).unwrap();
            assert_eq!(e.value(), ((d - 1) * n + 1) as u128);
            assert_eq!(extremal_tree(p).unwrap().len(), n);
        }
    }
}

#[test]
fn extremal_degree_bound_to_ten_thousand() {
    for d in 1..=10 {
        for n in (1..=10_000).step_by(if d <= 3 { 1 } else { 7 }) {
            let t = extremal_tree(TreeClassParams::new(n, d).unwrap()).unwrap();
            assert!(t.max_degree() <= d + 1, "n={n} d={d}");
        }
    }
}

#[test]
fn n7_d2_is_the_unique_hosoya_minimizer() {
    let star = extremal_tree(TreeClassParams::new(7, 2).unwrap()).unwrap();
    let target = canonical_code(&star);
    let values: Vec<_> =
        enumerate_trees(&EnumerationParams::new(7, 3)).unwrap().map(|t| (hosoya(&t), canonical_code(&t))).collect();
    let min = values.iter().map(|(h, _)| h).min().unwrap();
    let winners: Vec<_> = values.iter().filter(|(h, _)| h == min).collect();
    assert_eq!(winners.len(), 1);
    assert_eq!(winners[0].1, target);
}

#[test]
fn outline_of_extremal_trees() {
    // the minimal special leaf occurs at most d - 1 times, all on one vertex
    for d in 2..=5 {
        for n in 2..=400 {
            let t = extremal_tree(TreeClassParams::new(n, d).unwrap()).unwrap();
            let o = outline_free(&t, d).unwrap_or_else(|e| panic!("n={n} d={d}: {e}\n{}", t.to_edge_list()));
            o.check(d).unwrap();
            if o.nodes.len() == 2 {
                // two special leaves joined by an edge, nothing to anchor on
                continue;
            }
            let (j, count, shared) = o.minimal_leaf_cluster().unwrap();
            assert!(count < d, "n={n} d={d} j={j} count={count}");
            assert!(shared, "n={n} d={d} j={j}");
        }
    }
}

#[test]
fn outline_of_complete_rooted_tree() {
    for d in 2..=4 {
        for h in 0..=4 {
            let o = outline_rooted(&complete_dary(d, h), d).unwrap();
            assert_eq!(o.leaves(), vec![(h, None)]);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn canonical_code_ignores_labels(n in 1usize..40, max_degree in 2usize..6, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_free_tree(&mut rng, n, max_degree);
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        prop_assert_eq!(canonical_code(&t), canonical_code(&t.relabel(&perm)));
    }

    #[test]
    fn serialization_round_trips(n in 1usize..60, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_free_tree(&mut rng, n, 5);
        prop_assert_eq!(FreeTree::parse(&t.to_edge_list()).unwrap(), t);
    }

    #[test]
    fn rooting_does_not_change_the_free_tree(n in 1usize..40, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = random_rooted_tree(&mut rng, n, 3);
        let free = r.to_free().unwrap();
        prop_assert!(r.max_children() <= 3);
        let root = (seed as usize) % n;
        let again = etrees::RootedTree::from_free(&free, root).to_free().unwrap();
        prop_assert_eq!(canonical_code(&free), canonical_code(&again));
    }
}
