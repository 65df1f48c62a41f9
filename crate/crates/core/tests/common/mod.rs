//! Shared test catalog: every tree up to 8 vertices up to isomorphism, random
//! trees from fixed seeds, and the named families.

#![allow(dead_code)]

use std::collections::BTreeSet;

use mds_core::generators;
use mds_core::Tree;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// AHU encoding of the subtree at `v` hanging from `parent`.
fn ahu(t: &Tree, v: usize, parent: Option<usize>) -> String {
    let mut kids: Vec<String> = t.neighbors(v).iter().filter(|&&c| Some(c) != parent).map(|&c| ahu(t, c, Some(v))).collect();
    kids.sort();
    format!("({})", kids.concat())
}

fn centers(t: &Tree) -> Vec<usize> {
    let n = t.n();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut deg: Vec<usize> = (0..n).map(|v| t.degree(v)).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| deg[v] == 1).collect();
    let mut left = n;
    while left > 2 {
        left -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            for &u in t.neighbors(v) {
                deg[u] -= 1;
                if deg[u] == 1 {
                    next.push(u);
                }
            }
        }
        layer = next;
    }
    layer
}

/// Isomorphism-invariant code of an unrooted tree.
pub fn canonical(t: &Tree) -> String {
    centers(t).into_iter().map(|c| ahu(t, c, None)).min().unwrap_or_default()
}

/// All trees on `1..=max_n` vertices, one per isomorphism class.
pub fn all_trees(max_n: usize) -> Vec<Tree> {
    let mut out = vec![Tree::singleton()];
    let mut level = vec![Tree::singleton()];
    for n in 2..=max_n {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for t in &level {
            for v in 0..t.n() {
                let mut edges = t.edges().to_vec();
                edges.push((v, n - 1));
                let grown = Tree::new(n, edges).unwrap();
                if seen.insert(canonical(&grown)) {
                    next.push(grown);
                }
            }
        }
        out.extend(next.iter().cloned());
        level = next;
    }
    out
}

/// Random recursive tree on `n` vertices with shuffled labels.
pub fn random_tree(rng: &mut ChaCha8Rng, n: usize) -> Tree {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    let edges: Vec<(usize, usize)> = (1..n).map(|v| (perm[rng.gen_range(0..v)], perm[v])).collect();
    Tree::new(n, edges).unwrap()
}

pub fn random_trees(seed: u64, count: usize, min_n: usize, max_n: usize) -> Vec<Tree> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(min_n..=max_n);
            random_tree(&mut rng, n)
        })
        .collect()
}

pub fn families() -> Vec<Tree> {
    let mut out = Vec::new();
    out.extend((1..=14).map(Tree::path));
    out.extend((2..=12).map(generators::star));
    out.extend((1..=7).map(generators::comb));
    out.extend((1..=5).map(generators::extended_comb));
    out.push(generators::snowflake());
    out.push(generators::star_of_snowflakes(1));
    out.push(generators::record_tree(1));
    for k in 1..=3 {
        for m in 1..=3 {
            out.push(generators::chain_of_star_clusters(k, m));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in 1..=7 {
        out.push(generators::generalized_comb(&random_tree(&mut rng, n)));
    }
    out
}

/// At least 200 trees of at most 16 vertices.
pub fn catalog() -> Vec<Tree> {
    let mut out = all_trees(8);
    out.extend(random_trees(2024, 120, 9, 16));
    out.extend(families().into_iter().filter(|t| t.n() <= 16));
    out
}
