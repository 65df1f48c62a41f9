//! Named tree families. Every generator returns vertices numbered by BFS from
//! the family's natural root, which becomes vertex 0.

use crate::tree::Tree;

/// Builds a tree from edges over arbitrary ids `0..n`, then renumbers by BFS
/// from `root`.
fn finish(n: usize, edges: Vec<(usize, usize)>, root: usize) -> Tree {
    Tree::new(n, edges).expect("generator produced a tree").relabel_bfs(root)
}

/// Path on `k` spine vertices, each with one pendant leaf; `n = 2k`.
pub fn comb(k: usize) -> Tree {
    assert!(k >= 1, "comb needs at least one tooth");
    generalized_comb(&Tree::path(k))
}

/// Attaches one new leaf to every vertex of `t`.
pub fn generalized_comb(t: &Tree) -> Tree {
    let n = t.n();
    let mut edges = t.edges().to_vec();
    edges.extend((0..n).map(|v| (v, n + v)));
    finish(2 * n, edges, 0)
}

/// Twin-free tree on `3k - 1` vertices with `2^k` minimal dominating sets.
///
/// The spine alternates tooth vertices and connectors, `t1 c1 t2 ... ck-1 tk`,
/// and every tooth vertex carries one leaf. Each set contains exactly one of
/// every tooth pair and the connectors are then forced.
pub fn extended_comb(k: usize) -> Tree {
    assert!(k >= 1, "extended comb needs at least one tooth");
    let spine = 2 * k - 1;
    let mut edges: Vec<(usize, usize)> = (1..spine).map(|v| (v - 1, v)).collect();
    for i in 0..k {
        edges.push((2 * i, spine + i));
    }
    finish(spine + k, edges, 0)
}

/// Centre with six pendant paths of two edges; `n = 13`.
pub fn snowflake() -> Tree {
    let mut edges = Vec::with_capacity(12);
    for i in 1..=6 {
        edges.push((0, i));
        edges.push((i, i + 6));
    }
    finish(13, edges, 0)
}

fn snowflake_cluster(k: usize, with_extra_leaf: bool) -> Tree {
    // vertex 0 is the hub; snowflake j occupies ids base..base+13 with its
    // centre at base and outer leaf base+7 attached to the hub
    let mut edges = Vec::new();
    let mut next = 1;
    if with_extra_leaf {
        edges.push((0, 1));
        next = 2;
    }
    for _ in 0..k {
        let base = next;
        for i in 1..=6 {
            edges.push((base, base + i));
            edges.push((base + i, base + i + 6));
        }
        edges.push((0, base + 7));
        next += 13;
    }
    finish(next, edges, 0)
}

/// `k` snowflakes joined through one outer leaf each to a hub that also has a
/// pendant leaf; `n = 13k + 2`.
pub fn star_of_snowflakes(k: usize) -> Tree {
    snowflake_cluster(k, true)
}

/// [`star_of_snowflakes`] without the hub's pendant leaf; `n = 13k + 1`.
pub fn record_tree(k: usize) -> Tree {
    snowflake_cluster(k, false)
}

/// `K_{1,n-1}` centred at 0.
pub fn star(n: usize) -> Tree {
    assert!(n >= 1, "star needs a vertex");
    Tree::new(n, (1..n).map(|v| (0, v))).expect("star is a tree")
}

/// Path of `k` centres, each carrying `cluster_size` pendant leaves;
/// `n = k * (cluster_size + 1)`.
pub fn chain_of_star_clusters(k: usize, cluster_size: usize) -> Tree {
    assert!(k >= 1 && cluster_size >= 1, "need at least one cluster of one leaf");
    let mut edges: Vec<(usize, usize)> = (1..k).map(|v| (v - 1, v)).collect();
    let mut next = k;
    for c in 0..k {
        for _ in 0..cluster_size {
            edges.push((c, next));
            next += 1;
        }
    }
    finish(next, edges, 0)
}
