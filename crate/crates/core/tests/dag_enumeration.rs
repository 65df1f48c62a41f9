mod common;

use mds_core::dag::{build_dag, evaluate_counts, expected_node_count, max_union_chain, prune, reorder_children, ExpressionDag};
use mds_core::enumerate::{delay_profile, enumerate, run, Engine, SolutionStream};
use mds_core::generators::comb;
use mds_core::{count_mds, decompose, Tree};

use common::{catalog, random_trees};

fn pruned(t: &Tree) -> ExpressionDag {
    prune(&build_dag(&decompose(t, 0).unwrap())).unwrap().0
}

#[test]
fn node_count_formula() {
    for t in random_trees(3, 100, 1, 100).iter().chain(&[Tree::path(100), comb(50)]) {
        let dag = build_dag(&decompose(t, 0).unwrap());
        assert_eq!(dag.len(), expected_node_count(t.n()));
        assert_eq!(dag.len(), 6 * t.n() + 34 * (t.n() - 1) + 3);
        assert!(max_union_chain(&dag) <= 8);
    }
}

#[test]
fn pruned_dags_are_useful() {
    for t in catalog().into_iter().filter(|t| t.n() <= 12) {
        let dag = pruned(&t);
        let counts = evaluate_counts(&dag);
        assert_eq!(counts[dag.target], count_mds(&t));
        assert!(counts.iter().all(|c| *c >= 1u32.into()));
        let mut has_parent = vec![false; dag.len()];
        for node in &dag.nodes {
            if let Some((a, b)) = node.children() {
                assert!(a < dag.len() && b < dag.len());
                has_parent[a] = true;
                has_parent[b] = true;
            }
        }
        for (u, node) in dag.nodes.iter().enumerate() {
            if let Some((a, b)) = node.children() {
                assert!(a < u && b < u, "children must precede their parent");
            }
            assert!(u == dag.target || has_parent[u], "node {u} is unreachable");
        }
        assert!(max_union_chain(&dag) <= 8);
    }
}

#[test]
fn reordering_keeps_the_family() {
    for t in catalog().into_iter().filter(|t| t.n() <= 10) {
        let dag = pruned(&t);
        let counts = evaluate_counts(&dag);
        let swapped = reorder_children(&dag, &counts);
        assert_eq!(evaluate_counts(&swapped)[swapped.target], counts[dag.target]);
        let mut a = enumerate(&dag, Engine::Enum2).unwrap().solutions;
        let mut b = enumerate(&swapped, Engine::Enum2).unwrap().solutions;
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }
}

#[test]
fn first_visit_reaches_every_vertex_once() {
    for t in catalog() {
        let dag = pruned(&t);
        let stream = enumerate(&dag, Engine::Enum2).unwrap();
        assert_eq!(stream.intervals[0].basis, t.n() as u64, "{t}");
    }
}

/// Paths and combs of a few hundred vertices have astronomically many
/// solutions, so delays are measured over a fixed prefix of the stream.
const PREFIX: usize = 20_000;

fn prefix(t: &Tree, engine: Engine) -> SolutionStream {
    let dag = pruned(t);
    let mut e = engine.start(&dag);
    run(e.as_mut(), Some(PREFIX)).unwrap()
}

fn max_delay(t: &Tree, engine: Engine) -> u64 {
    delay_profile(&prefix(t, engine)).max
}

#[test]
fn linear_delay() {
    let families: [fn(usize) -> Tree; 2] = [Tree::path, |n| comb(n / 2)];
    for family in families {
        for engine in Engine::ALL {
            let mut prev: Option<u64> = None;
            for n in [25, 50, 100, 200] {
                let t = family(n);
                let d = max_delay(&t, engine);
                assert!(d <= 64 * t.n() as u64, "{engine} n = {n}: delay {d}");
                if let Some(p) = prev {
                    assert!(d as f64 / p as f64 <= 4.0, "{engine} n = {n}: {p} -> {d}");
                }
                prev = Some(d);
            }
        }
    }
}

#[test]
fn enum1_product_visits_per_emission() {
    let trees = [Tree::path(25), Tree::path(50), comb(12), comb(25)];
    for t in trees.iter().chain(&random_trees(9, 20, 2, 50)) {
        let stream = prefix(t, Engine::Enum1);
        let bound = 2 * (t.n() as u64 - 1);
        for (i, s) in stream.intervals.iter().enumerate() {
            assert!(s.products <= bound, "emission {i}: {} products, n = {}", s.products, t.n());
        }
    }
}
