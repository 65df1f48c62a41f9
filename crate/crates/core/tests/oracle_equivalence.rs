mod common;

use mds_core::dag::{build_dag, evaluate_counts, prune};
use mds_core::enumerate::{enumerate, Engine};
use mds_core::oracle::{brute_force_mds, is_minimal_by_subsets, is_minimal_dominating};
use mds_core::{count_mds, decompose, parse_tree, reduce_twins, vector_of, Tree};
use num_bigint::BigUint;

use common::{all_trees, catalog, random_trees};

#[test]
fn catalog_shape() {
    let sizes: Vec<usize> = (1..=8).map(|n| all_trees(8).iter().filter(|t| t.n() == n).count()).collect();
    assert_eq!(sizes, vec![1, 1, 1, 2, 3, 6, 11, 23]);
    assert!(catalog().len() >= 200);
}

#[test]
fn count_matches_oracle() {
    for t in catalog() {
        let sets = brute_force_mds(&t).unwrap();
        assert_eq!(count_mds(&t), BigUint::from(sets.len()), "{t}");
        assert_eq!(vector_of(&t, 0).unwrap().total(), count_mds(&t));
    }
}

#[test]
fn root_independence() {
    for t in catalog().into_iter().filter(|t| t.n() <= 12) {
        let c = count_mds(&t);
        for r in 0..t.n() {
            assert_eq!(vector_of(&t, r).unwrap().total(), c, "root {r} of {t}");
        }
    }
}

#[test]
fn engines_match_oracle() {
    for t in catalog() {
        let oracle = brute_force_mds(&t).unwrap();
        let (dag, _) = prune(&build_dag(&decompose(&t, 0).unwrap())).unwrap();
        assert_eq!(evaluate_counts(&dag)[dag.target], BigUint::from(oracle.len()));
        for engine in Engine::ALL {
            let stream = enumerate(&dag, engine).unwrap();
            assert_eq!(stream.solutions.len(), oracle.len(), "{engine} on {t}");
            let mut got = stream.solutions.clone();
            got.sort();
            assert_eq!(got, oracle, "{engine} on {t}");
            assert_eq!(enumerate(&dag, engine).unwrap(), stream, "{engine} is not repeatable");
        }
    }
}

#[test]
fn emitted_sets_are_minimal_dominating() {
    for t in catalog().into_iter().filter(|t| t.n() <= 12) {
        let (dag, _) = prune(&build_dag(&decompose(&t, t.n() - 1).unwrap())).unwrap();
        for engine in Engine::ALL {
            for s in enumerate(&dag, engine).unwrap().solutions {
                assert!(is_minimal_dominating(&t, &s), "{engine} emitted {s:?} on {t}");
            }
        }
    }
}

#[test]
fn characterizations_agree() {
    let trees: Vec<Tree> = all_trees(8).into_iter().chain(random_trees(5, 30, 9, 10)).collect();
    for t in trees {
        for mask in 0u32..(1 << t.n()) {
            let set: Vec<usize> = (0..t.n()).filter(|&v| mask >> v & 1 == 1).collect();
            assert_eq!(is_minimal_dominating(&t, &set), is_minimal_by_subsets(&t, &set), "{set:?} on {t}");
        }
    }
}

#[test]
fn leaf_observations() {
    for t in catalog().into_iter().filter(|t| t.n() >= 3) {
        for s in brute_force_mds(&t).unwrap() {
            let member = |v: usize| s.binary_search(&v).is_ok();
            for a in (0..t.n()).filter(|&a| t.is_leaf(a)) {
                let b = t.neighbors(a)[0];
                assert!(member(a) != member(b), "leaf {a} in {s:?} on {t}");
            }
            for group in reduce_twins(&t).groups {
                assert!(group.iter().all(|&v| member(v)) || group.iter().all(|&v| !member(v)));
            }
        }
    }
}

#[test]
fn twin_leaf_invariance() {
    for t in catalog().into_iter().filter(|t| t.n() >= 3 && t.n() <= 15) {
        let a = (0..t.n()).find(|&v| t.is_leaf(v)).unwrap();
        let b = t.neighbors(a)[0];
        let mut edges = t.edges().to_vec();
        edges.push((b, t.n()));
        let bigger = Tree::new(t.n() + 1, edges).unwrap();
        assert_eq!(count_mds(&bigger), count_mds(&t), "{t}");
        assert_eq!(reduce_twins(&bigger).tree.n(), reduce_twins(&t).tree.n());
    }
}

#[test]
fn joining_at_leaf_neighbours_multiplies() {
    let trees: Vec<Tree> = random_trees(11, 40, 2, 10);
    for pair in trees.chunks(2) {
        let (t1, t2) = (&pair[0], &pair[1]);
        let b1 = t1.neighbors((0..t1.n()).find(|&v| t1.is_leaf(v)).unwrap())[0];
        let b2 = t2.neighbors((0..t2.n()).find(|&v| t2.is_leaf(v)).unwrap())[0];
        let off = t1.n();
        let mut edges = t1.edges().to_vec();
        edges.extend(t2.edges().iter().map(|&(u, v)| (u + off, v + off)));
        edges.push((b1, b2 + off));
        let joined = Tree::new(off + t2.n(), edges).unwrap();
        assert_eq!(count_mds(&joined), count_mds(t1) * count_mds(t2));
    }
}

#[test]
fn tree_format_round_trip() {
    for t in catalog() {
        assert_eq!(parse_tree(&t.render()).unwrap(), t);
        let once = reduce_twins(&t).tree;
        assert_eq!(reduce_twins(&once).tree, once);
    }
}

#[test]
fn plans_cover_every_vertex() {
    for t in catalog().into_iter().filter(|t| t.n() <= 10) {
        for root in 0..t.n() {
            let plan = decompose(&t, root).unwrap();
            assert_eq!(plan.steps.len(), t.n() - 1);
            let mut merged = vec![false; t.n()];
            for s in &plan.steps {
                assert!(!merged[s.right] && !merged[s.left], "part reused after merging");
                merged[s.right] = true;
            }
            let last = plan.operand_sizes().last().map_or(1, |(a, b)| a + b);
            assert_eq!(last, t.n());
            assert!(!merged[root]);
        }
    }
}
