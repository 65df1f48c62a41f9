//! Expression DAG of unions and products that represents every minimal
//! dominating set of a tree.
//!
//! Each part of a composition plan owns six nodes, one per category. A vertex
//! contributes basis nodes `S -> {v}`, `f -> {}` and four null nodes. A step
//! wires the 20 products of `⋆` and chains the sums of each category from left
//! to right in the order of [`STAR_TERMS`]. Three final unions merge `G`, `S`,
//! `d` and `p` of the root part into the target.

use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::algebra::{D, G, P, S, STAR_TERMS};
use crate::error::DagError;
use crate::tree::CompositionPlan;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeKind {
    /// `{{v}}`, category `S`.
    BasisIn(usize),
    /// `{{}}` over vertex `v`, category `f`.
    BasisOut(usize),
    /// The empty family.
    BasisNull(usize),
    Union(usize, usize),
    Product(usize, usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DagNode {
    pub kind: NodeKind,
    /// Category the node contributes to, or `None` for the final merge.
    pub category: Option<usize>,
    /// Number of vertices in the associated vertex set.
    pub span: usize,
}

impl DagNode {
    pub fn children(&self) -> Option<(usize, usize)> {
        match self.kind {
            NodeKind::Union(a, b) | NodeKind::Product(a, b) => Some((a, b)),
            _ => None,
        }
    }

    pub fn is_union(&self) -> bool {
        matches!(self.kind, NodeKind::Union(..))
    }
}

/// Nodes are stored children-first, so arena order is a topological order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpressionDag {
    pub n: usize,
    pub nodes: Vec<DagNode>,
    pub target: usize,
}

/// Number of nodes built for a tree on `n` vertices.
pub fn expected_node_count(n: usize) -> usize {
    6 * n + 34 * (n - 1) + 3
}

impl ExpressionDag {
    fn push(&mut self, kind: NodeKind, category: Option<usize>, span: usize) -> usize {
        self.nodes.push(DagNode { kind, category, span });
        self.nodes.len() - 1
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// One line per node: `id kind child1 child2 count`. Basis nodes print
    /// their kind as `S@v`, `f@v` or `null@v` and `-` for both children.
    pub fn dump(&self, counts: &[BigUint]) -> String {
        let mut out = String::new();
        for (id, node) in self.nodes.iter().enumerate() {
            let (kind, c1, c2) = match node.kind {
                NodeKind::BasisIn(v) => (format!("S@{v}"), "-".to_string(), "-".to_string()),
                NodeKind::BasisOut(v) => (format!("f@{v}"), "-".to_string(), "-".to_string()),
                NodeKind::BasisNull(v) => (format!("null@{v}"), "-".to_string(), "-".to_string()),
                NodeKind::Union(a, b) => ("union".to_string(), a.to_string(), b.to_string()),
                NodeKind::Product(a, b) => ("product".to_string(), a.to_string(), b.to_string()),
            };
            let _ = writeln!(out, "{id} {kind} {c1} {c2} {}", counts[id]);
        }
        out
    }
}

/// Builds the unpruned DAG for a composition plan.
pub fn build_dag(plan: &CompositionPlan) -> ExpressionDag {
    let n = plan.n;
    let mut dag = ExpressionDag { n, nodes: Vec::with_capacity(expected_node_count(n)), target: 0 };
    let mut handles: Vec<[usize; 6]> = Vec::with_capacity(n);
    for v in 0..n {
        let mut h = [0; 6];
        for (c, slot) in h.iter_mut().enumerate() {
            let kind = match c {
                S => NodeKind::BasisIn(v),
                crate::algebra::F => NodeKind::BasisOut(v),
                _ => NodeKind::BasisNull(v),
            };
            *slot = dag.push(kind, Some(c), 1);
        }
        handles.push(h);
    }
    let mut span = vec![1usize; n];
    for step in &plan.steps {
        let a = handles[step.left];
        let b = handles[step.right];
        let joined = span[step.left] + span[step.right];
        let mut out = [0; 6];
        for (c, terms) in STAR_TERMS.iter().enumerate() {
            let products: Vec<usize> = terms
                .iter()
                .map(|&(i, j)| dag.push(NodeKind::Product(a[i], b[j]), Some(c), joined))
                .collect();
            let mut acc = products[0];
            for &p in &products[1..] {
                acc = dag.push(NodeKind::Union(acc, p), Some(c), joined);
            }
            out[c] = acc;
        }
        handles[step.left] = out;
        span[step.left] = joined;
    }
    let h = handles[plan.root];
    let u1 = dag.push(NodeKind::Union(h[G], h[S]), None, n);
    let u2 = dag.push(NodeKind::Union(u1, h[D]), None, n);
    dag.target = dag.push(NodeKind::Union(u2, h[P]), None, n);
    dag
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PruneStats {
    pub empty: usize,
    pub unreachable: usize,
    pub collapsed: usize,
}

/// Removes empty families, unreachable nodes and single-child unions.
///
/// The result has no null basis nodes, every node represents a nonempty
/// family, and every node other than the target has a predecessor.
pub fn prune(dag: &ExpressionDag) -> Result<(ExpressionDag, PruneStats), DagError> {
    let len = dag.nodes.len();
    let mut stats = PruneStats::default();

    // upward sweep: mark empty families
    let mut empty = vec![false; len];
    for (i, node) in dag.nodes.iter().enumerate() {
        empty[i] = match node.kind {
            NodeKind::BasisNull(_) => true,
            NodeKind::BasisIn(_) | NodeKind::BasisOut(_) => false,
            NodeKind::Union(a, b) => empty[a] && empty[b],
            NodeKind::Product(a, b) => empty[a] || empty[b],
        };
    }
    stats.empty = empty.iter().filter(|&&e| e).count();
    if empty[dag.target] {
        return Err(DagError::EmptyTarget);
    }

    // clean-up: a union left with one child is replaced by that child
    let mut alias: Vec<usize> = (0..len).collect();
    for (i, node) in dag.nodes.iter().enumerate() {
        if let NodeKind::Union(a, b) = node.kind {
            if empty[a] != empty[b] {
                alias[i] = if empty[a] { alias[b] } else { alias[a] };
            }
        }
    }

    // downward sweep: keep what the target reaches through live arcs
    let mut reach = vec![false; len];
    let root = alias[dag.target];
    reach[root] = true;
    for i in (0..len).rev() {
        if !reach[i] {
            continue;
        }
        if let Some((a, b)) = dag.nodes[i].children() {
            for c in [a, b] {
                if !empty[c] {
                    reach[alias[c]] = true;
                }
            }
        }
    }
    for i in 0..len {
        if !empty[i] {
            if alias[i] != i {
                stats.collapsed += 1;
            } else if !reach[i] {
                stats.unreachable += 1;
            }
        }
    }

    let mut new_id = vec![usize::MAX; len];
    let mut out = ExpressionDag { n: dag.n, nodes: Vec::new(), target: 0 };
    for (i, node) in dag.nodes.iter().enumerate() {
        if !reach[i] {
            continue;
        }
        let kind = match node.kind {
            NodeKind::Union(a, b) => NodeKind::Union(new_id[alias[a]], new_id[alias[b]]),
            NodeKind::Product(a, b) => NodeKind::Product(new_id[alias[a]], new_id[alias[b]]),
            k => k,
        };
        new_id[i] = out.push(kind, node.category, node.span);
    }
    out.target = new_id[root];
    Ok((out, stats))
}

/// Reads the DAG as an arithmetic circuit: basis 1 (null 0), union sum,
/// product product.
pub fn evaluate_counts(dag: &ExpressionDag) -> Vec<BigUint> {
    let mut val: Vec<BigUint> = Vec::with_capacity(dag.nodes.len());
    for node in &dag.nodes {
        let v = match node.kind {
            NodeKind::BasisIn(_) | NodeKind::BasisOut(_) => BigUint::one(),
            NodeKind::BasisNull(_) => BigUint::zero(),
            NodeKind::Union(a, b) => &val[a] + &val[b],
            NodeKind::Product(a, b) => &val[a] * &val[b],
        };
        val.push(v);
    }
    val
}

/// Length of the longest directed path made only of union nodes.
pub fn max_union_chain(dag: &ExpressionDag) -> usize {
    let mut chain = vec![0usize; dag.nodes.len()];
    for (i, node) in dag.nodes.iter().enumerate() {
        if let NodeKind::Union(a, b) = node.kind {
            chain[i] = 1 + chain[a].max(chain[b]);
        }
    }
    chain.into_iter().max().unwrap_or(0)
}

/// `c1 / (c1 + c2)` without overflowing `f64`.
fn share(c1: &BigUint, c2: &BigUint) -> f64 {
    let bits = c1.bits().max(c2.bits());
    let shift = bits.saturating_sub(60);
    let a = (c1 >> shift).to_f64().unwrap_or(0.0);
    let b = (c2 >> shift).to_f64().unwrap_or(0.0);
    if a + b == 0.0 {
        0.5
    } else {
        a / (a + b)
    }
}

/// Estimated average visits per solution of each node when its product
/// children run as outer (first) and inner (second) loop.
pub fn cost_estimates(dag: &ExpressionDag, counts: &[BigUint]) -> Vec<f64> {
    let mut t = vec![0.0f64; dag.nodes.len()];
    for (i, node) in dag.nodes.iter().enumerate() {
        t[i] = match node.kind {
            NodeKind::BasisIn(_) | NodeKind::BasisOut(_) | NodeKind::BasisNull(_) => 1.0,
            NodeKind::Union(a, b) => {
                let w = share(&counts[a], &counts[b]);
                w * (t[a] + 1.0) + (1.0 - w) * (t[b] + 1.0)
            }
            NodeKind::Product(a, b) => 1.0 + t[a] / counts[b].to_f64().unwrap_or(f64::INFINITY) + t[b],
        };
    }
    t
}

/// Swaps the children of every product node whose swapped orientation has a
/// strictly smaller cost estimate. The represented family does not change.
pub fn reorder_children(dag: &ExpressionDag, counts: &[BigUint]) -> ExpressionDag {
    let mut out = dag.clone();
    let mut t = vec![0.0f64; dag.nodes.len()];
    for i in 0..out.nodes.len() {
        t[i] = match out.nodes[i].kind {
            NodeKind::BasisIn(_) | NodeKind::BasisOut(_) | NodeKind::BasisNull(_) => 1.0,
            NodeKind::Union(a, b) => {
                let w = share(&counts[a], &counts[b]);
                w * (t[a] + 1.0) + (1.0 - w) * (t[b] + 1.0)
            }
            NodeKind::Product(a, b) => {
                let ca = counts[a].to_f64().unwrap_or(f64::INFINITY);
                let cb = counts[b].to_f64().unwrap_or(f64::INFINITY);
                let keep = 1.0 + t[a] / cb + t[b];
                let swapped = 1.0 + t[b] / ca + t[a];
                if swapped < keep {
                    out.nodes[i].kind = NodeKind::Product(b, a);
                    swapped
                } else {
                    keep
                }
            }
        };
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::{decompose, Tree};

    fn pruned(t: &Tree) -> ExpressionDag {
        prune(&build_dag(&decompose(t, 0).unwrap())).unwrap().0
    }

    #[test]
    fn node_counts() {
        for n in 1..=6 {
            let dag = build_dag(&decompose(&Tree::path(n), 0).unwrap());
            assert_eq!(dag.len(), expected_node_count(n));
        }
        assert_eq!(expected_node_count(1), 9);
        assert_eq!(expected_node_count(2), 49);
    }

    #[test]
    fn singleton_target() {
        let dag = pruned(&Tree::singleton());
        assert_eq!(dag.len(), 1);
        assert_eq!(dag.nodes[dag.target].kind, NodeKind::BasisIn(0));
        assert_eq!(evaluate_counts(&dag)[dag.target], BigUint::one());
    }

    #[test]
    fn pruned_counts_positive() {
        let dag = pruned(&Tree::path(2));
        let c = evaluate_counts(&dag);
        assert_eq!(c[dag.target], BigUint::from(2u32));
        assert!(c.iter().all(|x| !x.is_zero()));
        assert!(dag.nodes.iter().all(|n| !matches!(n.kind, NodeKind::BasisNull(_))));
    }

    #[test]
    fn union_chain_bound() {
        let dag = build_dag(&decompose(&Tree::path(10), 0).unwrap());
        assert!(max_union_chain(&dag) <= 8);
    }

    #[test]
    fn reorder_prefers_cheap_inner_loop() {
        let mut dag = ExpressionDag { n: 2, nodes: Vec::new(), target: 0 };
        let mut add = |kind| {
            dag.nodes.push(DagNode { kind, category: None, span: 1 });
            dag.nodes.len() - 1
        };
        let a_in = add(NodeKind::BasisIn(0));
        let a_out = add(NodeKind::BasisOut(0));
        let a = add(NodeKind::Union(a_in, a_out));
        let b = add(NodeKind::BasisIn(1));
        let prod = add(NodeKind::Product(a, b));
        let sym = add(NodeKind::Product(a_in, b));
        dag.target = prod;
        let counts = evaluate_counts(&dag);
        let re = reorder_children(&dag, &counts);
        // the two-solution child becomes the inner loop
        assert_eq!(re.nodes[prod].kind, NodeKind::Product(b, a));
        assert_eq!(re.nodes[sym].kind, NodeKind::Product(a_in, b));
        assert_eq!(evaluate_counts(&re)[prod], counts[prod]);
        let t = cost_estimates(&re, &counts);
        assert!(t[prod] < cost_estimates(&dag, &counts)[prod]);
    }

    #[test]
    fn dump_lines() {
        let dag = pruned(&Tree::path(2));
        let text = dag.dump(&evaluate_counts(&dag));
        assert_eq!(text.lines().count(), dag.len());
        assert!(text.lines().last().unwrap().ends_with(" 2"));
    }
}
