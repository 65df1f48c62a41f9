//! Labeled trees, the edge-list file format, and composition plans.

use std::collections::VecDeque;
use std::fmt;

use crate::error::TreeError;

/// An undirected tree on the vertices `0..n`.
///
/// Edges are stored normalized as `(min, max)` and sorted, so two trees with
/// the same edge set compare equal regardless of how they were built.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tree {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl Tree {
    /// Validates and builds a tree from an explicit vertex count and edge list.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, TreeError> {
        if n == 0 {
            return Err(TreeError::EmptyInput);
        }
        let mut norm: Vec<(usize, usize)> = Vec::with_capacity(n - 1);
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(TreeError::NotATree(format!("edge {u} {v} uses an id outside 0..{n}")));
            }
            if u == v {
                return Err(TreeError::NotATree(format!("self loop at {u}")));
            }
            norm.push((u.min(v), u.max(v)));
        }
        if norm.len() != n - 1 {
            return Err(TreeError::NotATree(format!(
                "expected {} edges for {n} vertices, found {}",
                n - 1,
                norm.len()
            )));
        }
        norm.sort_unstable();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &norm {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }

        // n-1 edges plus connectivity rules out cycles and multi-edges.
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut reached = 1;
        while let Some(u) = stack.pop() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    reached += 1;
                    stack.push(v);
                }
            }
        }
        if reached != n {
            return Err(TreeError::NotATree("graph is disconnected or has a cycle".into()));
        }
        Ok(Self { n, edges: norm, adj })
    }

    pub fn singleton() -> Self {
        Self::new(1, []).expect("singleton is a tree")
    }

    /// Path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Self {
        Self::new(n, (1..n).map(|v| (v - 1, v))).expect("path is a tree")
    }

    /// Builds a tree from a parent array where `parent[v] < v` for every `v > 0`.
    pub fn from_parents(parents: &[usize]) -> Result<Self, TreeError> {
        let n = parents.len() + 1;
        Self::new(n, parents.iter().enumerate().map(|(i, &p)| (p, i + 1)))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Neighbours of `v` in ascending order.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.adj[v].len() == 1
    }

    pub fn check_root(&self, root: usize) -> Result<(), TreeError> {
        if root < self.n {
            Ok(())
        } else {
            Err(TreeError::InvalidRoot { root, n: self.n })
        }
    }

    /// Vertices in breadth-first order from `root`, neighbours visited in
    /// ascending order, together with each vertex's parent.
    pub fn bfs(&self, root: usize) -> (Vec<usize>, Vec<Option<usize>>) {
        let mut order = Vec::with_capacity(self.n);
        let mut parent = vec![None; self.n];
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([root]);
        seen[root] = true;
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for &v in &self.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    parent[v] = Some(u);
                    queue.push_back(v);
                }
            }
        }
        (order, parent)
    }

    /// Relabels vertices so that `root` becomes 0 and the rest follow in BFS order.
    pub fn relabel_bfs(&self, root: usize) -> Self {
        let (order, _) = self.bfs(root);
        let mut label = vec![0; self.n];
        for (i, &v) in order.iter().enumerate() {
            label[v] = i;
        }
        Self::new(self.n, self.edges.iter().map(|&(u, v)| (label[u], label[v]))).expect("relabeling preserves trees")
    }

    /// Renders the tree in the edge-list file format.
    pub fn render(&self) -> String {
        let mut out = format!("n {}\n", self.n);
        for &(u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Parses the edge-list format: an optional `n N` header, then one `u v` edge
/// per line. Blank lines and lines starting with `#` are ignored.
pub fn parse_tree(text: &str) -> Result<Tree, TreeError> {
    let mut declared: Option<usize> = None;
    let mut edges = Vec::new();
    let mut saw_content = false;
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let lineno = idx + 1;
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields[0] == "n" {
            if saw_content {
                return Err(TreeError::Parse { line: lineno, msg: "`n` header must come first".into() });
            }
            if fields.len() != 2 {
                return Err(TreeError::Parse { line: lineno, msg: "expected `n <count>`".into() });
            }
            let n = fields[1]
                .parse::<usize>()
                .map_err(|e| TreeError::Parse { line: lineno, msg: format!("bad vertex count: {e}") })?;
            declared = Some(n);
            saw_content = true;
            continue;
        }
        saw_content = true;
        if fields.len() != 2 {
            return Err(TreeError::Parse { line: lineno, msg: format!("expected `u v`, found {line:?}") });
        }
        let parse_id = |s: &str| {
            s.parse::<usize>()
                .map_err(|e| TreeError::Parse { line: lineno, msg: format!("bad vertex id {s:?}: {e}") })
        };
        edges.push((parse_id(fields[0])?, parse_id(fields[1])?));
    }
    let n = match declared {
        Some(n) => n,
        None if edges.is_empty() => return Err(TreeError::EmptyInput),
        None => edges.iter().map(|&(u, v)| u.max(v)).max().unwrap_or(0) + 1,
    };
    Tree::new(n, edges)
}

/// One composition step: the subtree currently accumulated at `left` absorbs
/// the finished subtree rooted at its child `right` across the edge between them.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Step {
    pub left: usize,
    pub right: usize,
}

/// A binary build order for a rooted tree.
///
/// Every vertex starts as a single-vertex part. Steps are listed in evaluation
/// order; when step `(r, s)` runs, the part at `s` is complete and is merged
/// into the part at `r`. After the last step the part at `root` is the tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositionPlan {
    pub n: usize,
    pub root: usize,
    pub steps: Vec<Step>,
}

impl CompositionPlan {
    /// Sizes of the two operands of every step, in step order.
    pub fn operand_sizes(&self) -> Vec<(usize, usize)> {
        let mut size = vec![1usize; self.n];
        self.steps
            .iter()
            .map(|s| {
                let pair = (size[s.left], size[s.right]);
                size[s.left] += size[s.right];
                pair
            })
            .collect()
    }
}

/// Decomposes `t` rooted at `root`.
///
/// At each vertex the edge to the lowest-numbered child is split off first, so
/// the part at `r` with children `c1 < ... < ck` is
/// `(((r * T(ck)) * T(ck-1)) ... ) * T(c1)`.
pub fn decompose(t: &Tree, root: usize) -> Result<CompositionPlan, TreeError> {
    t.check_root(root)?;
    let (order, parent) = t.bfs(root);
    let mut steps = Vec::with_capacity(t.n() - 1);
    for &r in order.iter().rev() {
        for &c in t.neighbors(r).iter().rev() {
            if parent[c] == Some(r) {
                steps.push(Step { left: r, right: c });
            }
        }
    }
    Ok(CompositionPlan { n: t.n(), root, steps })
}

/// Result of collapsing twin leaves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwinReduction {
    pub tree: Tree,
    /// `groups[v]` lists the original vertices merged into reduced vertex `v`,
    /// ascending; its first entry is the representative.
    pub groups: Vec<Vec<usize>>,
}

/// Collapses every cluster of leaves sharing a neighbour into its
/// lowest-numbered member. Surviving vertices keep their relative order.
pub fn reduce_twins(t: &Tree) -> TwinReduction {
    let n = t.n();
    let mut rep: Vec<usize> = (0..n).collect();
    if n > 2 {
        for b in 0..n {
            let mut first = None;
            for &a in t.neighbors(b) {
                if t.is_leaf(a) {
                    match first {
                        None => first = Some(a),
                        Some(f) => rep[a] = f,
                    }
                }
            }
        }
    }
    let mut new_id = vec![usize::MAX; n];
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for v in 0..n {
        if rep[v] == v {
            new_id[v] = groups.len();
            groups.push(vec![v]);
        }
    }
    for v in 0..n {
        if rep[v] != v {
            groups[new_id[rep[v]]].push(v);
        }
    }
    let edges = t
        .edges()
        .iter()
        .filter(|&&(u, v)| rep[u] == u && rep[v] == v)
        .map(|&(u, v)| (new_id[u], new_id[v]));
    let tree = Tree::new(groups.len(), edges).expect("removing leaves keeps a tree");
    TwinReduction { tree, groups }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_headers_and_comments() {
        let t = parse_tree("# a path\nn 4\n0 1\n1 2\n\n2 3\n").unwrap();
        assert_eq!(t, Tree::path(4));
        assert_eq!(parse_tree("n 1\n").unwrap().n(), 1);
        assert_eq!(parse_tree("0 1\n").unwrap(), Tree::path(2));
    }

    #[test]
    fn parse_errors() {
        assert_eq!(parse_tree("# nothing\n"), Err(TreeError::EmptyInput));
        assert!(matches!(parse_tree("0 1 2\n"), Err(TreeError::Parse { line: 1, .. })));
        assert!(matches!(parse_tree("0 x\n"), Err(TreeError::Parse { .. })));
        assert!(matches!(parse_tree("0 1\n1 2\n2 0\n"), Err(TreeError::NotATree(_))));
        assert!(matches!(parse_tree("n 4\n0 1\n2 3\n"), Err(TreeError::NotATree(_))));
        assert!(matches!(parse_tree("0 1\n2 3\n1 2\n0 3\n"), Err(TreeError::NotATree(_))));
        assert!(matches!(parse_tree("0 1\n3 4\n"), Err(TreeError::NotATree(_))));
        assert!(matches!(parse_tree("0 1\nn 2\n"), Err(TreeError::Parse { line: 2, .. })));
    }

    #[test]
    fn render_round_trip() {
        let t = Tree::new(5, [(3, 1), (0, 1), (4, 1), (2, 0)]).unwrap();
        assert_eq!(parse_tree(&t.render()).unwrap(), t);
    }

    #[test]
    fn plan_shapes() {
        let single = decompose(&Tree::singleton(), 0).unwrap();
        assert!(single.steps.is_empty());
        let p2 = decompose(&Tree::path(2), 0).unwrap();
        assert_eq!(p2.steps, vec![Step { left: 0, right: 1 }]);
        let p4 = decompose(&Tree::path(4), 0).unwrap();
        assert_eq!(p4.steps.len(), 3);
        assert_eq!(decompose(&Tree::path(4), 4), Err(TreeError::InvalidRoot { root: 4, n: 4 }));
    }

    #[test]
    fn plan_splits_lowest_neighbor_last() {
        // star centred at 0: innermost composition is with the highest leaf
        let t = Tree::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let plan = decompose(&t, 0).unwrap();
        let order: Vec<usize> = plan.steps.iter().map(|s| s.right).collect();
        assert_eq!(order, vec![3, 2, 1]);
    }

    #[test]
    fn twins_collapse() {
        let star = Tree::new(5, [(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        let red = reduce_twins(&star);
        assert_eq!(red.tree, Tree::path(2));
        assert_eq!(red.groups, vec![vec![0], vec![1, 2, 3, 4]]);
        assert_eq!(reduce_twins(&Tree::path(4)).tree, Tree::path(4));
        assert_eq!(reduce_twins(&Tree::path(2)).tree, Tree::path(2));
        assert_eq!(reduce_twins(&red.tree).tree, red.tree);
    }

    #[test]
    fn bfs_relabel() {
        let t = Tree::new(4, [(3, 2), (2, 1), (1, 0)]).unwrap();
        assert_eq!(t.relabel_bfs(3), Tree::path(4));
    }
}
