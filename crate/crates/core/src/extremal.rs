//! Extremal counts `M_n` via the sets `V_n` of category vectors of rooted
//! trees on `n` vertices, with majorization and convex-hull pruning.
//!
//! Entries of a vector of a tree on `n` vertices are at most `2^n`, so levels
//! are stored as `[u128; 6]`; arithmetic is checked and overflow is reported.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use crate::algebra::{transform_generic, CatVector, STAR_TERMS};
use crate::error::ExtremalError;
use crate::lp::{self, LpOutcome};
use crate::tree::Tree;

pub type Vec6 = [u128; 6];

pub const SEED: Vec6 = [0, 1, 0, 0, 0, 1];
pub const DEFAULT_CAP: usize = 10_000_000;

pub fn star(a: &Vec6, b: &Vec6) -> Option<Vec6> {
    let mut out = [0u128; 6];
    for (c, terms) in STAR_TERMS.iter().enumerate() {
        let mut acc = 0u128;
        for &(i, j) in terms.iter() {
            acc = acc.checked_add(a[i].checked_mul(b[j])?)?;
        }
        out[c] = acc;
    }
    Some(out)
}

pub fn transform(v: &Vec6) -> Vec6 {
    transform_generic(v)
}

pub fn total(v: &Vec6) -> u128 {
    v[0] + v[1] + v[3] + v[4]
}

fn majorizes_t(ta: &Vec6, tb: &Vec6) -> bool {
    ta.iter().zip(tb).all(|(a, b)| a >= b)
}

pub fn to_cat(v: &Vec6) -> CatVector {
    CatVector(v.map(BigUint::from))
}

/// `(i, index in V_i, index in V_{n-i})`: the vector is `V_i[a] ⋆ V_{n-i}[b]`.
pub type Provenance = (usize, usize, usize);

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VectorSet {
    pub n: usize,
    pub vectors: Vec<Vec6>,
    pub provenance: Vec<Option<Provenance>>,
}

impl VectorSet {
    pub fn seed() -> Self {
        Self { n: 1, vectors: vec![SEED], provenance: vec![None] }
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn max_total(&self) -> Option<(usize, u128)> {
        let mut best: Option<(usize, u128)> = None;
        for (i, v) in self.vectors.iter().enumerate() {
            let t = total(v);
            if best.is_none_or(|(_, b)| t > b) {
                best = Some((i, t));
            }
        }
        best
    }

    fn select(&self, keep: impl Fn(usize) -> bool) -> Self {
        let idx: Vec<usize> = (0..self.len()).filter(|&i| keep(i)).collect();
        Self {
            n: self.n,
            vectors: idx.iter().map(|&i| self.vectors[i]).collect(),
            provenance: idx.iter().map(|&i| self.provenance[i]).collect(),
        }
    }
}

/// All products `x ⋆ y`, `x` from `a` (the part keeping the root), in
/// row-major order with provenance.
pub fn compose_sets(a: &VectorSet, b: &VectorSet) -> Result<VectorSet, ExtremalError> {
    let n = a.n + b.n;
    let mut out = VectorSet { n, vectors: Vec::with_capacity(a.len() * b.len()), provenance: Vec::new() };
    out.provenance.reserve(a.len() * b.len());
    for (ia, x) in a.vectors.iter().enumerate() {
        for (ib, y) in b.vectors.iter().enumerate() {
            out.vectors.push(star(x, y).ok_or(ExtremalError::Overflow(n))?);
            out.provenance.push(Some((a.n, ia, ib)));
        }
    }
    Ok(out)
}

/// Drops repeated vectors, keeping the first occurrence.
pub fn dedup(s: &VectorSet) -> VectorSet {
    let mut seen: HashMap<Vec6, ()> = HashMap::with_capacity(s.len());
    let keep: Vec<bool> = s.vectors.iter().map(|v| seen.insert(*v, ()).is_none()).collect();
    s.select(|i| keep[i])
}

/// Keeps exactly the `≽`-maximal vectors; of equal vectors the first survives.
/// Survivors stay in their original order.
pub fn hull_prune(s: &VectorSet) -> VectorSet {
    let s = dedup(s);
    let t: Vec<Vec6> = s.vectors.iter().map(transform).collect();
    // a vector strictly majorized by another has a strictly smaller
    // coordinate sum, so it suffices to compare against earlier survivors
    let mut order: Vec<usize> = (0..s.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(t[i].iter().sum::<u128>()));
    let mut kept: Vec<usize> = Vec::new();
    for &i in &order {
        if !kept.iter().any(|&k| majorizes_t(&t[k], &t[i])) {
            kept.push(i);
        }
    }
    let mut flag = vec![false; s.len()];
    for k in kept {
        flag[k] = true;
    }
    s.select(|i| flag[i])
}

/// Outcome of a single redundancy test, kept for diagnostics.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Redundancy {
    /// Strictly largest in some transformed coordinate.
    Extreme,
    /// Separated from the others by a rounded dual functional.
    Separated,
    /// Exactly a dominated convex combination of the others.
    Redundant,
    /// Decided by the exact simplex over all other vectors.
    ExactKept,
    ExactRedundant,
}

impl Redundancy {
    pub fn removes(self) -> bool {
        matches!(self, Redundancy::Redundant | Redundancy::ExactRedundant)
    }
}

fn to_q(x: u128) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Exact feasibility of `Σ μ_j T(v_j) ≥ T(w)`, `Σ μ_j = 1`, `μ ≥ 0`.
fn exact_dominated(t: &[Vec6], cols: &[usize], w: &Vec6) -> bool {
    let k = cols.len();
    let mut a: Vec<Vec<BigRational>> = Vec::with_capacity(7);
    for i in 0..6 {
        let mut row: Vec<BigRational> = cols.iter().map(|&j| to_q(t[j][i])).collect();
        row.extend((0..6).map(|s| if s == i { lp::rational(-1, 1) } else { BigRational::zero() }));
        a.push(row);
    }
    let mut sum_row: Vec<BigRational> = (0..k).map(|_| lp::rational(1, 1)).collect();
    sum_row.extend((0..6).map(|_| BigRational::zero()));
    a.push(sum_row);
    let mut b: Vec<BigRational> = w.iter().map(|&x| to_q(x)).collect();
    b.push(lp::rational(1, 1));
    let c = vec![BigRational::zero(); k + 6];
    lp::solve(&a, &b, &c).is_feasible()
}

/// Checks `f·w > max_j f·v_j` exactly for a nonnegative functional.
fn separates(f: &[u64; 6], t: &[Vec6], others: &[usize], w: &Vec6) -> Option<bool> {
    let dot = |v: &Vec6| -> Option<u128> {
        let mut acc = 0u128;
        for i in 0..6 {
            acc = acc.checked_add(u128::from(f[i]).checked_mul(v[i])?)?;
        }
        Some(acc)
    };
    let fw = dot(w)?;
    for &j in others {
        if dot(&t[j])? >= fw {
            return Some(false);
        }
    }
    Some(true)
}

/// Decides whether `T(w)` lies below a convex combination of the `others`.
/// Floating point only proposes certificates; every answer is exact.
pub fn redundancy(t: &[Vec6], others: &[usize], w: &Vec6) -> Redundancy {
    if (0..6).any(|i| others.iter().all(|&j| t[j][i] < w[i])) {
        return Redundancy::Extreme;
    }
    let k = others.len();
    let scale: Vec<f64> = (0..6)
        .map(|i| others.iter().map(|&j| t[j][i]).chain([w[i], 1]).max().unwrap() as f64)
        .collect();
    let mut a: Vec<Vec<f64>> = Vec::with_capacity(7);
    for i in 0..6 {
        let mut row: Vec<f64> = others.iter().map(|&j| t[j][i] as f64 / scale[i]).collect();
        row.extend((0..6).map(|s| if s == i { -1.0 } else { 0.0 }));
        a.push(row);
    }
    let mut sum_row = vec![1.0; k];
    sum_row.extend([0.0; 6]);
    a.push(sum_row);
    let mut b: Vec<f64> = (0..6).map(|i| w[i] as f64 / scale[i]).collect();
    b.push(1.0);
    match lp::solve(&a, &b, &vec![0.0; k + 6]) {
        LpOutcome::Optimal { x, .. } => {
            let support: Vec<usize> = (0..k).filter(|&j| x[j] > 1e-12).map(|j| others[j]).collect();
            if exact_dominated(t, &support, w) {
                return Redundancy::Redundant;
            }
        }
        LpOutcome::Infeasible { farkas } => {
            let f: Vec<f64> = (0..6).map(|i| (farkas[i] / scale[i]).max(0.0)).collect();
            let fmax = f.iter().cloned().fold(0.0, f64::max);
            if fmax > 0.0 {
                let q: [u64; 6] = std::array::from_fn(|i| (f[i] / fmax * (1u64 << 52) as f64).round() as u64);
                if separates(&q, t, others, w) == Some(true) {
                    return Redundancy::Separated;
                }
            }
        }
        _ => {}
    }
    if exact_dominated(t, others, w) {
        Redundancy::ExactRedundant
    } else {
        Redundancy::ExactKept
    }
}

/// Removes every vector whose transform is dominated by a convex combination
/// of the transforms of the others. All tests run against the full input, so
/// the result does not depend on processing order.
pub fn convex_prune(s: &VectorSet) -> VectorSet {
    let s = dedup(s);
    let t: Vec<Vec6> = s.vectors.iter().map(transform).collect();
    let verdicts: Vec<Redundancy> = (0..s.len())
        .into_par_iter()
        .map(|i| {
            let others: Vec<usize> = (0..s.len()).filter(|&j| j != i).collect();
            if others.is_empty() {
                Redundancy::Extreme
            } else {
                redundancy(&t, &others, &t[i])
            }
        })
        .collect();
    s.select(|i| !verdicts[i].removes())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PruneMode {
    None,
    Majorize,
    Convex,
}

impl std::str::FromStr for PruneMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "none" => Ok(PruneMode::None),
            "majorize" => Ok(PruneMode::Majorize),
            "convex" => Ok(PruneMode::Convex),
            other => Err(format!("unknown pruning mode {other:?}; expected none, majorize or convex")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub n: usize,
    pub m_n: BigUint,
    /// Size after duplicate removal (mode `none`) or majorization pruning.
    pub hull_size: usize,
    /// Size after convex pruning, in mode `convex` only.
    pub convex_size: Option<usize>,
}

#[derive(Clone, Debug, Default)]
pub struct ExtremalTable {
    pub rows: Vec<TableRow>,
    /// `levels[n]` is the retained `V_n`; index 0 is unused.
    pub levels: Vec<VectorSet>,
}

fn prune_level(s: &VectorSet, mode: PruneMode) -> VectorSet {
    match mode {
        PruneMode::None => dedup(s),
        _ => hull_prune(s),
    }
}

/// Computes `M_1..M_max_n`. Each level is built from all splits `i + (n-i)`,
/// pruned per split and then as a whole, which keeps the same survivors as
/// pruning the full union.
pub fn table(max_n: usize, mode: PruneMode) -> Result<ExtremalTable, ExtremalError> {
    table_with_cap(max_n, mode, DEFAULT_CAP)
}

pub fn table_with_cap(max_n: usize, mode: PruneMode, cap: usize) -> Result<ExtremalTable, ExtremalError> {
    let mut out = ExtremalTable { rows: Vec::new(), levels: vec![VectorSet::default(), VectorSet::seed()] };
    if max_n >= 1 {
        out.rows.push(TableRow { n: 1, m_n: BigUint::from(1u32), hull_size: 1, convex_size: None });
        if mode == PruneMode::Convex {
            out.rows[0].convex_size = Some(1);
        }
    }
    for n in 2..=max_n {
        if n > 125 {
            return Err(ExtremalError::Overflow(n));
        }
        let raw: usize = (1..n).map(|i| out.levels[i].len() * out.levels[n - i].len()).sum();
        if raw > cap {
            return Err(ExtremalError::ResourceLimit { n, size: raw, cap });
        }
        let parts: Vec<VectorSet> = (1..n)
            .into_par_iter()
            .map(|i| compose_sets(&out.levels[i], &out.levels[n - i]).map(|s| prune_level(&s, mode)))
            .collect::<Result<_, _>>()?;
        let mut all = VectorSet { n, ..Default::default() };
        for p in parts {
            all.vectors.extend(p.vectors);
            all.provenance.extend(p.provenance);
        }
        let pruned = prune_level(&all, mode);
        let (_, best) = pruned.max_total().expect("level is nonempty");
        let mut row = TableRow { n, m_n: BigUint::from(best), hull_size: pruned.len(), convex_size: None };
        let level = if mode == PruneMode::Convex {
            let c = convex_prune(&pruned);
            row.convex_size = Some(c.len());
            c
        } else {
            pruned
        };
        out.rows.push(row);
        out.levels.push(level);
    }
    Ok(out)
}

impl ExtremalTable {
    pub fn max_n(&self) -> usize {
        self.rows.len()
    }

    /// A tree on `n` vertices with `M_n` minimal dominating sets, rebuilt from
    /// provenance and numbered by BFS from its root.
    pub fn reconstruct_tree(&self, n: usize) -> Result<Tree, ExtremalError> {
        if n == 0 || n >= self.levels.len() {
            return Err(ExtremalError::ProvenanceMissing(n));
        }
        let (idx, _) = self.levels[n].max_total().ok_or(ExtremalError::ProvenanceMissing(n))?;
        let mut edges = Vec::with_capacity(n - 1);
        // explicit work list of (level, index, first vertex id)
        let mut work = vec![(n, idx, 0usize)];
        while let Some((m, i, base)) = work.pop() {
            if m == 1 {
                continue;
            }
            let (left, ia, ib) = self.levels[m].provenance[i].ok_or(ExtremalError::ProvenanceMissing(m))?;
            edges.push((base, base + left));
            work.push((left, ia, base));
            work.push((m - left, ib, base + left));
        }
        Ok(Tree::new(n, edges).expect("provenance describes a tree").relabel_bfs(0))
    }
}

/// Smallest number of minimal dominating sets over trees on `n` vertices, for
/// `n = 1..=max_n`, by exhaustive iteration with duplicate removal only.
///
/// With `twin_free`, every rooted vector carries whether its root already has
/// a leaf child and its root degree (capped at 2); attaching a single vertex
/// to a root that has a leaf child is skipped, and for `n ≥ 3` only roots of
/// degree at least 2 are counted, since a leaf root would be a twin of its
/// neighbour's leaf child.
pub fn min_table(max_n: usize, twin_free: bool, cap: usize) -> Result<Vec<(usize, BigUint)>, ExtremalError> {
    type Key = (bool, u8, Vec6);
    let mut levels: Vec<Vec<Key>> = vec![Vec::new(), vec![(false, 0, SEED)]];
    let mut rows = Vec::new();
    if max_n >= 1 {
        rows.push((1, BigUint::from(1u32)));
    }
    for n in 2..=max_n {
        let raw: usize = (1..n).map(|i| levels[i].len() * levels[n - i].len()).sum();
        if raw > cap {
            return Err(ExtremalError::ResourceLimit { n, size: raw, cap });
        }
        let mut seen: HashMap<Key, ()> = HashMap::new();
        let mut level = Vec::new();
        for i in 1..n {
            let attach_leaf = n - i == 1;
            for &(leaf_child, deg, a) in &levels[i] {
                if twin_free && attach_leaf && leaf_child {
                    continue;
                }
                let key_flags = if twin_free { (leaf_child || attach_leaf, (deg + 1).min(2)) } else { (false, 0) };
                for &(_, _, b) in &levels[n - i] {
                    let v = star(&a, &b).ok_or(ExtremalError::Overflow(n))?;
                    let key = (key_flags.0, key_flags.1, v);
                    if seen.insert(key, ()).is_none() {
                        level.push(key);
                    }
                }
            }
        }
        let best = level
            .iter()
            .filter(|&&(_, deg, _)| !twin_free || n <= 2 || deg >= 2)
            .map(|(_, _, v)| total(v))
            .min();
        if let Some(best) = best {
            rows.push((n, BigUint::from(best)));
        }
        levels.push(level);
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(vs: &[Vec6]) -> VectorSet {
        VectorSet { n: 0, vectors: vs.to_vec(), provenance: vec![None; vs.len()] }
    }

    #[test]
    fn compose_small() {
        let s = VectorSet::seed();
        let two = compose_sets(&s, &s).unwrap();
        assert_eq!(two.vectors, vec![[1, 0, 0, 1, 0, 0]]);
        assert_eq!(compose_sets(&s, &two).unwrap().vectors, vec![[0, 1, 1, 1, 0, 1]]);
        assert!(compose_sets(&s, &VectorSet { n: 2, ..Default::default() }).unwrap().is_empty());
    }

    #[test]
    fn hull_prune_examples() {
        let g = [1, 0, 0, 0, 0, 0];
        let s = [0, 1, 0, 0, 0, 0];
        assert_eq!(hull_prune(&set(&[s, g])).vectors, vec![g]);
        let anti = [[1, 0, 0, 0, 0, 0], [0, 0, 0, 1, 0, 0]];
        assert_eq!(hull_prune(&set(&anti)).vectors, anti.to_vec());
        assert_eq!(hull_prune(&set(&[g, g])).vectors, vec![g]);
    }

    #[test]
    fn convex_prune_removes_midpoint() {
        // transforms (2,2,2,0,0,0), (0,0,0,2,2,0) and their midpoint
        let a = [2, 0, 0, 0, 0, 0];
        let b = [0, 0, 0, 2, 0, 0];
        let mid = [1, 0, 0, 1, 0, 0];
        assert_eq!(convex_prune(&set(&[a, mid, b])).vectors, vec![a, b]);
        assert_eq!(convex_prune(&set(&[a, b])).vectors, vec![a, b]);
    }

    #[test]
    fn small_table() {
        let t = table(8, PruneMode::Majorize).unwrap();
        let m: Vec<u32> = t.rows.iter().map(|r| u32::try_from(&r.m_n).unwrap()).collect();
        assert_eq!(&m[..2], &[1, 2]);
        for n in 1..=8 {
            let tree = t.reconstruct_tree(n).unwrap();
            assert_eq!(crate::count_mds(&tree), t.rows[n - 1].m_n);
        }
        assert_eq!(t.reconstruct_tree(2).unwrap(), Tree::path(2));
        assert!(t.reconstruct_tree(9).is_err());
    }

    #[test]
    fn resource_limit() {
        assert!(matches!(table_with_cap(12, PruneMode::None, 50), Err(ExtremalError::ResourceLimit { .. })));
    }

    #[test]
    fn minimum_is_two() {
        let rows = min_table(8, false, DEFAULT_CAP).unwrap();
        assert!(rows.iter().skip(1).all(|(_, m)| *m == BigUint::from(2u32)));
    }
}
