//! Floating-point exploration of candidate growth constants.
//!
//! Starting from the scaled seed, repeatedly adds all pairwise products and
//! keeps only the vertices of the majorized convex hull. A set that stops
//! changing is a candidate polytope for the certifier; a set whose norms blow
//! up shows that the trial constant is too small. Nothing here is exact.

use crate::algebra::{star_generic, transform_generic};
use crate::error::GrowthError;
use crate::lp;

use super::polytope::Polytope;

pub type FVec = [f64; 6];

const EPS: f64 = 1e-9;

/// Seed vertices for the boundary-seeds demo run.
pub const BOUNDARY_SEEDS: [usize; 8] = [2, 3, 6, 9, 13, 19, 24, 32];

#[derive(Clone, Debug, PartialEq)]
pub enum SearchOutcome {
    Converged { iterations: usize, vertices: Vec<FVec> },
    /// Some norm exceeded the cap after this many iterations.
    Diverged { iteration: usize },
}

fn star(a: &FVec, b: &FVec) -> FVec {
    star_generic(a, b)
}

fn t(v: &FVec) -> FVec {
    transform_generic(v)
}

/// Drops majorized vectors, then removes (from the back) every vector that a
/// convex combination of the remaining ones dominates.
fn hull_vertices(mut pts: Vec<FVec>) -> Vec<FVec> {
    pts.sort_by(|a, b| t(b).iter().sum::<f64>().total_cmp(&t(a).iter().sum::<f64>()));
    let mut keep: Vec<FVec> = Vec::new();
    let mut tk: Vec<FVec> = Vec::new();
    for v in pts {
        let tv = t(&v);
        if tk.iter().any(|u| (0..6).all(|c| u[c] >= tv[c] - EPS)) {
            continue;
        }
        keep.push(v);
        tk.push(tv);
    }
    let mut alive = vec![true; keep.len()];
    for idx in (0..keep.len()).rev() {
        let others: Vec<usize> = (0..keep.len()).filter(|&o| o != idx && alive[o]).collect();
        if others.is_empty() {
            continue;
        }
        if dominated(&tk, &others, &tk[idx]) {
            alive[idx] = false;
        }
    }
    keep.into_iter().zip(alive).filter(|(_, a)| *a).map(|(v, _)| v).collect()
}

/// Feasibility of `Σ μ_o T_o ≥ target - EPS`, `Σ μ = 1`, `μ ≥ 0`.
fn dominated(tk: &[FVec], others: &[usize], target: &FVec) -> bool {
    let k = others.len();
    let ncols = k + 6;
    let mut a = Vec::with_capacity(7);
    let mut b = Vec::with_capacity(7);
    for c in 0..6 {
        let mut row = vec![0.0; ncols];
        for (col, &o) in others.iter().enumerate() {
            row[col] = tk[o][c];
        }
        row[k + c] = -1.0;
        a.push(row);
        b.push(target[c] - EPS);
    }
    let mut sum = vec![0.0; ncols];
    sum[..k].fill(1.0);
    a.push(sum);
    b.push(1.0);
    lp::solve(&a, &b, &vec![0.0; ncols]).is_feasible()
}

fn key(q: &[FVec]) -> Vec<[i64; 6]> {
    let mut k: Vec<[i64; 6]> = q.iter().map(|v| v.map(|x| (x * 1e9).round() as i64)).collect();
    k.sort_unstable();
    k
}

/// Iterates from an explicit starting set.
pub fn search_from(start: Vec<FVec>, max_iter: usize, norm_cap: f64) -> Result<SearchOutcome, GrowthError> {
    let mut q = start;
    let mut prev: Option<Vec<[i64; 6]>> = None;
    for it in 1..=max_iter {
        let mut all = q.clone();
        for a in &q {
            for b in &q {
                all.push(star(a, b));
            }
        }
        q = hull_vertices(all);
        let norm = q.iter().map(|v| v.iter().map(|x| x.abs()).sum::<f64>()).fold(0.0, f64::max);
        if norm > norm_cap {
            return Ok(SearchOutcome::Diverged { iteration: it });
        }
        let k = key(&q);
        if prev.as_ref() == Some(&k) {
            return Ok(SearchOutcome::Converged { iterations: it, vertices: q });
        }
        prev = Some(k);
    }
    Err(GrowthError::IterationLimit(max_iter))
}

/// Starts from `seed / trial` and, if given, `(extra, 0, 0, 0, 0, 0)`.
pub fn search_lambda(trial: f64, extra: Option<f64>, max_iter: usize, norm_cap: f64) -> Result<SearchOutcome, GrowthError> {
    let mut start = vec![[0.0, 1.0 / trial, 0.0, 0.0, 0.0, 1.0 / trial]];
    if let Some(e) = extra {
        start.push([e, 0.0, 0.0, 0.0, 0.0, 0.0]);
    }
    search_from(start, max_iter, norm_cap)
}

/// The starting set `(1/λ, 0, ..., 0)` plus the listed boundary vertices,
/// evaluated at `trial`.
pub fn boundary_seeds(p: &Polytope, trial: f64) -> Vec<FVec> {
    let mut start = vec![[1.0 / trial, 0.0, 0.0, 0.0, 0.0, 0.0]];
    for idx in BOUNDARY_SEEDS {
        if let Some(v) = p.get(idx) {
            let s = num_traits::ToPrimitive::to_f64(&v.prefactor).unwrap_or(f64::NAN) * trial.powi(-(v.power as i32));
            start.push(v.entries.map(|e| e as f64 * s));
        }
    }
    start
}
