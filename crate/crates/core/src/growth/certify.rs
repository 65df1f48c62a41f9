//! Closure certificates: every product `v_i ⋆ v_j` of two vertices must be
//! dominated, in transformed coordinates, by a convex combination of vertices.
//!
//! Floating point only proposes coefficients. Every accepted certificate is
//! rechecked in exact arithmetic.

use std::cmp::Ordering;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;

use crate::error::GrowthError;
use crate::lp::{self, LpOutcome};

use super::algnum::AlgNum;
use super::polytope::{scaled_seed, star_scaled, total_scaled, transform_scaled, Polytope, ScaledVec};

/// Coefficients are multiples of `1 / GRID`.
pub const GRID: i64 = 10_000;

#[derive(Clone, Debug, PartialEq)]
pub enum CertKind {
    /// The product equals the vertex with this index.
    Equal(usize),
    /// Vertex indices with coefficients summing to one.
    Convex(Vec<(usize, BigRational)>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub i: usize,
    pub j: usize,
    pub kind: CertKind,
    /// Smallest nonzero slack over the coordinates where the product is
    /// positive. `None` for equalities and when every slack is zero.
    pub margin: Option<AlgNum>,
}

impl Certificate {
    pub fn margin_f64(&self) -> Option<f64> {
        self.margin.as_ref().map(AlgNum::to_f64)
    }

    fn line(&self) -> String {
        match &self.kind {
            CertKind::Equal(m) => format!("{} {} equal - v{m}", self.i, self.j),
            CertKind::Convex(terms) => {
                let margin = self.margin_f64().map_or("-".to_string(), |m| format!("{m:.6e}"));
                let detail: Vec<String> = terms.iter().map(|(k, mu)| format!("v{k}:{mu}")).collect();
                format!("{} {} convex {margin} {}", self.i, self.j, detail.join(","))
            }
        }
    }
}

/// Transformed vertices, exact and in floating point.
struct Prepared<'a> {
    p: &'a Polytope,
    t_exact: Vec<ScaledVec>,
    t_float: Vec<[f64; 6]>,
}

impl<'a> Prepared<'a> {
    fn new(p: &'a Polytope) -> Self {
        let t_exact: Vec<ScaledVec> = p.vertices.iter().map(|v| transform_scaled(&v.value)).collect();
        let t_float = t_exact.iter().map(|t| t.each_ref().map(AlgNum::to_f64)).collect();
        Self { p, t_exact, t_float }
    }
}

fn grid(num: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(GRID))
}

/// Exact slacks `Σ μ_k T(v_k) - T(w)`. `None` if any is negative.
fn verify(prep: &Prepared, terms: &[(usize, BigRational)], tw: &ScaledVec) -> Result<Option<Option<AlgNum>>, GrowthError> {
    let mut margin: Option<AlgNum> = None;
    for c in 0..6 {
        let mut acc = AlgNum::zero();
        for (k, mu) in terms {
            acc = &acc + &prep.t_exact[*k][c].scale(mu);
        }
        let slack = &acc - &tw[c];
        match slack.signum()? {
            Ordering::Less => return Ok(None),
            Ordering::Equal => {}
            Ordering::Greater => {
                if tw[c].signum()? == Ordering::Greater {
                    let smaller = match &margin {
                        None => true,
                        Some(m) => slack.cmp_exact(m)? == Ordering::Less,
                    };
                    if smaller {
                        margin = Some(slack);
                    }
                }
            }
        }
    }
    Ok(Some(margin))
}

/// Maximizes `t` subject to `Σ μ_k T(v_k)_c - t ≥ T(w)_c` over the positive
/// coordinates of `T(w)` and `Σ μ = 1`. Returns `μ`.
fn max_margin_lp(prep: &Prepared, tw: &[f64; 6]) -> Option<Vec<f64>> {
    let k = prep.t_float.len();
    let rows: Vec<usize> = (0..6).filter(|&c| tw[c] > 0.0).collect();
    // columns: μ_1..μ_k, t⁺, t⁻, one surplus per row
    let ncols = k + 2 + rows.len();
    let mut a = Vec::with_capacity(rows.len() + 1);
    let mut b = Vec::with_capacity(rows.len() + 1);
    for (r, &c) in rows.iter().enumerate() {
        let mut row = vec![0.0; ncols];
        for (kk, t) in prep.t_float.iter().enumerate() {
            row[kk] = t[c];
        }
        row[k] = -1.0;
        row[k + 1] = 1.0;
        row[k + 2 + r] = -1.0;
        a.push(row);
        b.push(tw[c]);
    }
    let mut sum = vec![0.0; ncols];
    sum[..k].fill(1.0);
    a.push(sum);
    b.push(1.0);
    let mut cost = vec![0.0; ncols];
    cost[k] = -1.0;
    cost[k + 1] = 1.0;
    match lp::solve(&a, &b, &cost) {
        LpOutcome::Optimal { x, .. } => Some(x[..k].to_vec()),
        _ => None,
    }
}

/// Rounds to multiples of `1/GRID` summing to exactly one: floor everything,
/// then give the missing units to the largest remainders.
fn largest_remainder(mu: &[f64]) -> Vec<i64> {
    let g: Vec<f64> = mu.iter().map(|m| m.max(0.0) * GRID as f64).collect();
    let mut fl: Vec<i64> = g.iter().map(|x| (x + 1e-9).floor() as i64).collect();
    let short = GRID - fl.iter().sum::<i64>();
    let mut order: Vec<usize> = (0..mu.len()).collect();
    order.sort_by(|&a, &b| (g[b] - fl[b] as f64).total_cmp(&(g[a] - fl[a] as f64)));
    for &i in order.iter().take(short.max(0) as usize) {
        fl[i] += 1;
    }
    fl
}

fn to_terms(prep: &Prepared, units: &[i64]) -> Vec<(usize, BigRational)> {
    units
        .iter()
        .enumerate()
        .filter(|(_, &u)| u > 0)
        .map(|(k, &u)| (prep.p.vertices[k].index, grid(u)))
        .collect()
}

fn positions(prep: &Prepared, terms: &[(usize, BigRational)]) -> Vec<(usize, BigRational)> {
    terms
        .iter()
        .map(|(idx, mu)| (prep.p.vertices.iter().position(|v| v.index == *idx).unwrap(), mu.clone()))
        .collect()
}

fn try_units(prep: &Prepared, units: &[i64], tw: &ScaledVec) -> Result<Option<(Vec<(usize, BigRational)>, Option<AlgNum>)>, GrowthError> {
    if units.iter().any(|&u| u < 0) || units.iter().sum::<i64>() != GRID {
        return Ok(None);
    }
    let terms = to_terms(prep, units);
    Ok(verify(prep, &positions(prep, &terms), tw)?.map(|m| (terms, m)))
}

fn certify_product(prep: &Prepared, i: usize, j: usize, w: &ScaledVec) -> Result<Certificate, GrowthError> {
    if let Some(v) = prep.p.vertices.iter().find(|v| v.value == *w) {
        return Ok(Certificate { i, j, kind: CertKind::Equal(v.index), margin: None });
    }
    let tw = transform_scaled(w);
    let twf = tw.each_ref().map(AlgNum::to_f64);

    // a single dominating vertex
    for (k, t) in prep.t_float.iter().enumerate() {
        if (0..6).all(|c| t[c] - twf[c] >= -1e-12 * twf[c].max(1.0)) {
            if let Some(margin) = verify(prep, &[(k, BigRational::one())], &tw)? {
                let terms = vec![(prep.p.vertices[k].index, BigRational::one())];
                return Ok(Certificate { i, j, kind: CertKind::Convex(terms), margin });
            }
        }
    }

    let mu = max_margin_lp(prep, &twf).ok_or(GrowthError::NoCertificate { i, j })?;
    let units = largest_remainder(&mu);
    if let Some((terms, margin)) = try_units(prep, &units, &tw)? {
        return Ok(Certificate { i, j, kind: CertKind::Convex(terms), margin });
    }

    // every floor/ceil choice on the support that still sums to one
    let support: Vec<usize> = (0..mu.len()).filter(|&k| mu[k] > 1e-12).collect();
    if support.len() <= 12 {
        let base: Vec<i64> = mu.iter().map(|m| (m.max(0.0) * GRID as f64).floor() as i64).collect();
        for mask in 0u32..(1 << support.len()) {
            let mut u = base.clone();
            for (bit, &k) in support.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    u[k] += 1;
                }
            }
            if let Some((terms, margin)) = try_units(prep, &u, &tw)? {
                return Ok(Certificate { i, j, kind: CertKind::Convex(terms), margin });
            }
        }
    }
    Err(GrowthError::NoCertificate { i, j })
}

/// Certificate for `v_i ⋆ v_j`, indices as listed in the polytope.
pub fn solve_certificate(p: &Polytope, i: usize, j: usize) -> Result<Certificate, GrowthError> {
    let (a, b) = match (p.get(i), p.get(j)) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(GrowthError::NoCertificate { i, j }),
    };
    let prep = Prepared::new(p);
    certify_product(&prep, i, j, &star_scaled(&a.value, &b.value))
}

/// Whether `w` lies in the majorized hull: some certificate dominates it.
pub fn is_member(p: &Polytope, w: &ScaledVec) -> Result<bool, GrowthError> {
    if p.is_empty() {
        return Ok(false);
    }
    match certify_product(&Prepared::new(p), 0, 0, w) {
        Ok(_) => Ok(true),
        Err(GrowthError::NoCertificate { .. }) => Ok(false),
        Err(e) => Err(e),
    }
}

/// The seed `(0,1,0,0,0,1)/λ` is a vertex or is certified to lie in the hull.
pub fn check_seed(p: &Polytope) -> bool {
    is_member(p, &scaled_seed()).unwrap_or(false)
}

#[derive(Clone, Debug)]
pub struct ClosureReport {
    pub pairs: usize,
    pub certificates: Vec<Certificate>,
    pub failures: Vec<(usize, usize, GrowthError)>,
}

impl ClosureReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.certificates.len() == self.pairs
    }

    pub fn equalities(&self) -> usize {
        self.certificates.iter().filter(|c| matches!(c.kind, CertKind::Equal(_))).count()
    }

    /// Certificate with the smallest margin.
    pub fn min_margin(&self) -> Option<&Certificate> {
        self.certificates
            .iter()
            .filter(|c| c.margin.is_some())
            .min_by(|a, b| a.margin_f64().unwrap().total_cmp(&b.margin_f64().unwrap()))
    }

    pub fn render(&self) -> String {
        let mut out = String::from("# i j kind margin detail\n");
        let mut rows: Vec<(usize, usize, String)> =
            self.certificates.iter().map(|c| (c.i, c.j, c.line())).collect();
        rows.extend(self.failures.iter().map(|(i, j, e)| (*i, *j, format!("{i} {j} FAIL - {e}"))));
        rows.sort_by_key(|r| (r.0, r.1));
        for (_, _, line) in rows {
            out.push_str(&line);
            out.push('\n');
        }
        let _ = writeln!(out, "# pairs {} certified {} equal {}", self.pairs, self.certificates.len(), self.equalities());
        if let Some(c) = self.min_margin() {
            let _ = writeln!(out, "# min margin {:.6e} at ({},{})", c.margin_f64().unwrap(), c.i, c.j);
        }
        let _ = writeln!(out, "# verdict {}", if self.passed() { "PASS" } else { "FAIL" });
        out
    }
}

/// Certifies all ordered pairs of vertices.
pub fn check_closure(p: &Polytope) -> ClosureReport {
    let prep = Prepared::new(p);
    let idx: Vec<usize> = p.vertices.iter().map(|v| v.index).collect();
    let pairs: Vec<(usize, usize)> = (0..idx.len()).flat_map(|a| (0..idx.len()).map(move |b| (a, b))).collect();
    let results: Vec<Result<Certificate, GrowthError>> = pairs
        .par_iter()
        .map(|&(a, b)| {
            let w = star_scaled(&p.vertices[a].value, &p.vertices[b].value);
            certify_product(&prep, idx[a], idx[b], &w)
        })
        .collect();
    let mut report = ClosureReport { pairs: pairs.len(), certificates: Vec::new(), failures: Vec::new() };
    for ((a, b), r) in pairs.into_iter().zip(results) {
        match r {
            Ok(c) => report.certificates.push(c),
            Err(e) => report.failures.push((idx[a], idx[b], e)),
        }
    }
    report
}

/// Largest `G + S + d + p` over the vertices, with the vertex index attaining
/// it (lowest index on ties).
pub fn upper_bound_constant(p: &Polytope) -> Result<(AlgNum, usize), GrowthError> {
    let mut best: Option<(AlgNum, usize)> = None;
    for v in &p.vertices {
        let t = total_scaled(&v.value);
        let better = match &best {
            None => true,
            Some((b, _)) => t.cmp_exact(b)? == Ordering::Greater,
        };
        if better {
            best = Some((t, v.index));
        }
    }
    Ok(best.unwrap_or((AlgNum::zero(), 0)))
}

/// Every entry of every vertex is certified nonnegative.
pub fn nonnegative(p: &Polytope) -> Result<bool, GrowthError> {
    for v in &p.vertices {
        for e in &v.value {
            if e.signum()? == Ordering::Less {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Checks every listed identity `v_m = v_a ⋆ v_b` exactly. Returns the
/// failing triples.
pub fn check_identities(p: &Polytope) -> Vec<(usize, usize, usize)> {
    let mut bad = Vec::new();
    for v in &p.vertices {
        for &(a, b) in &v.identities {
            let ok = match (p.get(a), p.get(b)) {
                (Some(x), Some(y)) => star_scaled(&x.value, &y.value) == v.value,
                _ => false,
            };
            if !ok {
                bad.push((v.index, a, b));
            }
        }
    }
    bad
}

impl Certificate {
    /// Coefficients as `f64`, for display.
    pub fn weights(&self) -> Vec<(usize, f64)> {
        match &self.kind {
            CertKind::Equal(m) => vec![(*m, 1.0)],
            CertKind::Convex(t) => t.iter().map(|(k, mu)| (*k, mu.to_f64().unwrap_or(f64::NAN))).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::growth::polytope::Vertex;

    #[test]
    fn rounding_keeps_sum() {
        let u = largest_remainder(&[0.33333, 0.33333, 0.33334]);
        assert_eq!(u.iter().sum::<i64>(), GRID);
        let u = largest_remainder(&[0.123456, 0.876544]);
        assert_eq!(u, vec![1235, 8765]);
    }

    #[test]
    fn exact_cases() {
        let p = Polytope::bundled();
        assert_eq!(solve_certificate(&p, 2, 2).unwrap().kind, CertKind::Equal(3));
        assert_eq!(solve_certificate(&p, 1, 32).unwrap().kind, CertKind::Equal(1));
        assert_eq!(solve_certificate(&p, 2, 24).unwrap().kind, CertKind::Equal(32));
    }

    #[test]
    fn seed_membership() {
        let p = Polytope::bundled();
        assert!(check_seed(&p));
        let mut above = Polytope { vertices: vec![Vertex::new(7, BigRational::one(), [1, 1, 0, 0, 0, 2], 1)] };
        assert!(check_seed(&above));
        above.vertices[0] = Vertex::new(7, BigRational::one(), [1, 1, 0, 0, 0, 0], 1);
        assert!(!check_seed(&above));
        assert!(!check_seed(&Polytope { vertices: Vec::new() }));
    }

    #[test]
    fn bound_constant() {
        let (c, at) = upper_bound_constant(&Polytope::bundled()).unwrap();
        assert_eq!(at, 3);
        assert_eq!(c, AlgNum::monomial(BigRational::from_integer(2.into()), 2));
        assert!((c.to_f64() - 0.992_578_41).abs() < 1e-8);
    }
}
