//! Dense two-phase simplex, generic over floating point and exact rationals.
//!
//! Solves `min c·x` subject to `A x = b`, `x ≥ 0`. Phase one minimizes the sum
//! of artificial variables; when that optimum is positive the phase-one duals
//! form a Farkas certificate `y` with `yᵀA ≤ 0` and `yᵀb > 0`.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub trait LpScalar:
    Clone
    + Debug
    + PartialOrd
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_pos(&self) -> bool;
    fn is_neg(&self) -> bool;
    /// Exact arithmetic never cycles under Bland's rule; floating point uses
    /// the steepest coefficient until progress stalls.
    const EXACT: bool;
}

const F64_TOL: f64 = 1e-9;

impl LpScalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn is_pos(&self) -> bool {
        *self > F64_TOL
    }
    fn is_neg(&self) -> bool {
        *self < -F64_TOL
    }
    const EXACT: bool = false;
}

impl LpScalar for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_pos(&self) -> bool {
        self.is_positive()
    }
    fn is_neg(&self) -> bool {
        self.is_negative()
    }
    const EXACT: bool = true;
}

pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome<T> {
    Optimal { x: Vec<T>, value: T },
    /// `y` satisfies `yᵀA ≤ 0` columnwise and `yᵀb > 0`.
    Infeasible { farkas: Vec<T> },
    Unbounded,
    /// Floating-point run gave up; never returned for exact scalars.
    Stalled,
}

impl<T> LpOutcome<T> {
    pub fn is_feasible(&self) -> bool {
        matches!(self, LpOutcome::Optimal { .. } | LpOutcome::Unbounded)
    }
}

struct Tableau<T> {
    rows: Vec<Vec<T>>,
    rhs: Vec<T>,
    obj: Vec<T>,
    obj_val: T,
    basis: Vec<usize>,
    /// Columns allowed to enter the basis.
    allowed: Vec<bool>,
}

impl<T: LpScalar> Tableau<T> {
    fn pivot(&mut self, r: usize, col: usize) {
        let p = self.rows[r][col].clone();
        for x in self.rows[r].iter_mut() {
            *x = x.clone() / p.clone();
        }
        self.rhs[r] = self.rhs[r].clone() / p;
        let pivot_row = self.rows[r].clone();
        let pivot_rhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r {
                continue;
            }
            let f = self.rows[i][col].clone();
            if f == T::zero() {
                continue;
            }
            for (x, pr) in self.rows[i].iter_mut().zip(&pivot_row) {
                *x = x.clone() - f.clone() * pr.clone();
            }
            self.rhs[i] = self.rhs[i].clone() - f * pivot_rhs.clone();
        }
        let f = self.obj[col].clone();
        for (x, pr) in self.obj.iter_mut().zip(&pivot_row) {
            *x = x.clone() - f.clone() * pr.clone();
        }
        self.obj_val = self.obj_val.clone() - f * pivot_rhs;
        self.basis[r] = col;
    }

    /// Runs simplex iterations on the current objective row. Returns `false`
    /// when unbounded.
    fn optimize(&mut self) -> Result<bool, ()> {
        let ncols = self.obj.len();
        let max_iter = 50_000 + 50 * ncols;
        let mut stalled = 0usize;
        let mut bland = T::EXACT;
        for _ in 0..max_iter {
            let mut enter = None;
            for j in 0..ncols {
                if !self.allowed[j] || !self.obj[j].is_neg() {
                    continue;
                }
                match enter {
                    None => enter = Some(j),
                    Some(e) if !bland && self.obj[j] < self.obj[e] => enter = Some(j),
                    _ => {}
                }
                if bland {
                    break;
                }
            }
            let Some(col) = enter else {
                return Ok(true);
            };
            let mut leave: Option<(usize, T)> = None;
            for i in 0..self.rows.len() {
                if !self.rows[i][col].is_pos() {
                    continue;
                }
                let ratio = self.rhs[i].clone() / self.rows[i][col].clone();
                let better = match &leave {
                    None => true,
                    Some((l, best)) => ratio < *best || (ratio == *best && self.basis[i] < self.basis[*l]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((r, ratio)) = leave else {
                return Ok(false);
            };
            if ratio.is_pos() {
                stalled = 0;
            } else {
                stalled += 1;
                if stalled > 50 {
                    bland = true;
                }
            }
            self.pivot(r, col);
        }
        Err(())
    }
}

/// Solves `min c·x` subject to `A x = b`, `x ≥ 0`.
pub fn solve<T: LpScalar>(a: &[Vec<T>], b: &[T], c: &[T]) -> LpOutcome<T> {
    let m = a.len();
    let k = c.len();
    let ncols = k + m;
    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    let mut sign = Vec::with_capacity(m);
    for i in 0..m {
        let flip = b[i] < T::zero();
        let mut row: Vec<T> = a[i].iter().map(|x| if flip { -x.clone() } else { x.clone() }).collect();
        row.extend((0..m).map(|j| if j == i { T::one() } else { T::zero() }));
        rows.push(row);
        rhs.push(if flip { -b[i].clone() } else { b[i].clone() });
        sign.push(flip);
    }
    // phase one: reduced costs of sum of artificials
    let mut obj = vec![T::zero(); ncols];
    let mut obj_val = T::zero();
    for i in 0..m {
        for j in 0..k {
            obj[j] = obj[j].clone() - rows[i][j].clone();
        }
        obj_val = obj_val - rhs[i].clone();
    }
    let mut allowed = vec![true; ncols];
    let mut tab = Tableau { rows, rhs, obj, obj_val, basis: (k..k + m).collect(), allowed: allowed.clone() };
    match tab.optimize() {
        Ok(true) => {}
        Ok(false) => unreachable!("phase one is bounded below by zero"),
        Err(()) => return LpOutcome::Stalled,
    }
    let infeasibility = -tab.obj_val.clone();
    if infeasibility.is_pos() {
        let farkas = (0..m)
            .map(|i| {
                let y = T::one() - tab.obj[k + i].clone();
                if sign[i] {
                    -y
                } else {
                    y
                }
            })
            .collect();
        return LpOutcome::Infeasible { farkas };
    }

    // drive artificials out of the basis where possible
    for r in 0..m {
        if tab.basis[r] >= k {
            if let Some(j) = (0..k).find(|&j| tab.rows[r][j].is_pos() || tab.rows[r][j].is_neg()) {
                tab.pivot(r, j);
            }
        }
    }
    for slot in allowed.iter_mut().skip(k) {
        *slot = false;
    }
    tab.allowed = allowed;

    // phase two objective row
    let mut obj: Vec<T> = c.iter().cloned().chain((0..m).map(|_| T::zero())).collect();
    let mut obj_val = T::zero();
    for r in 0..m {
        let bcol = tab.basis[r];
        if bcol >= k {
            continue;
        }
        let cb = c[bcol].clone();
        for j in 0..ncols {
            obj[j] = obj[j].clone() - cb.clone() * tab.rows[r][j].clone();
        }
        obj_val = obj_val - cb * tab.rhs[r].clone();
    }
    tab.obj = obj;
    tab.obj_val = obj_val;
    match tab.optimize() {
        Ok(true) => {}
        Ok(false) => return LpOutcome::Unbounded,
        Err(()) => return LpOutcome::Stalled,
    }
    let mut x = vec![T::zero(); k];
    for r in 0..m {
        if tab.basis[r] < k {
            x[tab.basis[r]] = tab.rhs[r].clone();
        }
    }
    LpOutcome::Optimal { x, value: -tab.obj_val }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        rational(n, 1)
    }

    #[test]
    fn small_optimum_exact() {
        // min -x - y  s.t. x + 2y + s1 = 4, 3x + y + s2 = 6
        let a = vec![vec![q(1), q(2), q(1), q(0)], vec![q(3), q(1), q(0), q(1)]];
        let b = vec![q(4), q(6)];
        let c = vec![q(-1), q(-1), q(0), q(0)];
        match solve(&a, &b, &c) {
            LpOutcome::Optimal { x, value } => {
                assert_eq!(value, rational(-14, 5));
                assert_eq!(x[0], rational(8, 5));
                assert_eq!(x[1], rational(6, 5));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn small_optimum_float() {
        let a = vec![vec![1.0, 2.0, 1.0, 0.0], vec![3.0, 1.0, 0.0, 1.0]];
        match solve(&a, &[4.0, 6.0], &[-1.0, -1.0, 0.0, 0.0]) {
            LpOutcome::Optimal { value, .. } => assert!((value + 2.8).abs() < 1e-12),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn farkas_certificate() {
        // x + y = 1 and x + y = 2 is infeasible
        let a = vec![vec![q(1), q(1)], vec![q(1), q(1)]];
        let b = vec![q(1), q(2)];
        let LpOutcome::Infeasible { farkas } = solve(&a, &b, &[q(0), q(0)]) else {
            panic!("expected infeasible");
        };
        for j in 0..2 {
            let col: BigRational = (0..2).map(|i| farkas[i].clone() * a[i][j].clone()).sum();
            assert!(!col.is_positive());
        }
        let yb: BigRational = (0..2).map(|i| farkas[i].clone() * b[i].clone()).sum();
        assert!(yb.is_positive());
    }

    #[test]
    fn negative_rhs_and_unbounded() {
        // -x + s = -1  → x ≥ 1, min -x unbounded
        let a = vec![vec![q(-1), q(1)]];
        assert_eq!(solve(&a, &[q(-1)], &[q(-1), q(0)]), LpOutcome::Unbounded);
        match solve(&a, &[q(-1)], &[q(1), q(0)]) {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, q(1)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn redundant_rows() {
        let a = vec![vec![q(1), q(1)], vec![q(2), q(2)]];
        match solve(&a, &[q(1), q(2)], &[q(1), q(2)]) {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, q(1)),
            other => panic!("{other:?}"),
        }
    }
}
