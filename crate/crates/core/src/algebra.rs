//! Category vectors `(G, S, L, d, p, f)` and the composition `⋆`.
//!
//! A rooted tree's vector counts partial solutions by the state of the root.
//! Root in the set: `G` (has a private neighbour among its neighbours), `S`
//! (only itself), `L` (none yet). Root outside: `d` (dominated, not needed as
//! anyone's private neighbour), `p` (the sole private neighbour of some set
//! vertex), `f` (not dominated yet). `G + S + d + p` of them are minimal
//! dominating sets of the tree itself.

use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigUint;
use num_traits::Zero;

pub const G: usize = 0;
pub const S: usize = 1;
pub const L: usize = 2;
pub const D: usize = 3;
pub const P: usize = 4;
pub const F: usize = 5;

pub const CATEGORY_NAMES: [&str; 6] = ["G", "S", "L", "d", "p", "f"];

/// The bilinear terms of `⋆` grouped by the category they feed, in the order
/// they are written out. Each pair is `(category of left operand, category of
/// right operand)`; the left operand keeps its root.
pub const STAR_TERMS: [&[(usize, usize)]; 6] = [
    &[(G, G), (G, D), (G, F), (S, F), (L, F)],
    &[(S, D)],
    &[(S, G), (L, G), (L, D)],
    &[(D, G), (D, S), (D, D), (D, P), (F, G), (F, S)],
    &[(P, D), (P, P), (F, L)],
    &[(F, D), (F, P)],
];

/// `⋆` over any commutative semiring with by-reference multiplication.
pub fn star_generic<T>(a: &[T; 6], b: &[T; 6]) -> [T; 6]
where
    T: Clone + Add<Output = T>,
    for<'x> &'x T: Mul<&'x T, Output = T>,
{
    std::array::from_fn(|c| {
        let terms = STAR_TERMS[c];
        let (i, j) = terms[0];
        let mut acc = &a[i] * &b[j];
        for &(i, j) in &terms[1..] {
            acc = acc + &a[i] * &b[j];
        }
        acc
    })
}

/// `(G, G+S, G+S+L, d, d+p, f)`, the coordinates in which majorization is
/// an elementwise comparison.
pub fn transform_generic<T>(v: &[T; 6]) -> [T; 6]
where
    T: Clone + Add<Output = T>,
{
    let gs = v[G].clone() + v[S].clone();
    [
        v[G].clone(),
        gs.clone(),
        gs + v[L].clone(),
        v[D].clone(),
        v[D].clone() + v[P].clone(),
        v[F].clone(),
    ]
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct CatVector(pub [BigUint; 6]);

impl CatVector {
    pub fn new(entries: [u64; 6]) -> Self {
        Self(entries.map(BigUint::from))
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// The vector of a single vertex.
    pub fn seed() -> Self {
        Self::new([0, 1, 0, 0, 0, 1])
    }

    pub fn star(&self, other: &Self) -> Self {
        Self(star_generic(&self.0, &other.0))
    }

    /// Number of minimal dominating sets: `G + S + d + p`.
    pub fn total(&self) -> BigUint {
        &self.0[G] + &self.0[S] + &self.0[D] + &self.0[P]
    }

    pub fn transform(&self) -> [BigUint; 6] {
        transform_generic(&self.0)
    }

    /// `self ≽ other`.
    pub fn majorizes(&self, other: &Self) -> bool {
        self.transform().iter().zip(other.transform().iter()).all(|(a, b)| a >= b)
    }

    pub fn l1(&self) -> BigUint {
        self.0.iter().sum()
    }

    pub fn scale(&self, k: &BigUint) -> Self {
        Self(self.0.clone().map(|x| x * k))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
}

impl Add for &CatVector {
    type Output = CatVector;
    fn add(self, rhs: &CatVector) -> CatVector {
        CatVector(std::array::from_fn(|i| &self.0[i] + &rhs.0[i]))
    }
}

impl fmt::Display for CatVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub fn star(a: &CatVector, b: &CatVector) -> CatVector {
    a.star(b)
}

pub fn total(v: &CatVector) -> BigUint {
    v.total()
}

pub fn seed() -> CatVector {
    CatVector::seed()
}

pub fn transform(v: &CatVector) -> [BigUint; 6] {
    v.transform()
}

pub fn majorizes(a: &CatVector, b: &CatVector) -> bool {
    a.majorizes(b)
}
