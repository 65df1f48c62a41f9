//! Exact arithmetic in `Q(x)` with `x^13 = 1/95`, where `x = 95^(-1/13)`.
//!
//! Elements are coefficient vectors over `1, x, ..., x^12`. Since `t^13 - 95`
//! is irreducible these coordinates are unique, so equality is structural and
//! the sign of a nonzero element is found by interval evaluation.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::GrowthError;

pub const DEGREE: usize = 13;
pub const BASE: u32 = 95;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AlgNum {
    c: [BigRational; DEGREE],
}

fn q_int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl AlgNum {
    pub fn zero() -> Self {
        Self { c: std::array::from_fn(|_| BigRational::zero()) }
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_rational(r: BigRational) -> Self {
        let mut out = Self::zero();
        out.c[0] = r;
        out
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(q_int(n))
    }

    /// `r * x^power`, reduced with `x^13 = 1/95`.
    pub fn monomial(r: BigRational, power: u32) -> Self {
        let q = power as usize / DEGREE;
        let rem = power as usize % DEGREE;
        let denom = BigInt::from(BASE).pow(q as u32);
        let mut out = Self::zero();
        out.c[rem] = r / BigRational::from_integer(denom);
        out
    }

    /// `x = 95^(-1/13)`.
    pub fn x() -> Self {
        Self::monomial(BigRational::one(), 1)
    }

    pub fn coefficients(&self) -> &[BigRational; DEGREE] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Self { c: std::array::from_fn(|i| &self.c[i] * r) }
    }

    pub fn to_f64(&self) -> f64 {
        let x = x_f64();
        let mut acc = 0.0;
        for c in self.c.iter().rev() {
            acc = acc * x + c.to_f64().unwrap_or(f64::NAN);
        }
        acc
    }

    /// Sign, certified by interval evaluation on a precision ladder.
    pub fn signum(&self) -> Result<Ordering, GrowthError> {
        if self.is_zero() {
            return Ok(Ordering::Equal);
        }
        let threshold = BigRational::new(BigInt::one(), BigInt::from(10u32).pow(30));
        for level in 0.. {
            let bounds = bounds(level);
            let (lo, hi) = self.enclose(bounds);
            if lo.is_positive() {
                return Ok(Ordering::Greater);
            }
            if hi.is_negative() {
                return Ok(Ordering::Less);
            }
            if hi - lo < threshold {
                return Err(GrowthError::PrecisionExhausted);
            }
        }
        unreachable!()
    }

    /// Encloses the value given enclosures of the powers of `x`. Positive and
    /// negative coefficients are handled separately since every power of
    /// `x > 0` increases with `x`.
    fn enclose(&self, b: &Bounds) -> (BigRational, BigRational) {
        let mut lo = BigRational::zero();
        let mut hi = BigRational::zero();
        for (i, c) in self.c.iter().enumerate() {
            if c.is_positive() {
                lo += c * &b.lo[i];
                hi += c * &b.hi[i];
            } else if c.is_negative() {
                lo += c * &b.hi[i];
                hi += c * &b.lo[i];
            }
        }
        (lo, hi)
    }

    pub fn cmp_exact(&self, other: &Self) -> Result<Ordering, GrowthError> {
        (self - other).signum()
    }
}

pub fn x_f64() -> f64 {
    (BASE as f64).powf(-1.0 / DEGREE as f64)
}

/// Enclosures `[a/2^k, (a+1)/2^k]` of `x` and of its powers up to 12.
struct Bounds {
    lo: Vec<BigRational>,
    hi: Vec<BigRational>,
}

fn make_bounds(k: u32) -> Bounds {
    // a = floor(2^k x) is the largest integer with 95 a^13 <= 2^(13k)
    let y = (BigUint::one() << (13 * k as usize)) / BigUint::from(BASE);
    let a = BigInt::from(y.nth_root(13));
    let den = BigInt::one() << k as usize;
    let xlo = BigRational::new(a.clone(), den.clone());
    let xhi = BigRational::new(a + 1, den);
    let mut lo = vec![BigRational::one()];
    let mut hi = vec![BigRational::one()];
    for i in 1..DEGREE {
        lo.push(&lo[i - 1] * &xlo);
        hi.push(&hi[i - 1] * &xhi);
    }
    Bounds { lo, hi }
}

const LADDER: usize = 6;

fn bounds(level: usize) -> &'static Bounds {
    static CACHE: [OnceLock<Bounds>; LADDER] = [const { OnceLock::new() }; LADDER];
    let level = level.min(LADDER - 1);
    CACHE[level].get_or_init(|| make_bounds(64 << level))
}

impl Add for &AlgNum {
    type Output = AlgNum;
    fn add(self, rhs: &AlgNum) -> AlgNum {
        AlgNum { c: std::array::from_fn(|i| &self.c[i] + &rhs.c[i]) }
    }
}

impl Add for AlgNum {
    type Output = AlgNum;
    fn add(self, rhs: AlgNum) -> AlgNum {
        &self + &rhs
    }
}

impl Sub for &AlgNum {
    type Output = AlgNum;
    fn sub(self, rhs: &AlgNum) -> AlgNum {
        AlgNum { c: std::array::from_fn(|i| &self.c[i] - &rhs.c[i]) }
    }
}

impl Neg for &AlgNum {
    type Output = AlgNum;
    fn neg(self) -> AlgNum {
        AlgNum { c: std::array::from_fn(|i| -&self.c[i]) }
    }
}

impl Mul for &AlgNum {
    type Output = AlgNum;
    fn mul(self, rhs: &AlgNum) -> AlgNum {
        let base = q_int(BASE as i64);
        let mut out = AlgNum::zero();
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let prod = a * b;
                if i + j < DEGREE {
                    out.c[i + j] += prod;
                } else {
                    out.c[i + j - DEGREE] += prod / &base;
                }
            }
        }
        out
    }
}

impl fmt::Debug for AlgNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for AlgNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .c
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| if i == 0 { c.to_string() } else { format!("{c}*x^{i}") })
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}
