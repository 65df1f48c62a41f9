//! Polytope vertex files.
//!
//! One record per line: `index num/den g s l d p f power`, optionally followed
//! by `= a*b ...` naming identities `v_index = v_a ⋆ v_b`. Lines starting with
//! `#` are comments, except `#! sha256 <hex>`, which pins the SHA-256 of the
//! canonical rendering of all records.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use sha2::{Digest, Sha256};

use crate::algebra::{star_generic, transform_generic};
use crate::error::GrowthError;

use super::algnum::AlgNum;

pub type ScaledVec = [AlgNum; 6];

pub const BUNDLED: &str = include_str!("../../data/polytope.txt");

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub index: usize,
    pub prefactor: BigRational,
    pub entries: [u64; 6],
    pub power: u32,
    /// Pairs `(a, b)` with `v_index = v_a ⋆ v_b`.
    pub identities: Vec<(usize, usize)>,
    pub value: ScaledVec,
}

impl Vertex {
    pub fn new(index: usize, prefactor: BigRational, entries: [u64; 6], power: u32) -> Self {
        let value = entries.map(|e| AlgNum::monomial(&prefactor * BigRational::from_integer(BigInt::from(e)), power));
        Self { index, prefactor, entries, power, identities: Vec::new(), value }
    }

    fn canonical(&self) -> String {
        let mut s = format!(
            "{} {}/{} {} {}",
            self.index,
            self.prefactor.numer(),
            self.prefactor.denom(),
            self.entries.map(|e| e.to_string()).join(" "),
            self.power
        );
        if !self.identities.is_empty() {
            s.push_str(" =");
            for (a, b) in &self.identities {
                s.push_str(&format!(" {a}*{b}"));
            }
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polytope {
    pub vertices: Vec<Vertex>,
}

impl Polytope {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Vertex by its 1-based index in the file.
    pub fn get(&self, index: usize) -> Option<&Vertex> {
        self.vertices.iter().find(|v| v.index == index)
    }

    pub fn checksum(&self) -> String {
        checksum_of(&self.vertices)
    }

    /// The polytope with one vertex removed; other indices are unchanged.
    pub fn without(&self, index: usize) -> Self {
        Self { vertices: self.vertices.iter().filter(|v| v.index != index).cloned().collect() }
    }

    pub fn bundled() -> Self {
        load_polytope(BUNDLED).expect("bundled polytope parses")
    }
}

fn checksum_of(vertices: &[Vertex]) -> String {
    let mut h = Sha256::new();
    for v in vertices {
        h.update(v.canonical().as_bytes());
        h.update(b"\n");
    }
    hex::encode(h.finalize())
}

pub fn bundled_checksum() -> String {
    Polytope::bundled().checksum()
}

fn parse_err(line: usize, msg: impl Into<String>) -> GrowthError {
    GrowthError::Parse { line, msg: msg.into() }
}

pub fn load_polytope(text: &str) -> Result<Polytope, GrowthError> {
    let mut declared: Option<String> = None;
    let mut vertices: Vec<Vertex> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if let Some(rest) = line.strip_prefix("#!") {
            let f: Vec<&str> = rest.split_whitespace().collect();
            match f.as_slice() {
                ["sha256", _] if declared.is_some() => return Err(parse_err(lineno, "duplicate checksum directive")),
                ["sha256", hex] => declared = Some(hex.to_ascii_lowercase()),
                _ => return Err(parse_err(lineno, "expected `#! sha256 <hex>`")),
            }
            continue;
        }
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let f: Vec<&str> = line.split_whitespace().collect();
        if f.len() < 9 {
            return Err(parse_err(lineno, format!("expected 9 fields, found {}", f.len())));
        }
        let int = |s: &str| s.parse::<u64>().map_err(|e| parse_err(lineno, format!("bad integer {s:?}: {e}")));
        let index = int(f[0])? as usize;
        let (num, den) = f[1].split_once('/').ok_or_else(|| parse_err(lineno, "prefactor must be num/den"))?;
        let num: BigInt = num.parse().map_err(|_| parse_err(lineno, "bad prefactor numerator"))?;
        let den: BigInt = den.parse().map_err(|_| parse_err(lineno, "bad prefactor denominator"))?;
        if den.is_zero() || num.is_negative() || den.is_negative() {
            return Err(parse_err(lineno, "prefactor must be a nonnegative fraction"));
        }
        let mut entries = [0u64; 6];
        for (slot, s) in entries.iter_mut().zip(&f[2..8]) {
            *slot = int(s)?;
        }
        let power = u32::try_from(int(f[8])?).map_err(|_| parse_err(lineno, "power too large"))?;
        let mut v = Vertex::new(index, BigRational::new(num, den), entries, power);
        if f.len() > 9 {
            if f[9] != "=" {
                return Err(parse_err(lineno, "trailing fields must start with `=`"));
            }
            for tok in &f[10..] {
                let (a, b) = tok.split_once('*').ok_or_else(|| parse_err(lineno, format!("bad identity {tok:?}")))?;
                v.identities.push((int(a)? as usize, int(b)? as usize));
            }
        }
        if vertices.iter().any(|w| w.index == index) {
            return Err(parse_err(lineno, format!("duplicate index {index}")));
        }
        vertices.push(v);
    }
    if let Some(declared) = declared {
        let actual = checksum_of(&vertices);
        if declared != actual {
            return Err(GrowthError::ChecksumMismatch { declared, actual });
        }
    }
    Ok(Polytope { vertices })
}

pub fn star_scaled(a: &ScaledVec, b: &ScaledVec) -> ScaledVec {
    star_generic(a, b)
}

pub fn transform_scaled(v: &ScaledVec) -> ScaledVec {
    transform_generic(v)
}

/// `G + S + d + p`.
pub fn total_scaled(v: &ScaledVec) -> AlgNum {
    &(&(&v[0] + &v[1]) + &v[3]) + &v[4]
}

/// `(0, 1, 0, 0, 0, 1) * x`.
pub fn scaled_seed() -> ScaledVec {
    Vertex::new(0, BigRational::one(), [0, 1, 0, 0, 0, 1], 1).value
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_entries() {
        let p = Polytope::bundled();
        assert_eq!(p.len(), 55);
        let v3 = p.get(3).unwrap();
        assert_eq!((v3.entries, v3.power), ([1, 0, 0, 1, 0, 0], 2));
        let v55 = p.get(55).unwrap();
        assert_eq!((v55.entries, v55.power), ([127, 3969, 0, 127, 7938, 3969], 27));
        let v1 = p.get(1).unwrap();
        assert_eq!(v1.prefactor, BigRational::new(9.into(), 10.into()));
        assert_eq!((v1.entries, v1.power), ([1, 0, 0, 0, 0, 0], 0));
        assert_eq!(p.get(2).unwrap().value, scaled_seed());
    }

    #[test]
    fn checksum_directive() {
        let p = Polytope::bundled();
        assert!(BUNDLED.contains(&format!("#! sha256 {}", p.checksum())));
        let bad = BUNDLED.replace(&p.checksum(), &"0".repeat(64));
        assert!(matches!(load_polytope(&bad), Err(GrowthError::ChecksumMismatch { .. })));
        let edited = BUNDLED.replace("\n3 1/1 1 0 0 1 0 0 2", "\n3 1/1 1 0 0 1 0 0 3");
        assert!(matches!(load_polytope(&edited), Err(GrowthError::ChecksumMismatch { .. })));
        let twice = format!("#! sha256 {}\n{BUNDLED}", p.checksum());
        assert!(matches!(load_polytope(&twice), Err(GrowthError::Parse { .. })));
    }

    #[test]
    fn malformed_records() {
        assert!(matches!(load_polytope("1 1/1 0 0 0\n"), Err(GrowthError::Parse { line: 1, .. })));
        assert!(matches!(load_polytope("1 1 0 0 0 0 0 0 0\n"), Err(GrowthError::Parse { .. })));
        assert!(matches!(load_polytope("1 1/0 0 0 0 0 0 0 0\n"), Err(GrowthError::Parse { .. })));
        assert!(matches!(load_polytope("1 1/1 0 0 0 0 0 0 0 x 1*1\n"), Err(GrowthError::Parse { .. })));
        assert!(matches!(load_polytope("#! md5 abc\n"), Err(GrowthError::Parse { .. })));
    }
}
