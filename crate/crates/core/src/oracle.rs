//! Brute-force ground truth over vertex subsets.

use crate::error::OracleError;
use crate::tree::Tree;

pub const ORACLE_LIMIT: usize = 26;

fn membership(t: &Tree, set: &[usize]) -> Vec<bool> {
    let mut inside = vec![false; t.n()];
    for &v in set {
        inside[v] = true;
    }
    inside
}

/// Number of members of `inside` in the closed neighbourhood of `v`.
fn cover_count(t: &Tree, inside: &[bool], v: usize) -> usize {
    usize::from(inside[v]) + t.neighbors(v).iter().filter(|&&u| inside[u]).count()
}

pub fn is_dominating(t: &Tree, set: &[usize]) -> bool {
    let inside = membership(t, set);
    (0..t.n()).all(|v| cover_count(t, &inside, v) > 0)
}

/// Dominating, and every member has a private neighbour (possibly itself).
pub fn is_minimal_dominating(t: &Tree, set: &[usize]) -> bool {
    let inside = membership(t, set);
    if !(0..t.n()).all(|v| cover_count(t, &inside, v) > 0) {
        return false;
    }
    set.iter().all(|&a| {
        std::iter::once(a)
            .chain(t.neighbors(a).iter().copied())
            .any(|b| cover_count(t, &inside, b) == 1)
    })
}

/// Dominating, and no set obtained by dropping one member dominates.
pub fn is_minimal_by_subsets(t: &Tree, set: &[usize]) -> bool {
    if !is_dominating(t, set) {
        return false;
    }
    (0..set.len()).all(|skip| {
        let rest: Vec<usize> = set.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
        !is_dominating(t, &rest)
    })
}

/// All minimal dominating sets, each sorted, in lexicographic order.
pub fn brute_force_mds(t: &Tree) -> Result<Vec<Vec<usize>>, OracleError> {
    let n = t.n();
    if n > ORACLE_LIMIT {
        return Err(OracleError::TooLarge { n, limit: ORACLE_LIMIT });
    }
    let closed: Vec<u32> = (0..n)
        .map(|v| t.neighbors(v).iter().fold(1u32 << v, |m, &u| m | (1 << u)))
        .collect();
    // settled[i]: vertices whose closed neighbourhood lies within 0..=i, so
    // their domination is decided once vertex i is decided
    let mut settled = vec![Vec::new(); n];
    for v in 0..n {
        let hi = 31 - closed[v].leading_zeros() as usize;
        settled[hi].push(v);
    }

    let mut out = Vec::new();
    // iterative depth-first search over in/out decisions for vertices in order
    let mut mask: u32 = 0;
    let mut depth = 0usize;
    let mut choice = vec![0u8; n + 1];
    loop {
        if depth == n {
            if is_minimal_mask(&closed, mask) {
                out.push((0..n).filter(|&v| mask >> v & 1 == 1).collect::<Vec<_>>());
            }
            depth -= 1;
        } else if choice[depth] < 2 {
            let take = choice[depth] == 1;
            choice[depth] += 1;
            if take {
                mask |= 1 << depth;
            } else {
                mask &= !(1 << depth);
            }
            if settled[depth].iter().all(|&v| closed[v] & mask != 0) {
                depth += 1;
                choice[depth] = 0;
            }
            continue;
        } else {
            mask &= !(1 << depth);
            if depth == 0 {
                break;
            }
            depth -= 1;
        }
    }
    out.sort();
    Ok(out)
}

fn is_minimal_mask(closed: &[u32], mask: u32) -> bool {
    let mut once = 0u32;
    let mut twice = 0u32;
    let mut m = mask;
    while m != 0 {
        let v = m.trailing_zeros() as usize;
        m &= m - 1;
        twice |= once & closed[v];
        once |= closed[v];
    }
    let private = once & !twice;
    let mut m = mask;
    while m != 0 {
        let v = m.trailing_zeros() as usize;
        m &= m - 1;
        if closed[v] & private == 0 {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn predicates() {
        let p2 = Tree::path(2);
        let p3 = Tree::path(3);
        let p4 = Tree::path(4);
        assert!(is_dominating(&p2, &[0]));
        assert!(!is_dominating(&p3, &[0]));
        assert!(is_dominating(&p4, &[0, 1, 2, 3]));
        assert!(is_minimal_dominating(&p4, &[1, 2]));
        assert!(is_minimal_by_subsets(&p4, &[1, 2]));
        assert!(!is_minimal_dominating(&p3, &[0, 1]));
        assert!(!is_minimal_by_subsets(&p3, &[0, 1]));
        assert!(!is_minimal_dominating(&p3, &[]));
    }

    #[test]
    fn small_families() {
        assert_eq!(brute_force_mds(&Tree::path(3)).unwrap(), vec![vec![0, 2], vec![1]]);
        assert_eq!(brute_force_mds(&Tree::path(4)).unwrap().len(), 4);
        assert_eq!(brute_force_mds(&Tree::singleton()).unwrap(), vec![vec![0]]);
        let star = Tree::new(5, (1..5).map(|v| (0, v))).unwrap();
        assert_eq!(brute_force_mds(&star).unwrap(), vec![vec![0], vec![1, 2, 3, 4]]);
        assert!(brute_force_mds(&Tree::path(27)).is_err());
    }

    #[test]
    fn characterizations_agree_on_all_subsets() {
        let t = Tree::new(7, [(0, 1), (1, 2), (1, 3), (3, 4), (3, 5), (5, 6)]).unwrap();
        for mask in 0u32..(1 << 7) {
            let set: Vec<usize> = (0..7).filter(|&v| mask >> v & 1 == 1).collect();
            assert_eq!(is_minimal_dominating(&t, &set), is_minimal_by_subsets(&t, &set));
        }
    }
}
