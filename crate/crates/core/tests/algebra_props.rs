use mds_core::algebra::{star_generic, CatVector};
use mds_core::growth::{star_scaled, AlgNum};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use proptest::prelude::*;

fn cat(e: [u128; 6]) -> CatVector {
    CatVector(e.map(BigUint::from))
}

/// Entries anywhere in `u128`, with zeros and small values mixed in.
fn entry() -> impl Strategy<Value = u128> {
    prop_oneof![Just(0u128), 0u128..16, any::<u128>()]
}

fn vector() -> impl Strategy<Value = CatVector> {
    [entry(), entry(), entry(), entry(), entry(), entry()].prop_map(cat)
}

/// A vector and one it majorizes: the larger one adds a nonnegative vector
/// and shifts mass from S to G, from L to S, and from p to d.
fn majorized_pair() -> impl Strategy<Value = (CatVector, CatVector)> {
    (vector(), vector(), any::<[u64; 3]>()).prop_map(|(low, add, shifts)| {
        let mut high: [BigUint; 6] = std::array::from_fn(|c| &low.0[c] + &add.0[c]);
        let moves = [(1, 0), (2, 1), (4, 3)];
        for ((from, to), s) in moves.into_iter().zip(shifts) {
            let amount = &high[from] % BigUint::from(s.max(1));
            high[from] -= &amount;
            high[to] += amount;
        }
        (CatVector(high), low)
    })
}

fn v0() -> CatVector {
    CatVector::seed()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn bilinear(a in vector(), a2 in vector(), b in vector()) {
        prop_assert_eq!((&a + &a2).star(&b), &a.star(&b) + &a2.star(&b));
        prop_assert_eq!(b.star(&(&a + &a2)), &b.star(&a) + &b.star(&a2));
    }

    #[test]
    fn right_commutative(u in vector(), v in vector(), w in vector()) {
        prop_assert_eq!(u.star(&v).star(&w), u.star(&w).star(&v));
    }

    #[test]
    fn total_commutative(u in vector(), v in vector()) {
        prop_assert_eq!(u.star(&v).total(), v.star(&u).total());
    }

    #[test]
    fn twins_are_idempotent(v in vector()) {
        prop_assert_eq!(v.star(&v0()).star(&v0()), v.star(&v0()));
    }

    #[test]
    fn appending_a_path_of_three(v in vector()) {
        let [g, s, l, d, p, f] = v.0.clone();
        let expected = CatVector([
            &g + &s + &l,
            &d + &f,
            &d + &p,
            &g + &s + &d + &p,
            f.clone(),
            &g + &d + &f,
        ]);
        prop_assert_eq!(v0().star(&v0().star(&v0().star(&v))), expected);
    }

    #[test]
    fn star_is_monotone((a, a2) in majorized_pair(), (b, b2) in majorized_pair()) {
        prop_assert!(a.majorizes(&a2));
        prop_assert!(a.total() >= a2.total());
        prop_assert!(a.star(&b).majorizes(&a2.star(&b2)));
    }

    #[test]
    fn supermultiplicative_composition(v in vector(), w in vector()) {
        let lhs = v.star(&v0()).star(&w.star(&v0()));
        prop_assert_eq!(lhs, v.star(&v0()).scale(&w.star(&v0()).total()));
    }

    #[test]
    fn scaled_star_embeds_integer_star(a in any::<[u32; 6]>(), b in any::<[u32; 6]>()) {
        let lift = |e: [u32; 6]| e.map(|x| AlgNum::from_rational(BigRational::from_integer(BigInt::from(x))));
        let exact = star_generic(&a.map(BigUint::from), &b.map(BigUint::from));
        let scaled = star_scaled(&lift(a), &lift(b));
        for c in 0..6 {
            let want = AlgNum::from_rational(BigRational::from_integer(BigInt::from(exact[c].clone())));
            prop_assert_eq!(&scaled[c], &want);
        }
    }
}

fn algnum() -> impl Strategy<Value = AlgNum> {
    proptest::collection::vec((-50i64..50, 1i64..20), 13).prop_map(|c| {
        c.into_iter().enumerate().fold(AlgNum::zero(), |acc, (i, (n, d))| {
            &acc + &AlgNum::monomial(BigRational::new(n.into(), d.into()), i as u32)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn algnum_ring_laws(a in algnum(), b in algnum(), c in algnum()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
    }

    #[test]
    fn algnum_sign_matches_float(a in algnum()) {
        let f = a.to_f64();
        if f.abs() > 1e-6 {
            prop_assert_eq!(a.signum().unwrap(), f.partial_cmp(&0.0).unwrap());
        }
    }
}
