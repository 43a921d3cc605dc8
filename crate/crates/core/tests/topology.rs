use proptest::prelude::*;
use topogame::topology::{canonical_code, enumerate_topologies, validate, FiniteSpace, PointSet};

/// A random preorder closed under transitivity, given as minimal
/// neighbourhoods.
fn arb_space(max_n: usize) -> impl Strategy<Value = FiniteSpace> {
    (1..=max_n)
        .prop_flat_map(|n| (Just(n), proptest::collection::vec(0u32..(1 << n), n)))
        .prop_map(|(n, raw)| {
            let mut nb: Vec<PointSet> = raw
                .into_iter()
                .enumerate()
                .map(|(x, m)| PointSet::from_bits(m).with(x))
                .collect();
            // transitive closure of "y ∈ U(x)"
            loop {
                let next: Vec<PointSet> = nb
                    .iter()
                    .map(|u| u.iter().fold(*u, |acc, y| acc.union(nb[y])))
                    .collect();
                if next == nb {
                    break;
                }
                nb = next;
            }
            FiniteSpace::with_points(n, nb).unwrap()
        })
}

proptest! {
    #[test]
    fn opens_form_a_topology(s in arb_space(6)) {
        let opens = s.opens();
        prop_assert!(opens.contains(&PointSet::EMPTY));
        prop_assert!(opens.contains(&s.carrier()));
        for &a in &opens {
            for &b in &opens {
                prop_assert!(s.is_open(a.union(b)));
                prop_assert!(s.is_open(a.intersection(b)));
            }
        }
    }

    #[test]
    fn closure_and_interior_are_dual(s in arb_space(6), bits in any::<u32>()) {
        let a = PointSet::from_bits(bits & s.carrier().bits());
        let c = s.carrier();
        prop_assert_eq!(s.closure(a), c.difference(s.interior(c.difference(a))));
        prop_assert_eq!(s.closure(s.closure(a)), s.closure(a));
        prop_assert!(a.is_subset(s.closure(a)));
        prop_assert!(s.is_closed(s.closure(a)));
    }

    #[test]
    fn minimal_neighbourhoods_are_least(s in arb_space(5)) {
        prop_assert!(validate(s.n(), s.min_nbhds()).is_ok());
        for x in s.points() {
            let m = s.min_nbhd(x);
            prop_assert!(s.opens_containing(x).all(|u| m.is_subset(u)));
        }
    }

    #[test]
    fn relabeling_keeps_the_canonical_code(s in arb_space(5), seed in any::<u64>()) {
        let n = s.n();
        let mut perm: Vec<usize> = (0..n).collect();
        // a seeded rotation plus swap keeps the test deterministic per case
        perm.rotate_left((seed as usize) % n);
        if n > 1 {
            perm.swap(0, (seed as usize / 7) % n);
        }
        let t = s.permuted(&perm);
        prop_assert_eq!(canonical_code(&s), canonical_code(&t));
        prop_assert_eq!(s.opens().len(), t.opens().len());
    }
}

#[test]
fn every_enumerated_space_is_valid_and_distinct() {
    for n in 1..=4 {
        let all: Vec<FiniteSpace> = enumerate_topologies(n).unwrap().collect();
        for s in &all {
            assert!(validate(n, s.min_nbhds()).is_ok());
        }
        let distinct: std::collections::BTreeSet<_> = all.iter().map(|s| s.min_nbhds().to_vec()).collect();
        assert_eq!(distinct.len(), all.len());
    }
}
