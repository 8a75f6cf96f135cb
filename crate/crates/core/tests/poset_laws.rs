use nflab::poset::{enumerate, parse_poset, poset_to_json, Kind};
use nflab::{BitSet, FinitePoset};
use proptest::prelude::*;

/// A random poset on `n` elements: pairs `i < j` related with some
/// probability, closed transitively by the constructor.
fn arb_poset() -> impl Strategy<Value = FinitePoset> {
    (1usize..=7).prop_flat_map(|n| {
        proptest::collection::vec(proptest::bool::weighted(0.3), n * (n - 1) / 2).prop_map(move |bits| {
            let mut pairs = Vec::new();
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if bits[k] {
                        pairs.push((i, j));
                    }
                    k += 1;
                }
            }
            FinitePoset::new((0..n).map(|i| format!("e{i}")).collect(), &pairs).unwrap()
        })
    })
}

fn arb_subset(n: usize) -> impl Strategy<Value = BitSet> {
    proptest::collection::vec(any::<bool>(), n)
        .prop_map(move |bits| BitSet::from_indices(n, (0..n).filter(|&i| bits[i])))
}

proptest! {
    #[test]
    fn json_round_trip_preserves_canonical_form(p in arb_poset()) {
        let back = parse_poset(&poset_to_json(&p)).unwrap();
        prop_assert_eq!(back.canonical_form().key().to_vec(), p.canonical_form().key().to_vec());
        prop_assert_eq!(poset_to_json(&back), poset_to_json(&p));
    }

    #[test]
    fn upward_closure_is_a_closure_operator(
        (p, x, y) in arb_poset().prop_flat_map(|p| {
            let n = p.len();
            (Just(p), arb_subset(n), arb_subset(n))
        })
    ) {
        let cx = p.upward_closure(&x);
        prop_assert!(x.is_subset(&cx));
        prop_assert_eq!(p.upward_closure(&cx), cx.clone());
        let xy = x.union(&y);
        prop_assert!(cx.is_subset(&p.upward_closure(&xy)));
        prop_assert!(p.is_upset(&cx));
    }
}

#[test]
fn kinds_respect_the_implication_chain() {
    for p in enumerate::posets(6).into_iter().flatten() {
        let k = p.kind().kind;
        if k.at_least(Kind::BooleanAlgebra) {
            assert!(k.at_least(Kind::DistributiveLattice));
        }
        if k.at_least(Kind::DistributiveLattice) {
            assert!(k.at_least(Kind::Lattice) && p.is_lattice());
        }
        if k.at_least(Kind::Lattice) {
            assert!(p.has_meets() && p.has_joins());
        }
    }
}

fn diamond_or_pentagon_inside(p: &FinitePoset) -> bool {
    let m5 = FinitePoset::new(
        (0..5).map(|i| i.to_string()).collect(),
        &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)],
    )
    .unwrap()
    .canonical_form();
    let n5 = FinitePoset::new((0..5).map(|i| i.to_string()).collect(), &[(0, 1), (1, 2), (0, 3), (2, 4), (3, 4)])
        .unwrap()
        .canonical_form();
    let n = p.len();
    (0u32..1 << n).filter(|m| m.count_ones() == 5).any(|mask| {
        let sel = BitSet::from_indices(n, (0..n).filter(|i| mask >> i & 1 == 1));
        let closed = sel.iter().all(|x| sel.iter().all(|y| sel.contains(p.m(x, y)) && sel.contains(p.j(x, y))));
        if !closed {
            return false;
        }
        let form = p.induced(&sel).canonical_form();
        form.key() == m5.key() || form.key() == n5.key()
    })
}

#[test]
fn distributivity_agrees_with_forbidden_sublattices() {
    for p in enumerate::lattices(8).into_iter().flatten() {
        let n = p.len();
        let triples = (0..n).all(|x| {
            (0..n).all(|y| (0..n).all(|z| p.m(x, p.j(y, z)) == p.j(p.m(x, y), p.m(x, z))))
        });
        assert_eq!(triples, !diamond_or_pentagon_inside(&p), "{}", poset_to_json(&p));
        assert_eq!(triples, p.kind().kind.at_least(Kind::DistributiveLattice));
    }
}

#[test]
fn meets_of_unions_split() {
    for p in enumerate::lattices(6).into_iter().flatten() {
        let n = p.len();
        for xm in 1u32..1 << n {
            let x = BitSet::from_indices(n, (0..n).filter(|i| xm >> i & 1 == 1));
            for ym in 1u32..1 << n {
                let y = BitSet::from_indices(n, (0..n).filter(|i| ym >> i & 1 == 1));
                let whole = p.meet_of_set(&x.union(&y)).unwrap();
                let parts = BitSet::from_indices(n, [p.meet_of_set(&x).unwrap(), p.meet_of_set(&y).unwrap()]);
                assert_eq!(whole, p.meet_of_set(&parts).unwrap());
            }
        }
    }
}

#[test]
fn enumeration_counts() {
    let lattices: Vec<usize> = enumerate::lattices(8).iter().map(Vec::len).collect();
    assert_eq!(lattices, vec![1, 1, 1, 2, 5, 15, 53, 222]);
    let distributive: Vec<usize> = enumerate::distributive_lattices(8).iter().map(Vec::len).collect();
    assert_eq!(distributive, vec![1, 1, 1, 2, 3, 5, 8, 15]);
}
