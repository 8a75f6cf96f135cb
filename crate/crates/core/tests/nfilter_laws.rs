use nflab::nfilter::{
    enumerate_n_filters, generate_n_filter, is_m_prime_n_filter, is_n_filter, prime_filters, Degree,
};
use nflab::poset::{enumerate, is_ideal_subposet};
use nflab::structures::{
    canonical, direct_product, dual_product, for_each_hom, is_isomorphic, Canonical, HomSearch, Homomorphism,
    Signature, Structure,
};
use nflab::{BitSet, FinitePoset};
use std::sync::Arc;

fn subsets(n: usize) -> impl Iterator<Item = BitSet> {
    (0u64..1 << n).map(move |m| BitSet::from_mask(n, m))
}

fn flat(levels: Vec<Vec<FinitePoset>>) -> Vec<FinitePoset> {
    levels.into_iter().flatten().collect()
}

#[test]
fn smaller_degrees_are_stronger() {
    for p in flat(enumerate::meet_semilattices(7)) {
        for u in p.upsets() {
            let holds: Vec<bool> = (1..=4).map(|n| is_n_filter(&p, &u, Degree::Finite(n)).unwrap()).collect();
            for w in holds.windows(2) {
                assert!(!w[0] || w[1]);
            }
            let generated: Vec<BitSet> =
                (1..=4).map(|n| generate_n_filter(&p, &u, Degree::Finite(n)).unwrap()).collect();
            for w in generated.windows(2) {
                assert!(w[1].is_subset(&w[0]));
            }
        }
    }
}

#[test]
fn unions_of_k_principal_filters_are_k_filters() {
    for p in flat(enumerate::meet_semilattices(7)) {
        let n = p.len();
        for a in 0..n {
            for b in a..n {
                for c in b..n {
                    let two = p.up_set(a).union(p.up_set(b));
                    assert!(is_n_filter(&p, &two, Degree::Finite(2)).unwrap());
                    let three = two.union(p.up_set(c));
                    assert!(is_n_filter(&p, &three, Degree::Finite(3)).unwrap());
                }
            }
        }
    }
}

#[test]
fn restriction_to_ideal_subsemilattices_keeps_m_prime_n_filters() {
    let mut restricted = 0;
    for p in flat(enumerate::meet_semilattices(7)) {
        let subs: Vec<BitSet> = subsets(p.len())
            .filter(|t| !t.is_empty())
            .filter(|t| t.iter().all(|x| t.iter().all(|y| t.contains(p.m(x, y)))))
            .filter(|t| is_ideal_subposet(&p, t))
            .collect();
        for n in 1..=2 {
            let deg = Degree::Finite(n);
            for f in enumerate_n_filters(&p, deg).unwrap() {
                for m in 1..=2 {
                    if !is_m_prime_n_filter(&p, &f, m, deg).unwrap() {
                        continue;
                    }
                    for t in &subs {
                        let q = p.induced(t);
                        let r = BitSet::from_indices(t.count(), t.iter().enumerate().filter(|&(_, x)| f.contains(x)).map(|(i, _)| i));
                        assert!(
                            is_n_filter(&q, &r, deg).unwrap() && is_m_prime_n_filter(&q, &r, m, deg).unwrap(),
                            "{p:?} sub {} filter {} m={m} n={n}",
                            p.format_set(t),
                            p.format_set(&f)
                        );
                        restricted += 1;
                    }
                }
            }
        }
    }
    assert!(restricted > 1000);
}

/// Intersections of at most `m` members of `family`, the empty intersection
/// being the whole carrier.
fn intersections(len: usize, family: &[BitSet], m: usize) -> Vec<BitSet> {
    let mut out = vec![BitSet::full(len)];
    let mut frontier = vec![(BitSet::full(len), 0)];
    for _ in 0..m {
        let mut next = Vec::new();
        for (acc, start) in &frontier {
            for (i, g) in family.iter().enumerate().skip(*start) {
                let x = acc.intersection(g);
                out.push(x.clone());
                next.push((x, i + 1));
            }
        }
        frontier = next;
    }
    out.sort_by_key(BitSet::mask);
    out.dedup();
    out
}

#[test]
fn m_prime_filters_are_intersections_of_m_prime_filters() {
    for p in flat(enumerate::distributive_lattices(8)) {
        let primes = prime_filters(&p).unwrap();
        for m in 1..=3 {
            let mut expected = intersections(p.len(), &primes, m);
            expected.retain(|f| !f.is_empty());
            let mut found: Vec<BitSet> = enumerate_n_filters(&p, Degree::Finite(1))
                .unwrap()
                .into_iter()
                .filter(|f| !f.is_empty() && is_m_prime_n_filter(&p, f, m, Degree::Finite(1)).unwrap())
                .collect();
            found.sort_by_key(BitSet::mask);
            assert_eq!(found, expected, "{p:?} m={m}");
        }
    }
}

#[test]
fn n_filters_are_intersections_of_prime_n_filters_above() {
    for p in flat(enumerate::distributive_lattices(8)) {
        for n in 1..=3 {
            let deg = Degree::Finite(n);
            let filters = enumerate_n_filters(&p, deg).unwrap();
            let primes: Vec<&BitSet> =
                filters.iter().filter(|f| is_m_prime_n_filter(&p, f, 1, deg).unwrap()).collect();
            for f in &filters {
                let mut meet = p.full_set();
                for g in primes.iter().filter(|g| f.is_subset(g)) {
                    meet.intersect_with(g);
                }
                assert_eq!(&meet, f, "{p:?} n={n}");
            }
        }
    }
}

fn b1_top() -> Structure {
    Structure::new(FinitePoset::boolean_lattice(1).unwrap(), BitSet::from_indices(2, [1]), Signature::Boolean).unwrap()
}

fn homs(src: &Structure, tgt: &Structure) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for_each_hom(src, tgt, HomSearch::default(), |map| {
        out.push(map.to_vec());
        false
    })
    .unwrap();
    out
}

#[test]
fn tupled_strict_homs_are_strict_into_products() {
    let b2 = Arc::new(FinitePoset::boolean_lattice(2).unwrap());
    let targets = [
        b1_top(),
        Structure::new(b2.clone(), BitSet::from_indices(4, [1, 2, 3]), Signature::Boolean).unwrap(),
        Structure::new(b2, BitSet::from_indices(4, [3]), Signature::Boolean).unwrap(),
    ];
    let mut checked = 0;
    for p in flat(enumerate::distributive_lattices(6)) {
        let p = Arc::new(p);
        let bare = Structure::new(p.clone(), p.empty_set(), Signature::Distributive).unwrap();
        for t1 in &targets {
            for t2 in &targets {
                let direct = direct_product(&[t1.clone(), t2.clone()]).unwrap();
                let dual = dual_product(&[t1.clone(), t2.clone()]).unwrap();
                for h1 in homs(&bare, t1) {
                    for h2 in homs(&bare, t2) {
                        let f1 = BitSet::from_indices(p.len(), (0..p.len()).filter(|&x| t1.designated().contains(h1[x])));
                        let f2 = BitSet::from_indices(p.len(), (0..p.len()).filter(|&x| t2.designated().contains(h2[x])));
                        let map: Vec<usize> = (0..p.len()).map(|x| h1[x] * t2.len() + h2[x]).collect();
                        let meet = bare.with_designated(f1.intersection(&f2)).unwrap();
                        assert!(Homomorphism::check(&meet, &direct, map.clone()).unwrap().strict);
                        let join = bare.with_designated(f1.union(&f2)).unwrap();
                        assert!(Homomorphism::check(&join, &dual, map).unwrap().strict);
                        checked += 1;
                    }
                }
            }
        }
    }
    assert!(checked > 100);
}

#[test]
fn nabla_is_a_dual_power_and_top_a_direct_power() {
    for n in 1..=4 {
        let copies = vec![b1_top(); n];
        let nabla = canonical(&Canonical::Nabla(n)).unwrap();
        assert!(is_isomorphic(&dual_product(&copies).unwrap(), &nabla).unwrap());
        let top = nabla.with_designated(BitSet::from_indices(1 << n, [(1 << n) - 1])).unwrap();
        assert!(is_isomorphic(&direct_product(&copies).unwrap(), &top).unwrap());
    }
}
