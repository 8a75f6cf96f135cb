use nflab::horn::{
    builtin_rule, entails_class, holds_in, parse_implication, parse_term, Builtin, Family, FilterClass, Implication,
    Term,
};
use nflab::nfilter::{enumerate_n_filters, Degree};
use nflab::poset::enumerate;
use nflab::structures::{for_each_hom, HomSearch, Signature, Structure};
use nflab::{BitSet, FinitePoset};
use proptest::prelude::*;
use std::sync::{Arc, OnceLock};

/// Every distributive lattice with at most eight elements carrying an
/// n-filter, for n = 1, 2, 3 and infinity.
fn dl_models() -> &'static [Vec<Structure>; 4] {
    static MODELS: OnceLock<[Vec<Structure>; 4]> = OnceLock::new();
    MODELS.get_or_init(|| {
        let lattices: Vec<Arc<FinitePoset>> =
            enumerate::distributive_lattices(8).into_iter().flatten().map(Arc::new).collect();
        [Degree::Finite(1), Degree::Finite(2), Degree::Finite(3), Degree::Infinity].map(|deg| {
            lattices
                .iter()
                .flat_map(|p| {
                    enumerate_n_filters(p, deg)
                        .unwrap()
                        .into_iter()
                        .map(|f| Structure::new(p.clone(), f, Signature::Distributive).unwrap())
                })
                .collect()
        })
    })
}

fn degree_slot(d: Degree) -> usize {
    match d {
        Degree::Finite(n) => n - 1,
        Degree::Infinity => 3,
    }
}

fn holds_on_all(models: &[Structure], r: &Implication) -> bool {
    models.iter().all(|s| holds_in(s, r).unwrap())
}

fn dl(degree: Degree) -> FilterClass {
    FilterClass { family: Family::Dl, degree }
}

#[test]
fn distributive_builtins_match_model_search() {
    for b in [Builtin::Adjunction(1), Builtin::Adjunction(2), Builtin::SubstAdjunction(1)] {
        let r = builtin_rule(b).unwrap();
        for deg in [Degree::Finite(1), Degree::Finite(2), Degree::Finite(3), Degree::Infinity] {
            let by_search = holds_on_all(&dl_models()[degree_slot(deg)], &r);
            assert_eq!(entails_class(&r, dl(deg)).unwrap(), by_search, "{b} in DL({deg})");
        }
    }
}

#[test]
fn boolean_builtins_match_model_search() {
    let algebras: Vec<Arc<FinitePoset>> = (1..=4).map(|k| Arc::new(FinitePoset::boolean_lattice(k).unwrap())).collect();
    let mut rules = vec![Builtin::Alpha(1), Builtin::Alpha(2), Builtin::Alpha(3), Builtin::Alpha(4)];
    rules.extend([Builtin::Beta(0), Builtin::Beta(1), Builtin::Beta(2)]);
    rules.extend([Builtin::Adjunction(1), Builtin::Adjunction(2), Builtin::SubstAdjunction(1)]);
    for n in 1..=3 {
        for k in 1..=3 {
            rules.push(Builtin::Gamma(n, k));
        }
    }
    for deg in [Degree::Finite(1), Degree::Finite(2), Degree::Finite(3), Degree::Infinity] {
        let models: Vec<Structure> = algebras
            .iter()
            .flat_map(|p| {
                enumerate_n_filters(p, deg)
                    .unwrap()
                    .into_iter()
                    .filter(|f| !f.is_empty())
                    .map(|f| Structure::new(p.clone(), f, Signature::Boolean).unwrap())
            })
            .collect();
        for &b in &rules {
            let r = builtin_rule(b).unwrap();
            let class = FilterClass { family: Family::Ba, degree: deg };
            assert_eq!(entails_class(&r, class).unwrap(), holds_on_all(&models, &r), "{b} in BA({deg})");
        }
    }
}

fn arb_lattice_term() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![Just(Term::var("x")), Just(Term::var("y")), Just(Term::var("z"))];
    leaf.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::meet(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Term::join(a, b)),
        ]
    })
}

fn arb_boolean_term() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        Just(Term::var("x")),
        Just(Term::var("y")),
        Just(Term::var("z")),
        Just(Term::Zero),
        Just(Term::One),
    ];
    leaf.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::meet(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::join(a, b)),
            inner.prop_map(Term::neg),
        ]
    })
}

fn arb_dl_rule(premises: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Implication> {
    (proptest::collection::vec(arb_lattice_term(), premises), arb_lattice_term())
        .prop_map(|(ps, c)| Implication::filter(ps, c, Signature::Distributive).unwrap())
}

fn arb_degree() -> impl Strategy<Value = Degree> {
    prop_oneof![Just(Degree::Finite(1)), Just(Degree::Finite(2)), Just(Degree::Finite(3)), Just(Degree::Infinity)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn random_rules_match_model_search(r in arb_dl_rule(1..=3), deg in arb_degree()) {
        let by_search = holds_on_all(&dl_models()[degree_slot(deg)], &r);
        prop_assert_eq!(entails_class(&r, dl(deg)).unwrap(), by_search, "{} in DL({})", r, deg);
    }

    #[test]
    fn one_premise_suffices_without_a_degree_bound(a in arb_lattice_term(), b in arb_lattice_term(), c in arb_lattice_term()) {
        let r = Implication::filter(vec![a.clone(), b.clone()], c.clone(), Signature::Distributive).unwrap();
        let single = |p: &Term| Implication::filter(vec![p.clone()], c.clone(), Signature::Distributive).unwrap();
        let both = entails_class(&r, dl(Degree::Infinity)).unwrap();
        let either = entails_class(&single(&a), dl(Degree::Infinity)).unwrap()
            || entails_class(&single(&b), dl(Degree::Infinity)).unwrap();
        prop_assert_eq!(both, either, "{}", r);
    }

    #[test]
    fn validity_descends_to_smaller_degrees(r in arb_dl_rule(1..=4)) {
        let valid: Vec<bool> = [Degree::Finite(1), Degree::Finite(2), Degree::Finite(3), Degree::Infinity]
            .iter()
            .map(|&d| entails_class(&r, dl(d)).unwrap())
            .collect();
        for w in valid.windows(2) {
            prop_assert!(!w[1] || w[0], "{}", r);
        }
    }

    #[test]
    fn terms_print_and_parse_back(t in arb_boolean_term()) {
        prop_assert_eq!(parse_term(&t.to_string()).unwrap(), t);
    }

    #[test]
    fn rules_print_and_parse_back(ps in proptest::collection::vec(arb_boolean_term(), 0..4), c in arb_boolean_term()) {
        let r = Implication::inferred(Vec::new(), ps, nflab::horn::Conclusion::Term(c));
        prop_assert_eq!(parse_implication(&r.to_string()).unwrap(), r);
    }
}

#[test]
fn strict_surjective_preimages_preserve_rules() {
    let rules: Vec<Implication> = [
        "x, y |- x & y",
        "x | y |- x",
        "x, y | z |- (x & y) | z",
        "x & y |- z",
        "x, y, z |- (x & y) | (y & z) | (x & z)",
    ]
    .iter()
    .map(|s| parse_implication(s).unwrap())
    .chain([Builtin::Adjunction(1), Builtin::Adjunction(2)].map(|b| builtin_rule(b).unwrap()))
    .collect();
    let sources: Vec<Arc<FinitePoset>> = enumerate::distributive_lattices(6).into_iter().flatten().map(Arc::new).collect();
    let targets: Vec<Arc<FinitePoset>> = enumerate::distributive_lattices(4).into_iter().flatten().map(Arc::new).collect();
    let mut pairs = 0;
    for q in &targets {
        let bare_q = Structure::new(q.clone(), q.empty_set(), Signature::Distributive).unwrap();
        let images: Vec<(BitSet, Vec<bool>)> = q
            .upsets()
            .into_iter()
            .map(|g| {
                let s = bare_q.with_designated(g.clone()).unwrap();
                let holds = rules.iter().map(|r| holds_in(&s, r).unwrap()).collect();
                (g, holds)
            })
            .collect();
        for p in &sources {
            let bare_p = Structure::new(p.clone(), p.empty_set(), Signature::Distributive).unwrap();
            for_each_hom(&bare_p, &bare_q, HomSearch::default(), |map| {
                let mut hit = q.empty_set();
                map.iter().for_each(|&v| {
                    hit.insert(v);
                });
                if !hit.is_full() {
                    return false;
                }
                for (g, holds) in &images {
                    let f = BitSet::from_indices(p.len(), (0..p.len()).filter(|&x| g.contains(map[x])));
                    let s = bare_p.with_designated(f).unwrap();
                    for (r, &h) in rules.iter().zip(holds) {
                        if h {
                            assert!(holds_in(&s, r).unwrap(), "{r} on {p:?} via {map:?}");
                        }
                    }
                    pairs += 1;
                }
                false
            })
            .unwrap();
        }
    }
    assert!(pairs > 100);
}
