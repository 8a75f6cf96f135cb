use nflab::classlab::{class_membership, ClassSpec, Closure};
use nflab::nfilter::{is_n_filter, min_filter_degree, Degree};
use nflab::poset::enumerate;
use nflab::structures::{canonical, default_gallery, direct_product, Canonical, Signature, Structure};
use nflab::FinitePoset;
use std::sync::Arc;

fn spec(generators: Vec<Structure>, closure: Closure) -> ClassSpec {
    ClassSpec::new(generators, closure).unwrap()
}

fn nabla(n: usize, sig: Signature) -> Structure {
    canonical(&Canonical::Nabla(n)).unwrap().reduct(sig).unwrap()
}

fn all_structures(p: FinitePoset, sig: Signature) -> Vec<Structure> {
    let p = Arc::new(p);
    let nonempty = sig.requires_nonempty();
    p.upsets()
        .into_iter()
        .filter(|u| !nonempty || !u.is_empty())
        .map(|u| Structure::new(p.clone(), u, sig).unwrap())
        .collect()
}

#[test]
fn nabla_n_generates_the_n_filters() {
    let specs: Vec<ClassSpec> =
        (1..=3).map(|n| spec(vec![nabla(n, Signature::Distributive)], Closure::FilterClass)).collect();
    for p in enumerate::distributive_lattices(8).into_iter().flatten() {
        for s in all_structures(p, Signature::Distributive) {
            for (i, sp) in specs.iter().enumerate() {
                let n = i + 1;
                let expected = is_n_filter(s.algebra(), s.designated(), Degree::Finite(n)).unwrap();
                assert_eq!(class_membership(sp, &s).unwrap(), expected, "{} n={n}", s.to_json());
            }
        }
    }
}

fn boolean_specs() -> Vec<(String, Structure)> {
    default_gallery().into_iter().filter(|(_, s)| s.signature() == Signature::Boolean).collect()
}

#[test]
fn logical_and_filter_classes_agree_on_boolean_algebras() {
    let candidates: Vec<Structure> = (1..=4)
        .flat_map(|k| all_structures(FinitePoset::boolean_lattice(k).unwrap(), Signature::Boolean))
        .collect();
    for (name, g) in boolean_specs() {
        let filter = spec(vec![g.clone()], Closure::FilterClass);
        let logical = spec(vec![g], Closure::LogicalClass);
        for s in &candidates {
            assert_eq!(
                class_membership(&filter, s).unwrap(),
                class_membership(&logical, s).unwrap(),
                "{name} vs {}",
                s.to_json()
            );
        }
    }
}

#[test]
fn nontrivial_boolean_classes_contain_the_small_product() {
    let witness = direct_product(&[nabla(2, Signature::Boolean), nabla(1, Signature::Boolean)]).unwrap();
    let mut nontrivial = 0;
    for (name, g) in boolean_specs() {
        if is_n_filter(g.algebra(), g.designated(), Degree::Finite(1)).unwrap() {
            continue;
        }
        nontrivial += 1;
        let sp = spec(vec![g], Closure::FilterClass);
        assert!(class_membership(&sp, &witness).unwrap(), "{name}");
    }
    assert!(nontrivial >= 8);
}

#[test]
fn exact_degree_structures_generate_their_degree_class() {
    let mut structures: Vec<(String, Structure)> = default_gallery()
        .into_iter()
        .filter(|(_, s)| s.signature() == Signature::Boolean)
        .map(|(name, s)| (name, s.reduct(Signature::Distributive).unwrap()))
        .collect();
    for p in enumerate::distributive_lattices(6).into_iter().flatten() {
        for s in all_structures(p, Signature::Distributive) {
            structures.push((s.to_json(), s));
        }
    }
    let mut checked = 0;
    for (name, s) in structures {
        let f = s.designated();
        if f.is_empty() || f.is_full() {
            continue;
        }
        let n = min_filter_degree(s.algebra(), f).unwrap();
        let target = nabla(n, Signature::Distributive);
        let by_target = spec(vec![target.clone()], Closure::FilterClass);
        let by_self = spec(vec![s.clone()], Closure::FilterClass);
        assert!(class_membership(&by_target, &s).unwrap(), "{name} outside DL({n})");
        assert!(class_membership(&by_self, &target).unwrap(), "{name} misses nabla({n})");
        checked += 1;
    }
    assert!(checked > 50);
}
