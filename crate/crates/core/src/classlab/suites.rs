//! Named exhaustive checks, each tied to one theorem, run over every
//! candidate up to a size bound.

use super::{class_membership, product_class_check, splitting_check, ClassSpec, Closure};
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::horn::{builtin_rule, holds_in, Builtin, Implication};
use crate::limits;
use crate::nfilter::{
    decompose_prime_n_filter, enumerate_n_filters, generate_n_filter, generate_n_filter_oracle, is_m_prime_n_filter,
    is_n_filter, is_n_filter_full, is_n_filter_restricted, is_prime_upset, is_union_of_filters,
    is_union_of_prime_filters, min_filter_degree, n_filter_lattice, one_step, separate_prime_n_filter, Degree,
};
use crate::poset::{enumerate, poset_to_json, Elem, FinitePoset, Kind};
use crate::structures::{
    canonical, direct_product, find_embedding, find_strict_hom, for_each_hom, product_algebra, quotient,
    strict_image, Canonical, HomSearch, Signature, Structure,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use std::collections::BTreeSet;
use std::sync::Arc;

/// Registered suites with their default bounds. Bounds count elements,
/// except for the Boolean suites, which count atoms.
pub const SUITES: [(&str, usize); 11] = [
    ("definition-equivalence", 7),
    ("generation", 7),
    ("prime-nfilter-characterization", 8),
    ("counterexample-gallery", 0),
    ("separation", 8),
    ("m-prime-characterization", 8),
    ("splitting", 4),
    ("height-beta-grid", 0),
    ("gamma-theorem", 4),
    ("union-preimage-laws", 8),
    ("strict-image", 4),
];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub bound: usize,
    pub checked: usize,
    pub failures: Vec<Value>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Default)]
struct Tally {
    checked: usize,
    failures: Vec<Value>,
}

impl Tally {
    fn check(&mut self, ok: bool, payload: impl FnOnce() -> Value) {
        self.checked += 1;
        if !ok {
            self.failures.push(payload());
        }
    }

    fn absorb(&mut self, other: Tally) {
        self.checked += other.checked;
        self.failures.extend(other.failures);
    }
}

/// Runs `f` on every candidate in parallel and merges in candidate order.
fn shard<T: Sync>(items: &[T], f: impl Fn(&T, &mut Tally) -> Result<()> + Sync) -> Result<Tally> {
    let parts: Vec<Result<Tally>> = items
        .par_iter()
        .map(|item| {
            let mut t = Tally::default();
            f(item, &mut t)?;
            Ok(t)
        })
        .collect();
    let mut total = Tally::default();
    for part in parts {
        total.absorb(part?);
    }
    Ok(total)
}

fn poset_value(p: &FinitePoset) -> Value {
    serde_json::from_str(&poset_to_json(p)).expect("poset json")
}

fn structure_value(s: &Structure) -> Value {
    serde_json::from_str(&s.to_json()).expect("structure json")
}

fn flat(levels: Vec<Vec<FinitePoset>>) -> Vec<Arc<FinitePoset>> {
    levels.into_iter().flatten().map(Arc::new).collect()
}

fn distributive_semilattices(max: usize) -> Vec<Arc<FinitePoset>> {
    flat(enumerate::meet_semilattices(max)).into_iter().filter(|p| p.kind().is_distributive_semilattice).collect()
}

fn nabla(n: usize, sig: Signature) -> Result<Structure> {
    canonical(&Canonical::Nabla(n))?.reduct(sig)
}

/// `(k, F)` for every non-empty upset `F` of `B_k`, `k` in `atoms`.
fn boolean_structures(atoms: std::ops::RangeInclusive<usize>) -> Result<Vec<Structure>> {
    let mut out = Vec::new();
    for k in atoms {
        let b = Arc::new(FinitePoset::boolean_lattice(k)?);
        for u in b.upsets() {
            if !u.is_empty() {
                out.push(Structure::new(b.clone(), u, Signature::Boolean)?);
            }
        }
    }
    Ok(out)
}

pub fn run_theorem_suite(name: &str, bound: usize) -> Result<SuiteReport> {
    let Some(&(suite, _)) = SUITES.iter().find(|(n, _)| *n == name) else {
        return Err(Error::UnknownSuite(name.to_string()));
    };
    let t = match suite {
        "definition-equivalence" => definition_equivalence(bound)?,
        "generation" => generation(bound)?,
        "prime-nfilter-characterization" => prime_characterization(bound)?,
        "counterexample-gallery" => counterexample_gallery()?,
        "separation" => separation(bound)?,
        "m-prime-characterization" => m_prime_characterization(bound)?,
        "splitting" => splitting(bound)?,
        "height-beta-grid" => height_beta_grid()?,
        "gamma-theorem" => gamma_theorem(bound)?,
        "union-preimage-laws" => union_preimage_laws(bound)?,
        "strict-image" => strict_images(bound)?,
        _ => unreachable!("registered suite"),
    };
    Ok(SuiteReport { suite: suite.to_string(), bound, checked: t.checked, failures: t.failures })
}

/// `run_theorem_suite` on a dedicated pool of `jobs` workers.
pub fn run_theorem_suite_with(name: &str, bound: usize, jobs: Option<usize>) -> Result<SuiteReport> {
    match jobs {
        None => run_theorem_suite(name, bound),
        Some(j) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(j.max(1))
                .build()
                .map_err(|e| Error::BadParameter(format!("cannot start {j} workers: {e}")))?;
            pool.install(|| run_theorem_suite(name, bound))
        }
    }
}

fn definition_equivalence(bound: usize) -> Result<Tally> {
    limits::check_cap(bound, 8)?;
    shard(&flat(enumerate::meet_semilattices(bound)), |p, t| {
        for u in p.upsets() {
            for n in 1..=7 {
                let restricted = is_n_filter_restricted(p, &u, n)?;
                let full = is_n_filter_full(p, &u, n)?;
                let fast = is_n_filter(p, &u, Degree::Finite(n))?;
                t.check(restricted == full && full == fast, || {
                    json!({"poset": poset_value(p), "upset": p.format_set(&u), "n": n,
                           "restricted": restricted, "full": full, "fast": fast})
                });
            }
        }
        Ok(())
    })
}

fn generation(bound: usize) -> Result<Tally> {
    limits::check_cap(bound, 8)?;
    let mut t = shard(&distributive_semilattices(bound), |p, t| {
        for u in p.upsets() {
            for n in 1..=3 {
                let fast = generate_n_filter(p, &u, Degree::Finite(n))?;
                let oracle = generate_n_filter_oracle(p, &u, Degree::Finite(n))?;
                t.check(fast == oracle, || {
                    json!({"poset": poset_value(p), "upset": p.format_set(&u), "n": n,
                           "generated": p.format_set(&fast), "oracle": p.format_set(&oracle)})
                });
            }
        }
        Ok(())
    })?;
    let fig2 = canonical(&Canonical::Fig2)?;
    let p = fig2.algebra();
    let u = fig2.designated();
    let step = one_step(p, u, 2);
    let fix = generate_n_filter(p, u, Degree::Finite(2))?;
    let (a, b) = (p.elem("a")?, p.elem("b")?);
    let payload = || json!({"structure": "fig2", "one_step": p.format_set(&step), "fixpoint": p.format_set(&fix)});
    t.check(step != fix, payload);
    t.check(fix.contains(a) && fix.contains(b), payload);
    t.check(fix == generate_n_filter_oracle(p, u, Degree::Finite(2))?, payload);
    Ok(t)
}

fn prime_characterization(bound: usize) -> Result<Tally> {
    limits::check_cap(bound, 10)?;
    let targets: Vec<Structure> = (1..=3).map(|n| nabla(n, Signature::Distributive)).collect::<Result<_>>()?;
    let mut t = shard(&flat(enumerate::distributive_lattices(bound)), |p, t| {
        for f in p.upsets() {
            let s = Structure::new(p.clone(), f.clone(), Signature::Distributive)?;
            let prime = is_prime_upset(p, &f)?;
            for n in 1..=3 {
                let i = prime && is_n_filter(p, &f, Degree::Finite(n))?;
                let ii = prime && is_union_of_filters(p, &f, n)?;
                let iii = is_union_of_prime_filters(p, &f, n)?;
                let iv = find_strict_hom(&s, &targets[n - 1])?.is_some();
                t.check(i == ii && ii == iii && iii == iv, || {
                    json!({"family": "distributive lattice", "poset": poset_value(p), "upset": p.format_set(&f),
                           "n": n, "conditions": [i, ii, iii, iv]})
                });
            }
        }
        Ok(())
    })?;
    let targets: Vec<Structure> = (1..=3).map(|n| nabla(n, Signature::Semilattice)).collect::<Result<_>>()?;
    t.absorb(shard(&distributive_semilattices(bound.min(7)), |p, t| {
        for f in p.upsets() {
            let s = Structure::new(p.clone(), f.clone(), Signature::Semilattice)?;
            let prime = is_m_prime_n_filter(p, &f, 1, Degree::Infinity)?;
            for n in 1..=3 {
                let deg = Degree::Finite(n);
                let i = is_n_filter(p, &f, deg)? && is_m_prime_n_filter(p, &f, 1, deg)?;
                let ii = prime && is_union_of_filters(p, &f, n)?;
                let iii = prime && find_strict_hom(&s, &targets[n - 1])?.is_some();
                t.check(i == ii && ii == iii, || {
                    json!({"family": "distributive semilattice", "poset": poset_value(p),
                           "upset": p.format_set(&f), "n": n, "conditions": [i, ii, iii]})
                });
            }
        }
        Ok(())
    })?);
    Ok(t)
}

fn counterexample_gallery() -> Result<Tally> {
    let mut t = Tally::default();
    let n2 = canonical(&Canonical::Nabla(2))?;
    let mut claim = |name: &str, ok: bool| t.check(ok, || json!({"claim": name}));

    let m5 = canonical(&Canonical::M5)?;
    let (p, f) = (m5.algebra(), m5.designated());
    claim("m5 upset is prime", is_prime_upset(p, f)?);
    claim("m5 upset is a 2-filter", is_n_filter(p, f, Degree::Finite(2))?);
    claim("m5 upset has no prime decomposition", decompose_prime_n_filter(p, f).is_err());
    claim("m5 has no strict hom to nabla(2)", find_strict_hom(&m5, &n2)?.is_none());

    let n5 = canonical(&Canonical::N5)?;
    let (p, f) = (n5.algebra(), n5.designated());
    claim("n5 upset is prime", is_prime_upset(p, f)?);
    claim("n5 upset is a union of 2 filters", is_union_of_filters(p, f, 2)?);
    claim("n5 has no strict hom to nabla(2)", find_strict_hom(&n5, &n2)?.is_none());

    let right = canonical(&Canonical::Fig3Right)?;
    let (p, f) = (right.algebra(), right.designated());
    claim("fig3 right upset is a 2-filter", is_n_filter(p, f, Degree::Finite(2))?);
    claim("fig3 right complement is a 2-ideal", is_n_filter(&p.dual(), &f.complement(), Degree::Finite(2))?);
    claim("fig3 right upset is not 2-prime", !is_m_prime_n_filter(p, f, 2, Degree::Finite(2))?);
    Ok(t)
}

/// Downsets that are ideals, the empty set included.
fn ideals(p: &FinitePoset) -> Vec<BitSet> {
    p.upsets().into_iter().map(|u| u.complement()).filter(|d| p.is_ideal(d)).collect()
}

fn separation(bound: usize) -> Result<Tally> {
    limits::check_cap(bound, 10)?;
    shard(&flat(enumerate::distributive_lattices(bound)), |p, t| {
        let ideals = ideals(p);
        for n in 1..=3 {
            let deg = Degree::Finite(n);
            for f in enumerate_n_filters(p, deg)? {
                for i in ideals.iter().filter(|i| i.is_disjoint(&f)) {
                    let payload = |g: Option<&BitSet>, error: Option<String>| {
                        json!({"poset": poset_value(p), "filter": p.format_set(&f), "ideal": p.format_set(i),
                               "n": n, "separator": g.map(|g| p.format_set(g)), "error": error})
                    };
                    match separate_prime_n_filter(p, &f, i, deg) {
                        Ok(g) => {
                            let ok = is_prime_upset(p, &g)?
                                && is_n_filter(p, &g, deg)?
                                && f.is_subset(&g)
                                && g.is_disjoint(i);
                            t.check(ok, || payload(Some(&g), None));
                        }
                        Err(e) => t.check(false, || payload(None, Some(e.to_string()))),
                    }
                }
            }
        }
        Ok(())
    })
}

fn m_prime_characterization(bound: usize) -> Result<Tally> {
    limits::check_cap(bound, 10)?;
    let mut targets = Vec::new();
    for n in 1..=2 {
        for m in 1..=2 {
            targets.push((n, m, canonical(&Canonical::Dba(n, m))?.reduct(Signature::Distributive)?));
        }
    }
    shard(&flat(enumerate::distributive_lattices(bound)), |p, t| {
        let src = Structure::new(p.clone(), p.empty_set(), Signature::Distributive)?;
        for (n, m, tgt) in &targets {
            let deg = Degree::Finite(*n);
            let mut primes = BTreeSet::new();
            for f in enumerate_n_filters(p, deg)? {
                if is_m_prime_n_filter(p, &f, *m, deg)? {
                    primes.insert(f);
                }
            }
            let mut preimages = BTreeSet::new();
            for_each_hom(&src, tgt, HomSearch::default(), |map| {
                preimages.insert(BitSet::from_indices(p.len(), (0..p.len()).filter(|&x| tgt.designated().contains(map[x]))));
                false
            })?;
            t.check(primes == preimages, || {
                let only = |a: &BTreeSet<BitSet>, b: &BTreeSet<BitSet>| {
                    a.difference(b).map(|s| p.format_set(s)).collect::<Vec<_>>()
                };
                json!({"poset": poset_value(p), "n": n, "m": m,
                       "prime_not_preimage": only(&primes, &preimages),
                       "preimage_not_prime": only(&preimages, &primes)})
            });
        }
        Ok(())
    })
}

fn splitting(bound: usize) -> Result<Tally> {
    limits::check_cap(bound, 5)?;
    shard(&boolean_structures(1..=bound)?, |s, t| {
        for n in 1..=4 {
            match splitting_check(s, n) {
                Ok(_) => t.check(true, || Value::Null),
                Err(Error::DichotomyViolated(msg)) => {
                    t.check(false, || json!({"structure": structure_value(s), "n": n, "error": msg}))
                }
                Err(e) => return Err(e),
            }
        }
        Ok(())
    })
}

/// `BA_{m,i}`: Boolean structures whose upset is an `m`-filter satisfying `βᵢ`.
fn in_grid_class(s: &Structure, degree: usize, beta: &Implication) -> Result<bool> {
    Ok(min_filter_degree(s.algebra(), s.designated())? <= degree && holds_in(s, beta)?)
}

fn height_beta_grid() -> Result<Tally> {
    let mut t = Tally::default();
    for d in 1..=3 {
        for m in 0..=2 {
            let h = canonical(&Canonical::Height(d, m))?;
            let (p, f) = (h.algebra(), h.designated());
            let degree = min_filter_degree(p, f)?;
            t.check(degree == d, || json!({"claim": "least filter degree", "d": d, "m": m, "found": degree}));
            let dual = p.dual();
            let c = f.complement();
            let ideal = is_n_filter(&dual, &c, Degree::Finite(m + 1))?;
            t.check(ideal, || json!({"claim": "complement is an (m+1)-ideal", "d": d, "m": m}));
            if m >= 1 {
                let tighter = is_n_filter(&dual, &c, Degree::Finite(m))?;
                t.check(!tighter, || json!({"claim": "complement is not an m-ideal", "d": d, "m": m}));
            }
        }
    }
    let betas: Vec<Implication> = (0..=3).map(|k| builtin_rule(Builtin::Beta(k))).collect::<Result<_>>()?;
    for (d, k) in [(2, 0), (2, 1), (2, 2), (3, 0), (3, 1), (3, 2)] {
        let h = canonical(&Canonical::Height(d, k * (d - 1)))?;
        let holds = holds_in(&h, &betas[k])?;
        let next = holds_in(&h, &betas[k + 1])?;
        t.check(holds && !next, || {
            json!({"claim": "beta separation", "d": d, "k": k, "beta_k": holds, "beta_k_plus_1": next})
        });
    }
    // Witnesses for non-inclusion: every non-empty upset of B1..B4 plus the
    // larger height upsets.
    let mut witnesses = boolean_structures(1..=4)?;
    witnesses.push(canonical(&Canonical::Height(3, 2))?);
    witnesses.push(canonical(&Canonical::Height(3, 4))?);
    let member: Vec<Vec<Vec<bool>>> = witnesses
        .par_iter()
        .map(|w| {
            (1..=3)
                .map(|m| (0..=2).map(|i| in_grid_class(w, m, &betas[i])).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    for m in 1..=3 {
        for i in 0..=2 {
            for n in 1..=3 {
                for j in 0..=2 {
                    let included = member.iter().all(|w| !w[m - 1][i] || w[n - 1][j]);
                    let expected = m <= n && j <= i || m == 1;
                    t.check(included == expected, || {
                        json!({"claim": "inclusion grid", "m": m, "i": i, "n": n, "j": j,
                               "included": included, "expected": expected})
                    });
                }
            }
        }
    }
    Ok(t)
}

fn gamma_theorem(bound: usize) -> Result<Tally> {
    limits::check_cap(bound, 4)?;
    let pairs = [(2, 1), (3, 1), (3, 2)];
    let specs: Vec<ClassSpec> = pairs
        .iter()
        .map(|&(m, n)| {
            let g = direct_product(&[canonical(&Canonical::Nabla(m))?, canonical(&Canonical::Nabla(n))?])?;
            ClassSpec::new(vec![g], Closure::FilterClass)
        })
        .collect::<Result<_>>()?;
    let gammas: Vec<Vec<Implication>> = (1..=2)
        .map(|n| (1..=bound.max(1)).map(|j| builtin_rule(Builtin::Gamma(n, j))).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    shard(&boolean_structures(2..=bound)?, |s, t| {
        let atoms = s.len().trailing_zeros() as usize;
        for (&(m, n), spec) in pairs.iter().zip(&specs) {
            let direct = product_class_check(s, m, n)?;
            let member = class_membership(spec, s)?;
            let mut rules = is_n_filter(s.algebra(), s.designated(), Degree::Finite(m))?;
            for g in &gammas[n - 1][..atoms] {
                rules = rules && holds_in(s, g)?;
            }
            t.check(direct == member && member == rules, || {
                json!({"structure": structure_value(s), "m": m, "n": n,
                       "direct": direct, "membership": member, "rules": rules})
            });
        }
        Ok(())
    })
}

/// `S × T` as pairs, with the product's mixed-radix indexing.
fn product_set(p: &FinitePoset, q: &FinitePoset, f: &BitSet, g: &BitSet) -> BitSet {
    BitSet::from_indices(
        p.len() * q.len(),
        f.iter().flat_map(|x| g.iter().map(move |y| x * q.len() + y)),
    )
}

fn preimage(map: &[Elem], g: &BitSet) -> BitSet {
    BitSet::from_indices(map.len(), (0..map.len()).filter(|&x| g.contains(map[x])))
}

/// Subsets of the carrier closed under the operations of `sig`.
fn subalgebras(p: &Arc<FinitePoset>, sig: Signature) -> Result<Vec<BitSet>> {
    let s = Structure::new(p.clone(), p.empty_set(), sig)?;
    Ok((1u64..1 << p.len()).map(|mask| BitSet::from_mask(p.len(), mask)).filter(|x| s.is_subalgebra(x)).collect())
}

fn restrict_set(f: &BitSet, selected: &BitSet) -> BitSet {
    BitSet::from_indices(selected.count(), selected.iter().enumerate().filter(|&(_, x)| f.contains(x)).map(|(i, _)| i))
}

const RANDOM_CASES: usize = 12_000;
const RANDOM_SEED: u64 = 0x6e66_6c61_62;

fn union_preimage_laws(bound: usize) -> Result<Tally> {
    limits::check_cap(bound, 10)?;
    let small = bound.min(6);
    let semis = flat(enumerate::meet_semilattices(small));
    let lattices = flat(enumerate::lattices(small));
    let degrees = [1, 2, 3];
    let filters_of = |p: &FinitePoset| -> Result<Vec<Vec<BitSet>>> {
        degrees.iter().map(|&n| enumerate_n_filters(p, Degree::Finite(n))).collect()
    };
    let semi_filters: Vec<Vec<Vec<BitSet>>> = semis.par_iter().map(|p| filters_of(p)).collect::<Result<_>>()?;

    // Homomorphic preimages of n-filters along semilattice homomorphisms.
    let idx: Vec<usize> = (0..semis.len()).collect();
    let mut t = shard(&idx, |&ti, t| {
        let q = &semis[ti];
        let tgt = Structure::new(q.clone(), q.empty_set(), Signature::Semilattice)?;
        for p in &semis {
            let src = Structure::new(p.clone(), p.empty_set(), Signature::Semilattice)?;
            let mut err = None;
            for_each_hom(&src, &tgt, HomSearch::default(), |map| {
                for (k, &n) in degrees.iter().enumerate() {
                    for g in &semi_filters[ti][k] {
                        let f = preimage(map, g);
                        match is_n_filter(p, &f, Degree::Finite(n)) {
                            Ok(ok) => t.check(ok, || {
                                json!({"law": "preimage", "source": poset_value(p), "target": poset_value(q),
                                       "map": map, "filter": q.format_set(g), "n": n})
                            }),
                            Err(e) => err = Some(e),
                        }
                    }
                }
                err.is_some()
            })?;
            if let Some(e) = err {
                return Err(e);
            }
        }
        Ok(())
    })?;

    // Preimages of prime n-filters along lattice homomorphisms.
    let idx: Vec<usize> = (0..lattices.len()).collect();
    t.absorb(shard(&idx, |&ti, t| {
        let q = &lattices[ti];
        let tgt = Structure::new(q.clone(), q.empty_set(), Signature::Lattice)?;
        let mut primes = Vec::new();
        for &n in &degrees {
            for g in enumerate_n_filters(q, Degree::Finite(n))? {
                if is_prime_upset(q, &g)? {
                    primes.push((n, g));
                }
            }
        }
        for p in &lattices {
            let src = Structure::new(p.clone(), p.empty_set(), Signature::Lattice)?;
            let mut err = None;
            for_each_hom(&src, &tgt, HomSearch::default(), |map| {
                for (n, g) in &primes {
                    let f = preimage(map, g);
                    match is_prime_upset(p, &f).and_then(|pr| Ok(pr && is_n_filter(p, &f, Degree::Finite(*n))?)) {
                        Ok(ok) => t.check(ok, || {
                            json!({"law": "prime preimage", "source": poset_value(p), "target": poset_value(q),
                                   "map": map, "filter": q.format_set(g), "n": n})
                        }),
                        Err(e) => err = Some(e),
                    }
                }
                err.is_some()
            })?;
            if let Some(e) = err {
                return Err(e);
            }
        }
        Ok(())
    })?);

    // Restrictions to subsemilattices and sublattices, and unions.
    t.absorb(shard(&idx_of(&semis), |&si, t| {
        let p = &semis[si];
        let filters = &semi_filters[si];
        for sub in subalgebras(p, Signature::Semilattice)? {
            let q = p.induced(&sub);
            for (k, &n) in degrees.iter().enumerate() {
                for f in &filters[k] {
                    let r = restrict_set(f, &sub);
                    t.check(is_n_filter(&q, &r, Degree::Finite(n))?, || {
                        json!({"law": "restriction", "poset": poset_value(p), "sub": p.format_set(&sub),
                               "filter": p.format_set(f), "n": n})
                    });
                }
            }
        }
        if p.is_lattice() {
            let subs = subalgebras(p, Signature::Lattice)?;
            for (k, &n) in degrees.iter().enumerate() {
                for f in &filters[k] {
                    if !is_prime_upset(p, f)? {
                        continue;
                    }
                    for sub in &subs {
                        let q = p.induced(sub);
                        let r = restrict_set(f, sub);
                        let ok = is_prime_upset(&q, &r)? && is_n_filter(&q, &r, Degree::Finite(n))?;
                        t.check(ok, || {
                            json!({"law": "prime restriction", "poset": poset_value(p), "sub": p.format_set(sub),
                                   "filter": p.format_set(f), "n": n})
                        });
                    }
                }
            }
        }
        for n1 in 1..=2 {
            for n2 in 1..=2 {
                for f in &filters[n1 - 1] {
                    for g in &filters[n2 - 1] {
                        let u = f.union(g);
                        t.check(is_n_filter(p, &u, Degree::Finite(n1 + n2))?, || {
                            json!({"law": "union", "poset": poset_value(p), "first": p.format_set(f),
                                   "second": p.format_set(g), "n1": n1, "n2": n2})
                        });
                    }
                }
            }
        }
        Ok(())
    })?);

    // Products of n-filters, on products of at most twice the bound.
    let pairs: Vec<(usize, usize)> = (0..semis.len())
        .flat_map(|a| (0..semis.len()).map(move |b| (a, b)))
        .filter(|&(a, b)| semis[a].len() * semis[b].len() <= 2 * small)
        .collect();
    t.absorb(shard(&pairs, |&(a, b), t| {
        let (p, q) = (&semis[a], &semis[b]);
        let prod = product_algebra(&[p, q])?;
        for (k, &n) in degrees.iter().enumerate() {
            for f in &semi_filters[a][k] {
                for g in &semi_filters[b][k] {
                    let fg = product_set(p, q, f, g);
                    t.check(is_n_filter(&prod, &fg, Degree::Finite(n))?, || {
                        json!({"law": "product", "first": poset_value(p), "second": poset_value(q),
                               "left": p.format_set(f), "right": q.format_set(g), "n": n})
                    });
                }
            }
        }
        Ok(())
    })?);

    t.absorb(random_laws()?);

    // Distributive lattices: the n-filter lattice is distributive and
    // fg_n(F, x) ∩ fg_n(F, y) = fg_n(F, x ∨ y).
    t.absorb(shard(&flat(enumerate::distributive_lattices(bound)), |p, t| {
        for n in 1..=3 {
            let deg = Degree::Finite(n);
            let (fi, filters) = n_filter_lattice(p, deg)?;
            t.check(fi.kind().kind.at_least(Kind::DistributiveLattice), || {
                json!({"law": "filter lattice distributive", "poset": poset_value(p), "n": n})
            });
            for f in &filters {
                let fg: Vec<BitSet> = (0..p.len())
                    .map(|x| {
                        let mut u = f.clone();
                        u.insert(x);
                        generate_n_filter(p, &p.upward_closure(&u), deg)
                    })
                    .collect::<Result<_>>()?;
                for x in 0..p.len() {
                    for y in x + 1..p.len() {
                        let ok = fg[x].intersection(&fg[y]) == fg[p.j(x, y)];
                        t.check(ok, || {
                            json!({"law": "intersect fg", "poset": poset_value(p), "filter": p.format_set(f),
                                   "x": p.name(x), "y": p.name(y), "n": n})
                        });
                    }
                }
            }
        }
        Ok(())
    })?);
    Ok(t)
}

fn idx_of<T>(v: &[T]) -> Vec<usize> {
    (0..v.len()).collect()
}

fn random_upset(p: &FinitePoset, rng: &mut ChaCha8Rng) -> BitSet {
    let seeds = BitSet::from_indices(p.len(), (0..p.len()).filter(|_| rng.gen_bool(0.2)));
    p.upward_closure(&seeds)
}

/// Seeded random instances over Boolean lattices and their meet-closed subsets.
fn random_laws() -> Result<Tally> {
    let mut rng = ChaCha8Rng::seed_from_u64(RANDOM_SEED);
    let boolean: Vec<FinitePoset> = (0..=4).map(FinitePoset::boolean_lattice).collect::<Result<_>>()?;
    let mut t = Tally::default();
    for case in 0..RANDOM_CASES {
        let n = rng.gen_range(1..=3);
        let deg = Degree::Finite(n);
        match case % 3 {
            0 => {
                // h(U) = {y : φ(y) ∈ U} is a Boolean homomorphism B_k → B_j.
                let (k, j) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
                let phi: Vec<usize> = (0..j).map(|_| rng.gen_range(0..k)).collect();
                let map: Vec<Elem> = (0..1usize << k)
                    .map(|u| (0..j).filter(|&y| u >> phi[y] & 1 == 1).map(|y| 1 << y).sum())
                    .collect();
                let tgt = &boolean[j];
                let g = generate_n_filter(tgt, &random_upset(tgt, &mut rng), deg)?;
                let f = preimage(&map, &g);
                let mut ok = is_n_filter(&boolean[k], &f, deg)?;
                if is_prime_upset(tgt, &g)? {
                    ok = ok && is_prime_upset(&boolean[k], &f)?;
                }
                t.check(ok, || json!({"law": "random preimage", "k": k, "j": j, "phi": phi,
                                      "filter": tgt.format_set(&g), "n": n}));
            }
            1 => {
                let k = rng.gen_range(1..=4);
                let b = &boolean[k];
                let mut sub = BitSet::from_indices(b.len(), (0..b.len()).filter(|_| rng.gen_bool(0.4)));
                if sub.is_empty() {
                    sub.insert(rng.gen_range(0..b.len()));
                }
                let sub = super::generated_subalgebra(b, Signature::Semilattice, &sub.to_vec());
                let f = generate_n_filter(b, &random_upset(b, &mut rng), deg)?;
                let q = b.induced(&sub);
                let r = restrict_set(&f, &sub);
                t.check(is_n_filter(&q, &r, deg)?, || {
                    json!({"law": "random restriction", "k": k, "sub": b.format_set(&sub),
                           "filter": b.format_set(&f), "n": n})
                });
            }
            _ => {
                let k = rng.gen_range(1..=4);
                let b = &boolean[k];
                let n2 = rng.gen_range(1..=3);
                let f = generate_n_filter(b, &random_upset(b, &mut rng), deg)?;
                let g = generate_n_filter(b, &random_upset(b, &mut rng), Degree::Finite(n2))?;
                t.check(is_n_filter(b, &f.union(&g), Degree::Finite(n + n2))?, || {
                    json!({"law": "random union", "k": k, "first": b.format_set(&f),
                           "second": b.format_set(&g), "n1": n, "n2": n2})
                });
            }
        }
    }
    Ok(t)
}

fn strict_images(bound: usize) -> Result<Tally> {
    limits::check_cap(bound, 4)?;
    shard(&boolean_structures(1..=bound)?, |s, t| {
        let a = s.algebra();
        let zero = a.bottom().expect("bottom");
        let mut seen = BTreeSet::new();
        for x in 0..a.len() {
            let q = quotient(a, Signature::Boolean, &[(x, zero)])?;
            // The one-element image has no embedding into a non-trivial algebra.
            if q.algebra.len() == 1 || !seen.insert(q.class_of.clone()) {
                continue;
            }
            let saturated = (0..a.len())
                .all(|y| (0..a.len()).all(|z| q.class_of[y] != q.class_of[z] || s.designated().contains(y) == s.designated().contains(z)));
            if !saturated {
                continue;
            }
            let target = Structure::new(q.algebra.clone(), q.algebra.full_set(), Signature::Boolean)?;
            let image = strict_image(s, &target, &q.class_of)?;
            t.check(find_embedding(&image, s)?.is_some(), || {
                json!({"structure": structure_value(s), "image": structure_value(&image)})
            });
        }
        Ok(())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite() {
        assert!(matches!(run_theorem_suite("unknown-suite", 8), Err(Error::UnknownSuite(_))));
    }

    #[test]
    fn small_suites_pass() {
        for (name, bound) in [
            ("definition-equivalence", 5),
            ("generation", 5),
            ("prime-nfilter-characterization", 5),
            ("counterexample-gallery", 0),
            ("separation", 5),
            ("m-prime-characterization", 5),
            ("splitting", 3),
            ("gamma-theorem", 3),
            ("strict-image", 3),
        ] {
            let r = run_theorem_suite(name, bound).unwrap();
            assert!(r.passed(), "{name}: {:?}", &r.failures[..r.failures.len().min(3)]);
            assert!(r.checked > 0, "{name}");
        }
    }

    #[test]
    fn report_shape() {
        let r = run_theorem_suite_with("counterexample-gallery", 0, Some(2)).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["suite"], "counterexample-gallery");
        assert_eq!(v["checked"], 10);
        assert_eq!(v["failures"], json!([]));
    }
}
