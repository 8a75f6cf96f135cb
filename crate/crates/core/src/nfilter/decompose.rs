//! Prime decompositions, separation, and unions of filters.

use super::{check_upset, generate_n_filter, is_n_filter, is_prime_upset, min_filter_degree, Degree};
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::limits;
use crate::poset::{Elem, FinitePoset};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeDecomposition {
    pub parts: Vec<BitSet>,
}

/// Lexicographically first `k` members of `f` whose pairwise meets all fall
/// outside `f`.
pub fn independent_meets(s: &FinitePoset, f: &BitSet, k: usize) -> Option<Vec<Elem>> {
    fn rec(s: &FinitePoset, members: &[Elem], f: &BitSet, k: usize, start: usize, chosen: &mut Vec<Elem>) -> bool {
        if chosen.len() == k {
            return true;
        }
        for i in start..members.len() {
            let x = members[i];
            if chosen.iter().all(|&c| !f.contains(s.m(c, x))) {
                chosen.push(x);
                if rec(s, members, f, k, i + 1, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let members: Vec<Elem> = f.iter().collect();
    let mut chosen = Vec::with_capacity(k);
    rec(s, &members, f, k, 0, &mut chosen).then_some(chosen)
}

/// Among any `k+1` members of `f`, two have their meet in `f`.
pub fn pairwise_meet_condition(s: &FinitePoset, f: &BitSet, k: usize) -> bool {
    independent_meets(s, f, k + 1).is_none()
}

/// Grows the principal filter at `b` inside `f`, scanning `f` in ascending order.
fn extend_principal(s: &FinitePoset, f: &BitSet, b: Elem) -> BitSet {
    let mut g = b;
    for x in f.iter() {
        let m = s.m(g, x);
        if f.contains(m) {
            g = m;
        }
    }
    s.up_set(g).clone()
}

/// Splits a prime n-filter of a distributive lattice into `n` prime filters,
/// `n` being its least filter degree. The total upset yields itself.
pub fn decompose_prime_n_filter(l: &FinitePoset, f: &BitSet) -> Result<PrimeDecomposition> {
    check_upset(l, f)?;
    if !l.is_lattice() || !l.kind().kind.at_least(crate::poset::Kind::DistributiveLattice) {
        return Err(Error::NoDecomposition("carrier is not a distributive lattice".into()));
    }
    if !is_prime_upset(l, f)? {
        return Err(Error::NotPrime);
    }
    if f.is_empty() {
        return Ok(PrimeDecomposition { parts: Vec::new() });
    }
    if f.is_full() {
        return Ok(PrimeDecomposition { parts: vec![f.clone()] });
    }
    let n = min_filter_degree(l, f)?;
    let witnesses = independent_meets(l, f, n)
        .ok_or_else(|| Error::NoDecomposition(format!("no {n} members with pairwise meets outside the upset")))?;
    let parts: Vec<BitSet> = witnesses.iter().map(|&b| extend_principal(l, f, b)).collect();
    let mut union = l.empty_set();
    for p in &parts {
        if !is_prime_upset(l, p)? {
            return Err(Error::NoDecomposition(format!("part {} is not prime", l.format_set(p))));
        }
        union.union_with(p);
    }
    if union != *f {
        return Err(Error::NoDecomposition("parts do not cover the upset".into()));
    }
    Ok(PrimeDecomposition { parts })
}

/// Extends the n-filter `f` to a prime n-filter disjoint from the ideal `i`,
/// adding elements greedily in ascending order.
pub fn separate_prime_n_filter(l: &FinitePoset, f: &BitSet, i: &BitSet, n: Degree) -> Result<BitSet> {
    if !l.is_lattice() || !l.kind().kind.at_least(crate::poset::Kind::DistributiveLattice) {
        return Err(Error::NotDistributive);
    }
    if !is_n_filter(l, f, n)? {
        return Err(Error::NotAnNFilter);
    }
    if !l.is_ideal(i) {
        return Err(Error::NotIdeal);
    }
    if f.intersects(i) {
        return Err(Error::NotDisjoint);
    }
    let mut g = f.clone();
    for x in 0..l.len() {
        if g.contains(x) || i.contains(x) {
            continue;
        }
        let mut seed = g.clone();
        seed.union_with(l.up_set(x));
        let cand = generate_n_filter(l, &seed, n)?;
        if !cand.intersects(i) {
            g = cand;
        }
    }
    if !is_prime_upset(l, &g)? || !is_n_filter(l, &g, n)? {
        return Err(Error::NotPrime);
    }
    Ok(g)
}

/// The maximal filters contained in `f`, found by scanning all upsets.
pub fn maximal_filters_within(s: &FinitePoset, f: &BitSet) -> Result<Vec<BitSet>> {
    check_upset(s, f)?;
    limits::check_cap(s.len(), limits::ORACLE_CAP)?;
    let mut filters = Vec::new();
    s.for_each_upset(|u| {
        if !u.is_empty() && u.is_subset(f) && is_n_filter(s, u, Degree::Finite(1)).unwrap_or(false) {
            filters.push(u.clone());
        }
    });
    Ok(maximal_sets(filters))
}

fn maximal_sets(mut sets: Vec<BitSet>) -> Vec<BitSet> {
    sets.sort();
    let keep: Vec<bool> = sets
        .iter()
        .map(|a| !sets.iter().any(|b| b != a && a.is_subset(b)))
        .collect();
    sets.into_iter().zip(keep).filter(|(_, k)| *k).map(|(s, _)| s).collect()
}

/// Nonempty prime filters of `s`, ascending.
pub fn prime_filters(s: &FinitePoset) -> Result<Vec<BitSet>> {
    limits::check_cap(s.len(), limits::ORACLE_CAP)?;
    let mut out = Vec::new();
    for u in s.upsets() {
        if !u.is_empty() && is_n_filter(s, &u, Degree::Finite(1))? && is_prime_upset(s, &u)? {
            out.push(u);
        }
    }
    Ok(out)
}

/// At most `k` members of `family`, each inside `f`, whose union is `f`.
pub fn filter_cover(f: &BitSet, family: &[BitSet], k: usize) -> Option<Vec<BitSet>> {
    let inside: Vec<&BitSet> = family.iter().filter(|g| g.is_subset(f)).collect();
    fn rec<'a>(
        f: &BitSet,
        inside: &[&'a BitSet],
        k: usize,
        start: usize,
        acc: &BitSet,
        chosen: &mut Vec<&'a BitSet>,
    ) -> bool {
        if acc == f {
            return true;
        }
        if chosen.len() == k {
            return false;
        }
        // The least uncovered element must be covered by some later choice.
        let need = f.difference(acc).first().expect("uncovered element");
        for i in start..inside.len() {
            if !inside[i].contains(need) {
                continue;
            }
            chosen.push(inside[i]);
            if rec(f, inside, k, 0, &acc.union(inside[i]), chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    let mut chosen = Vec::new();
    rec(f, &inside, k, 0, &BitSet::new(f.domain()), &mut chosen).then(|| chosen.into_iter().cloned().collect())
}

pub fn is_union_of_filters(s: &FinitePoset, f: &BitSet, k: usize) -> Result<bool> {
    Ok(filter_cover(f, &maximal_filters_within(s, f)?, k).is_some())
}

pub fn is_union_of_prime_filters(s: &FinitePoset, f: &BitSet, k: usize) -> Result<bool> {
    check_upset(s, f)?;
    let within: Vec<BitSet> = prime_filters(s)?.into_iter().filter(|p| p.is_subset(f)).collect();
    Ok(filter_cover(f, &maximal_sets(within), k).is_some())
}
