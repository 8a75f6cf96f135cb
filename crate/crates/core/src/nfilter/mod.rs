//! n-filter and primeness predicates, generation, decomposition and separation.

mod decompose;
mod generate;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::limits;
use crate::poset::{Elem, FinitePoset};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

pub use decompose::{
    decompose_prime_n_filter, filter_cover, independent_meets, is_union_of_filters, is_union_of_prime_filters,
    maximal_filters_within, pairwise_meet_condition, prime_filters, separate_prime_n_filter, PrimeDecomposition,
};
pub use generate::{
    admissible_closure, forced_meet_closure, generate_n_filter, generate_n_filter_oracle, one_step,
};

/// A natural number or infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Degree {
    Finite(usize),
    Infinity,
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::Finite(n) => Some(n),
            Degree::Infinity => None,
        }
    }
}

impl From<usize> for Degree {
    fn from(n: usize) -> Self {
        Degree::Finite(n)
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::Finite(n) => write!(f, "{n}"),
            Degree::Infinity => f.write_str("inf"),
        }
    }
}

impl std::str::FromStr for Degree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(Degree::Infinity),
            t => t.parse().map(Degree::Finite).map_err(|_| Error::BadParameter(format!("bad degree `{s}`"))),
        }
    }
}

impl Serialize for Degree {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Degree::Finite(n) => s.serialize_u64(*n as u64),
            Degree::Infinity => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Degree {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        match v {
            serde_json::Value::Number(n) => n
                .as_u64()
                .map(|n| Degree::Finite(n as usize))
                .ok_or_else(|| serde::de::Error::custom("degree must be a natural number")),
            serde_json::Value::String(s) => s.parse().map_err(serde::de::Error::custom),
            _ => Err(serde::de::Error::custom("degree must be a number or \"inf\"")),
        }
    }
}

pub(crate) fn check_upset(s: &FinitePoset, f: &BitSet) -> Result<()> {
    if s.is_upset(f) {
        Ok(())
    } else {
        Err(Error::NotAnUpset)
    }
}

/// Visits every set of `k` pairwise incomparable members of `f`, in
/// lexicographic index order, whose meets of at most `k - 1` elements stay in
/// `f`. The callback gets the chosen elements and stops the walk by returning
/// `true`.
pub(crate) fn for_each_guarded_antichain(
    s: &FinitePoset,
    f: &BitSet,
    k: usize,
    mut visit: impl FnMut(&[Elem]) -> bool,
) -> bool {
    fn rec(
        s: &FinitePoset,
        members: &[Elem],
        f: &BitSet,
        k: usize,
        start: usize,
        chosen: &mut Vec<Elem>,
        meet: Option<Elem>,
        visit: &mut impl FnMut(&[Elem]) -> bool,
    ) -> bool {
        if chosen.len() == k {
            return visit(chosen);
        }
        for i in start..members.len() {
            let x = members[i];
            if chosen.iter().any(|&c| s.le(c, x) || s.le(x, c)) {
                continue;
            }
            let m = meet.map_or(x, |m| s.m(m, x));
            if chosen.len() + 1 < k && !f.contains(m) {
                continue;
            }
            chosen.push(x);
            let stop = rec(s, members, f, k, i + 1, chosen, Some(m), visit);
            chosen.pop();
            if stop {
                return true;
            }
        }
        false
    }
    let members: Vec<Elem> = f.iter().collect();
    rec(s, &members, f, k, 0, &mut Vec::with_capacity(k), None, &mut visit)
}

/// First `n+1` elements of `f` whose meets leaving out one element all lie in
/// `f` while their full meet does not.
pub(crate) fn restricted_violation(s: &FinitePoset, f: &BitSet, n: usize) -> Option<Vec<Elem>> {
    let mut found = None;
    for_each_guarded_antichain(s, f, n + 1, |xs| {
        if f.contains(s.meet_all(xs).expect("meets")) || !all_but_one_in(s, f, xs) {
            return false;
        }
        found = Some(xs.to_vec());
        true
    });
    found
}

fn all_but_one_in(s: &FinitePoset, f: &BitSet, xs: &[Elem]) -> bool {
    (0..xs.len()).all(|i| {
        let rest: Vec<Elem> = xs.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &x)| x).collect();
        rest.is_empty() || f.contains(s.meet_all(&rest).expect("meets"))
    })
}

/// Violation of the n-filter condition, if any: on semilattices an
/// `(n+1)`-tuple per the restricted definition, on other posets a finite
/// subset without a common lower bound in `f`.
pub fn n_filter_violation(s: &FinitePoset, f: &BitSet, n: Degree) -> Result<Option<Vec<Elem>>> {
    check_upset(s, f)?;
    let n = match n {
        Degree::Infinity => return Ok(None),
        Degree::Finite(n) => n,
    };
    if n == 0 {
        return Ok(if f.is_empty() || f.is_full() { None } else { Some(Vec::new()) });
    }
    if s.has_meets() {
        Ok(restricted_violation(s, f, n))
    } else {
        poset_violation(s, f, n)
    }
}

pub fn is_n_filter(s: &FinitePoset, f: &BitSet, n: Degree) -> Result<bool> {
    Ok(n_filter_violation(s, f, n)?.is_none())
}

/// Semilattice path: only `(n+1)`-element subsets are inspected.
pub fn is_n_filter_restricted(s: &FinitePoset, f: &BitSet, n: usize) -> Result<bool> {
    check_upset(s, f)?;
    if !s.has_meets() {
        return Err(Error::NotMeetSemilattice);
    }
    Ok(n == 0 && (f.is_empty() || f.is_full()) || n > 0 && restricted_violation(s, f, n).is_none())
}

/// Poset path over every finite subset of `f`, using common lower bounds.
pub fn is_n_filter_full(s: &FinitePoset, f: &BitSet, n: usize) -> Result<bool> {
    check_upset(s, f)?;
    if n == 0 {
        return Ok(f.is_empty() || f.is_full());
    }
    Ok(poset_violation(s, f, n)?.is_none())
}

fn poset_violation(s: &FinitePoset, f: &BitSet, n: usize) -> Result<Option<Vec<Elem>>> {
    limits::check_cap(s.len(), limits::POSET_PATH_CAP)?;
    let members: Vec<Elem> = f.iter().collect();
    let k = members.len();
    let total = 1usize << k;
    // good[X]: X has a common lower bound inside f.
    let mut lower = vec![s.full_set(); total];
    let mut good = vec![true; total];
    let mut all_small = vec![true; total];
    for mask in 1..total {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        lower[mask] = lower[rest].intersection(s.down_set(members[low]));
        good[mask] = lower[mask].intersects(f);
        let size = mask.count_ones() as usize;
        all_small[mask] = if size <= n {
            good[mask]
        } else {
            (0..k).filter(|b| mask >> b & 1 == 1).all(|b| all_small[mask & !(1 << b)])
        };
        if size > n && all_small[mask] && !good[mask] {
            return Ok(Some((0..k).filter(|b| mask >> b & 1 == 1).map(|b| members[b]).collect()));
        }
    }
    Ok(None)
}

/// Least `n` for which `f` is an n-filter; 0 for the empty and total upsets.
pub fn min_filter_degree(s: &FinitePoset, f: &BitSet) -> Result<usize> {
    check_upset(s, f)?;
    for n in 0..=s.len() {
        if is_n_filter(s, f, Degree::Finite(n))? {
            return Ok(n);
        }
    }
    unreachable!("every upset of a finite poset is an n-filter for n = |carrier|")
}

/// A pair witnessing that `f` is not prime: joins `a ∨ b` in `f` with `a, b`
/// outside, or (without joins) two elements outside `f` with no common upper
/// bound outside `f`.
pub fn prime_violation(s: &FinitePoset, f: &BitSet) -> Result<Option<(Elem, Elem)>> {
    check_upset(s, f)?;
    let out: Vec<Elem> = f.complement().iter().collect();
    if s.has_joins() {
        for (i, &a) in out.iter().enumerate() {
            for &b in &out[i + 1..] {
                if f.contains(s.j(a, b)) {
                    return Ok(Some((a, b)));
                }
            }
        }
        return Ok(None);
    }
    let comp = f.complement();
    for (i, &a) in out.iter().enumerate() {
        for &b in &out[i + 1..] {
            if !s.up_set(a).intersection(s.up_set(b)).intersects(&comp) {
                return Ok(Some((a, b)));
            }
        }
    }
    Ok(None)
}

pub fn is_prime_upset(s: &FinitePoset, f: &BitSet) -> Result<bool> {
    Ok(prime_violation(s, f)?.is_none())
}

/// Is `x` meet m-prime: `⋀Y <= x` forces `⋀Z <= x` for some `Z` of at most
/// `m` elements of `Y`. Only `(m+1)`-element `Y` are inspected.
pub fn is_m_prime_element(s: &FinitePoset, x: Elem, m: usize) -> Result<bool> {
    if !s.has_meets() {
        return Err(Error::NotMeetSemilattice);
    }
    if m == 0 {
        return Err(Error::BadParameter("m must be at least 1".into()));
    }
    // Elements below x make Y trivially fine, so Y avoids them.
    let avoid = s.down_set(x).complement();
    let not_below = |e: Elem| !s.le(e, x);
    let mut ok = true;
    let k = m + 1;
    let members: Vec<Elem> = avoid.iter().collect();
    let mut chosen = Vec::with_capacity(k);
    fn rec(
        s: &FinitePoset,
        members: &[Elem],
        k: usize,
        start: usize,
        chosen: &mut Vec<Elem>,
        x: Elem,
        ok: &mut bool,
        not_below: &impl Fn(Elem) -> bool,
    ) {
        if !*ok {
            return;
        }
        if chosen.len() == k {
            if s.le(s.meet_all(chosen).expect("meets"), x) {
                let some_m = (0..k).any(|i| {
                    let rest: Vec<Elem> =
                        chosen.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &e)| e).collect();
                    !not_below(s.meet_all(&rest).expect("meets"))
                });
                if !some_m {
                    *ok = false;
                }
            }
            return;
        }
        for i in start..members.len() {
            chosen.push(members[i]);
            rec(s, members, k, i + 1, chosen, x, ok, not_below);
            chosen.pop();
        }
    }
    rec(s, &members, k, 0, &mut chosen, x, &mut ok, &not_below);
    Ok(ok)
}

/// Every n-filter of `s`, in ascending numeric order.
pub fn enumerate_n_filters(s: &FinitePoset, n: Degree) -> Result<Vec<BitSet>> {
    let mut out = Vec::new();
    for u in s.upsets() {
        if is_n_filter(s, &u, n)? {
            out.push(u);
        }
    }
    Ok(out)
}

/// The lattice of n-filters ordered by inclusion.
pub fn n_filter_lattice(s: &FinitePoset, n: Degree) -> Result<(FinitePoset, Vec<BitSet>)> {
    let filters = enumerate_n_filters(s, n)?;
    let names = filters.iter().map(|f| s.format_set(f)).collect();
    let p = FinitePoset::from_leq(names, |a, b| filters[a].is_subset(&filters[b]))?;
    Ok((p, filters))
}

/// Is the n-filter `f` a meet m-prime element of the lattice of n-filters.
/// The empty and total upsets always count as m-prime.
pub fn is_m_prime_n_filter(s: &FinitePoset, f: &BitSet, m: usize, n: Degree) -> Result<bool> {
    if !is_n_filter(s, f, n)? {
        return Err(Error::NotAnNFilter);
    }
    if m == 0 {
        return Err(Error::BadParameter("m must be at least 1".into()));
    }
    if f.is_empty() || f.is_full() {
        return Ok(true);
    }
    let filters = enumerate_n_filters(s, n)?;
    Ok(m_prime_in_family(f, &filters, m))
}

/// Meet m-primeness of `f` among a family of sets closed under the relevant
/// intersections: no `m+1` members whose intersection lies in `f` while every
/// `m` of them escape `f`.
pub(crate) fn m_prime_in_family(f: &BitSet, family: &[BitSet], m: usize) -> bool {
    let outside: Vec<&BitSet> = family.iter().filter(|g| !g.is_subset(f)).collect();
    fn rec(outside: &[&BitSet], f: &BitSet, m: usize, start: usize, chosen: &mut Vec<usize>, acc: &BitSet) -> bool {
        if chosen.len() == m + 1 {
            if !acc.is_subset(f) {
                return true;
            }
            return (0..chosen.len()).any(|skip| {
                let mut inter = BitSet::full(f.domain());
                for (j, &c) in chosen.iter().enumerate() {
                    if j != skip {
                        inter.intersect_with(outside[c]);
                    }
                }
                inter.is_subset(f)
            });
        }
        for i in start..outside.len() {
            let next = acc.intersection(outside[i]);
            // Once an intersection of at most m members lands in f, every
            // extension is fine.
            if chosen.len() < m && next.is_subset(f) {
                continue;
            }
            chosen.push(i);
            let ok = rec(outside, f, m, i + 1, chosen, &next);
            chosen.pop();
            if !ok {
                return false;
            }
        }
        true
    }
    rec(&outside, f, m, 0, &mut Vec::new(), &BitSet::full(f.domain()))
}
