//! Least n-filter containing an upset.

use super::{check_upset, for_each_guarded_antichain, is_n_filter, Degree};
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::limits;
use crate::poset::{Elem, FinitePoset};
use std::collections::HashSet;

const STATE_BUDGET: usize = 200_000;

/// Upward closure of the meets of all finite `X ⊆ u` whose meets of at most
/// `n` elements stay in `u`. `None` when the search exceeds its state budget.
pub fn admissible_closure(s: &FinitePoset, u: &BitSet, n: usize) -> Option<BitSet> {
    if n == 0 {
        return Some(if u.is_empty() { s.empty_set() } else { s.full_set() });
    }
    if n == 1 {
        return Some(meet_closure(s, u));
    }
    // State: minimal elements of S_k(X) for k = 1..n-1, where S_k(X) holds the
    // meets of nonempty subsets of X with at most k elements, and the meet of X.
    #[derive(Clone, PartialEq, Eq, Hash)]
    struct State {
        levels: Vec<BitSet>,
        meet: Elem,
    }
    let minimal = |set: &BitSet| -> BitSet {
        let mut out = set.clone();
        for x in set.iter() {
            if out.contains(x) {
                let mut above = s.up_set(x).clone();
                above.remove(x);
                out.difference_with(&above);
            }
        }
        out
    };
    let mut seen: HashSet<State> = HashSet::new();
    let mut stack: Vec<State> = Vec::new();
    let mut meets = s.empty_set();
    for x in u.iter() {
        let single = BitSet::from_indices(s.len(), [x]);
        let st = State { levels: vec![single; n - 1], meet: x };
        if seen.insert(st.clone()) {
            stack.push(st);
        }
    }
    while let Some(st) = stack.pop() {
        meets.insert(st.meet);
        let top_level = &st.levels[n - 2];
        for x in u.iter() {
            if st.levels[0].iter().any(|y| s.le(y, x)) {
                continue;
            }
            if !top_level.iter().all(|t| u.contains(s.m(t, x))) {
                continue;
            }
            let mut levels = Vec::with_capacity(n - 1);
            for k in 0..n - 1 {
                let mut next = st.levels[k].clone();
                next.insert(x);
                if k > 0 {
                    for t in st.levels[k - 1].iter() {
                        next.insert(s.m(t, x));
                    }
                }
                levels.push(minimal(&next));
            }
            let next = State { levels, meet: s.m(st.meet, x) };
            if seen.insert(next.clone()) {
                if seen.len() > STATE_BUDGET {
                    return None;
                }
                stack.push(next);
            }
        }
    }
    Some(s.upward_closure(&meets))
}

fn meet_closure(s: &FinitePoset, u: &BitSet) -> BitSet {
    let mut f = u.clone();
    let mut frontier: Vec<Elem> = u.iter().collect();
    while let Some(x) = frontier.pop() {
        let members: Vec<Elem> = f.iter().collect();
        for y in members {
            let m = s.m(x, y);
            if !f.contains(m) {
                f.insert(m);
                frontier.push(m);
            }
        }
    }
    s.upward_closure(&f)
}

/// Least upset containing `u` closed under the n-filter rule, by repeatedly
/// adding the meet of any `n+1` members whose partial meets already belong.
pub fn forced_meet_closure(s: &FinitePoset, u: &BitSet, n: usize) -> BitSet {
    if n == 0 {
        return if u.is_empty() { s.empty_set() } else { s.full_set() };
    }
    let mut f = s.upward_closure(u);
    loop {
        let mut added = s.empty_set();
        for_each_guarded_antichain(s, &f, n + 1, |xs| {
            let m = s.meet_all(xs).expect("meets");
            if !f.contains(m) && !added.contains(m) && all_but_one_in(s, &f, xs) {
                added.insert(m);
            }
            false
        });
        if added.is_empty() {
            return f;
        }
        f.union_with(&s.upward_closure(&added));
    }
}

fn all_but_one_in(s: &FinitePoset, f: &BitSet, xs: &[Elem]) -> bool {
    let mut rest = Vec::with_capacity(xs.len());
    (0..xs.len()).all(|i| {
        rest.clear();
        rest.extend(xs.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &x)| x));
        f.contains(s.meet_all(&rest).expect("meets"))
    })
}

/// One application of the admissible-set closure, falling back to the
/// forced-meet closure on large searches.
pub fn one_step(s: &FinitePoset, u: &BitSet, n: usize) -> BitSet {
    admissible_closure(s, u, n).unwrap_or_else(|| forced_meet_closure(s, u, n))
}

/// The n-filter generated by the upset `u`.
pub fn generate_n_filter(s: &FinitePoset, u: &BitSet, n: Degree) -> Result<BitSet> {
    if !s.has_meets() {
        return Err(Error::NotMeetSemilattice);
    }
    limits::check_size(s.len())?;
    check_upset(s, u)?;
    let n = match n {
        Degree::Infinity => return Ok(u.clone()),
        Degree::Finite(n) => n,
    };
    if s.kind().is_distributive_semilattice {
        return Ok(one_step(s, u, n));
    }
    let mut f = u.clone();
    loop {
        let next = one_step(s, &f, n);
        if next == f {
            return Ok(f);
        }
        f = next;
    }
}

/// Intersection of every n-filter containing `u`, by exhaustive enumeration.
pub fn generate_n_filter_oracle(s: &FinitePoset, u: &BitSet, n: Degree) -> Result<BitSet> {
    limits::check_cap(s.len(), limits::ORACLE_CAP)?;
    check_upset(s, u)?;
    let mut acc = s.full_set();
    let mut failure = None;
    s.for_each_upset(|g| {
        if failure.is_some() || !u.is_subset(g) {
            return;
        }
        match is_n_filter(s, g, n) {
            Ok(true) => acc.intersect_with(g),
            Ok(false) => {}
            Err(e) => failure = Some(e),
        }
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(acc),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::enumerate;

    #[test]
    fn closures_agree_on_small_distributive_lattices() {
        for level in enumerate::distributive_lattices(6) {
            for l in level {
                for u in l.upsets() {
                    for n in 0..=3 {
                        let forced = forced_meet_closure(&l, &u, n);
                        assert_eq!(admissible_closure(&l, &u, n).unwrap(), forced);
                        assert_eq!(generate_n_filter_oracle(&l, &u, n.into()).unwrap(), forced);
                    }
                }
            }
        }
    }

    #[test]
    fn one_step_can_fall_short_on_m5() {
        let m5 = FinitePoset::new(
            ["0", "a", "b", "c", "1"].map(String::from).to_vec(),
            &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)],
        )
        .unwrap();
        for u in m5.upsets() {
            for n in 1..=3 {
                let g = generate_n_filter(&m5, &u, n.into()).unwrap();
                assert_eq!(g, generate_n_filter_oracle(&m5, &u, n.into()).unwrap());
                assert!(u.is_subset(&one_step(&m5, &u, n)));
            }
        }
    }

    #[test]
    fn degree_extremes() {
        let b2 = FinitePoset::boolean_lattice(2).unwrap();
        let u = BitSet::from_indices(4, [1, 3]);
        assert_eq!(generate_n_filter(&b2, &u, Degree::Infinity).unwrap(), u);
        assert_eq!(generate_n_filter(&b2, &u, 0.into()).unwrap(), b2.full_set());
        assert_eq!(generate_n_filter(&b2, &b2.empty_set(), 0.into()).unwrap(), b2.empty_set());
        let atoms = BitSet::from_indices(4, [1, 2, 3]);
        assert_eq!(generate_n_filter(&b2, &atoms, 1.into()).unwrap(), b2.full_set());
        assert_eq!(generate_n_filter(&b2, &atoms, 2.into()).unwrap(), atoms);
    }
}
