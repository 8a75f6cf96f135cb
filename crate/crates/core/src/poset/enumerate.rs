//! Exhaustive enumeration of small posets, lattices, meet semilattices and
//! distributive lattices, each up to isomorphism.

use super::{Elem, FinitePoset};
use crate::bitset::BitSet;
use std::collections::HashSet;

/// Renames elements `0..n` along a canonical linear extension, so that
/// isomorphic inputs produce identical outputs.
pub fn normalize(p: &FinitePoset) -> FinitePoset {
    let cf = p.canonical_form();
    let lab = cf.labelling();
    let mut order: Vec<Elem> = (0..p.len()).collect();
    order.sort_by_key(|&x| (p.down_set(x).count(), lab[x]));
    let mut perm = vec![0; p.len()];
    for (pos, &x) in order.iter().enumerate() {
        perm[x] = pos;
    }
    p.permuted(&perm, (0..p.len()).map(|i| i.to_string()).collect()).expect("relabelling")
}

fn dedup_into(seen: &mut HashSet<Vec<u64>>, out: &mut Vec<FinitePoset>, p: FinitePoset) {
    if seen.insert(p.canonical_form().key().to_vec()) {
        out.push(normalize(&p));
    }
}

/// Adds one element whose strict upper set is `above` and which covers only `below`.
fn extend(p: &FinitePoset, below: &BitSet, above: &BitSet) -> FinitePoset {
    let n = p.len();
    let mut up: Vec<BitSet> = (0..n)
        .map(|x| {
            let mut row = BitSet::from_indices(n + 1, p.up_set(x).iter());
            if below.contains(x) {
                row.insert(n);
                for y in above.iter() {
                    row.insert(y);
                }
            }
            row
        })
        .collect();
    let mut row = BitSet::from_indices(n + 1, above.iter());
    row.insert(n);
    up.push(row);
    let names = (0..=n).map(|i| i.to_string()).collect();
    FinitePoset::from_up_sets(names, up).expect("extension stays a partial order")
}

/// All posets with `1..=max` elements, grouped by size (`result[k]` has size `k+1`).
pub fn posets(max: usize) -> Vec<Vec<FinitePoset>> {
    let mut levels: Vec<Vec<FinitePoset>> = Vec::new();
    if max == 0 {
        return levels;
    }
    levels.push(vec![FinitePoset::chain(1).expect("point")]);
    for size in 1..max {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for p in &levels[size - 1] {
            // New maximal element above the downset `d`.
            p.for_each_upset(|u| {
                let d = u.complement();
                let q = extend(p, &p.downward_closure(&d), &p.empty_set());
                dedup_into(&mut seen, &mut next, q);
            });
        }
        levels.push(next);
    }
    levels
}

/// All lattices with `1..=max` elements, grouped by size, generated by
/// repeatedly adding a new atom below an upset of the previous lattice.
pub fn lattices(max: usize) -> Vec<Vec<FinitePoset>> {
    let mut levels: Vec<Vec<FinitePoset>> = Vec::new();
    if max == 0 {
        return levels;
    }
    levels.push(vec![FinitePoset::chain(1).expect("point")]);
    for size in 1..max {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for l in &levels[size - 1] {
            let bot = l.bottom().expect("lattice has a bottom");
            let below = BitSet::from_indices(l.len(), [bot]);
            for u in l.upsets() {
                if u.contains(bot) {
                    continue;
                }
                let q = extend(l, &below, &u);
                if q.is_lattice() {
                    dedup_into(&mut seen, &mut next, q);
                }
            }
        }
        levels.push(next);
    }
    levels
}

/// Meet semilattices with `1..=max` elements: lattices with one more element,
/// top removed.
pub fn meet_semilattices(max: usize) -> Vec<Vec<FinitePoset>> {
    lattices(max + 1)
        .into_iter()
        .skip(1)
        .map(|level| {
            level
                .into_iter()
                .map(|l| {
                    let mut keep = l.full_set();
                    keep.remove(l.top().expect("lattice has a top"));
                    l.induced(&keep)
                })
                .collect()
        })
        .collect()
}

/// Number of downsets of `p`, or `cap + 1` if there are more than `cap`.
fn count_downsets_capped(p: &FinitePoset, cap: usize) -> usize {
    fn rec(p: &FinitePoset, order: &[Elem], i: usize, cur: &mut BitSet, count: &mut usize, cap: usize) {
        if *count > cap {
            return;
        }
        if i == order.len() {
            *count += 1;
            return;
        }
        let x = order[i];
        rec(p, order, i + 1, cur, count, cap);
        let mut below = p.down_set(x).clone();
        below.remove(x);
        if below.is_subset(cur) {
            cur.insert(x);
            rec(p, order, i + 1, cur, count, cap);
            cur.remove(x);
        }
    }
    let order = p.linear_extension();
    let mut count = 0;
    rec(p, &order, 0, &mut p.empty_set(), &mut count, cap);
    count
}

/// The lattice of downsets of `p` ordered by inclusion.
pub fn downset_lattice(p: &FinitePoset) -> FinitePoset {
    let mut downs: Vec<BitSet> = Vec::new();
    p.for_each_upset(|u| downs.push(u.complement()));
    downs.sort_by_key(|d| (d.count(), d.clone()));
    let names = downs.iter().map(|d| p.format_set(d)).collect();
    FinitePoset::from_leq(names, |a, b| downs[a].is_subset(&downs[b])).expect("inclusion order")
}

/// All distributive lattices with `1..=max` elements, grouped by size, as
/// downset lattices of posets of join-irreducibles.
pub fn distributive_lattices(max: usize) -> Vec<Vec<FinitePoset>> {
    let mut levels: Vec<Vec<FinitePoset>> = vec![Vec::new(); max];
    if max == 0 {
        return levels;
    }
    levels[0].push(FinitePoset::chain(1).expect("point"));
    let mut frontier = vec![FinitePoset::chain(1).expect("point")];
    while !frontier.is_empty() {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for p in &frontier {
            let k = count_downsets_capped(p, max);
            if k > max {
                continue;
            }
            levels[k - 1].push(normalize(&downset_lattice(p)));
            p.for_each_upset(|u| {
                let d = u.complement();
                let q = extend(p, &p.downward_closure(&d), &p.empty_set());
                if count_downsets_capped(&q, max) <= max && seen.insert(q.canonical_form().key().to_vec()) {
                    next.push(q);
                }
            });
        }
        frontier = next;
    }
    levels
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counts(levels: &[Vec<FinitePoset>]) -> Vec<usize> {
        levels.iter().map(Vec::len).collect()
    }

    #[test]
    fn poset_counts() {
        // Unlabelled posets, OEIS A000112.
        assert_eq!(counts(&posets(6)), vec![1, 2, 5, 16, 63, 318]);
    }

    #[test]
    fn lattice_counts_match_poset_filter() {
        let from_posets: Vec<usize> =
            posets(7).iter().map(|l| l.iter().filter(|p| p.is_lattice()).count()).collect();
        assert_eq!(counts(&lattices(7)), from_posets);
        // Unlabelled lattices, OEIS A006966.
        assert_eq!(from_posets, vec![1, 1, 1, 2, 5, 15, 53]);
    }

    #[test]
    fn distributive_counts_match_lattice_filter() {
        let filtered: Vec<usize> = lattices(8)
            .iter()
            .map(|l| l.iter().filter(|p| p.kind().kind.at_least(super::super::Kind::DistributiveLattice)).count())
            .collect();
        assert_eq!(counts(&distributive_lattices(8)), filtered);
        // Unlabelled distributive lattices, OEIS A006982.
        assert_eq!(filtered, vec![1, 1, 1, 2, 3, 5, 8, 15]);
    }

    #[test]
    fn semilattices_are_top_removed_lattices() {
        let s = meet_semilattices(4);
        assert_eq!(counts(&s), vec![1, 1, 2, 5]);
        assert!(s.iter().flatten().all(|p| p.has_meets()));
    }
}
