//! Canonical labelling by colour refinement with individualisation.
//! Exponential on highly symmetric carriers; meant for the small posets
//! produced by enumeration.

use super::{Elem, FinitePoset};
use crate::bitset::BitSet;

/// Isomorphism-invariant key: two posets (with marked sets) are isomorphic
/// iff their canonical forms are equal.
#[derive(Clone, Debug)]
pub struct CanonicalForm {
    key: Vec<u64>,
    perm: Vec<Elem>,
}

impl CanonicalForm {
    /// Position of each original element in the canonical order.
    pub fn labelling(&self) -> &[Elem] {
        &self.perm
    }

    pub fn key(&self) -> &[u64] {
        &self.key
    }
}

impl PartialEq for CanonicalForm {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key
    }
}

impl Eq for CanonicalForm {}

impl std::hash::Hash for CanonicalForm {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.key.hash(state)
    }
}

impl Ord for CanonicalForm {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key.cmp(&other.key)
    }
}

impl PartialOrd for CanonicalForm {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

pub(super) fn canonical_form(p: &FinitePoset, marked: Option<&BitSet>) -> CanonicalForm {
    let n = p.len();
    let init: Vec<(bool, usize, usize)> = (0..n)
        .map(|x| (marked.is_some_and(|m| m.contains(x)), p.down_set(x).count(), p.up_set(x).count()))
        .collect();
    let colours = refine(p, rank(&init));
    let mut best: Option<(Vec<u64>, Vec<Elem>)> = None;
    search(p, marked, colours, &mut best);
    let (key, perm) = best.expect("non-empty search");
    CanonicalForm { key, perm }
}

fn rank<T: Ord + Clone>(sigs: &[T]) -> Vec<usize> {
    let mut sorted: Vec<T> = sigs.to_vec();
    sorted.sort();
    sorted.dedup();
    sigs.iter().map(|s| sorted.binary_search(s).expect("present")).collect()
}

fn distinct(c: &[usize]) -> usize {
    let mut v = c.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}

fn refine(p: &FinitePoset, mut colours: Vec<usize>) -> Vec<usize> {
    let n = p.len();
    let mut classes = distinct(&colours);
    loop {
        let sigs: Vec<(usize, Vec<usize>, Vec<usize>)> = (0..n)
            .map(|x| {
                let mut below: Vec<usize> =
                    p.down_set(x).iter().filter(|&y| y != x).map(|y| colours[y]).collect();
                let mut above: Vec<usize> =
                    p.up_set(x).iter().filter(|&y| y != x).map(|y| colours[y]).collect();
                below.sort_unstable();
                above.sort_unstable();
                (colours[x], below, above)
            })
            .collect();
        let next = rank(&sigs);
        let k = distinct(&next);
        colours = next;
        if k == classes {
            return colours;
        }
        classes = k;
    }
}

fn search(p: &FinitePoset, marked: Option<&BitSet>, colours: Vec<usize>, best: &mut Option<(Vec<u64>, Vec<Elem>)>) {
    let n = p.len();
    if distinct(&colours) == n {
        let key = leaf_key(p, marked, &colours);
        if best.as_ref().map_or(true, |(b, _)| key < *b) {
            *best = Some((key, colours));
        }
        return;
    }
    let mut sizes = vec![0usize; n];
    for &c in &colours {
        sizes[c] += 1;
    }
    let target = (0..n).find(|&c| sizes[c] > 1).expect("non-discrete");
    for x in (0..n).filter(|&x| colours[x] == target) {
        let split: Vec<usize> = (0..n)
            .map(|v| 2 * colours[v] + usize::from(colours[v] == target && v != x))
            .collect();
        search(p, marked, refine(p, rank(&split)), best);
    }
}

fn leaf_key(p: &FinitePoset, marked: Option<&BitSet>, perm: &[usize]) -> Vec<u64> {
    let n = p.len();
    let words = n.div_ceil(64);
    let mut inv = vec![0; n];
    for (x, &c) in perm.iter().enumerate() {
        inv[c] = x;
    }
    let mut key = Vec::with_capacity(2 + n * (words + 1));
    key.push(n as u64);
    for &x in &inv {
        key.push(u64::from(marked.is_some_and(|m| m.contains(x))));
        let mut row = vec![0u64; words];
        for y in p.up_set(x).iter() {
            let c = perm[y];
            row[c / 64] |= 1 << (c % 64);
        }
        key.extend(row);
    }
    key
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isomorphic_relabellings_agree() {
        let a = FinitePoset::new(
            ["0", "a", "b", "1"].map(String::from).to_vec(),
            &[(0, 1), (0, 2), (1, 3), (2, 3)],
        )
        .unwrap();
        let b = FinitePoset::new(
            ["x", "y", "z", "w"].map(String::from).to_vec(),
            &[(3, 0), (3, 2), (0, 1), (2, 1)],
        )
        .unwrap();
        assert_eq!(a.canonical_form().key(), b.canonical_form().key());
        let chain = FinitePoset::chain(4).unwrap();
        assert_ne!(a.canonical_form().key(), chain.canonical_form().key());
    }

    #[test]
    fn marking_distinguishes() {
        let b2 = FinitePoset::boolean_lattice(2).unwrap();
        let one_atom = b2.canonical_form_marked(&BitSet::from_indices(4, [1, 3]));
        let other_atom = b2.canonical_form_marked(&BitSet::from_indices(4, [2, 3]));
        let top = b2.canonical_form_marked(&BitSet::from_indices(4, [3]));
        assert_eq!(one_atom.key(), other_atom.key());
        assert_ne!(one_atom.key(), top.key());
    }
}
