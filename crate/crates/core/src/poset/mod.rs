//! Finite posets with a bitset order matrix, lazily derived operation
//! tables and signature classification.

mod canonical;
mod classify;
mod dot;
pub mod enumerate;
mod json;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::limits;
use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

pub use canonical::CanonicalForm;
pub use classify::{AlgebraKind, Kind};
pub use dot::export_dot;
pub use json::{parse_poset, poset_to_json, PosetDocument};

/// Index of an element in its carrier.
pub type Elem = usize;

/// A finite partially ordered set.
///
/// `up[x]` holds every `y` with `x <= y`, `down[x]` every `y` with `y <= x`.
#[derive(Clone)]
pub struct FinitePoset {
    names: Vec<String>,
    index: HashMap<String, Elem>,
    up: Vec<BitSet>,
    down: Vec<BitSet>,
    covers: Vec<(Elem, Elem)>,
    tables: OnceLock<Tables>,
    kind: OnceLock<AlgebraKind>,
    neg: OnceLock<Option<Vec<u32>>>,
}

#[derive(Clone)]
struct Tables {
    meet: Option<Vec<u32>>,
    join: Option<Vec<u32>>,
    bottom: Option<Elem>,
    top: Option<Elem>,
}

impl FinitePoset {
    /// Builds a poset from generating pairs `(lo, hi)`; the order is their
    /// reflexive-transitive closure.
    pub fn new(names: Vec<String>, pairs: &[(Elem, Elem)]) -> Result<Self> {
        let n = names.len();
        limits::check_size(n)?;
        let mut up: Vec<BitSet> = (0..n).map(|i| BitSet::from_indices(n, [i])).collect();
        for &(lo, hi) in pairs {
            up[lo].insert(hi);
        }
        for k in 0..n {
            let row = up[k].clone();
            for row_i in up.iter_mut() {
                if row_i.contains(k) {
                    row_i.union_with(&row);
                }
            }
        }
        Self::from_up_sets(names, up)
    }

    /// Builds a poset from a `<=` predicate that must already be a partial order.
    pub fn from_leq(names: Vec<String>, leq: impl Fn(Elem, Elem) -> bool) -> Result<Self> {
        let n = names.len();
        limits::check_size(n)?;
        let up = (0..n).map(|i| BitSet::from_indices(n, (0..n).filter(|&j| leq(i, j)))).collect();
        let p = Self::from_up_sets(names, up)?;
        for i in 0..p.len() {
            for j in p.up[i].iter() {
                for k in p.up[j].iter() {
                    if !p.up[i].contains(k) {
                        return Err(Error::MalformedDocument(format!(
                            "relation is not transitive at `{}` <= `{}` <= `{}`",
                            p.names[i], p.names[j], p.names[k]
                        )));
                    }
                }
            }
        }
        Ok(p)
    }

    /// `up` must be reflexive and transitive; antisymmetry and names are checked.
    pub(crate) fn from_up_sets(names: Vec<String>, up: Vec<BitSet>) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::MalformedDocument("carrier must be non-empty".into()));
        }
        let mut index = HashMap::with_capacity(n);
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() {
                return Err(Error::MalformedDocument("element names must be non-empty".into()));
            }
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::DuplicateElement(name.clone()));
            }
        }
        let mut down = vec![BitSet::new(n); n];
        for (i, row) in up.iter().enumerate() {
            debug_assert!(row.contains(i));
            for j in row.iter() {
                down[j].insert(i);
            }
        }
        for i in 0..n {
            for j in up[i].iter() {
                if j != i && up[j].contains(i) {
                    return Err(Error::CycleDetected(names[i].clone(), names[j].clone()));
                }
            }
        }
        let mut covers = Vec::new();
        for i in 0..n {
            let mut strict = up[i].clone();
            strict.remove(i);
            for j in strict.iter() {
                let mut between = down[j].intersection(&strict);
                between.remove(j);
                if between.is_empty() {
                    covers.push((i, j));
                }
            }
        }
        Ok(FinitePoset {
            names,
            index,
            up,
            down,
            covers,
            tables: OnceLock::new(),
            kind: OnceLock::new(),
            neg: OnceLock::new(),
        })
    }

    /// The chain `0 < 1 < ... < n-1` with decimal names.
    pub fn chain(n: usize) -> Result<Self> {
        Self::from_leq((0..n).map(|i| i.to_string()).collect(), |a, b| a <= b)
    }

    /// The Boolean lattice `B_n`: bitstrings of length `n`, element index equal
    /// to the bitstring read as a binary number. `B_0` has the single element `e`.
    pub fn boolean_lattice(n: usize) -> Result<Self> {
        if n == 0 {
            return Self::from_leq(vec!["e".into()], |_, _| true);
        }
        if n >= usize::BITS as usize - 1 {
            return Err(Error::SizeCap { size: usize::MAX, cap: limits::size_cap() });
        }
        let size = 1usize << n;
        limits::check_size(size)?;
        let names = (0..size).map(|i| format!("{:0width$b}", i, width = n)).collect();
        let up = (0..size)
            .map(|i| BitSet::from_indices(size, (0..size).filter(|&j| i & !j == 0)))
            .collect();
        Self::from_up_sets(names, up)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, x: Elem) -> &str {
        &self.names[x]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<Elem> {
        self.index.get(name).copied()
    }

    pub fn elem(&self, name: &str) -> Result<Elem> {
        self.index_of(name).ok_or_else(|| Error::UnknownElementName(name.to_string()))
    }

    pub fn elems_of<S: AsRef<str>>(&self, names: &[S]) -> Result<BitSet> {
        let mut s = self.empty_set();
        for n in names {
            s.insert(self.elem(n.as_ref())?);
        }
        Ok(s)
    }

    #[inline]
    pub fn le(&self, x: Elem, y: Elem) -> bool {
        self.up[x].contains(y)
    }

    #[inline]
    pub fn lt(&self, x: Elem, y: Elem) -> bool {
        x != y && self.le(x, y)
    }

    pub fn up_set(&self, x: Elem) -> &BitSet {
        &self.up[x]
    }

    pub fn down_set(&self, x: Elem) -> &BitSet {
        &self.down[x]
    }

    /// Hasse diagram edges `(lower, upper)` in ascending order.
    pub fn covers(&self) -> &[(Elem, Elem)] {
        &self.covers
    }

    pub fn empty_set(&self) -> BitSet {
        BitSet::new(self.len())
    }

    pub fn full_set(&self) -> BitSet {
        BitSet::full(self.len())
    }

    pub fn dual(&self) -> FinitePoset {
        Self::from_up_sets(self.names.clone(), self.down.clone()).expect("dual of a valid poset")
    }

    /// The subposet induced on `selected`, keeping names and relative order.
    pub fn induced(&self, selected: &BitSet) -> FinitePoset {
        let keep: Vec<Elem> = selected.iter().collect();
        let k = keep.len();
        let names = keep.iter().map(|&x| self.names[x].clone()).collect();
        let up = keep
            .iter()
            .map(|&x| BitSet::from_indices(k, (0..k).filter(|&j| self.le(x, keep[j]))))
            .collect();
        Self::from_up_sets(names, up).expect("induced subposet of a valid poset")
    }

    /// Elements sorted so that `x < y` implies `x` comes first.
    pub fn linear_extension(&self) -> Vec<Elem> {
        let mut order: Vec<Elem> = (0..self.len()).collect();
        order.sort_by_key(|&x| (self.down[x].count(), x));
        order
    }

    /// Length of the longest chain below `x`.
    pub fn heights(&self) -> Vec<usize> {
        let mut h = vec![0; self.len()];
        for x in self.linear_extension() {
            h[x] = self.covers.iter().filter(|c| c.1 == x).map(|c| h[c.0] + 1).max().unwrap_or(0);
        }
        h
    }

    pub fn minimal_elements(&self, set: &BitSet) -> BitSet {
        BitSet::from_indices(
            self.len(),
            set.iter().filter(|&x| self.down[x].intersection(set).count() == 1),
        )
    }

    pub fn maximal_elements(&self, set: &BitSet) -> BitSet {
        BitSet::from_indices(
            self.len(),
            set.iter().filter(|&x| self.up[x].intersection(set).count() == 1),
        )
    }

    /// Common lower bounds of `xs`; the whole carrier for empty `xs`.
    pub fn lower_bounds(&self, xs: &BitSet) -> BitSet {
        let mut lb = self.full_set();
        for x in xs {
            lb.intersect_with(&self.down[x]);
        }
        lb
    }

    pub fn upper_bounds(&self, xs: &BitSet) -> BitSet {
        let mut ub = self.full_set();
        for x in xs {
            ub.intersect_with(&self.up[x]);
        }
        ub
    }

    /// Greatest element of `set`, if it has one.
    pub fn greatest(&self, set: &BitSet) -> Option<Elem> {
        let cand = set.iter().max_by_key(|&x| self.down[x].count())?;
        set.is_subset(&self.down[cand]).then_some(cand)
    }

    pub fn least(&self, set: &BitSet) -> Option<Elem> {
        let cand = set.iter().max_by_key(|&x| self.up[x].count())?;
        set.is_subset(&self.up[cand]).then_some(cand)
    }

    /// Greatest lower bound of an arbitrary subset, if it exists.
    pub fn glb(&self, xs: &BitSet) -> Option<Elem> {
        self.greatest(&self.lower_bounds(xs))
    }

    pub fn lub(&self, xs: &BitSet) -> Option<Elem> {
        self.least(&self.upper_bounds(xs))
    }

    fn tables(&self) -> &Tables {
        self.tables.get_or_init(|| {
            let all = self.full_set();
            Tables {
                meet: self.pair_table(&self.down, |s| self.greatest(s)),
                join: self.pair_table(&self.up, |s| self.least(s)),
                bottom: self.least(&all),
                top: self.greatest(&all),
            }
        })
    }

    fn pair_table(&self, rows: &[BitSet], pick: impl Fn(&BitSet) -> Option<Elem>) -> Option<Vec<u32>> {
        let n = self.len();
        let mut t = vec![0u32; n * n];
        for a in 0..n {
            t[a * n + a] = a as u32;
            for b in a + 1..n {
                let v = if rows[a].contains(b) {
                    b
                } else if rows[b].contains(a) {
                    a
                } else {
                    pick(&rows[a].intersection(&rows[b]))?
                };
                t[a * n + b] = v as u32;
                t[b * n + a] = v as u32;
            }
        }
        Some(t)
    }

    pub fn has_meets(&self) -> bool {
        self.tables().meet.is_some()
    }

    pub fn has_joins(&self) -> bool {
        self.tables().join.is_some()
    }

    pub fn is_lattice(&self) -> bool {
        self.has_meets() && self.has_joins()
    }

    /// Binary meet; `None` when it does not exist.
    #[inline]
    pub fn meet(&self, a: Elem, b: Elem) -> Option<Elem> {
        match &self.tables().meet {
            Some(t) => Some(t[a * self.len() + b] as Elem),
            None => self.glb(&BitSet::from_indices(self.len(), [a, b])),
        }
    }

    #[inline]
    pub fn join(&self, a: Elem, b: Elem) -> Option<Elem> {
        match &self.tables().join {
            Some(t) => Some(t[a * self.len() + b] as Elem),
            None => self.lub(&BitSet::from_indices(self.len(), [a, b])),
        }
    }

    /// Meet in a semilattice; panics if meets do not exist.
    #[inline]
    pub fn m(&self, a: Elem, b: Elem) -> Elem {
        let t = self.tables().meet.as_ref().expect("meet semilattice");
        t[a * self.len() + b] as Elem
    }

    /// Join in a lattice; panics if joins do not exist.
    #[inline]
    pub fn j(&self, a: Elem, b: Elem) -> Elem {
        let t = self.tables().join.as_ref().expect("join semilattice");
        t[a * self.len() + b] as Elem
    }

    pub fn bottom(&self) -> Option<Elem> {
        self.tables().bottom
    }

    pub fn top(&self) -> Option<Elem> {
        self.tables().top
    }

    /// Complement in a Boolean algebra.
    pub fn neg(&self, a: Elem) -> Option<Elem> {
        self.neg_table().map(|t| t[a] as Elem)
    }

    fn neg_table(&self) -> Option<&Vec<u32>> {
        self.neg
            .get_or_init(|| {
                if !self.kind().kind.at_least(Kind::DistributiveLattice) {
                    return None;
                }
                let (bot, top) = (self.bottom()?, self.top()?);
                (0..self.len())
                    .map(|a| {
                        (0..self.len())
                            .find(|&b| self.m(a, b) == bot && self.j(a, b) == top)
                            .map(|b| b as u32)
                    })
                    .collect()
            })
            .as_ref()
    }

    /// Meet of a finite set; the top for the empty set.
    pub fn meet_of_set(&self, xs: &BitSet) -> Result<Elem> {
        if xs.is_empty() {
            return self.top().ok_or(Error::EmptyWithoutTop);
        }
        if self.has_meets() {
            let mut it = xs.iter();
            let first = it.next().expect("non-empty");
            return Ok(it.fold(first, |acc, x| self.m(acc, x)));
        }
        self.glb(xs).ok_or(Error::NoMeet)
    }

    pub fn join_of_set(&self, xs: &BitSet) -> Result<Elem> {
        if xs.is_empty() {
            return self.bottom().ok_or(Error::NoMeet);
        }
        self.lub(xs).ok_or(Error::NoMeet)
    }

    /// Meet of a slice of elements in a meet semilattice.
    pub fn meet_all(&self, xs: &[Elem]) -> Option<Elem> {
        let (&first, rest) = xs.split_first()?;
        rest.iter().try_fold(first, |acc, &x| self.meet(acc, x))
    }

    pub fn kind(&self) -> AlgebraKind {
        *self.kind.get_or_init(|| classify::classify(self))
    }

    /// Records a classification known from construction, skipping the cubic check.
    pub(crate) fn set_kind_hint(&self, kind: AlgebraKind) {
        let _ = self.kind.set(kind);
    }

    pub fn upward_closure(&self, xs: &BitSet) -> BitSet {
        let mut u = self.empty_set();
        for x in xs {
            u.union_with(&self.up[x]);
        }
        u
    }

    pub fn downward_closure(&self, xs: &BitSet) -> BitSet {
        let mut d = self.empty_set();
        for x in xs {
            d.union_with(&self.down[x]);
        }
        d
    }

    pub fn is_upset(&self, set: &BitSet) -> bool {
        set.domain() == self.len() && set.iter().all(|x| self.up[x].is_subset(set))
    }

    pub fn is_downset(&self, set: &BitSet) -> bool {
        set.domain() == self.len() && set.iter().all(|x| self.down[x].is_subset(set))
    }

    /// A downset in which any two members have a common upper bound inside it.
    /// The empty set counts as an ideal.
    pub fn is_ideal(&self, set: &BitSet) -> bool {
        self.is_downset(set)
            && set.iter().all(|x| {
                set.iter().filter(|&y| y > x).all(|y| self.up[x].intersection(&self.up[y]).intersects(set))
            })
    }

    pub fn is_filter_poset(&self, set: &BitSet) -> bool {
        self.is_upset(set)
            && set.iter().all(|x| {
                set.iter()
                    .filter(|&y| y > x)
                    .all(|y| self.down[x].intersection(&self.down[y]).intersects(set))
            })
    }

    /// Every upset, in ascending numeric order of the member sets.
    pub fn upsets(&self) -> Vec<BitSet> {
        let mut out = Vec::new();
        self.for_each_upset(|u| out.push(u.clone()));
        out.sort();
        out
    }

    /// Visits every upset (in no particular order).
    pub fn for_each_upset(&self, mut visit: impl FnMut(&BitSet)) {
        let mut order = self.linear_extension();
        order.reverse();
        let mut cur = self.empty_set();
        self.upset_rec(&order, 0, &mut cur, &mut visit);
    }

    fn upset_rec(&self, order: &[Elem], i: usize, cur: &mut BitSet, visit: &mut impl FnMut(&BitSet)) {
        if i == order.len() {
            visit(cur);
            return;
        }
        let x = order[i];
        self.upset_rec(order, i + 1, cur, visit);
        let mut above = self.up[x].clone();
        above.remove(x);
        if above.is_subset(cur) {
            cur.insert(x);
            self.upset_rec(order, i + 1, cur, visit);
            cur.remove(x);
        }
    }

    pub fn canonical_form(&self) -> CanonicalForm {
        canonical::canonical_form(self, None)
    }

    /// Canonical form that also distinguishes the marked set.
    pub fn canonical_form_marked(&self, marked: &BitSet) -> CanonicalForm {
        canonical::canonical_form(self, Some(marked))
    }

    /// Relabels elements: element `x` of `self` becomes index `perm[x]`.
    pub fn permuted(&self, perm: &[Elem], names: Vec<String>) -> Result<FinitePoset> {
        let n = self.len();
        let mut up = vec![BitSet::new(n); n];
        for x in 0..n {
            for y in self.up[x].iter() {
                up[perm[x]].insert(perm[y]);
            }
        }
        Self::from_up_sets(names, up)
    }

    pub fn with_names(&self, names: Vec<String>) -> Result<FinitePoset> {
        if names.len() != self.len() {
            return Err(Error::MalformedDocument("name count does not match carrier".into()));
        }
        Self::from_up_sets(names, self.up.clone())
    }

    pub fn format_set(&self, set: &BitSet) -> String {
        let parts: Vec<&str> = set.iter().map(|x| self.name(x)).collect();
        format!("{{{}}}", parts.join(","))
    }
}

impl PartialEq for FinitePoset {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.up == other.up
    }
}

impl Eq for FinitePoset {}

impl fmt::Debug for FinitePoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let covers: Vec<(&str, &str)> =
            self.covers.iter().map(|&(a, b)| (self.name(a), self.name(b))).collect();
        f.debug_struct("FinitePoset").field("elements", &self.names).field("covers", &covers).finish()
    }
}

/// Is `selected` an ideal subposet of `ambient`: any two selected elements
/// below an ambient `u` have a selected upper bound below `u`.
pub fn is_ideal_subposet(ambient: &FinitePoset, selected: &BitSet) -> bool {
    let sel: Vec<Elem> = selected.iter().collect();
    for (i, &x) in sel.iter().enumerate() {
        for &y in &sel[i..] {
            let common = ambient.up_set(x).intersection(ambient.up_set(y));
            let inside = common.intersection(selected);
            for u in common.iter() {
                if !inside.intersects(ambient.down_set(u)) {
                    return false;
                }
            }
        }
    }
    true
}
