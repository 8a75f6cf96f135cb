//! Homomorphisms between structures and backtracking search for them.

use super::{ops, Signature, Structure};
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::poset::{Elem, FinitePoset};
use serde_json::{json, Map, Value};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homomorphism {
    pub map: Vec<Elem>,
    pub signature: Signature,
    /// The source's designated set is the preimage of the target's.
    pub strict: bool,
    pub surjective: bool,
    pub injective: bool,
}

impl Homomorphism {
    /// Validates `map` as a homomorphism in the common signature.
    pub fn check(src: &Structure, tgt: &Structure, map: Vec<Elem>) -> Result<Homomorphism> {
        let signature = src.signature().common(tgt.signature())?;
        if map.len() != src.len() || map.iter().any(|&v| v >= tgt.len()) {
            return Err(Error::NotHomomorphism("map is not a total function into the target".into()));
        }
        preserves(src.algebra(), tgt.algebra(), signature, &map).map_err(Error::NotHomomorphism)?;
        Ok(Self::describe(src, tgt, map, signature))
    }

    fn describe(src: &Structure, tgt: &Structure, map: Vec<Elem>, signature: Signature) -> Homomorphism {
        let mut hit = tgt.algebra().empty_set();
        for &v in &map {
            hit.insert(v);
        }
        let strict = (0..src.len()).all(|x| src.designated().contains(x) == tgt.designated().contains(map[x]));
        Homomorphism { surjective: hit.is_full(), injective: hit.count() == map.len(), strict, map, signature }
    }

    pub fn identity(s: &Structure) -> Homomorphism {
        Self::describe(s, s, (0..s.len()).collect(), s.signature())
    }

    pub fn preimage(&self, g: &BitSet) -> BitSet {
        BitSet::from_indices(self.map.len(), (0..self.map.len()).filter(|&x| g.contains(self.map[x])))
    }

    pub fn image(&self, f: &BitSet, target_len: usize) -> BitSet {
        BitSet::from_indices(target_len, f.iter().map(|x| self.map[x]))
    }

    /// `{"map": {src: dst, ...}, "strict": bool}`.
    pub fn to_json(&self, src: &FinitePoset, tgt: &FinitePoset) -> Value {
        let map: Map<String, Value> = self
            .map
            .iter()
            .enumerate()
            .map(|(x, &v)| (src.name(x).to_string(), Value::String(tgt.name(v).to_string())))
            .collect();
        json!({ "map": map, "strict": self.strict })
    }
}

/// Why `map` fails to preserve the operations of `sig`, if it does.
pub fn preserves(
    src: &FinitePoset,
    tgt: &FinitePoset,
    sig: Signature,
    map: &[Elem],
) -> std::result::Result<(), String> {
    let n = src.len();
    let name = |x: Elem| src.name(x).to_string();
    for x in 0..n {
        for y in src.up_set(x).iter() {
            if !tgt.le(map[x], map[y]) {
                return Err(format!("order not preserved at {} <= {}", name(x), name(y)));
            }
        }
    }
    if sig.has(ops::BOTTOM) && Some(map[src.bottom().expect("bottom")]) != tgt.bottom() {
        return Err("bottom not preserved".into());
    }
    if sig.has(ops::TOP) && Some(map[src.top().expect("top")]) != tgt.top() {
        return Err("top not preserved".into());
    }
    for x in 0..n {
        if sig.has(ops::NEG) && map[src.neg(x).expect("complement")] != tgt.neg(map[x]).expect("complement") {
            return Err(format!("complement not preserved at {}", name(x)));
        }
        for y in x + 1..n {
            if sig.has(ops::MEET) && map[src.m(x, y)] != tgt.m(map[x], map[y]) {
                return Err(format!("meet not preserved at {}, {}", name(x), name(y)));
            }
            if sig.has(ops::JOIN) && map[src.j(x, y)] != tgt.j(map[x], map[y]) {
                return Err(format!("join not preserved at {}, {}", name(x), name(y)));
            }
        }
    }
    Ok(())
}

/// Constraints on searched maps.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct HomSearch {
    pub strict: bool,
    pub injective: bool,
    /// Designated elements map to designated elements.
    pub preserving: bool,
}

const UNSET: Elem = usize::MAX;

struct Search<'a> {
    src: &'a FinitePoset,
    tgt: &'a FinitePoset,
    sig: Signature,
    designated: Option<(&'a BitSet, &'a BitSet)>,
    strict: bool,
    injective: bool,
    map: Vec<Elem>,
    used: Vec<bool>,
    trail: Vec<Elem>,
}

impl Search<'_> {
    fn allowed(&self, x: Elem, v: Elem) -> bool {
        if let Some((f, g)) = self.designated {
            let (fx, gv) = (f.contains(x), g.contains(v));
            if fx && !gv || self.strict && !fx && gv {
                return false;
            }
        }
        if self.injective && self.used[v] {
            return false;
        }
        for &y in &self.trail {
            let w = self.map[y];
            if self.src.le(y, x) && !self.tgt.le(w, v) || self.src.le(x, y) && !self.tgt.le(v, w) {
                return false;
            }
            if self.injective && (self.tgt.le(w, v) && !self.src.le(y, x) || self.tgt.le(v, w) && !self.src.le(x, y)) {
                return false;
            }
        }
        true
    }

    /// Assigns `x ↦ v` and every value it forces; false on conflict.
    fn assign(&mut self, x: Elem, v: Elem) -> bool {
        let mut queue = vec![(x, v)];
        while let Some((x, v)) = queue.pop() {
            if self.map[x] != UNSET {
                if self.map[x] != v {
                    return false;
                }
                continue;
            }
            if !self.allowed(x, v) {
                return false;
            }
            if self.sig.has(ops::NEG) {
                queue.push((self.src.neg(x).expect("complement"), self.tgt.neg(v).expect("complement")));
            }
            for &y in &self.trail {
                let w = self.map[y];
                if self.sig.has(ops::MEET) {
                    queue.push((self.src.m(x, y), self.tgt.m(v, w)));
                }
                if self.sig.has(ops::JOIN) {
                    queue.push((self.src.j(x, y), self.tgt.j(v, w)));
                }
            }
            self.map[x] = v;
            self.used[v] = true;
            self.trail.push(x);
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let x = self.trail.pop().expect("trail");
            self.used[self.map[x]] = false;
            self.map[x] = UNSET;
        }
    }

    fn run(&mut self, next: Elem, visit: &mut dyn FnMut(&[Elem]) -> bool) -> bool {
        let Some(x) = (next..self.src.len()).find(|&x| self.map[x] == UNSET) else {
            return visit(&self.map);
        };
        for v in 0..self.tgt.len() {
            let mark = self.trail.len();
            if self.assign(x, v) && self.run(x + 1, visit) {
                return true;
            }
            self.undo(mark);
        }
        false
    }
}

/// Calls `visit` on every homomorphism in the common signature, in
/// lexicographic order of the map; `visit` returns `true` to stop.
pub fn for_each_hom(
    src: &Structure,
    tgt: &Structure,
    opts: HomSearch,
    visit: impl FnMut(&[Elem]) -> bool,
) -> Result<()> {
    for_each_hom_fixing(src, tgt, opts, &[], visit)
}

/// `for_each_hom` restricted to maps sending each `x` to `v` for `(x, v)` in `fixed`.
pub fn for_each_hom_fixing(
    src: &Structure,
    tgt: &Structure,
    opts: HomSearch,
    fixed: &[(Elem, Elem)],
    mut visit: impl FnMut(&[Elem]) -> bool,
) -> Result<()> {
    let sig = src.signature().common(tgt.signature())?;
    let (a, b) = (src.algebra(), tgt.algebra());
    let mut s = Search {
        src: a,
        tgt: b,
        sig,
        designated: (opts.strict || opts.preserving).then(|| (src.designated(), tgt.designated())),
        strict: opts.strict,
        injective: opts.injective,
        map: vec![UNSET; a.len()],
        used: vec![false; b.len()],
        trail: Vec::with_capacity(a.len()),
    };
    if opts.injective && a.len() > b.len() {
        return Ok(());
    }
    if sig.has(ops::BOTTOM) && !s.assign(a.bottom().expect("bottom"), b.bottom().expect("bottom")) {
        return Ok(());
    }
    if sig.has(ops::TOP) && !s.assign(a.top().expect("top"), b.top().expect("top")) {
        return Ok(());
    }
    for &(x, v) in fixed {
        if !s.assign(x, v) {
            return Ok(());
        }
    }
    s.run(0, &mut visit);
    Ok(())
}

/// The lexicographically least homomorphism meeting `opts`.
pub fn find_hom(src: &Structure, tgt: &Structure, opts: HomSearch) -> Result<Option<Homomorphism>> {
    let sig = src.signature().common(tgt.signature())?;
    let mut found = None;
    for_each_hom(src, tgt, opts, |m| {
        found = Some(m.to_vec());
        true
    })?;
    Ok(found.map(|m| Homomorphism::describe(src, tgt, m, sig)))
}

pub fn find_strict_hom(a: &Structure, b: &Structure) -> Result<Option<Homomorphism>> {
    find_hom(a, b, HomSearch { strict: true, ..Default::default() })
}

/// Injective strict homomorphism, i.e. an embedding of structures.
pub fn find_embedding(a: &Structure, b: &Structure) -> Result<Option<Homomorphism>> {
    find_hom(a, b, HomSearch { strict: true, injective: true, ..Default::default() })
}

pub fn is_isomorphic(a: &Structure, b: &Structure) -> Result<bool> {
    Ok(a.len() == b.len() && find_embedding(a, b)?.is_some() && find_embedding(b, a)?.is_some())
}

/// The image of `src` under a surjective homomorphism onto `target`, with
/// designated set `h[F]`; `F` must be a union of kernel classes.
pub fn strict_image(src: &Structure, target: &Structure, map: &[Elem]) -> Result<Structure> {
    let h = Homomorphism::check(src, target, map.to_vec())?;
    if !h.surjective {
        return Err(Error::NotSurjective);
    }
    let image = h.image(src.designated(), target.len());
    if h.preimage(&image) != *src.designated() {
        return Err(Error::NotStrict);
    }
    Structure::new(target.algebra_arc().clone(), image, h.signature)
}
