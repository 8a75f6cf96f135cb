//! Membership in filter classes generated by finite structures, the splitting
//! dichotomy for αₙ, the `∇ₘ × ∇ₙ` class criterion, and named theorem suites.

mod suites;

pub use suites::{run_theorem_suite, run_theorem_suite_with, SuiteReport, SUITES};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::horn::{builtin_rule, holds_in, Builtin};
use crate::nfilter::{generate_n_filter, is_n_filter, Degree};
use crate::poset::{Elem, FinitePoset};
use crate::structures::{
    canonical, find_embedding, for_each_hom_fixing, free_algebra, ops, Canonical, HomSearch, Signature, Structure,
};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Closure {
    /// Substructures, products and strict homomorphic preimages.
    FilterClass,
    /// Additionally strict homomorphic images.
    LogicalClass,
}

/// The class generated by finitely many finite structures.
#[derive(Clone, Debug)]
pub struct ClassSpec {
    generators: Vec<Structure>,
    closure: Closure,
    signature: Signature,
}

impl ClassSpec {
    /// Generators are read in the signature they share.
    pub fn new(generators: Vec<Structure>, closure: Closure) -> Result<ClassSpec> {
        let Some(first) = generators.first() else {
            return Err(Error::BadParameter("a class needs at least one generator".into()));
        };
        let mut signature = first.signature();
        for g in &generators[1..] {
            signature = signature.common(g.signature())?;
        }
        let generators = generators.iter().map(|g| g.reduct(signature)).collect::<Result<_>>()?;
        Ok(ClassSpec { generators, closure, signature })
    }

    pub fn generators(&self) -> &[Structure] {
        &self.generators
    }

    pub fn closure(&self) -> Closure {
        self.closure
    }

    pub fn signature(&self) -> Signature {
        self.signature
    }
}

/// Elements outside `F` that no designation-preserving homomorphism into a
/// generator sends outside the generator's designated set. `a` belongs to the
/// filter class iff there are none: then `F` is the intersection of the
/// preimages `h⁻¹[G]` containing it.
fn unseparated(spec: &ClassSpec, a: &Structure) -> Result<BitSet> {
    let f = a.designated();
    let mut open = f.complement();
    let opts = HomSearch { preserving: true, ..Default::default() };
    for g in &spec.generators {
        let outside = g.designated().complement();
        for x in 0..a.len() {
            if !open.contains(x) {
                continue;
            }
            for v in outside.iter() {
                let mut hit = None;
                for_each_hom_fixing(a, g, opts, &[(x, v)], |map| {
                    hit = Some(map.to_vec());
                    true
                })?;
                if let Some(map) = hit {
                    for y in open.clone().iter() {
                        if !g.designated().contains(map[y]) {
                            open.remove(y);
                        }
                    }
                    break;
                }
            }
        }
        if open.is_empty() {
            break;
        }
    }
    Ok(open)
}

fn in_filter_class(spec: &ClassSpec, a: &Structure) -> Result<bool> {
    Ok(unseparated(spec, a)?.is_empty())
}

/// Closure of `xs` under the operations and constants of `sig`.
pub fn generated_subalgebra(alg: &FinitePoset, sig: Signature, xs: &[Elem]) -> BitSet {
    let mut set = BitSet::from_indices(alg.len(), xs.iter().copied());
    if sig.has(ops::BOTTOM) {
        set.insert(alg.bottom().expect("bottom"));
    }
    if sig.has(ops::TOP) {
        set.insert(alg.top().expect("top"));
    }
    loop {
        let members = set.to_vec();
        let before = set.count();
        for &x in &members {
            if sig.has(ops::NEG) {
                set.insert(alg.neg(x).expect("complement"));
            }
            for &y in &members {
                if sig.has(ops::MEET) {
                    set.insert(alg.m(x, y));
                }
                if sig.has(ops::JOIN) {
                    set.insert(alg.j(x, y));
                }
            }
        }
        if set.count() == before {
            return set;
        }
    }
}

/// A smallest generating set of the algebra, searched up to `max` elements.
fn minimal_generators(alg: &FinitePoset, sig: Signature, max: usize) -> Option<Vec<Elem>> {
    fn rec(alg: &FinitePoset, sig: Signature, size: usize, start: usize, cur: &mut Vec<Elem>) -> bool {
        if cur.len() == size {
            return generated_subalgebra(alg, sig, cur).is_full();
        }
        for x in start..alg.len() {
            cur.push(x);
            if rec(alg, sig, size, x + 1, cur) {
                return true;
            }
            cur.pop();
        }
        false
    }
    (0..=max.min(alg.len())).find_map(|size| {
        let mut cur = Vec::new();
        rec(alg, sig, size, 0, &mut cur).then_some(cur)
    })
}

/// Logical-class membership through a free cover: with `π: Fr(X) → A` onto,
/// `⟨A,F⟩` is a strict image of a class member iff `⟨Fr(X), π⁻¹[F]⟩` lies in
/// the filter class, since any strict surjection onto `⟨A,F⟩` lifts through
/// `π`. Homomorphisms out of `Fr(X)` are enumerated as generator images.
fn in_logical_class(spec: &ClassSpec, a: &Structure) -> Result<bool> {
    let sig = spec.signature;
    let cap = match sig {
        Signature::Boolean => 3,
        Signature::Distributive => 4,
        Signature::Semilattice | Signature::UnitalSemilattice => 8,
        Signature::Lattice | Signature::Poset => {
            return Err(Error::BadParameter(format!("logical classes in the {sig} signature are not supported")))
        }
    };
    let Some(mut gens) = minimal_generators(a.algebra(), sig, cap) else {
        return Err(Error::SizeCap { size: a.len(), cap });
    };
    if gens.is_empty() {
        gens.push(0);
    }
    let fa = free_algebra(sig, gens.len())?;
    let pi = fa.extend(a.algebra(), &gens)?;
    let cover = BitSet::from_indices(pi.len(), (0..pi.len()).filter(|&x| a.designated().contains(pi[x])));
    let mut open = cover.complement();
    for g in &spec.generators {
        let n = g.len();
        let k = gens.len();
        let total = n.checked_pow(k as u32).ok_or(Error::SizeCap { size: usize::MAX, cap: crate::limits::size_cap() })?;
        for code in 0..total {
            if open.is_empty() {
                return Ok(true);
            }
            let images: Vec<Elem> = (0..k).map(|i| code / n.pow((k - 1 - i) as u32) % n).collect();
            let h = fa.extend(g.algebra(), &images)?;
            if cover.iter().all(|x| g.designated().contains(h[x])) {
                for y in open.clone().iter() {
                    if !g.designated().contains(h[y]) {
                        open.remove(y);
                    }
                }
            }
        }
    }
    Ok(open.is_empty())
}

/// Whether `a` lies in the class generated by `spec`.
pub fn class_membership(spec: &ClassSpec, a: &Structure) -> Result<bool> {
    if spec.signature.ops() & !a.signature().ops() != 0 {
        return Err(Error::SignatureMismatch(format!(
            "a {} structure cannot be read in the {} signature",
            a.signature(),
            spec.signature
        )));
    }
    let a = a.reduct(spec.signature)?;
    match spec.closure {
        Closure::FilterClass => in_filter_class(spec, &a),
        Closure::LogicalClass => in_logical_class(spec, &a),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// `∇ₙ` embeds into the structure.
    Embeds,
    /// The structure satisfies αₙ.
    Alpha,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::Embeds => "embeds",
            Branch::Alpha => "alpha",
        })
    }
}

fn require_boolean(a: &Structure) -> Result<()> {
    if a.signature() != Signature::Boolean {
        return Err(Error::SignatureMismatch(format!("expected a boolean structure, got {}", a.signature())));
    }
    Ok(())
}

/// Exactly one of: `∇ₙ` embeds into `a`, or αₙ holds in `a`.
pub fn splitting_check(a: &Structure, n: usize) -> Result<Branch> {
    require_boolean(a)?;
    if n == 0 {
        return Err(Error::BadParameter("the splitting check needs n >= 1".into()));
    }
    let embeds = find_embedding(&canonical(&Canonical::Nabla(n))?, a)?.is_some();
    let alpha = holds_in(a, &builtin_rule(Builtin::Alpha(n))?)?;
    match (embeds, alpha) {
        (true, false) => Ok(Branch::Embeds),
        (false, true) => Ok(Branch::Alpha),
        (both, _) => Err(Error::DichotomyViolated(format!(
            "nabla({n}) {} and alpha({n}) {} in a structure with upset {}",
            if both { "embeds" } else { "does not embed" },
            if both { "fails" } else { "holds" },
            a.algebra().format_set(a.designated())
        ))),
    }
}

/// Membership in the class generated by `∇ₘ × ∇ₙ`, `m > n ≥ 1`: `F` is an
/// `m`-filter that is total or lies in a non-total `n`-filter.
pub fn product_class_check(a: &Structure, m: usize, n: usize) -> Result<bool> {
    require_boolean(a)?;
    if n == 0 || m <= n {
        return Err(Error::BadParameter(format!("need m > n >= 1, got m = {m}, n = {n}")));
    }
    let (alg, f) = (a.algebra(), a.designated());
    if !is_n_filter(alg, f, Degree::Finite(m))? {
        return Ok(false);
    }
    Ok(f.is_full() || !generate_n_filter(alg, f, Degree::Finite(n))?.is_full())
}
