//! Finite free algebras over `k` generators, with homomorphic extension of
//! generator images.

use super::Signature;
use crate::error::{Error, Result};
use crate::limits;
use crate::poset::{Elem, FinitePoset};
use std::sync::Arc;

#[derive(Clone, Debug)]
enum Shape {
    /// Non-constant monotone Boolean functions as truth tables over `2^k` points.
    Distributive(Vec<u32>),
    /// Sets of complete conjunctive clauses.
    Boolean,
    /// Sets of generators, each element being the meet of the generators
    /// missing from its bitmask; `with_top` keeps the empty meet.
    Meets { with_top: bool },
}

#[derive(Clone, Debug)]
pub struct FreeAlgebra {
    pub signature: Signature,
    pub algebra: Arc<FinitePoset>,
    pub generators: Vec<Elem>,
    k: usize,
    shape: Shape,
}

/// The free algebra on `k` generators `x1..xk` in the given signature.
pub fn free_algebra(sig: Signature, k: usize) -> Result<FreeAlgebra> {
    match sig {
        Signature::Distributive => free_distributive(k),
        Signature::Boolean => free_boolean(k),
        Signature::UnitalSemilattice => free_meets(k, true),
        Signature::Semilattice => free_meets(k, false),
        Signature::Lattice | Signature::Poset => {
            Err(Error::BadParameter(format!("the {sig} signature has no finite free algebras")))
        }
    }
}

fn need_generators(k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::BadParameter("free algebras need at least one generator".into()));
    }
    if k > 8 {
        return Err(Error::SizeCap { size: usize::MAX, cap: limits::size_cap() });
    }
    Ok(())
}

fn free_distributive(k: usize) -> Result<FreeAlgebra> {
    need_generators(k)?;
    if k > 4 {
        return Err(Error::SizeCap { size: 7_579, cap: limits::size_cap() });
    }
    let points = 1usize << k;
    let full: u32 = (1u32 << points) - 1;
    // Monotone: every point above a true point is true.
    let monotone = |f: u32| {
        (0..points).all(|p| f >> p & 1 == 0 || (0..points).all(|q| q & p != p || f >> q & 1 == 1))
    };
    let mut fns: Vec<u32> = (1..full).filter(|&f| monotone(f)).collect();
    fns.sort_by_key(|&f| (f.count_ones(), f));
    // Generator i is true at points whose bit i is set.
    let gen_fn = |i: usize| (0..points).filter(|p| p >> i & 1 == 1).fold(0u32, |acc, p| acc | 1 << p);
    let names = fns.iter().map(|&f| dnf_name(f, k)).collect();
    let alg = FinitePoset::from_leq(names, |a, b| fns[a] & !fns[b] == 0)?;
    let generators = (0..k).map(|i| fns.iter().position(|&f| f == gen_fn(i)).expect("generator")).collect();
    Ok(FreeAlgebra {
        signature: Signature::Distributive,
        algebra: Arc::new(alg),
        generators,
        k,
        shape: Shape::Distributive(fns),
    })
}

/// Minimal true points of a monotone function.
fn min_points(f: u32, k: usize) -> Vec<usize> {
    let points = 1usize << k;
    (0..points)
        .filter(|&p| f >> p & 1 == 1 && !(0..points).any(|q| q != p && q & p == q && f >> q & 1 == 1))
        .collect()
}

fn dnf_name(f: u32, k: usize) -> String {
    min_points(f, k)
        .iter()
        .map(|&p| (0..k).filter(|i| p >> i & 1 == 1).map(|i| format!("x{}", i + 1)).collect::<Vec<_>>().join("&"))
        .collect::<Vec<_>>()
        .join("|")
}

/// Atom `j` of `FB(k)` is the clause whose sign pattern is the binary form of
/// `j` with `x1` as the most significant bit; a 0 bit is a positive literal.
fn clause_positive(j: usize, i: usize, k: usize) -> bool {
    j >> (k - 1 - i) & 1 == 0
}

fn free_boolean(k: usize) -> Result<FreeAlgebra> {
    need_generators(k)?;
    let atoms = 1usize << k;
    let alg = FinitePoset::boolean_lattice(atoms)?;
    let generators = (0..k)
        .map(|i| (0..atoms).filter(|&j| clause_positive(j, i, k)).fold(0usize, |acc, j| acc | 1 << j))
        .collect();
    Ok(FreeAlgebra { signature: Signature::Boolean, algebra: Arc::new(alg), generators, k, shape: Shape::Boolean })
}

fn free_meets(k: usize, with_top: bool) -> Result<FreeAlgebra> {
    need_generators(k)?;
    let full = (1usize << k) - 1;
    let b = FinitePoset::boolean_lattice(k)?;
    let alg = if with_top {
        b
    } else {
        let mut keep = b.full_set();
        keep.remove(full);
        b.induced(&keep)
    };
    let generators = (0..k).map(|i| full & !(1 << (k - 1 - i))).collect();
    let signature = if with_top { Signature::UnitalSemilattice } else { Signature::Semilattice };
    Ok(FreeAlgebra { signature, algebra: Arc::new(alg), generators, k, shape: Shape::Meets { with_top } })
}

impl FreeAlgebra {
    pub fn rank(&self) -> usize {
        self.k
    }

    /// The homomorphism sending generator `i` to `images[i]` in `target`,
    /// which must support this signature.
    pub fn extend(&self, target: &FinitePoset, images: &[Elem]) -> Result<Vec<Elem>> {
        if images.len() != self.k {
            return Err(Error::BadParameter(format!("expected {} generator images, got {}", self.k, images.len())));
        }
        if !self.signature.supported_by(target) {
            return Err(Error::SignatureMismatch(format!("target does not support the {} signature", self.signature)));
        }
        let k = self.k;
        let meet = |xs: &mut dyn Iterator<Item = Elem>| -> Option<Elem> { xs.reduce(|a, b| target.m(a, b)) };
        match &self.shape {
            Shape::Distributive(fns) => Ok(fns
                .iter()
                .map(|&f| {
                    min_points(f, k)
                        .iter()
                        .map(|&p| meet(&mut (0..k).filter(|i| p >> i & 1 == 1).map(|i| images[i])).expect("non-empty"))
                        .reduce(|a, b| target.j(a, b))
                        .expect("non-constant")
                })
                .collect()),
            Shape::Boolean => {
                let atoms: Vec<Elem> = (0..1usize << k)
                    .map(|j| {
                        meet(&mut (0..k).map(|i| {
                            if clause_positive(j, i, k) {
                                images[i]
                            } else {
                                target.neg(images[i]).expect("complement")
                            }
                        }))
                        .expect("k >= 1")
                    })
                    .collect();
                let bottom = target.bottom().expect("bottom");
                Ok((0..self.algebra.len())
                    .map(|mask| {
                        (0..atoms.len()).filter(|j| mask >> j & 1 == 1).fold(bottom, |acc, j| target.j(acc, atoms[j]))
                    })
                    .collect())
            }
            Shape::Meets { with_top } => {
                let top = target.top();
                Ok((0..self.algebra.len())
                    .map(|mask| {
                        let mut missing = (0..k).filter(|&i| mask >> (k - 1 - i) & 1 == 0).map(|i| images[i]);
                        meet(&mut missing).or(if *with_top { top } else { None }).expect("non-empty meet")
                    })
                    .collect())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::preserves;

    #[test]
    fn distributive_sizes_follow_dedekind() {
        // Dedekind numbers 3, 6, 20, 168 minus the two constants.
        for (k, size) in [(1, 1), (2, 4), (3, 18), (4, 166)] {
            let fd = free_distributive(k).unwrap();
            assert_eq!(fd.algebra.len(), size);
            assert!(fd.algebra.kind().kind.at_least(crate::poset::Kind::DistributiveLattice));
        }
        let fd2 = free_distributive(2).unwrap();
        let names: Vec<&str> = fd2.algebra.names().iter().map(String::as_str).collect();
        assert_eq!(names, vec!["x1&x2", "x1", "x2", "x1|x2"]);
    }

    #[test]
    fn boolean_has_clause_atoms() {
        let fb = free_boolean(2).unwrap();
        assert_eq!(fb.algebra.len(), 16);
        let atoms = fb.algebra.covers().iter().filter(|&&(lo, _)| lo == 0).count();
        assert_eq!(atoms, 4);
        // x1 = clauses 0 and 1 (x1 positive), x2 = clauses 0 and 2.
        assert_eq!(fb.generators, vec![0b0011, 0b0101]);
        assert!(matches!(free_boolean(4), Err(Error::SizeCap { .. })));
    }

    #[test]
    fn unital_is_boolean_meet_reduct() {
        let fm = free_meets(3, true).unwrap();
        assert_eq!(*fm.algebra, FinitePoset::boolean_lattice(3).unwrap());
        let coatoms: Vec<Elem> = fm.generators.clone();
        assert_eq!(coatoms, vec![0b011, 0b101, 0b110]);
    }

    #[test]
    fn extensions_are_homomorphisms() {
        let b2 = FinitePoset::boolean_lattice(2).unwrap();
        for sig in [Signature::Distributive, Signature::Boolean, Signature::UnitalSemilattice, Signature::Semilattice] {
            let fa = free_algebra(sig, 2).unwrap();
            for x in 0..4 {
                for y in 0..4 {
                    let h = fa.extend(&b2, &[x, y]).unwrap();
                    assert_eq!(h[fa.generators[0]], x);
                    assert_eq!(h[fa.generators[1]], y);
                    preserves(&fa.algebra, &b2, sig, &h).unwrap();
                }
            }
        }
    }
}
