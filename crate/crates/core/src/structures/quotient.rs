use super::{ops, Signature};
use crate::error::{Error, Result};
use crate::poset::{Elem, FinitePoset};
use std::sync::Arc;

struct UnionFind(Vec<Elem>);

impl UnionFind {
    fn find(&mut self, x: Elem) -> Elem {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: Elem, b: Elem) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.0[hi] = lo;
        true
    }
}

/// Class index of each element under the least congruence of `sig`
/// identifying the given pairs. Classes are numbered by their least member.
pub fn congruence_classes(alg: &FinitePoset, sig: Signature, pairs: &[(Elem, Elem)]) -> Vec<Elem> {
    let n = alg.len();
    let mut uf = UnionFind((0..n).collect());
    for &(a, b) in pairs {
        uf.union(a, b);
    }
    loop {
        let mut changed = false;
        for a in 0..n {
            let r = uf.find(a);
            if r == a {
                continue;
            }
            // a ~ r, so every operation applied to both must agree.
            if sig.has(ops::NEG) {
                changed |= uf.union(alg.neg(a).expect("complement"), alg.neg(r).expect("complement"));
            }
            for c in 0..n {
                if sig.has(ops::MEET) {
                    changed |= uf.union(alg.m(a, c), alg.m(r, c));
                }
                if sig.has(ops::JOIN) {
                    changed |= uf.union(alg.j(a, c), alg.j(r, c));
                }
            }
        }
        if !changed {
            break;
        }
    }
    let mut class = vec![usize::MAX; n];
    let mut next = 0;
    for x in 0..n {
        let r = uf.find(x);
        if class[r] == usize::MAX {
            class[r] = next;
            next += 1;
        }
        class[x] = class[r];
    }
    class
}

#[derive(Clone, Debug)]
pub struct Quotient {
    pub algebra: Arc<FinitePoset>,
    /// Class of each element of the original algebra.
    pub class_of: Vec<Elem>,
}

/// The quotient of `alg` by the congruence generated by `pairs`. Classes are
/// named after their least member and ordered by `[a] <= [b]` iff `a ∧ b ~ a`.
pub fn quotient(alg: &FinitePoset, sig: Signature, pairs: &[(Elem, Elem)]) -> Result<Quotient> {
    if !sig.has(ops::MEET) {
        return Err(Error::BadParameter(format!("quotients need meets, not the {sig} signature")));
    }
    let class_of = congruence_classes(alg, sig, pairs);
    let k = class_of.iter().max().map_or(0, |&c| c + 1);
    let mut rep = vec![usize::MAX; k];
    for (x, &c) in class_of.iter().enumerate() {
        if rep[c] == usize::MAX {
            rep[c] = x;
        }
    }
    let names = rep.iter().map(|&x| alg.name(x).to_string()).collect();
    let q = FinitePoset::from_leq(names, |c, d| class_of[alg.m(rep[c], rep[d])] == c)?;
    Ok(Quotient { algebra: Arc::new(q), class_of })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boolean_quotient_by_an_atom() {
        let b3 = FinitePoset::boolean_lattice(3).unwrap();
        let q = quotient(&b3, Signature::Boolean, &[(0, 1)]).unwrap();
        assert_eq!(q.algebra.len(), 4);
        assert_eq!(q.algebra.kind().kind, crate::poset::Kind::BooleanAlgebra);
        assert_eq!(q.class_of[0], q.class_of[1]);
        assert_ne!(q.class_of[0], q.class_of[2]);
    }

    #[test]
    fn lattice_congruence_of_a_chain_is_convex() {
        let c = FinitePoset::chain(4).unwrap();
        let classes = congruence_classes(&c, Signature::Distributive, &[(0, 2)]);
        assert_eq!(classes, vec![0, 0, 0, 1]);
    }

    #[test]
    fn trivial_quotient() {
        let b2 = FinitePoset::boolean_lattice(2).unwrap();
        let q = quotient(&b2, Signature::Boolean, &[(0, 3)]).unwrap();
        assert_eq!(q.algebra.len(), 1);
        let same = quotient(&b2, Signature::Boolean, &[]).unwrap();
        assert_eq!(*same.algebra, b2);
    }
}
