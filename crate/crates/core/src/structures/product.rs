use super::{lattice_kind_of, Structure};
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::limits;
use crate::poset::{Elem, FinitePoset};
use std::sync::Arc;

fn is_bitstring(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b == b'0' || b == b'1')
}

/// Componentwise product of the factors. Tuples are indexed in mixed radix
/// with the first factor most significant. Names concatenate when every
/// factor uses bitstrings, and are written `(p,q,...)` otherwise.
pub fn product_algebra(parts: &[&FinitePoset]) -> Result<FinitePoset> {
    if parts.is_empty() {
        return FinitePoset::boolean_lattice(0);
    }
    let size = parts.iter().try_fold(1usize, |acc, p| acc.checked_mul(p.len())).unwrap_or(usize::MAX);
    limits::check_size(size)?;
    let k = parts.len();
    let digits = |mut t: usize| -> Vec<Elem> {
        let mut d = vec![0; k];
        for i in (0..k).rev() {
            d[i] = t % parts[i].len();
            t /= parts[i].len();
        }
        d
    };
    let bits = parts.iter().all(|p| p.names().iter().all(|n| is_bitstring(n)));
    let tuples: Vec<Vec<Elem>> = (0..size).map(digits).collect();
    let names = tuples
        .iter()
        .map(|d| {
            let comps: Vec<&str> = d.iter().zip(parts).map(|(&x, p)| p.name(x)).collect();
            if bits {
                comps.concat()
            } else {
                format!("({})", comps.join(","))
            }
        })
        .collect();
    let up = tuples
        .iter()
        .map(|d| {
            // Tuples above d, built factor by factor.
            let mut acc = vec![0usize];
            for (i, p) in parts.iter().enumerate() {
                let ups: Vec<Elem> = p.up_set(d[i]).iter().collect();
                acc = acc.iter().flat_map(|&a| ups.iter().map(move |&u| a * p.len() + u)).collect();
            }
            BitSet::from_indices(size, acc)
        })
        .collect();
    let prod = FinitePoset::from_up_sets(names, up)?;
    if let Some(kind) = lattice_kind_of(parts) {
        prod.set_kind_hint(kind);
    }
    Ok(prod)
}

fn product(parts: &[Structure], union: bool) -> Result<Structure> {
    let Some(first) = parts.first() else {
        return Err(Error::BadParameter("a product needs at least one factor".into()));
    };
    let mut sig = first.signature();
    for p in &parts[1..] {
        sig = sig.common(p.signature())?;
    }
    if parts.len() == 1 {
        return first.reduct(sig);
    }
    let algebras: Vec<&FinitePoset> = parts.iter().map(|p| p.algebra()).collect();
    let alg = product_algebra(&algebras)?;
    let n = alg.len();
    let mut designated = if union { BitSet::new(n) } else { BitSet::full(n) };
    let mut stride = n;
    for p in parts {
        stride /= p.len();
        // Preimage of the factor's designated set under the projection.
        let pre = BitSet::from_indices(n, (0..n).filter(|t| p.designated().contains(t / stride % p.len())));
        if union {
            designated.union_with(&pre);
        } else {
            designated.intersect_with(&pre);
        }
    }
    // Every signature here defines a variety, so the product supports it.
    Structure::checked(Arc::new(alg), designated, sig)
}

/// `⟨∏ Aᵢ, ⋂ πᵢ⁻¹[Fᵢ]⟩`.
pub fn direct_product(parts: &[Structure]) -> Result<Structure> {
    product(parts, false)
}

/// `⟨∏ Aᵢ, ⋃ πᵢ⁻¹[Fᵢ]⟩`.
pub fn dual_product(parts: &[Structure]) -> Result<Structure> {
    product(parts, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::{canonical, Canonical, Signature};

    fn b1_top() -> Structure {
        let b1 = FinitePoset::boolean_lattice(1).unwrap();
        Structure::new(b1, BitSet::from_indices(2, [1]), Signature::Boolean).unwrap()
    }

    #[test]
    fn powers_of_the_two_chain() {
        let direct = direct_product(&[b1_top(), b1_top()]).unwrap();
        let b2 = FinitePoset::boolean_lattice(2).unwrap();
        assert_eq!(direct, Structure::new(b2.clone(), BitSet::from_indices(4, [3]), Signature::Boolean).unwrap());
        let dual = dual_product(&[b1_top(), b1_top()]).unwrap();
        assert_eq!(dual, canonical(&Canonical::Nabla(2)).unwrap());
        for n in 1..=4 {
            let parts = vec![b1_top(); n];
            assert_eq!(dual_product(&parts).unwrap(), canonical(&Canonical::Nabla(n)).unwrap());
            let d = direct_product(&parts).unwrap();
            assert_eq!(d.designated().to_vec(), vec![(1 << n) - 1]);
        }
        assert_eq!(direct_product(&[b1_top()]).unwrap(), b1_top());
    }

    #[test]
    fn de_morgan() {
        let a = b1_top();
        let pairs = [(a.clone(), a.clone())];
        for (x, y) in pairs {
            let dual = dual_product(&[x.clone(), y.clone()]).unwrap();
            let direct = direct_product(&[x.clone(), y.clone()]).unwrap();
            // Complements of the factors, as sets: {0} in each.
            let comp_direct: Vec<usize> =
                (0..4).filter(|t| !x.designated().contains(t / 2) && !y.designated().contains(t % 2)).collect();
            assert_eq!(dual.designated().complement().to_vec(), comp_direct);
            assert!(direct.designated().is_subset(dual.designated()));
        }
    }

    #[test]
    fn non_bitstring_names_are_tupled() {
        let m5 = canonical(&Canonical::M5).unwrap();
        let p = product_algebra(&[m5.algebra(), FinitePoset::boolean_lattice(1).as_ref().unwrap()]).unwrap();
        assert_eq!(p.len(), 10);
        assert_eq!(p.name(3), "(a,1)");
        assert!(p.is_lattice());
    }

    #[test]
    fn signature_mismatch() {
        let unital = b1_top().reduct(Signature::UnitalSemilattice).unwrap();
        let lattice = b1_top().reduct(Signature::Lattice).unwrap();
        assert!(matches!(direct_product(&[unital, lattice]), Err(Error::SignatureMismatch(_))));
    }
}
