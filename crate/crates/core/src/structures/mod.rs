//! Structures `⟨A, F⟩`: a finite algebra together with a designated upset.

mod free;
mod gallery;
mod hom;
mod product;
mod quotient;

pub use free::{free_algebra, FreeAlgebra};
pub use gallery::{canonical, default_gallery, fig2_solid_upset, Canonical};
pub use hom::{
    find_embedding, find_hom, find_strict_hom, for_each_hom, for_each_hom_fixing, is_isomorphic, preserves, strict_image, HomSearch,
    Homomorphism,
};
pub use product::{direct_product, dual_product, product_algebra};
pub use quotient::{congruence_classes, quotient, Quotient};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::poset::{AlgebraKind, Elem, FinitePoset, Kind, PosetDocument};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::Arc;

/// Operation flags carried by a signature.
pub mod ops {
    pub const MEET: u8 = 1;
    pub const JOIN: u8 = 2;
    pub const NEG: u8 = 4;
    pub const BOTTOM: u8 = 8;
    pub const TOP: u8 = 16;
}

/// The algebraic signature a structure is read in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Signature {
    Poset,
    Semilattice,
    Lattice,
    Distributive,
    Boolean,
    UnitalSemilattice,
}

impl Signature {
    pub const ALL: [Signature; 6] = [
        Signature::Poset,
        Signature::Semilattice,
        Signature::Lattice,
        Signature::Distributive,
        Signature::Boolean,
        Signature::UnitalSemilattice,
    ];

    pub fn ops(self) -> u8 {
        use ops::*;
        match self {
            Signature::Poset => 0,
            Signature::Semilattice => MEET,
            Signature::Lattice | Signature::Distributive => MEET | JOIN,
            Signature::Boolean => MEET | JOIN | NEG | BOTTOM | TOP,
            Signature::UnitalSemilattice => MEET | TOP,
        }
    }

    pub fn has(self, op: u8) -> bool {
        self.ops() & op == op
    }

    pub fn name(self) -> &'static str {
        match self {
            Signature::Poset => "poset",
            Signature::Semilattice => "semilattice",
            Signature::Lattice => "lattice",
            Signature::Distributive => "distributive",
            Signature::Boolean => "boolean",
            Signature::UnitalSemilattice => "unital_semilattice",
        }
    }

    /// Designated sets must be non-empty in this signature.
    pub fn requires_nonempty(self) -> bool {
        matches!(self, Signature::Boolean | Signature::UnitalSemilattice)
    }

    pub fn supported_by(self, p: &FinitePoset) -> bool {
        match self {
            Signature::Poset => true,
            Signature::Semilattice => p.has_meets(),
            Signature::Lattice => p.is_lattice(),
            Signature::Distributive => p.is_lattice() && p.kind().kind.at_least(Kind::DistributiveLattice),
            Signature::Boolean => p.is_lattice() && p.kind().kind == Kind::BooleanAlgebra,
            Signature::UnitalSemilattice => p.has_meets() && p.top().is_some(),
        }
    }

    /// Strongest signature the poset supports, unital semilattices aside.
    pub fn default_for(p: &FinitePoset) -> Signature {
        match p.kind().kind {
            Kind::BooleanAlgebra => Signature::Boolean,
            Kind::DistributiveLattice => Signature::Distributive,
            Kind::Lattice => Signature::Lattice,
            Kind::MeetSemilattice | Kind::UnitalMeetSemilattice => Signature::Semilattice,
            Kind::Poset | Kind::JoinSemilattice => Signature::Poset,
        }
    }

    /// The shared reduct of two signatures when one has all operations of the other.
    pub fn common(self, other: Signature) -> Result<Signature> {
        let (a, b) = (self.ops(), other.ops());
        if a & b == a {
            Ok(if a == b { self.min(other) } else { self })
        } else if a & b == b {
            Ok(other)
        } else {
            Err(Error::SignatureMismatch(format!("{} and {} have no common reduct", self, other)))
        }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Signature {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Signature::ALL
            .into_iter()
            .find(|sig| sig.name() == s)
            .ok_or_else(|| Error::MalformedDocument(format!("unknown signature `{s}`")))
    }
}

/// An algebra with a designated upset.
#[derive(Clone)]
pub struct Structure {
    algebra: Arc<FinitePoset>,
    designated: BitSet,
    signature: Signature,
}

impl Structure {
    pub fn new(algebra: impl Into<Arc<FinitePoset>>, designated: BitSet, signature: Signature) -> Result<Self> {
        let algebra = algebra.into();
        if !signature.supported_by(&algebra) {
            return Err(Error::SignatureMismatch(format!("carrier does not support the {signature} signature")));
        }
        Self::checked(algebra, designated, signature)
    }

    /// Uses the strongest signature the carrier supports.
    pub fn with_default_signature(algebra: impl Into<Arc<FinitePoset>>, designated: BitSet) -> Result<Self> {
        let algebra = algebra.into();
        let signature = Signature::default_for(&algebra);
        let signature = if signature.requires_nonempty() && designated.is_empty() {
            Signature::Distributive
        } else {
            signature
        };
        Self::new(algebra, designated, signature)
    }

    /// Skips the signature check, for carriers built to support it.
    pub(crate) fn checked(algebra: Arc<FinitePoset>, designated: BitSet, signature: Signature) -> Result<Self> {
        if designated.domain() != algebra.len() || !algebra.is_upset(&designated) {
            return Err(Error::NotAnUpset);
        }
        if signature.requires_nonempty() && designated.is_empty() {
            return Err(Error::EmptyDesignated);
        }
        Ok(Structure { algebra, designated, signature })
    }

    pub fn algebra(&self) -> &FinitePoset {
        &self.algebra
    }

    pub fn algebra_arc(&self) -> &Arc<FinitePoset> {
        &self.algebra
    }

    pub fn designated(&self) -> &BitSet {
        &self.designated
    }

    pub fn signature(&self) -> Signature {
        self.signature
    }

    pub fn len(&self) -> usize {
        self.algebra.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Same algebra, another designated upset.
    pub fn with_designated(&self, designated: BitSet) -> Result<Structure> {
        Self::checked(self.algebra.clone(), designated, self.signature)
    }

    /// The same structure read in a weaker signature.
    pub fn reduct(&self, signature: Signature) -> Result<Structure> {
        if signature.ops() & !self.signature.ops() != 0 {
            return Err(Error::SignatureMismatch(format!("{signature} is not a reduct of {}", self.signature)));
        }
        Self::new(self.algebra.clone(), self.designated.clone(), signature)
    }

    /// Whether `selected` is closed under every operation of the signature.
    pub fn is_subalgebra(&self, selected: &BitSet) -> bool {
        let a = &*self.algebra;
        let sig = self.signature;
        if selected.is_empty() {
            return false;
        }
        if sig.has(ops::BOTTOM) && !selected.contains(a.bottom().expect("bottom")) {
            return false;
        }
        if sig.has(ops::TOP) && !selected.contains(a.top().expect("top")) {
            return false;
        }
        let members: Vec<Elem> = selected.iter().collect();
        for (i, &x) in members.iter().enumerate() {
            if sig.has(ops::NEG) && !selected.contains(a.neg(x).expect("complement")) {
                return false;
            }
            for &y in &members[i + 1..] {
                if sig.has(ops::MEET) && !selected.contains(a.m(x, y)) {
                    return false;
                }
                if sig.has(ops::JOIN) && !selected.contains(a.j(x, y)) {
                    return false;
                }
            }
        }
        true
    }

    /// The substructure on `selected`, which must be a subalgebra.
    pub fn restrict(&self, selected: &BitSet) -> Result<Structure> {
        if !self.is_subalgebra(selected) {
            return Err(Error::NotSubalgebra);
        }
        let sub = self.algebra.induced(selected);
        let designated = BitSet::from_indices(
            sub.len(),
            selected.iter().enumerate().filter(|&(_, x)| self.designated.contains(x)).map(|(i, _)| i),
        );
        Structure::new(sub, designated, self.signature)
    }

    /// Key equal for isomorphic structures of the same signature.
    pub fn canonical_key(&self) -> Vec<u64> {
        let mut key = vec![self.signature as u64];
        key.extend_from_slice(self.algebra.canonical_form_marked(&self.designated).key());
        key
    }

    pub fn document(&self) -> PosetDocument {
        let mut doc = PosetDocument::from_poset(&self.algebra);
        doc.upset = Some(self.designated.iter().map(|x| self.algebra.name(x).to_string()).collect());
        doc.signature = Some(self.signature.name().to_string());
        doc
    }

    pub fn to_json(&self) -> String {
        self.document().to_json()
    }

    pub fn from_document(doc: &PosetDocument) -> Result<Structure> {
        let algebra = doc.to_poset()?;
        let designated = match &doc.upset {
            Some(names) => algebra.elems_of(names)?,
            None => algebra.empty_set(),
        };
        let algebra = Arc::new(algebra);
        match &doc.signature {
            Some(s) => Structure::new(algebra, designated, s.parse()?),
            None => Structure::with_default_signature(algebra, designated),
        }
    }

    pub fn from_json(text: &str) -> Result<Structure> {
        Self::from_document(&PosetDocument::from_json(text)?)
    }

    /// Formats the designated set by element names.
    pub fn designated_names(&self) -> Vec<String> {
        self.designated.iter().map(|x| self.algebra.name(x).to_string()).collect()
    }
}

impl PartialEq for Structure {
    fn eq(&self, other: &Self) -> bool {
        self.signature == other.signature && self.designated == other.designated && *self.algebra == *other.algebra
    }
}

impl Eq for Structure {}

impl fmt::Debug for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Structure<{}>({:?}, designated {})",
            self.signature,
            self.algebra,
            self.algebra.format_set(&self.designated)
        )
    }
}

pub(crate) fn lattice_kind_of(parts: &[&FinitePoset]) -> Option<AlgebraKind> {
    let mut kind = Kind::BooleanAlgebra;
    for p in parts {
        let k = p.kind().kind;
        if !k.at_least(Kind::Lattice) {
            return None;
        }
        if !k.at_least(kind) {
            kind = k;
        }
    }
    Some(AlgebraKind { kind, is_distributive_semilattice: kind.at_least(Kind::DistributiveLattice) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let s = canonical(&Canonical::Nabla(2)).unwrap();
        let back = Structure::from_json(&s.to_json()).unwrap();
        assert_eq!(back, s);
        assert_eq!(back.signature(), Signature::Boolean);
    }

    #[test]
    fn default_signature_and_empty_designation() {
        let b1 = Arc::new(FinitePoset::boolean_lattice(1).unwrap());
        let s = Structure::with_default_signature(b1.clone(), b1.empty_set()).unwrap();
        assert_eq!(s.signature(), Signature::Distributive);
        assert_eq!(Structure::new(b1.clone(), b1.empty_set(), Signature::Boolean), Err(Error::EmptyDesignated));
        assert_eq!(
            Structure::new(b1.clone(), BitSet::from_indices(2, [0]), Signature::Boolean),
            Err(Error::NotAnUpset)
        );
    }

    #[test]
    fn signature_reducts() {
        assert_eq!(Signature::Boolean.common(Signature::Distributive).unwrap(), Signature::Distributive);
        assert_eq!(Signature::UnitalSemilattice.common(Signature::Boolean).unwrap(), Signature::UnitalSemilattice);
        assert!(Signature::UnitalSemilattice.common(Signature::Lattice).is_err());
        assert_eq!(Signature::Lattice.common(Signature::Distributive).unwrap(), Signature::Lattice);
        assert_eq!("unital_semilattice".parse::<Signature>().unwrap(), Signature::UnitalSemilattice);
    }

    #[test]
    fn restrictions() {
        let nabla2 = canonical(&Canonical::Nabla(2)).unwrap();
        let ends = BitSet::from_indices(4, [0, 3]);
        let r = nabla2.restrict(&ends).unwrap();
        assert_eq!(r.designated_names(), vec!["11"]);
        let n1 = canonical(&Canonical::Nabla(1)).unwrap();
        assert!(is_isomorphic(&r, &n1).unwrap());
        assert_eq!(nabla2.restrict(&nabla2.algebra().full_set()).unwrap(), nabla2);
        let no_top = BitSet::from_indices(4, [0, 1, 2]);
        assert_eq!(nabla2.restrict(&no_top), Err(Error::NotSubalgebra));
        let semi = nabla2.reduct(Signature::Semilattice).unwrap().restrict(&no_top).unwrap();
        assert_eq!(semi, canonical(&Canonical::B2NoTop).unwrap());
    }
}
