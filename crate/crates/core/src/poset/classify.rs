use super::{Elem, FinitePoset};
use serde::Serialize;

/// Signature kinds, weakest first.
///
/// A finite meet semilattice with a top is already a lattice, so
/// `UnitalMeetSemilattice` never comes out of classification; it names the
/// signature `{∧, 1}` used by structures and rules.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Kind {
    Poset,
    MeetSemilattice,
    JoinSemilattice,
    UnitalMeetSemilattice,
    Lattice,
    DistributiveLattice,
    BooleanAlgebra,
}

impl Kind {
    /// Whether a poset of this kind also has kind `other`.
    pub fn at_least(self, other: Kind) -> bool {
        use Kind::*;
        match other {
            Poset => true,
            MeetSemilattice => self != Poset && self != JoinSemilattice,
            JoinSemilattice => matches!(self, JoinSemilattice | Lattice | DistributiveLattice | BooleanAlgebra),
            UnitalMeetSemilattice | Lattice => matches!(self, Lattice | DistributiveLattice | BooleanAlgebra),
            DistributiveLattice => matches!(self, DistributiveLattice | BooleanAlgebra),
            BooleanAlgebra => self == BooleanAlgebra,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AlgebraKind {
    pub kind: Kind,
    pub is_distributive_semilattice: bool,
}

pub(super) fn classify(p: &FinitePoset) -> AlgebraKind {
    let meets = p.has_meets();
    let joins = p.has_joins();
    let kind = match (meets, joins) {
        (false, false) => Kind::Poset,
        (true, false) => Kind::MeetSemilattice,
        (false, true) => Kind::JoinSemilattice,
        (true, true) => {
            if !lattice_distributive(p) {
                Kind::Lattice
            } else if complemented(p) {
                Kind::BooleanAlgebra
            } else {
                Kind::DistributiveLattice
            }
        }
    };
    let is_distributive_semilattice = match kind {
        Kind::DistributiveLattice | Kind::BooleanAlgebra => true,
        // A lattice is distributive iff its meet reduct is; the direct check
        // is kept for carriers where its table fits comfortably.
        Kind::Lattice if p.len() > 256 => false,
        Kind::MeetSemilattice | Kind::Lattice => semilattice_distributive(p),
        _ => false,
    };
    AlgebraKind { kind, is_distributive_semilattice }
}

/// `x ∧ (y ∨ z) = (x ∧ y) ∨ (x ∧ z)` for all triples.
fn lattice_distributive(p: &FinitePoset) -> bool {
    let n = p.len();
    (0..n).all(|x| (0..n).all(|y| (y..n).all(|z| p.m(x, p.j(y, z)) == p.j(p.m(x, y), p.m(x, z)))))
}

fn complemented(p: &FinitePoset) -> bool {
    let (bot, top) = (p.bottom().expect("lattice"), p.top().expect("lattice"));
    let n = p.len();
    (0..n).all(|a| (0..n).any(|b| p.m(a, b) == bot && p.j(a, b) == top))
}

/// `x ∧ y <= z` implies `x' ∧ y' = z` for some `x' >= x`, `y' >= y`.
pub(crate) fn semilattice_distributive(p: &FinitePoset) -> bool {
    let n = p.len();
    // meet_is[x'][z]: the y' with x' ∧ y' = z.
    let mut meet_is = vec![p.empty_set(); n * n];
    for a in 0..n {
        for b in 0..n {
            meet_is[a * n + p.m(a, b)].insert(b);
        }
    }
    let witnessed = |x: Elem, y: Elem, z: Elem| {
        let ys = p.up_set(y).intersection(p.up_set(z));
        p.up_set(x).intersection(p.up_set(z)).iter().any(|xp| meet_is[xp * n + z].intersects(&ys))
    };
    (0..n).all(|x| {
        (x..n).all(|y| {
            let m = p.m(x, y);
            p.up_set(m).iter().all(|z| witnessed(x, y, z))
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poset(names: &[&str], pairs: &[(usize, usize)]) -> FinitePoset {
        FinitePoset::new(names.iter().map(|s| s.to_string()).collect(), pairs).unwrap()
    }

    #[test]
    fn boolean_and_diamond() {
        let b2 = FinitePoset::boolean_lattice(2).unwrap();
        assert_eq!(b2.kind().kind, Kind::BooleanAlgebra);
        let m5 = poset(&["0", "a", "b", "c", "1"], &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]);
        let k = m5.kind();
        assert_eq!(k.kind, Kind::Lattice);
        assert!(!k.is_distributive_semilattice);
        let chain = FinitePoset::chain(3).unwrap();
        assert_eq!(chain.kind().kind, Kind::DistributiveLattice);
    }

    #[test]
    fn vee_is_not_a_distributive_semilattice() {
        let vee = poset(&["0", "a", "b"], &[(0, 1), (0, 2)]);
        let k = vee.kind();
        assert_eq!(k.kind, Kind::MeetSemilattice);
        assert!(!k.is_distributive_semilattice);
        let antichain = poset(&["a", "b"], &[]);
        assert_eq!(antichain.kind().kind, Kind::Poset);
    }

    #[test]
    fn kind_implications() {
        assert!(Kind::BooleanAlgebra.at_least(Kind::DistributiveLattice));
        assert!(Kind::DistributiveLattice.at_least(Kind::Lattice));
        assert!(Kind::Lattice.at_least(Kind::MeetSemilattice));
        assert!(Kind::Lattice.at_least(Kind::JoinSemilattice));
        assert!(!Kind::MeetSemilattice.at_least(Kind::JoinSemilattice));
    }
}
