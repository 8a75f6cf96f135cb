//! Named structures: `∇ₙ`, height upsets, `dBA(n,m)`, the diamond and the
//! pentagon, and the figure examples.

use super::{direct_product, dual_product, Signature, Structure};
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::limits;
use crate::poset::FinitePoset;
use std::fmt;
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Canonical {
    /// `⟨Bₙ, nonzero elements⟩`.
    Nabla(usize),
    /// Direct `m`-th power of the dual `n`-th power of `⟨B₁, {1}⟩`.
    Dba(usize, usize),
    /// `⟨B_{d+m}, elements of height > m⟩`.
    Height(usize, usize),
    /// The 15-element semilattice where one-step generation falls short.
    Fig2,
    /// `Fig2` with a top appended.
    Fig2Top,
    /// Diamond with its nonzero elements.
    M5,
    /// Pentagon with the upset of its coatoms.
    N5,
    /// `dBA(2,2)`.
    Fig3Left,
    /// Dual square of the direct square of `⟨B₁, {1}⟩`.
    Fig3Right,
    /// `∇₂` without its top, read as a meet semilattice.
    B2NoTop,
}

impl Canonical {
    /// Parses a gallery name with its parameters.
    pub fn parse(name: &str, n: Option<usize>, m: Option<usize>) -> Result<Canonical> {
        let need = |v: Option<usize>, what: &str| {
            v.ok_or_else(|| Error::BadParameter(format!("`{name}` needs --{what}")))
        };
        Ok(match name {
            "nabla" => Canonical::Nabla(need(n, "n")?),
            "dba" => Canonical::Dba(need(n, "n")?, need(m, "m")?),
            "height" => Canonical::Height(need(n, "n")?, need(m, "m")?),
            "fig2" => Canonical::Fig2,
            "fig2_top" => Canonical::Fig2Top,
            "m5" => Canonical::M5,
            "n5" => Canonical::N5,
            "fig3_left" => Canonical::Fig3Left,
            "fig3_right" => Canonical::Fig3Right,
            "b2_no_top" => Canonical::B2NoTop,
            _ => return Err(Error::UnknownName(name.to_string())),
        })
    }

    pub const NAMES: [&'static str; 10] =
        ["nabla", "dba", "height", "fig2", "fig2_top", "m5", "n5", "fig3_left", "fig3_right", "b2_no_top"];
}

impl fmt::Display for Canonical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Canonical::Nabla(n) => write!(f, "nabla({n})"),
            Canonical::Dba(n, m) => write!(f, "dba({n},{m})"),
            Canonical::Height(d, m) => write!(f, "height({d},{m})"),
            Canonical::Fig2 => f.write_str("fig2"),
            Canonical::Fig2Top => f.write_str("fig2_top"),
            Canonical::M5 => f.write_str("m5"),
            Canonical::N5 => f.write_str("n5"),
            Canonical::Fig3Left => f.write_str("fig3_left"),
            Canonical::Fig3Right => f.write_str("fig3_right"),
            Canonical::B2NoTop => f.write_str("b2_no_top"),
        }
    }
}

fn boolean(n: usize) -> Result<FinitePoset> {
    if n >= 16 {
        return Err(Error::SizeCap { size: usize::MAX, cap: limits::GALLERY_CAP });
    }
    limits::check_cap(1 << n, limits::GALLERY_CAP)?;
    FinitePoset::boolean_lattice(n)
}

fn height_upset(n: usize, m: usize) -> BitSet {
    BitSet::from_indices(1 << n, (0..1usize << n).filter(|x| x.count_ones() as usize > m))
}

fn b1_top() -> Structure {
    Structure::new(FinitePoset::boolean_lattice(1).expect("B1"), BitSet::from_indices(2, [1]), Signature::Boolean)
        .expect("⟨B1,{1}⟩")
}

fn named(names: &[&str], covers: &[(&str, &str)]) -> FinitePoset {
    let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
    let idx = |s: &str| names.iter().position(|n| n == s).expect("known element");
    let pairs: Vec<(usize, usize)> = covers.iter().map(|&(a, b)| (idx(a), idx(b))).collect();
    FinitePoset::new(names.clone(), &pairs).expect("gallery poset")
}

const FIG2_ELEMENTS: [&str; 15] =
    ["0", "a", "b", "a1", "a2", "a3", "b1", "b2", "b3", "a12", "a13", "a23", "b12", "b13", "b23"];

fn fig2_covers() -> Vec<(&'static str, &'static str)> {
    let mut c = vec![("0", "a"), ("0", "b"), ("a", "b1")];
    for side in ["a", "b"] {
        let e = |s: &str| -> &'static str {
            FIG2_ELEMENTS.iter().copied().find(|n| *n == format!("{side}{s}")).expect("element")
        };
        let base: &'static str = if side == "a" { "a" } else { "b" };
        for i in ["1", "2", "3"] {
            c.push((base, e(i)));
        }
        for (top, lo, hi) in [("12", "1", "2"), ("13", "1", "3"), ("23", "2", "3")] {
            c.push((e(lo), e(top)));
            c.push((e(hi), e(top)));
        }
    }
    c
}

/// The solid dots of the figure: every element strictly above `a` or `b`
/// except `b1 = a ∨ b`.
pub fn fig2_solid_upset(p: &FinitePoset) -> BitSet {
    let names = ["a1", "a2", "a3", "a12", "a13", "a23", "b2", "b3", "b12", "b13", "b23"];
    p.elems_of(&names).expect("figure elements")
}

pub fn canonical(c: &Canonical) -> Result<Structure> {
    match *c {
        Canonical::Nabla(0) => {
            let b0 = FinitePoset::boolean_lattice(0)?;
            Structure::new(b0, BitSet::new(1), Signature::Distributive)
        }
        Canonical::Nabla(n) => Structure::new(boolean(n)?, height_upset(n, 0), Signature::Boolean),
        Canonical::Height(d, m) => {
            if d == 0 {
                return Err(Error::BadParameter("height upsets need d >= 1".into()));
            }
            Structure::new(boolean(d + m)?, height_upset(d + m, m), Signature::Boolean)
        }
        Canonical::Dba(n, m) => {
            if n == 0 || m == 0 {
                return Err(Error::BadParameter("dBA(n,m) needs n, m >= 1".into()));
            }
            limits::check_cap(1usize.checked_shl((n * m) as u32).unwrap_or(usize::MAX), limits::GALLERY_CAP)?;
            let dual = dual_product(&vec![b1_top(); n])?;
            direct_product(&vec![dual; m])
        }
        Canonical::Fig3Left => canonical(&Canonical::Dba(2, 2)),
        Canonical::Fig3Right => {
            let direct = direct_product(&[b1_top(), b1_top()])?;
            dual_product(&[direct.clone(), direct])
        }
        Canonical::M5 => {
            let p = named(
                &["0", "a", "b", "c", "1"],
                &[("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")],
            );
            let f = p.elems_of(&["a", "b", "c", "1"])?;
            Structure::new(p, f, Signature::Lattice)
        }
        Canonical::N5 => {
            let p = named(
                &["0", "a", "b", "c", "1"],
                &[("0", "a"), ("a", "b"), ("0", "c"), ("b", "1"), ("c", "1")],
            );
            let f = p.elems_of(&["b", "c", "1"])?;
            Structure::new(p, f, Signature::Lattice)
        }
        Canonical::Fig2 => {
            let p = named(&FIG2_ELEMENTS, &fig2_covers());
            let f = fig2_solid_upset(&p);
            Structure::new(p, f, Signature::Semilattice)
        }
        Canonical::Fig2Top => {
            let mut names: Vec<&str> = FIG2_ELEMENTS.to_vec();
            names.push("1");
            let mut covers = fig2_covers();
            for t in ["a12", "a13", "a23", "b12", "b13", "b23"] {
                covers.push((t, "1"));
            }
            let p = named(&names, &covers);
            let f = fig2_solid_upset(&p).union(&p.elems_of(&["1"])?);
            Structure::new(p, f, Signature::Lattice)
        }
        Canonical::B2NoTop => {
            let b2 = Arc::new(boolean(2)?);
            let keep = BitSet::from_indices(4, [0, 1, 2]);
            let sub = b2.induced(&keep);
            Structure::new(sub, BitSet::from_indices(3, [1, 2]), Signature::Semilattice)
        }
    }
}

/// Structures tried first by countermodel search, smallest first.
pub fn default_gallery() -> Vec<(String, Structure)> {
    let mut names = vec![
        Canonical::Nabla(1),
        Canonical::Nabla(2),
        Canonical::B2NoTop,
        Canonical::M5,
        Canonical::N5,
        Canonical::Nabla(3),
        Canonical::Height(2, 1),
        Canonical::Fig2,
        Canonical::Fig2Top,
        Canonical::Nabla(4),
        Canonical::Height(2, 2),
        Canonical::Height(3, 1),
        Canonical::Fig3Left,
        Canonical::Fig3Right,
    ];
    names.dedup();
    let mut out: Vec<(String, Structure)> =
        names.iter().map(|c| (c.to_string(), canonical(c).expect("gallery entry"))).collect();
    let n2 = canonical(&Canonical::Nabla(2)).expect("nabla(2)");
    let n1 = canonical(&Canonical::Nabla(1)).expect("nabla(1)");
    out.push(("nabla(2)*nabla(1)".into(), direct_product(&[n2, n1]).expect("product")));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nfilter::{generate_n_filter, generate_n_filter_oracle, one_step, Degree};
    use crate::poset::Kind;

    #[test]
    fn nabla_and_height() {
        let n2 = canonical(&Canonical::Nabla(2)).unwrap();
        assert_eq!(n2.designated_names(), vec!["01", "10", "11"]);
        let h = canonical(&Canonical::Height(2, 1)).unwrap();
        assert_eq!(h.designated_names(), vec!["011", "101", "110", "111"]);
        let n0 = canonical(&Canonical::Nabla(0)).unwrap();
        assert_eq!(n0.len(), 1);
        assert!(n0.designated().is_empty());
        assert!(canonical(&Canonical::Height(3, 4)).is_ok());
        assert!(matches!(canonical(&Canonical::Nabla(9)), Err(Error::SizeCap { .. })));
    }

    #[test]
    fn figure3() {
        let left = canonical(&Canonical::Fig3Left).unwrap();
        let right = canonical(&Canonical::Fig3Right).unwrap();
        assert_eq!(left.len(), 16);
        // Left: both halves nonzero. Right: one half full.
        assert_eq!(left.designated().count(), 9);
        assert_eq!(right.designated().count(), 7);
        assert!(right.designated_names().contains(&"1100".to_string()));
        assert!(right.designated_names().contains(&"0011".to_string()));
    }

    #[test]
    fn figure2_generation() {
        let s = canonical(&Canonical::Fig2).unwrap();
        let p = s.algebra();
        assert_eq!(p.len(), 15);
        assert!(p.has_meets() && !p.has_joins());
        assert_eq!(p.kind().kind, Kind::MeetSemilattice);
        assert!(!p.kind().is_distributive_semilattice);
        assert_eq!(p.join(p.elem("a").unwrap(), p.elem("b").unwrap()), p.index_of("b1"));
        let u = s.designated();
        let step = one_step(p, u, 2);
        let fix = generate_n_filter(p, u, Degree::Finite(2)).unwrap();
        assert_eq!(fix, generate_n_filter_oracle(p, u, Degree::Finite(2)).unwrap());
        let (a, b) = (p.elem("a").unwrap(), p.elem("b").unwrap());
        assert!(step.contains(a) && !step.contains(b));
        assert!(fix.contains(a) && fix.contains(b));
        assert_ne!(step, fix);
    }

    #[test]
    fn parse_names() {
        assert_eq!(Canonical::parse("nabla", Some(3), None).unwrap(), Canonical::Nabla(3));
        assert!(matches!(Canonical::parse("nabla", None, None), Err(Error::BadParameter(_))));
        assert!(matches!(Canonical::parse("zzz", None, None), Err(Error::UnknownName(_))));
        for name in Canonical::NAMES {
            let c = Canonical::parse(name, Some(2), Some(1)).unwrap();
            assert!(canonical(&c).is_ok(), "{name}");
        }
        assert_eq!(default_gallery().len(), 15);
    }
}
