use super::eval::Checker;
use super::term::{Conclusion, Implication};
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::limits;
use crate::nfilter::{generate_n_filter, Degree};
use crate::poset::enumerate;
use crate::poset::{Elem, FinitePoset};
use crate::structures::{default_gallery, free_algebra, quotient, Signature, Structure};
use rayon::prelude::*;
use std::fmt;

/// Algebra families whose `n`-filter classes `entails_class` decides.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Dl,
    Ba,
    Sl,
    Usl,
}

impl Family {
    pub fn signature(self) -> Signature {
        match self {
            Family::Dl => Signature::Distributive,
            Family::Ba => Signature::Boolean,
            Family::Sl => Signature::Semilattice,
            Family::Usl => Signature::UnitalSemilattice,
        }
    }

    /// Most variables handled before the free algebra grows too large.
    pub fn max_vars(self) -> usize {
        match self {
            Family::Dl => 4,
            Family::Ba => 3,
            Family::Sl | Family::Usl => 8,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Family::Dl => "DL",
            Family::Ba => "BA",
            Family::Sl => "SL",
            Family::Usl => "uSL",
        }
    }
}

/// The class of `family` algebras equipped with a `degree`-filter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FilterClass {
    pub family: Family,
    pub degree: Degree,
}

impl fmt::Display for FilterClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.family.name(), self.degree)
    }
}

impl std::str::FromStr for FilterClass {
    type Err = Error;

    /// Reads `DL(2)`, `BA(inf)`, `uSL(3)`, case-insensitively.
    fn from_str(s: &str) -> Result<FilterClass> {
        let bad = || Error::BadParameter(format!("cannot read class `{s}`; expected e.g. DL(2) or BA(inf)"));
        let (name, rest) = s.trim().split_once('(').ok_or_else(bad)?;
        let degree: Degree = rest.strip_suffix(')').ok_or_else(bad)?.trim().parse().map_err(|_| bad())?;
        let family = match name.trim().to_ascii_lowercase().as_str() {
            "dl" => Family::Dl,
            "ba" => Family::Ba,
            "sl" => Family::Sl,
            "usl" => Family::Usl,
            _ => return Err(bad()),
        };
        Ok(FilterClass { family, degree })
    }
}

/// Whether the filter rule holds in every structure of the class.
///
/// Works in the free algebra over the rule's variables, quotiented by the
/// congruence generated by the rule's equations: the rule is valid iff the
/// conclusion lies in the `n`-filter generated there by the premises. For
/// BA and uSL, where designated sets are non-empty, the premises are joined
/// by the constant `1`; for DL and SL an empty premise list generates the
/// empty upset, so such a rule is never valid.
pub fn entails_class(r: &Implication, class: FilterClass) -> Result<bool> {
    let Conclusion::Term(phi) = &r.conclusion else {
        return Err(Error::BadParameter("entailment is decided for filter implications only".into()));
    };
    let sig = class.family.signature();
    if r.ops() & !sig.ops() != 0 {
        return Err(Error::SignatureMismatch(format!("rule uses operations outside {}", class)));
    }
    let vars = r.vars();
    if vars.len() > class.family.max_vars() {
        return Err(Error::TooManyVariables { found: vars.len(), max: class.family.max_vars() });
    }
    // A spare generator keeps ground rules meaningful; it does not change validity.
    let fa = free_algebra(sig, vars.len().max(1))?;
    let alg = &fa.algebra;
    let checker = Checker::new(r);
    let gens = &fa.generators[..vars.len().max(1)];
    let pairs: Vec<(Elem, Elem)> =
        r.equations.iter().map(|(t, u)| (checker.eval_term(t, alg, gens), checker.eval_term(u, alg, gens))).collect();
    let q = quotient(alg, sig, &pairs)?;
    let qa = &q.algebra;
    let mut base = BitSet::new(qa.len());
    for p in &r.premises {
        base.insert(q.class_of[checker.eval_term(p, alg, gens)]);
    }
    if sig.requires_nonempty() {
        base.insert(qa.top().expect("unital"));
    }
    let base = qa.upward_closure(&base);
    let generated = generate_n_filter(qa, &base, class.degree)?;
    Ok(generated.contains(q.class_of[checker.eval_term(phi, alg, gens)]))
}

/// Where `find_countermodel` looks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Search {
    /// The named gallery structures whose signature covers the rule.
    Gallery,
    /// Every algebra of the signature up to `max_size` elements, up to
    /// isomorphism, with every upset (non-empty when the signature demands it).
    Exhaustive { max_size: usize, signature: Signature },
}

#[derive(Clone, Debug)]
pub struct Countermodel {
    pub name: String,
    pub structure: Structure,
    pub witness: Vec<Elem>,
}

/// Largest carrier for exhaustive countermodel search.
pub const EXHAUSTIVE_CAP: usize = 16;

fn carriers(sig: Signature, max: usize) -> Vec<FinitePoset> {
    let flat = |levels: Vec<Vec<FinitePoset>>| levels.into_iter().flatten().collect::<Vec<_>>();
    match sig {
        Signature::Boolean => {
            (0..).take_while(|&k| 1usize << k <= max).map(|k| FinitePoset::boolean_lattice(k).expect("B_k")).collect()
        }
        Signature::Distributive => flat(enumerate::distributive_lattices(max)),
        Signature::Lattice | Signature::UnitalSemilattice => flat(enumerate::lattices(max)),
        Signature::Semilattice => flat(enumerate::meet_semilattices(max)),
        Signature::Poset => flat(enumerate::posets(max)),
    }
}

/// First structure and valuation refuting the rule, in a deterministic order.
pub fn find_countermodel(r: &Implication, search: Search) -> Result<Option<Countermodel>> {
    let checker = Checker::new(r);
    match search {
        Search::Gallery => {
            for (name, s) in default_gallery() {
                if r.ops() & !s.signature().ops() != 0 {
                    continue;
                }
                if let Some(witness) = checker.violation(s.algebra(), s.designated()) {
                    return Ok(Some(Countermodel { name, structure: s, witness }));
                }
            }
            Ok(None)
        }
        Search::Exhaustive { max_size, signature } => {
            if r.ops() & !signature.ops() != 0 {
                return Err(Error::SignatureMismatch(format!("rule uses operations outside the {signature} signature")));
            }
            limits::check_cap(max_size, EXHAUSTIVE_CAP)?;
            let algebras = carriers(signature, max_size);
            let found = algebras.par_iter().enumerate().find_map_first(|(i, p)| {
                let mut hit = None;
                p.for_each_upset(|u| {
                    if hit.is_some() || (u.is_empty() && signature.requires_nonempty()) {
                        return;
                    }
                    if let Some(w) = checker.violation(p, u) {
                        hit = Some((u.clone(), w));
                    }
                });
                hit.map(|(u, w)| (i, u, w))
            });
            Ok(found.map(|(i, u, witness)| {
                let p = &algebras[i];
                let name = format!("{signature} algebra #{i} ({} elements) with upset {}", p.len(), p.format_set(&u));
                let structure = Structure::new(p.clone(), u, signature).expect("enumerated structure");
                Countermodel { name, structure, witness }
            }))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::horn::{builtin_rule, parse_implication, Builtin};

    fn class(s: &str) -> FilterClass {
        s.parse().unwrap()
    }

    #[test]
    fn adjunction_and_degrees() {
        let adj2 = builtin_rule(Builtin::Adjunction(2)).unwrap();
        assert!(entails_class(&adj2, class("DL(2)")).unwrap());
        assert!(entails_class(&adj2, class("DL(1)")).unwrap());
        assert!(!entails_class(&adj2, class("DL(3)")).unwrap());
        let meet = parse_implication("x, y |- x & y").unwrap();
        assert!(entails_class(&meet, class("DL(1)")).unwrap());
        assert!(!entails_class(&meet, class("DL(2)")).unwrap());
        assert!(!entails_class(&meet, class("DL(inf)")).unwrap());
        assert!(entails_class(&meet, class("uSL(1)")).unwrap());
    }

    #[test]
    fn boolean_classes() {
        let alpha2 = builtin_rule(Builtin::Alpha(2)).unwrap();
        assert!(entails_class(&alpha2, class("BA(1)")).unwrap());
        assert!(!entails_class(&alpha2, class("BA(2)")).unwrap());
        let alpha3 = builtin_rule(Builtin::Alpha(3)).unwrap();
        assert!(entails_class(&alpha3, class("BA(2)")).unwrap());
        assert!(!entails_class(&alpha3, class("BA(3)")).unwrap());
        // Empty premises: only consequences of 1.
        assert!(entails_class(&parse_implication("|- x | ~x").unwrap(), class("BA(inf)")).unwrap());
        assert!(!entails_class(&parse_implication("|- x").unwrap(), class("BA(1)")).unwrap());
        assert!(!entails_class(&parse_implication("|- x | y").unwrap(), class("DL(1)")).unwrap());
    }

    #[test]
    fn equations_quotient_the_free_algebra() {
        let r = parse_implication("x = y, x |- y").unwrap();
        assert!(entails_class(&r, class("DL(inf)")).unwrap());
        let r = parse_implication("x & y = x, x |- y").unwrap();
        assert!(entails_class(&r, class("DL(inf)")).unwrap());
        let r = parse_implication("x & y = x, y |- x").unwrap();
        assert!(!entails_class(&r, class("DL(inf)")).unwrap());
    }

    #[test]
    fn errors() {
        let r = parse_implication("x1, x2, x3, x4 |- x1 & x2 & x3 & x4").unwrap();
        assert!(matches!(entails_class(&r, class("BA(3)")), Err(Error::TooManyVariables { found: 4, max: 3 })));
        let alpha2 = builtin_rule(Builtin::Alpha(2)).unwrap();
        assert!(matches!(entails_class(&alpha2, class("DL(2)")), Err(Error::SignatureMismatch(_))));
        assert!(matches!(
            entails_class(&parse_implication("x |- x = y").unwrap(), class("DL(1)")),
            Err(Error::BadParameter(_))
        ));
        assert!("XY(2)".parse::<FilterClass>().is_err());
        assert_eq!(class("usl(inf)").to_string(), "uSL(inf)");
    }

    #[test]
    fn gallery_countermodels() {
        let alpha2 = builtin_rule(Builtin::Alpha(2)).unwrap();
        let cm = find_countermodel(&alpha2, Search::Gallery).unwrap().unwrap();
        assert_eq!(cm.name, "nabla(2)");
        assert_eq!(cm.structure.algebra().name(cm.witness[0]), "01");
        let meet = parse_implication("x, y |- x & y").unwrap();
        let cm = find_countermodel(&meet, Search::Gallery).unwrap().unwrap();
        assert_eq!(cm.name, "nabla(2)");
        let names: Vec<&str> = cm.witness.iter().map(|&x| cm.structure.algebra().name(x)).collect();
        assert_eq!(names, vec!["01", "10"]);
        assert!(find_countermodel(&parse_implication("x |- x").unwrap(), Search::Gallery).unwrap().is_none());
    }

    #[test]
    fn exhaustive_countermodels() {
        let identity = parse_implication("x |- x").unwrap();
        let search = Search::Exhaustive { max_size: 6, signature: Signature::Distributive };
        assert!(find_countermodel(&identity, search).unwrap().is_none());
        let meet = parse_implication("x, y |- x & y").unwrap();
        let cm = find_countermodel(&meet, search).unwrap().unwrap();
        assert!(!crate::horn::holds_in(&cm.structure, &meet).unwrap());
        assert!(matches!(
            find_countermodel(&meet, Search::Exhaustive { max_size: 17, signature: Signature::Boolean }),
            Err(Error::SizeCap { .. })
        ));
    }
}
