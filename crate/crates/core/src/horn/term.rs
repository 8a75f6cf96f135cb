use crate::error::{Error, Result};
use crate::structures::{ops, Signature};
use serde::{Deserialize, Serialize};
use std::fmt;

/// A term over named variables. `Meet` and `Join` are binary and printed
/// left-associatively.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Term {
    Var(String),
    Zero,
    One,
    Meet(Box<Term>, Box<Term>),
    Join(Box<Term>, Box<Term>),
    Neg(Box<Term>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    pub fn meet(a: Term, b: Term) -> Term {
        Term::Meet(Box::new(a), Box::new(b))
    }

    pub fn join(a: Term, b: Term) -> Term {
        Term::Join(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(a: Term) -> Term {
        Term::Neg(Box::new(a))
    }

    /// Left-nested meet of the terms; `None` for an empty list.
    pub fn meet_all(terms: impl IntoIterator<Item = Term>) -> Option<Term> {
        terms.into_iter().reduce(Term::meet)
    }

    pub fn join_all(terms: impl IntoIterator<Item = Term>) -> Option<Term> {
        terms.into_iter().reduce(Term::join)
    }

    /// Operations used, as an `ops` bitmask.
    pub fn ops(&self) -> u8 {
        match self {
            Term::Var(_) => 0,
            Term::Zero => ops::BOTTOM,
            Term::One => ops::TOP,
            Term::Meet(a, b) => ops::MEET | a.ops() | b.ops(),
            Term::Join(a, b) => ops::JOIN | a.ops() | b.ops(),
            Term::Neg(a) => ops::NEG | a.ops(),
        }
    }

    /// Variables in order of first occurrence, appended to `out`.
    pub fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            Term::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Term::Zero | Term::One => {}
            Term::Meet(a, b) | Term::Join(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Term::Neg(a) => a.collect_vars(out),
        }
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, ctx: u8) -> fmt::Result {
        match self {
            Term::Var(v) => f.write_str(v),
            Term::Zero => f.write_str("0"),
            Term::One => f.write_str("1"),
            Term::Join(a, b) => {
                if ctx > 1 {
                    f.write_str("(")?;
                }
                a.write(f, 1)?;
                f.write_str(" | ")?;
                b.write(f, 2)?;
                if ctx > 1 {
                    f.write_str(")")?;
                }
                Ok(())
            }
            Term::Meet(a, b) => {
                if ctx > 2 {
                    f.write_str("(")?;
                }
                a.write(f, 2)?;
                f.write_str(" & ")?;
                b.write(f, 3)?;
                if ctx > 2 {
                    f.write_str(")")?;
                }
                Ok(())
            }
            Term::Neg(a) => {
                f.write_str("~")?;
                a.write(f, 3)
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Conclusion {
    Term(Term),
    Equation(Term, Term),
}

/// A finitary Horn rule `E, Γ ⊢ φ` or `E, Γ ⊢ t = u`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Implication {
    pub signature: Signature,
    #[serde(default)]
    pub equations: Vec<(Term, Term)>,
    #[serde(default)]
    pub premises: Vec<Term>,
    pub conclusion: Conclusion,
}

/// Smallest signature providing the operations in `used`.
pub fn signature_for_ops(used: u8) -> Signature {
    if used & (ops::NEG | ops::BOTTOM) != 0 || (used & ops::JOIN != 0 && used & ops::TOP != 0) {
        Signature::Boolean
    } else if used & ops::JOIN != 0 {
        Signature::Lattice
    } else if used & ops::TOP != 0 {
        Signature::UnitalSemilattice
    } else {
        Signature::Semilattice
    }
}

impl Implication {
    pub fn new(
        equations: Vec<(Term, Term)>,
        premises: Vec<Term>,
        conclusion: Conclusion,
        signature: Signature,
    ) -> Result<Implication> {
        let r = Implication { signature, equations, premises, conclusion };
        r.validate()?;
        Ok(r)
    }

    /// A rule tagged with the smallest signature covering its operations.
    pub fn inferred(equations: Vec<(Term, Term)>, premises: Vec<Term>, conclusion: Conclusion) -> Implication {
        let mut r = Implication { signature: Signature::Semilattice, equations, premises, conclusion };
        r.signature = signature_for_ops(r.ops());
        r
    }

    /// Equality-free filter rule `Γ ⊢ φ`.
    pub fn filter(premises: Vec<Term>, conclusion: Term, signature: Signature) -> Result<Implication> {
        Implication::new(Vec::new(), premises, Conclusion::Term(conclusion), signature)
    }

    fn validate(&self) -> Result<()> {
        let used = self.ops();
        if used & !self.signature.ops() != 0 {
            return Err(Error::SignatureMismatch(format!(
                "rule uses operations outside the {} signature",
                self.signature
            )));
        }
        Ok(())
    }

    fn terms(&self) -> impl Iterator<Item = &Term> {
        let concl: Vec<&Term> = match &self.conclusion {
            Conclusion::Term(t) => vec![t],
            Conclusion::Equation(t, u) => vec![t, u],
        };
        self.equations.iter().flat_map(|(t, u)| [t, u]).chain(self.premises.iter()).chain(concl)
    }

    pub fn ops(&self) -> u8 {
        self.terms().fold(0, |acc, t| acc | t.ops())
    }

    /// Variables in order of first occurrence: equations, premises, conclusion.
    pub fn vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        for t in self.terms() {
            t.collect_vars(&mut out);
        }
        out
    }

    pub fn is_filter_implication(&self) -> bool {
        matches!(self.conclusion, Conclusion::Term(_))
    }

    pub fn is_equality_free(&self) -> bool {
        self.equations.is_empty() && self.is_filter_implication()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("rules serialize")
    }

    pub fn from_json(text: &str) -> Result<Implication> {
        let r: Implication = serde_json::from_str(text).map_err(|e| Error::MalformedDocument(e.to_string()))?;
        r.validate()?;
        Ok(r)
    }
}

impl fmt::Display for Implication {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut items: Vec<String> = self.equations.iter().map(|(t, u)| format!("{t} = {u}")).collect();
        items.extend(self.premises.iter().map(Term::to_string));
        if items.is_empty() {
            f.write_str("|- ")?;
        } else {
            write!(f, "{} |- ", items.join(", "))?;
        }
        match &self.conclusion {
            Conclusion::Term(t) => write!(f, "{t}"),
            Conclusion::Equation(t, u) => write!(f, "{t} = {u}"),
        }
    }
}
