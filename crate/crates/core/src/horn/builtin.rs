//! The rule families αₙ, βₖ, γₙ,ₖ and n-adjunction.

use super::term::{Implication, Term};
use crate::error::{Error, Result};
use crate::structures::Signature;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Builtin {
    /// Complete-clause splitting rule `π₁, …, πₙ ⊢ πₙ₊₁ ∨ ⋯ ∨ π_{2ᵏ}`.
    Alpha(usize),
    /// `x₁, …, xₖ, ¬(x₁ ∧ ⋯ ∧ xₖ) ⊢ y`.
    Beta(usize),
    /// Meets of the non-empty subsets of `{x₁, …, xₖ, ¬(x₁ ∧ ⋯ ∧ xₖ)}` with at
    /// most `n` elements entail `0`.
    Gamma(usize, usize),
    /// The defining rule of n-filters over `n + 1` variables.
    Adjunction(usize),
    /// n-adjunction with every variable `xᵢ` replaced by `xᵢ ∧ z`.
    SubstAdjunction(usize),
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Builtin::Alpha(n) => write!(f, "alpha({n})"),
            Builtin::Beta(k) => write!(f, "beta({k})"),
            Builtin::Gamma(n, k) => write!(f, "gamma({n},{k})"),
            Builtin::Adjunction(n) => write!(f, "adjunction({n})"),
            Builtin::SubstAdjunction(n) => write!(f, "subst_adjunction({n})"),
        }
    }
}

impl std::str::FromStr for Builtin {
    type Err = Error;

    /// Accepts `alpha(2)`, `gamma(1,3)` and so on.
    fn from_str(s: &str) -> Result<Builtin> {
        let bad = || Error::BadParameter(format!("cannot read builtin rule `{s}`"));
        let s = s.trim();
        let (name, rest) = s.split_once('(').ok_or_else(bad)?;
        let args = rest.strip_suffix(')').ok_or_else(bad)?;
        let nums: Vec<usize> =
            args.split(',').map(|a| a.trim().parse::<usize>()).collect::<std::result::Result<_, _>>().map_err(|_| bad())?;
        Ok(match (name.trim(), nums.as_slice()) {
            ("alpha", &[n]) => Builtin::Alpha(n),
            ("beta", &[k]) => Builtin::Beta(k),
            ("gamma", &[n, k]) => Builtin::Gamma(n, k),
            ("adjunction", &[n]) => Builtin::Adjunction(n),
            ("subst_adjunction", &[n]) => Builtin::SubstAdjunction(n),
            _ => return Err(bad()),
        })
    }
}

/// `x` alone, or `x1, …, xk`.
fn indexed(k: usize) -> Vec<Term> {
    if k == 1 {
        vec![Term::var("x")]
    } else {
        (1..=k).map(|i| Term::var(format!("x{i}"))).collect()
    }
}

fn meet_of(ts: &[Term]) -> Term {
    Term::meet_all(ts.iter().cloned()).expect("non-empty meet")
}

/// Clause `j` of `k` variables: the sign pattern is the binary form of `j`
/// with `x1` most significant, 0 meaning a positive literal.
fn clause(j: usize, xs: &[Term]) -> Term {
    let k = xs.len();
    meet_of(
        &xs.iter()
            .enumerate()
            .map(|(i, x)| if j >> (k - 1 - i) & 1 == 0 { x.clone() } else { Term::neg(x.clone()) })
            .collect::<Vec<_>>(),
    )
}

/// Non-empty subsets of `0..len` with at most `n` members, by size and then
/// lexicographically.
fn small_subsets(len: usize, n: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, len: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..len {
            cur.push(i);
            rec(i + 1, len, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for size in 1..=n.min(len) {
        rec(0, len, size, &mut Vec::new(), &mut out);
    }
    out
}

pub fn builtin_rule(b: Builtin) -> Result<Implication> {
    let y = Term::var("y");
    match b {
        Builtin::Alpha(0) => Err(Error::BadParameter("alpha(n) needs n >= 1".into())),
        Builtin::Alpha(1) => Implication::filter(vec![Term::var("x")], y, Signature::Boolean),
        Builtin::Alpha(n) => {
            let k = n.next_power_of_two().trailing_zeros() as usize;
            if k > 6 {
                return Err(Error::BadParameter(format!("alpha({n}) is too large")));
            }
            let xs = indexed(k);
            let premises = (0..n).map(|j| clause(j, &xs)).collect();
            let conclusion = Term::join_all((n..1 << k).map(|j| clause(j, &xs))).unwrap_or(y);
            Implication::filter(premises, conclusion, Signature::Boolean)
        }
        Builtin::Beta(0) => Implication::filter(vec![Term::var("x")], Term::var("x"), Signature::Boolean),
        Builtin::Beta(k) => {
            let xs = indexed(k);
            let mut premises = xs.clone();
            premises.push(Term::neg(meet_of(&xs)));
            Implication::filter(premises, y, Signature::Boolean)
        }
        Builtin::Gamma(n, k) => {
            if n == 0 || k == 0 {
                return Err(Error::BadParameter("gamma(n,k) needs n, k >= 1".into()));
            }
            let xs = indexed(k);
            let mut delta = xs.clone();
            delta.push(Term::neg(meet_of(&xs)));
            let premises = small_subsets(delta.len(), n)
                .iter()
                .map(|sub| meet_of(&sub.iter().map(|&i| delta[i].clone()).collect::<Vec<_>>()))
                .collect();
            Implication::filter(premises, Term::Zero, Signature::Boolean)
        }
        Builtin::Adjunction(n) | Builtin::SubstAdjunction(n) => {
            if n == 0 {
                return Err(Error::BadParameter("adjunction(n) needs n >= 1".into()));
            }
            let mut xs = indexed(n + 1);
            if matches!(b, Builtin::SubstAdjunction(_)) {
                xs = xs.into_iter().map(|x| Term::meet(x, Term::var("z"))).collect();
            }
            // Premise i omits xᵢ₋₁ and lists the rest cyclically from xᵢ.
            let m = xs.len();
            let premises = (0..m).map(|i| meet_of(&(0..n).map(|d| xs[(i + d) % m].clone()).collect::<Vec<_>>())).collect();
            let conclusion = if matches!(b, Builtin::SubstAdjunction(_)) {
                let plain = indexed(n + 1);
                Term::meet(meet_of(&plain), Term::var("z"))
            } else {
                meet_of(&xs)
            };
            Implication::filter(premises, conclusion, Signature::Semilattice)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn text(b: Builtin) -> String {
        builtin_rule(b).unwrap().to_string()
    }

    #[test]
    fn printed_forms() {
        assert_eq!(text(Builtin::Alpha(1)), "x |- y");
        assert_eq!(text(Builtin::Alpha(2)), "x, ~x |- y");
        assert_eq!(text(Builtin::Alpha(3)), "x1 & x2, x1 & ~x2, ~x1 & x2 |- ~x1 & ~x2");
        assert_eq!(text(Builtin::Alpha(4)), "x1 & x2, x1 & ~x2, ~x1 & x2, ~x1 & ~x2 |- y");
        assert_eq!(
            text(Builtin::Alpha(5)),
            "x1 & x2 & x3, x1 & x2 & ~x3, x1 & ~x2 & x3, x1 & ~x2 & ~x3, ~x1 & x2 & x3 \
             |- ~x1 & x2 & ~x3 | ~x1 & ~x2 & x3 | ~x1 & ~x2 & ~x3"
        );
        assert_eq!(text(Builtin::Beta(0)), "x |- x");
        assert_eq!(text(Builtin::Beta(1)), "x, ~x |- y");
        assert_eq!(text(Builtin::Beta(2)), "x1, x2, ~(x1 & x2) |- y");
        assert_eq!(text(Builtin::Gamma(1, 1)), "x, ~x |- 0");
        assert_eq!(text(Builtin::Gamma(2, 2)), "x1, x2, ~(x1 & x2), x1 & x2, x1 & ~(x1 & x2), x2 & ~(x1 & x2) |- 0");
        assert_eq!(text(Builtin::Adjunction(1)), "x1, x2 |- x1 & x2");
        assert_eq!(text(Builtin::Adjunction(2)), "x1 & x2, x2 & x3, x3 & x1 |- x1 & x2 & x3");
        assert_eq!(text(Builtin::SubstAdjunction(1)), "x1 & z, x2 & z |- x1 & x2 & z");
    }

    #[test]
    fn printing_round_trips() {
        for b in [Builtin::Alpha(3), Builtin::Beta(2), Builtin::Gamma(2, 3), Builtin::Adjunction(3), Builtin::SubstAdjunction(2)] {
            let r = builtin_rule(b).unwrap();
            let back: Implication = r.to_string().parse().unwrap();
            assert_eq!(back.to_string(), r.to_string());
            assert_eq!(back.premises, r.premises);
            assert_eq!(back.conclusion, r.conclusion);
        }
    }

    #[test]
    fn parameters() {
        assert_eq!("gamma(1, 3)".parse::<Builtin>().unwrap(), Builtin::Gamma(1, 3));
        assert_eq!("alpha(2)".parse::<Builtin>().unwrap().to_string(), "alpha(2)");
        assert!("alpha".parse::<Builtin>().is_err());
        assert!("gamma(1)".parse::<Builtin>().is_err());
        for b in [Builtin::Alpha(0), Builtin::Gamma(0, 1), Builtin::Adjunction(0)] {
            assert!(matches!(builtin_rule(b), Err(Error::BadParameter(_))));
        }
    }
}
