use super::term::{Conclusion, Implication, Term};
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::poset::{Elem, FinitePoset};
use crate::structures::{ops, Structure};
use rayon::prelude::*;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug)]
enum Node {
    Var(usize),
    Zero,
    One,
    Meet(usize, usize),
    Join(usize, usize),
    Neg(usize),
}

/// A term flattened into post-order over variable indices.
#[derive(Clone, Debug)]
struct Compiled {
    nodes: Vec<Node>,
    /// One past the largest variable index used.
    level: usize,
}

impl Compiled {
    fn new(t: &Term, vars: &[String]) -> Compiled {
        let mut c = Compiled { nodes: Vec::new(), level: 0 };
        c.push(t, vars);
        c
    }

    fn push(&mut self, t: &Term, vars: &[String]) -> usize {
        let node = match t {
            Term::Var(v) => {
                let i = vars.iter().position(|w| w == v).expect("interned variable");
                self.level = self.level.max(i + 1);
                Node::Var(i)
            }
            Term::Zero => Node::Zero,
            Term::One => Node::One,
            Term::Meet(a, b) => {
                let (a, b) = (self.push(a, vars), self.push(b, vars));
                Node::Meet(a, b)
            }
            Term::Join(a, b) => {
                let (a, b) = (self.push(a, vars), self.push(b, vars));
                Node::Join(a, b)
            }
            Term::Neg(a) => Node::Neg(self.push(a, vars)),
        };
        self.nodes.push(node);
        self.nodes.len() - 1
    }

    fn eval(&self, alg: &FinitePoset, val: &[Elem], buf: &mut Vec<Elem>) -> Elem {
        buf.clear();
        for node in &self.nodes {
            let v = match *node {
                Node::Var(i) => val[i],
                Node::Zero => alg.bottom().expect("bottom"),
                Node::One => alg.top().expect("top"),
                Node::Meet(a, b) => alg.m(buf[a], buf[b]),
                Node::Join(a, b) => alg.j(buf[a], buf[b]),
                Node::Neg(a) => alg.neg(buf[a]).expect("complement"),
            };
            buf.push(v);
        }
        *buf.last().expect("non-empty term")
    }
}

enum Check {
    Equation(Compiled, Compiled),
    Premise(Compiled),
}

/// A rule compiled against a variable order, checked by depth-first search
/// over valuations in mixed-radix order with the first variable most
/// significant.
pub(crate) struct Checker {
    vars: Vec<String>,
    /// Hypotheses grouped by the number of variables needed to evaluate them.
    by_level: Vec<Vec<Check>>,
    conclusion: Check,
    conclusion_level: usize,
}

impl Checker {
    pub(crate) fn new(r: &Implication) -> Checker {
        let vars = r.vars();
        let mut by_level: Vec<Vec<Check>> = (0..=vars.len()).map(|_| Vec::new()).collect();
        for (t, u) in &r.equations {
            let (t, u) = (Compiled::new(t, &vars), Compiled::new(u, &vars));
            by_level[t.level.max(u.level)].push(Check::Equation(t, u));
        }
        for p in &r.premises {
            let p = Compiled::new(p, &vars);
            by_level[p.level].push(Check::Premise(p));
        }
        let (conclusion, conclusion_level) = match &r.conclusion {
            Conclusion::Term(t) => {
                let t = Compiled::new(t, &vars);
                let l = t.level;
                (Check::Premise(t), l)
            }
            Conclusion::Equation(t, u) => {
                let (t, u) = (Compiled::new(t, &vars), Compiled::new(u, &vars));
                let l = t.level.max(u.level);
                (Check::Equation(t, u), l)
            }
        };
        Checker { vars, by_level, conclusion, conclusion_level }
    }

    /// Evaluates any term over the rule's variables.
    pub(crate) fn eval_term(&self, t: &Term, alg: &FinitePoset, val: &[Elem]) -> Elem {
        Compiled::new(t, &self.vars).eval(alg, val, &mut Vec::new())
    }

    fn check(c: &Check, alg: &FinitePoset, f: &BitSet, val: &[Elem], buf: &mut Vec<Elem>) -> bool {
        match c {
            Check::Equation(t, u) => t.eval(alg, val, buf) == u.eval(alg, val, buf),
            Check::Premise(t) => f.contains(t.eval(alg, val, buf)),
        }
    }

    /// Depth-first search below a partial valuation of length `level`.
    /// Returns the first full valuation violating the rule.
    fn search(&self, alg: &FinitePoset, f: &BitSet, val: &mut Vec<Elem>, buf: &mut Vec<Elem>) -> bool {
        let level = val.len();
        if !self.by_level[level].iter().all(|c| Self::check(c, alg, f, val, buf)) {
            return false;
        }
        if level == self.conclusion_level && Self::check(&self.conclusion, alg, f, val, buf) {
            return false;
        }
        if level == self.vars.len() {
            return true;
        }
        for x in 0..alg.len() {
            val.push(x);
            if self.search(alg, f, val, buf) {
                return true;
            }
            val.pop();
        }
        false
    }

    pub(crate) fn violation(&self, alg: &FinitePoset, f: &BitSet) -> Option<Vec<Elem>> {
        let mut buf = Vec::new();
        let mut val = Vec::new();
        if self.vars.is_empty() {
            return self.search(alg, f, &mut val, &mut buf).then_some(val);
        }
        // Ground hypotheses and a ground conclusion are settled before fanning out.
        if !self.by_level[0].iter().all(|c| Self::check(c, alg, f, &val, &mut buf))
            || self.conclusion_level == 0 && Self::check(&self.conclusion, alg, f, &val, &mut buf)
        {
            return None;
        }
        (0..alg.len()).into_par_iter().find_map_first(|x| {
            let mut buf = Vec::new();
            let mut val = vec![x];
            self.search(alg, f, &mut val, &mut buf).then_some(val)
        })
    }
}

pub(crate) fn check_signature(s: &Structure, r: &Implication) -> Result<()> {
    let missing = r.ops() & !s.signature().ops();
    if missing != 0 {
        let name = |op: u8| match op {
            ops::MEET => "meet",
            ops::JOIN => "join",
            ops::NEG => "complement",
            ops::BOTTOM => "0",
            _ => "1",
        };
        let list: Vec<&str> = [ops::MEET, ops::JOIN, ops::NEG, ops::BOTTOM, ops::TOP]
            .into_iter()
            .filter(|&o| missing & o != 0)
            .map(name)
            .collect();
        return Err(Error::SignatureMismatch(format!(
            "the {} structure lacks {} used by the rule",
            s.signature(),
            list.join(", ")
        )));
    }
    Ok(())
}

/// The first valuation, in mixed-radix order over the rule's variables, under
/// which every hypothesis holds and the conclusion fails.
pub fn find_violation(s: &Structure, r: &Implication) -> Result<Option<Vec<Elem>>> {
    check_signature(s, r)?;
    Ok(Checker::new(r).violation(s.algebra(), s.designated()))
}

pub fn holds_in(s: &Structure, r: &Implication) -> Result<bool> {
    Ok(find_violation(s, r)?.is_none())
}

/// `{"holds": bool, "witness": {var: element}}`, with a null witness when
/// the rule holds.
pub fn holds_report(s: &Structure, r: &Implication, witness: Option<&[Elem]>) -> Value {
    let w = witness.map(|val| {
        let map: serde_json::Map<String, Value> =
            r.vars().into_iter().zip(val).map(|(v, &x)| (v, json!(s.algebra().name(x)))).collect();
        Value::Object(map)
    });
    json!({ "holds": witness.is_none(), "witness": w })
}
