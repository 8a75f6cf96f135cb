//! Rule syntax: `&`/`∧` meet, `|`/`∨` join, `~`/`¬` complement, `0`/`⊥`/`𝟘`
//! and `1`/`⊤`/`𝟙` constants, `,` between premises, `=`/`≈` for equations,
//! `|-`/`⊢` before the conclusion.

use super::term::{Conclusion, Implication, Term};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Zero,
    One,
    Meet,
    Join,
    Neg,
    LParen,
    RParen,
    Comma,
    Eq,
    Turnstile,
    End,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Zero => "`0`".into(),
        Tok::One => "`1`".into(),
        Tok::Meet => "`&`".into(),
        Tok::Join => "`|`".into(),
        Tok::Neg => "`~`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::Comma => "`,`".into(),
        Tok::Eq => "`=`".into(),
        Tok::Turnstile => "`|-`".into(),
        Tok::End => "end of input".into(),
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let mut it = text.char_indices().peekable();
    while let Some(&(pos, c)) = it.peek() {
        if c.is_whitespace() {
            it.next();
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut name = String::new();
            while let Some(&(_, d)) = it.peek() {
                if d.is_ascii_alphanumeric() || d == '_' || d == '\'' {
                    name.push(d);
                    it.next();
                } else {
                    break;
                }
            }
            out.push((pos, Tok::Ident(name)));
            continue;
        }
        it.next();
        let tok = match c {
            '0' | '⊥' | '𝟘' => Tok::Zero,
            '1' | '⊤' | '𝟙' => Tok::One,
            '&' | '∧' => Tok::Meet,
            '|' if it.peek().map(|&(_, d)| d) == Some('-') => {
                it.next();
                Tok::Turnstile
            }
            '|' | '∨' => Tok::Join,
            '~' | '¬' => Tok::Neg,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            '=' | '≈' => Tok::Eq,
            '⊢' => Tok::Turnstile,
            _ => return Err(Error::SyntaxError { pos, msg: format!("unexpected character `{c}`") }),
        };
        out.push((pos, tok));
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if t != Tok::End {
            self.at += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &str) -> Result<T> {
        Err(Error::SyntaxError { pos: self.pos(), msg: format!("expected {expected}, found {}", describe(self.peek())) })
    }

    fn expect(&mut self, tok: Tok) -> Result<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.fail(&describe(&tok))
        }
    }

    fn term(&mut self) -> Result<Term> {
        let mut t = self.meet()?;
        while *self.peek() == Tok::Join {
            self.bump();
            t = Term::join(t, self.meet()?);
        }
        Ok(t)
    }

    fn meet(&mut self) -> Result<Term> {
        let mut t = self.unary()?;
        while *self.peek() == Tok::Meet {
            self.bump();
            t = Term::meet(t, self.unary()?);
        }
        Ok(t)
    }

    fn unary(&mut self) -> Result<Term> {
        match self.peek() {
            Tok::Neg => {
                self.bump();
                Ok(Term::neg(self.unary()?))
            }
            Tok::Ident(_) => match self.bump() {
                Tok::Ident(name) => Ok(Term::Var(name)),
                _ => unreachable!(),
            },
            Tok::Zero => {
                self.bump();
                Ok(Term::Zero)
            }
            Tok::One => {
                self.bump();
                Ok(Term::One)
            }
            Tok::LParen => {
                self.bump();
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            _ => self.fail("a term"),
        }
    }

    /// A term, or an equation when followed by `=`.
    fn item(&mut self) -> Result<(Term, Option<Term>)> {
        let t = self.term()?;
        if *self.peek() == Tok::Eq {
            self.bump();
            Ok((t, Some(self.term()?)))
        } else {
            Ok((t, None))
        }
    }
}

pub fn parse_term(text: &str) -> Result<Term> {
    let mut p = Parser { toks: lex(text)?, at: 0 };
    let t = p.term()?;
    p.expect(Tok::End)?;
    Ok(t)
}

/// Parses `E, Γ |- φ`, tagging the rule with the smallest signature that
/// covers its operations.
pub fn parse_implication(text: &str) -> Result<Implication> {
    let mut p = Parser { toks: lex(text)?, at: 0 };
    let mut equations = Vec::new();
    let mut premises = Vec::new();
    if *p.peek() != Tok::Turnstile {
        loop {
            match p.item()? {
                (t, Some(u)) => equations.push((t, u)),
                (t, None) => premises.push(t),
            }
            match p.peek() {
                Tok::Comma => {
                    p.bump();
                }
                Tok::Turnstile => break,
                _ => return p.fail("`,` or `|-`"),
            }
        }
    }
    p.expect(Tok::Turnstile)?;
    let conclusion = match p.item()? {
        (t, Some(u)) => Conclusion::Equation(t, u),
        (t, None) => Conclusion::Term(t),
    };
    p.expect(Tok::End)?;
    Ok(Implication::inferred(equations, premises, conclusion))
}

impl std::str::FromStr for Implication {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_implication(s)
    }
}
