//! Horn rules over structures: terms, a parser and printer, evaluation with
//! counterexample valuations, the builtin rule families, and entailment
//! relative to the classes of n-filters.

mod builtin;
mod entail;
mod eval;
mod parse;
mod term;

pub use builtin::{builtin_rule, Builtin};
pub use entail::{entails_class, find_countermodel, Countermodel, Family, FilterClass, Search, EXHAUSTIVE_CAP};
pub use eval::{find_violation, holds_in, holds_report};
pub use parse::{parse_implication, parse_term};
pub use term::{signature_for_ops, Conclusion, Implication, Term};
