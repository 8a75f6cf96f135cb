use super::FinitePoset;
use crate::bitset::BitSet;
use std::fmt::Write;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Hasse diagram in DOT, bottom to top, with `highlight` members filled.
pub fn export_dot(p: &FinitePoset, highlight: &BitSet) -> String {
    let mut out = String::from("digraph poset {\n  rankdir=BT;\n  node [shape=circle];\n");
    for x in 0..p.len() {
        let style = if highlight.contains(x) { " [style=filled, fillcolor=black, fontcolor=white]" } else { "" };
        writeln!(out, "  {}{};", quote(p.name(x)), style).expect("write to string");
    }
    for &(lo, hi) in p.covers() {
        writeln!(out, "  {} -> {};", quote(p.name(lo)), quote(p.name(hi))).expect("write to string");
    }
    out.push_str("}\n");
    out
}
