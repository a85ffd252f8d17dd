//! Hasse diagrams in DOT.

use std::fmt::Write;

use latkit::Lattice;

fn quoted(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

/// Nodes in index order, one edge per cover drawn from lower to upper.
pub fn emit_dot(l: &Lattice) -> String {
    let mut out = String::from("digraph lattice {\n  rankdir=BT;\n  node [shape=plaintext];\n");
    for x in l.elements() {
        writeln!(out, "  n{x} [label={}];", quoted(l.name(x))).unwrap();
    }
    for (x, y) in l.covers() {
        writeln!(out, "  n{x} -> n{y};").unwrap();
    }
    out.push_str("}\n");
    out
}
