//! Graphviz output. Node and edge order follows ids, so output is stable.

use std::fmt::Write;

use crate::algebra::Presentation;
use crate::hda::Hda;
use crate::ipomset::Ipomset;
use crate::st::StAutomaton;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Events as nodes, with `•` marking interface sides; Hasse edges of
/// precedence are solid and event order is dotted.
pub fn pomset_to_dot(p: &Ipomset) -> String {
    let mut out = String::from("digraph pomset {\n  rankdir=LR;\n");
    for x in 0..p.len() {
        let label = format!(
            "{}{}{}",
            if p.is_source(x) { "•" } else { "" },
            p.label(x),
            if p.is_target(x) { "•" } else { "" }
        );
        writeln!(out, "  {} [label={}];", quote(&p.names()[x]), quote(&label)).unwrap();
    }
    for (x, y) in p.hasse_edges() {
        writeln!(out, "  {} -> {};", quote(&p.names()[x]), quote(&p.names()[y])).unwrap();
    }
    for (x, y) in p.event_order_edges() {
        writeln!(out, "  {} -> {} [style=dotted];", quote(&p.names()[x]), quote(&p.names()[y]))
            .unwrap();
    }
    out.push_str("}\n");
    out
}

/// Cells as nodes; lower faces dashed, upper faces solid, both labelled
/// by the event index.
pub fn hda_to_dot(x: &Hda) -> String {
    let mut out = String::from("digraph hda {\n");
    for c in x.cells() {
        let mut attrs = format!("label={}", quote(&format!("{} {}", x.name(c), x.conclist(c))));
        if x.initial().contains(&c) {
            attrs.push_str(", shape=box");
        }
        if x.accepting().contains(&c) {
            attrs.push_str(", peripheries=2");
        }
        writeln!(out, "  {} [{attrs}];", quote(x.name(c))).unwrap();
    }
    for c in x.cells() {
        for e in 0..x.conclist(c).len() {
            for (upper, style) in [(false, "dashed"), (true, "solid")] {
                let f = x.single_face(c, e, upper);
                writeln!(
                    out,
                    "  {} -> {} [label=\"{}{e}\", style={style}];",
                    quote(x.name(c)),
                    quote(x.name(f)),
                    if upper { "δ1_" } else { "δ0_" }
                )
                .unwrap();
            }
        }
    }
    out.push_str("}\n");
    out
}

pub fn st_automaton_to_dot(a: &StAutomaton) -> String {
    let mut out = String::from("digraph st {\n  rankdir=LR;\n");
    for q in 0..a.len() {
        let mut attrs = format!("label={}", quote(&format!("{} {}", a.name(q), a.label(q))));
        if a.initial().contains(&q) {
            attrs.push_str(", shape=box");
        }
        if a.finals().contains(&q) {
            attrs.push_str(", peripheries=2");
        }
        writeln!(out, "  {} [{attrs}];", quote(a.name(q))).unwrap();
    }
    for (p, l, q) in a.transitions() {
        writeln!(out, "  {} -> {} [label={}];", quote(a.name(p)), quote(a.name(q)), quote(&l.to_string()))
            .unwrap();
    }
    out.push_str("}\n");
    out
}

pub fn presentation_to_dot(p: &Presentation) -> String {
    let mut out = String::from("digraph presentation {\n  rankdir=LR;\n");
    let initials: Vec<usize> = p.initials().values().copied().collect();
    for (m, e) in p.elements().iter().enumerate() {
        let mut attrs = format!("label={}", quote(&format!("{} {}→{}", e.name, e.src, e.tgt)));
        if initials.contains(&m) {
            attrs.push_str(", shape=box");
        }
        if p.accepting().contains(&m) {
            attrs.push_str(", peripheries=2");
        }
        writeln!(out, "  {} [{attrs}];", quote(&e.name)).unwrap();
    }
    for (m, l, n) in p.actions() {
        writeln!(out, "  {} -> {} [label={}];", quote(p.name(m)), quote(p.name(n)), quote(&l.to_string()))
            .unwrap();
    }
    out.push_str("}\n");
    out
}
