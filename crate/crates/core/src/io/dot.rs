//! Graphviz rendering of a lattice's Hasse diagram.

use std::fmt::Write;

use crate::lattice::ConceptLattice;

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// One node per concept, labelled with its index and generators; one edge
/// per cover pair, drawn from the lower concept to the upper one.
pub fn emit_dot(lat: &ConceptLattice) -> String {
    let ctx = lat.context();
    let mut out = String::from("digraph lattice {\n  rankdir=BT;\n  node [shape=box];\n");
    for i in 0..lat.len() {
        let mut label = format!("C{}", i + 1);
        let attrs: Vec<&str> = lat
            .attribute_generators(i)
            .into_iter()
            .map(|m| ctx.attributes().name(m))
            .collect();
        if !attrs.is_empty() {
            label.push_str("\\n");
            label.push_str(&escape(&attrs.join(" ")));
        }
        let objs: Vec<&str> = lat
            .object_generators(i)
            .into_iter()
            .map(|g| ctx.objects().name(g))
            .collect();
        if !objs.is_empty() {
            label.push_str("\\n");
            label.push_str(&escape(&objs.join(" ")));
        }
        writeln!(out, "  c{} [label=\"{}\"];", i + 1, label).expect("string write");
    }
    for i in 0..lat.len() {
        for &j in lat.upper_covers(i) {
            writeln!(out, "  c{} -> c{};", i + 1, j + 1).expect("string write");
        }
    }
    out.push_str("}\n");
    out
}
