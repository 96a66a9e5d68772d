//! Graphviz output. Node labels are ids; dimension vectors and projective
//! parts go in the tooltip.

use std::fmt::Write;

use crate::formats::{KindJson, NodeJson, PosetJson, TorsJson};

fn tooltip(node: &NodeJson) -> String {
    let dims: Vec<String> = node
        .summands
        .iter()
        .map(|s| s.dims.iter().map(usize::to_string).collect::<Vec<_>>().join(","))
        .collect();
    let dims = if dims.is_empty() { "0".to_string() } else { dims.join(" + ") };
    let proj = if node.proj_part.is_empty() {
        "-".to_string()
    } else {
        node.proj_part.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
    };
    format!("{dims} | {proj}")
}

pub fn exchange_dot(poset: &PosetJson) -> String {
    let mut out = String::from("digraph exchange {\n  rankdir=TB;\n");
    for node in &poset.nodes {
        let shape = if node.proj_part.is_empty() { "box" } else { "ellipse" };
        let _ = writeln!(
            out,
            "  n{} [label=\"{}\", shape={shape}, tooltip=\"{}\"];",
            node.id,
            node.id,
            tooltip(node)
        );
    }
    for e in &poset.edges {
        let _ = writeln!(out, "  n{} -> n{} [label=\"{}\"];", e.from, e.to, e.at);
    }
    out.push_str("}\n");
    out
}

pub fn tors_dot(tors: &TorsJson) -> String {
    let mut out = String::from("digraph tors {\n  rankdir=TB;\n");
    for node in &tors.nodes {
        let (kind, style) = match node.kind {
            KindJson::Fac => ("Fac", "solid"),
            KindJson::FacFl => ("FacFl", "dashed"),
        };
        let tip = tors
            .exchange
            .nodes
            .get(node.pair)
            .map(tooltip)
            .unwrap_or_default();
        let _ = writeln!(
            out,
            "  t{} [label=\"{}\", style={style}, tooltip=\"{kind} {} : {tip}\"];",
            node.id, node.id, node.pair
        );
    }
    for (a, b) in &tors.edges {
        let _ = writeln!(out, "  t{a} -> t{b};");
    }
    out.push_str("}\n");
    out
}
