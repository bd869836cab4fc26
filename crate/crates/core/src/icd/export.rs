use std::fmt::Write;

use super::InterCliqueDigraph;
use crate::graph::VertexSet;

fn joined<I: IntoIterator<Item = usize>>(ids: I) -> String {
    ids.into_iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

fn label(set: &VertexSet) -> String {
    joined(set.iter())
}

impl InterCliqueDigraph {
    /// Line-oriented dump: one `node` line per node, then one `arc` line per arc.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (id, x) in self.nodes().iter().enumerate() {
            writeln!(
                out,
                "node {id} clique={} src={} w={} phiInv={}",
                label(&x.clique),
                joined(x.src.iter().copied()),
                x.weight,
                label(&x.phi_inv)
            )
            .unwrap();
        }
        for &(p, c) in self.arcs() {
            writeln!(out, "arc {p} {c}").unwrap();
        }
        out
    }

    /// Graphviz rendering; nodes with empty φ⁻¹ are drawn dashed.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph icd {\n  node [shape=box];\n");
        for (id, x) in self.nodes().iter().enumerate() {
            let style = if x.phi_inv.is_empty() { ", style=dashed" } else { "" };
            writeln!(out, "  n{id} [label=\"{{{}}}\\nw={}\"{style}];", label(&x.clique), x.weight).unwrap();
        }
        for &(p, c) in self.arcs() {
            writeln!(out, "  n{p} -> n{c};").unwrap();
        }
        out.push_str("}\n");
        out
    }
}
