use std::fmt::Write;

use super::BipartiteGraph;
use crate::incidence::Labels;
use crate::permgroup::PermGroup;

const PALETTE: [&str; 12] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
    "#bcbd22", "#17becf", "#393b79", "#637939",
];

/// Graphviz rendering: circles for `B`, boxes for `B'`, fill colour by `N`-orbit.
pub fn to_dot(g: &BipartiteGraph, n: Option<&PermGroup>, labels: Option<&Labels>) -> String {
    let mut colour = vec![None; g.order()];
    if let Some(n) = n {
        for (i, orbit) in n.orbits().iter().enumerate() {
            for &x in orbit {
                colour[x] = Some(PALETTE[i % PALETTE.len()]);
            }
        }
    }
    let name = |x: usize| -> String {
        let label = labels.and_then(|l| {
            if g.in_b(x) {
                l.points.get(x)
            } else {
                l.blocks.get(x - g.n_b())
            }
        });
        match label {
            Some(s) => s.clone(),
            None if g.in_b(x) => format!("p{x}"),
            None => format!("b{}", x - g.n_b()),
        }
    };
    let mut out = String::from("graph G {\n");
    for (x, c) in colour.iter().enumerate() {
        let shape = if g.in_b(x) { "circle" } else { "box" };
        let _ = write!(out, "  v{x} [label=\"{}\", shape={shape}", name(x).replace('"', "\\\""));
        if let Some(c) = c {
            let _ = write!(out, ", style=filled, fillcolor=\"{c}\"");
        }
        out.push_str("];\n");
    }
    for (u, w) in g.edges() {
        let _ = writeln!(out, "  v{u} -- v{w};");
    }
    out.push_str("}\n");
    out
}
