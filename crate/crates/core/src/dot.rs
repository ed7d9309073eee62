//! Graphviz DOT export.

use std::fmt::Write;

use crate::diagram::RuleDiagram;
use crate::graph::Multigraph;

pub fn graph_to_dot(name: &str, g: &Multigraph) -> String {
    let mut s = format!("digraph \"{}\" {{\n", escape(name));
    for v in 0..g.vertex_count() {
        let _ = writeln!(s, "  v{v} [label=\"{v}\"];");
    }
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        let _ = writeln!(s, "  v{a} -> v{b} [label=\"e{e}\"];");
    }
    s.push_str("}\n");
    s
}

/// Input and output graphs as two clusters; dashed arrows for `r`, dotted for `m`.
pub fn diagram_to_dot(name: &str, d: &RuleDiagram) -> String {
    let mut s = format!("digraph \"{}\" {{\n  compound=true;\n", escape(name));
    for (side, g) in [("I", d.input()), ("O", d.output())] {
        let _ = writeln!(s, "  subgraph cluster_{side} {{\n    label=\"{side}\";");
        for v in 0..g.vertex_count() {
            let _ = writeln!(s, "    {side}{v} [label=\"{v}\"];");
        }
        for (e, &(a, b)) in g.edges().iter().enumerate() {
            let _ = writeln!(s, "    {side}{a} -> {side}{b} [label=\"e{e}\"];");
        }
        s.push_str("  }\n");
    }
    for (i, o) in d.r_vertices().iter().enumerate() {
        if let Some(o) = o {
            let _ = writeln!(s, "  I{i} -> O{o} [style=dashed, color=blue, constraint=false];");
        }
    }
    for (o, i) in d.m_vertices().iter().enumerate() {
        if let Some(i) = i {
            let _ = writeln!(s, "  O{o} -> I{i} [style=dotted, color=red, constraint=false];");
        }
    }
    let edge_note = |kind: &str, map: &[Option<usize>]| {
        map.iter()
            .enumerate()
            .filter_map(|(a, b)| b.map(|b| format!("{kind}: e{a}->e{b}")))
            .collect::<Vec<_>>()
    };
    let mut notes = edge_note("r", d.r_edges());
    notes.extend(edge_note("m", d.m_edges()));
    if !notes.is_empty() {
        let _ = writeln!(s, "  label=\"{}\";", escape(&notes.join("\\n")));
    }
    s.push_str("}\n");
    s
}

fn escape(s: &str) -> String {
    s.replace('"', "\\\"")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_export() {
        let g = Multigraph::new(2, vec![(0, 1)]).unwrap();
        let s = graph_to_dot("G", &g);
        assert!(s.starts_with("digraph \"G\""));
        assert!(s.contains("v0 -> v1"));
    }
}
