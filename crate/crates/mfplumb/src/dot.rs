//! Graphviz DOT export of plumbing graphs.
//!
//! The layout is deterministic: vertices in identifier order, edges in
//! canonical order, so equal graphs always serialize byte for byte equal.
//!
//! Vertex labels show the Euler number, then the genus in square brackets
//! when it is nonzero, then the multiplicity in parentheses when a system is
//! supplied. Nonzero dual multiplicities get an auxiliary arrow-shaped node
//! `id::n` beside the vertex. Negative edges are dashed and labelled `-`.

use std::fmt::Write as _;

use crate::plumbing::{MultiplicitySystem, PlumbingGraph, Sign};

/// Renders `graph` as Graphviz DOT, decorated by `sys` when present.
pub fn export_dot(graph: &PlumbingGraph, sys: Option<&MultiplicitySystem>) -> String {
    let mut out = String::new();
    out.push_str("graph plumbing {\n");
    out.push_str("  node [shape=circle];\n");
    for (id, data) in graph.vertices() {
        let mut label = data.euler.to_string();
        if data.genus != 0 {
            write!(label, " [{}]", data.genus).expect("write to string");
        }
        if let Some(sys) = sys {
            let m = sys
                .m(id)
                .map(|m| m.to_string())
                .unwrap_or_else(|_| "?".into());
            write!(label, " ({m})").expect("write to string");
        }
        writeln!(out, "  \"{id}\" [label=\"{label}\"];").expect("write to string");
    }
    if let Some(sys) = sys {
        for (id, n) in sys.nonzero_n() {
            if graph.contains(id) {
                writeln!(out, "  \"{id}::n\" [shape=rarrow, label=\"({n})\"];")
                    .expect("write to string");
            }
        }
    }
    for edge in graph.edges() {
        match edge.sign {
            Sign::Plus => {
                writeln!(out, "  \"{}\" -- \"{}\";", edge.a, edge.b).expect("write to string")
            }
            Sign::Minus => writeln!(
                out,
                "  \"{}\" -- \"{}\" [style=dashed, label=\"-\"];",
                edge.a, edge.b
            )
            .expect("write to string"),
        }
    }
    if let Some(sys) = sys {
        for (id, _) in sys.nonzero_n() {
            if graph.contains(id) {
                writeln!(out, "  \"{id}\" -- \"{id}::n\" [style=dotted];")
                    .expect("write to string");
            }
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bare_graph_renders_deterministically() {
        let mut g = PlumbingGraph::new();
        g.add_vertex("b", -3, 0).unwrap();
        g.add_vertex("a", -2, 0).unwrap();
        g.add_edge("b", "a", Sign::Minus).unwrap();
        let expected = "\
graph plumbing {
  node [shape=circle];
  \"a\" [label=\"-2\"];
  \"b\" [label=\"-3\"];
  \"a\" -- \"b\" [style=dashed, label=\"-\"];
}
";
        assert_eq!(export_dot(&g, None), expected);
    }

    #[test]
    fn decorations_appear_in_labels() {
        let mut g = PlumbingGraph::new();
        g.add_vertex("core", -90, 17).unwrap();
        g.add_vertex("leaf", 0, 0).unwrap();
        g.add_edge("core", "leaf", Sign::Plus).unwrap();
        let mut sys = MultiplicitySystem::new();
        sys.set_m("core", 1);
        sys.set_m("leaf", 5);
        sys.set_n("leaf", -2);
        let dot = export_dot(&g, Some(&sys));
        assert!(dot.contains("\"core\" [label=\"-90 [17] (1)\"];"));
        assert!(dot.contains("\"leaf\" [label=\"0 (5)\"];"));
        assert!(dot.contains("\"leaf::n\" [shape=rarrow, label=\"(-2)\"];"));
        assert!(dot.contains("\"leaf\" -- \"leaf::n\" [style=dotted];"));
        assert!(dot.contains("\"core\" -- \"leaf\";"));
    }
}
