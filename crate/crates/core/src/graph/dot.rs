use std::fmt::Write;

use super::FrameGraph;

/// Graphviz rendering with vertices `v<label+1>`, edges sorted, and vertex
/// flags as attributes. Output is byte-stable for a given graph.
pub fn export_dot(g: &FrameGraph) -> String {
    let name = |v: usize| format!("v{}", g.label(v) + 1);
    let mut out = String::from("graph G {\n");
    for v in 0..g.vertex_count() {
        let flags = g.flags(v);
        let mut attrs = Vec::new();
        if flags.isolated {
            attrs.push("isolated=true");
        }
        if flags.zero_vector {
            attrs.push("zero_vector=true");
        }
        if attrs.is_empty() {
            writeln!(out, "  {};", name(v)).unwrap();
        } else {
            writeln!(out, "  {} [{}];", name(v), attrs.join(", ")).unwrap();
        }
    }
    for (u, v) in g.edges() {
        writeln!(out, "  {} -- {};", name(u), name(v)).unwrap();
    }
    out.push_str("}\n");
    out
}
