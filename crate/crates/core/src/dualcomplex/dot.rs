use std::fmt::Write;

use super::complex::DualComplex;
use super::config::DivisorConfiguration;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Graphviz rendering: a box per component, an edge per double curve and a
/// point node per triple point joined to its components by dashed edges.
pub fn to_dot(config: &DivisorConfiguration, cx: &DualComplex) -> String {
    let mut out = String::from("graph dual_complex {\n  node [shape=box];\n");
    for c in &config.components {
        let mut label = format!("{}\\n{}", c.id, c.kind.as_str());
        if let Some(b2) = c.b2 {
            let _ = write!(label, "\\nb2={b2}");
        }
        let _ = writeln!(
            out,
            "  {} [label=\"{}\"];",
            quote(&c.id.0),
            label.replace('"', "\\\"")
        );
    }
    for e in &cx.edges {
        let _ = writeln!(
            out,
            "  {} -- {} [label=\"{} g={}\"];",
            quote(&cx.vertices[e.ends.0].0),
            quote(&cx.vertices[e.ends.1].0),
            e.id.0.replace('"', "\\\""),
            e.genus
        );
    }
    for (i, t) in cx.triangles.iter().enumerate() {
        let name =
            t.id.as_ref()
                .map_or_else(|| format!("tp{i}"), |id| id.0.clone());
        let node = quote(&format!("triple:{name}"));
        let _ = writeln!(out, "  {node} [shape=point, xlabel={}];", quote(&name));
        for &v in &t.vertices {
            let _ = writeln!(
                out,
                "  {node} -- {} [style=dashed];",
                quote(&cx.vertices[v].0)
            );
        }
    }
    out.push_str("}\n");
    out
}
