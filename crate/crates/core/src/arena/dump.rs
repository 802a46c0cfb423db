use serde_json::{json, Value};

use super::Hyperforest;

pub fn hyperforest_to_json(h: &Hyperforest) -> Value {
    let nodes: Vec<Value> = h
        .nodes
        .iter()
        .enumerate()
        .map(|(i, n)| {
            json!({
                "id": i,
                "name": n.name.to_string(),
                "parent": n.parent,
                "decorations": n.decorations.iter().map(|x| x.name()).collect::<Vec<_>>(),
            })
        })
        .collect();
    let edges: Vec<Value> = h
        .edges
        .iter()
        .map(|e| json!({ "target": e.target, "sources": e.sources }))
        .collect();
    json!({ "nodes": nodes, "hyperedges": edges })
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Graphviz rendering: tree edges are plain, hyperedges are dashed arrows
/// from the target to each source, labelled with the hyperedge number.
pub fn hyperforest_to_dot(h: &Hyperforest) -> String {
    let mut out = String::from("digraph arena {\n  node [shape=box];\n");
    for (i, n) in h.nodes.iter().enumerate() {
        let mut label = escape(&n.name.to_string());
        if !n.decorations.is_empty() {
            let ds: Vec<String> = n.decorations.iter().map(|x| x.name()).collect();
            label.push_str(&format!("\\n{{{}}}", ds.join(",")));
        }
        out.push_str(&format!("  n{i} [label=\"{label}\"];\n"));
    }
    for (i, n) in h.nodes.iter().enumerate() {
        if let Some(p) = n.parent {
            out.push_str(&format!("  n{p} -> n{i} [dir=none];\n"));
        }
    }
    for (k, e) in h.edges.iter().enumerate() {
        if e.sources.is_empty() {
            out.push_str(&format!("  e{k} [shape=point];\n  n{} -> e{k} [style=dashed];\n", e.target));
        }
        for s in &e.sources {
            out.push_str(&format!(
                "  n{} -> n{s} [style=dashed, constraint=false, label=\"h{k}\"];\n",
                e.target
            ));
        }
    }
    out.push_str("}\n");
    out
}
