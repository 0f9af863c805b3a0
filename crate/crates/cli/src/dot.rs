use std::fmt::Write;

use shape_forge::enumerate::{BranchingTree, ShapeRecord};

/// Graphviz source for the branching tree: nodes `id@grade`, solid tree
/// edges labeled by their word, dashed extra edges.
pub fn render(shapes: &[ShapeRecord], tree: &BranchingTree) -> String {
    let mut out = String::from("digraph shapes {\n  rankdir=TB;\n  node [shape=box];\n");
    for s in shapes {
        writeln!(out, "  n{} [label=\"{}@{}\"];", s.id, s.id, s.grade).unwrap();
    }
    for e in &tree.edges {
        let label = e.word.as_ref().map_or_else(|| "oracle".to_string(), ToString::to_string);
        writeln!(out, "  n{} -> n{} [label=\"{label}\"];", e.parent, e.child).unwrap();
    }
    for x in &tree.extra_edges {
        let sign = if x.sign < 0 { "-" } else { "+" };
        writeln!(out, "  n{} -> n{} [label=\"{} ({sign})\", style=dashed];", x.from, x.to, x.word).unwrap();
    }
    out.push_str("}\n");
    out
}
