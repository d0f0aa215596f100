use std::collections::BTreeMap;
use std::fmt::Write;

use super::FiniteLattice;

fn escape(label: &str) -> String {
    label.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Graphviz rendering of the Hasse diagram: one node per element, one edge
/// per covering pair, elements of equal height on the same rank.
pub fn to_dot(l: &FiniteLattice, name: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph \"{}\" {{", escape(name));
    let _ = writeln!(out, "  rankdir=BT;");
    let _ = writeln!(out, "  node [shape=plaintext];");
    let _ = writeln!(out, "  edge [arrowhead=none];");
    for x in l.elements() {
        let _ = writeln!(out, "  n{} [label=\"{}\"];", x.index(), escape(l.label(x)));
    }
    let mut ranks: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for x in l.elements() {
        ranks.entry(l.height(x)).or_default().push(x.index());
    }
    for members in ranks.values() {
        let nodes: Vec<String> = members.iter().map(|i| format!("n{i};")).collect();
        let _ = writeln!(out, "  {{ rank=same; {} }}", nodes.join(" "));
    }
    for &(a, b) in l.hasse_edges() {
        let _ = writeln!(out, "  n{} -> n{};", a.index(), b.index());
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::parse_lattice;

    #[test]
    fn chain_dot_has_one_rank_per_level() {
        let l = parse_lattice("elements: 0 x \"y 1\ncovers: 0<x, x<\"y, \"y<1\n").unwrap();
        let dot = to_dot(&l, "chain");
        assert_eq!(dot.matches("rank=same").count(), 4);
        assert_eq!(dot.matches(" -> ").count(), 3);
        assert!(dot.contains("[label=\"\\\"y\"]"));
    }
}
