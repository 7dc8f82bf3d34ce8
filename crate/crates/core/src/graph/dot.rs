use std::collections::BTreeMap;
use std::fmt::Write;

use super::{ClosedWalk, Graph};

const PALETTE: [&str; 6] = ["red", "blue", "darkgreen", "orange", "purple", "brown"];

/// Renders `g` in DOT. Each highlighted walk colours its edges and is listed in
/// a comment; later highlights win on shared edges. Output depends only on the inputs.
pub fn export_dot(g: &Graph, highlights: &[(String, ClosedWalk)]) -> String {
    let mut colour: BTreeMap<(usize, usize), (&str, &str)> = BTreeMap::new();
    for (i, (name, walk)) in highlights.iter().enumerate() {
        let c = PALETTE[i % PALETTE.len()];
        for (a, b) in walk.steps() {
            colour.insert((a.min(b), a.max(b)), (c, name.as_str()));
        }
    }
    let title = g.name().unwrap_or("G").replace('"', "'");
    let mut out = String::new();
    writeln!(out, "graph \"{title}\" {{").unwrap();
    for (i, (name, walk)) in highlights.iter().enumerate() {
        let verts: Vec<String> = walk.vertices().iter().map(usize::to_string).collect();
        writeln!(out, "  // {} ({}): {}", name, PALETTE[i % PALETTE.len()], verts.join(" ")).unwrap();
    }
    for v in 0..g.n() {
        writeln!(out, "  {v};").unwrap();
    }
    for v in g.loop_vertices() {
        match colour.get(&(v, v)) {
            Some((c, name)) => writeln!(out, "  {v} -- {v} [color={c}, penwidth=2, label=\"{name}\"];").unwrap(),
            None => writeln!(out, "  {v} -- {v};").unwrap(),
        }
    }
    for (u, v) in g.edges() {
        match colour.get(&(u, v)) {
            Some((c, name)) => writeln!(out, "  {u} -- {v} [color={c}, penwidth=2, label=\"{name}\"];").unwrap(),
            None => writeln!(out, "  {u} -- {v};").unwrap(),
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::make_cycle;

    #[test]
    fn cycle_export_lists_nodes_edges_and_loops() {
        let dot = export_dot(&make_cycle(4, true), &[]);
        let nodes = dot.lines().filter(|l| l.trim_end().ends_with(';') && !l.contains("--")).count();
        let loops = dot.lines().filter(|l| {
            let parts: Vec<&str> = l.trim().trim_end_matches(';').split(" -- ").collect();
            parts.len() == 2 && parts[0] == parts[1]
        });
        let edges = dot.lines().filter(|l| l.contains("--")).count();
        assert_eq!(nodes, 4);
        assert_eq!(loops.count(), 4);
        assert_eq!(edges, 8);
        assert!(dot.starts_with("graph \"C4\" {"));
    }

    #[test]
    fn highlighted_walk_marks_its_edges() {
        let c = make_cycle(5, true);
        let dot = export_dot(&c, &[("Z".into(), ClosedWalk::new(vec![0, 1, 2, 3, 4]))]);
        assert_eq!(dot.matches("label=\"Z\"").count(), 5);
        assert_eq!(dot, export_dot(&c, &[("Z".into(), ClosedWalk::new(vec![0, 1, 2, 3, 4]))]));
    }
}
