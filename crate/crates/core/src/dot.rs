//! Graphviz DOT export.
//!
//! A frame renders as its cluster structure: every cluster is a boxed
//! subgraph (dashed for degenerate clusters, whose single point is
//! irreflexive and drawn dashed too), and the skeleton's covering relation
//! is drawn as box-to-box edges. Intra-cluster edges and self-loops are
//! implied by the boxes — members of one box all see each other and
//! themselves — so they are omitted; the frame JSON stays the faithful
//! machine format.

use std::fmt::Write;

use crate::frame::Frame;

fn quote(name: &str) -> String {
    format!("\"{}\"", name.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Render the frame as a DOT digraph, deterministically.
pub fn frame_to_dot(frame: &Frame) -> String {
    let sk = frame.skeleton();
    let mut out = String::new();
    out.push_str("digraph frame {\n");
    out.push_str("  compound=true;\n");
    out.push_str("  rankdir=BT;\n");
    out.push_str("  node [shape=ellipse];\n");
    for (c, cluster) in sk.clusters.iter().enumerate() {
        writeln!(out, "  subgraph cluster_{c} {{").unwrap();
        let style = if cluster.degenerate { "dashed" } else { "solid" };
        writeln!(out, "    style={style};").unwrap();
        out.push_str("    label=\"\";\n");
        for p in cluster.members() {
            let node_style = if frame.is_reflexive(p) { "solid" } else { "dashed" };
            writeln!(out, "    {} [style={node_style}];", quote(frame.name(p))).unwrap();
        }
        out.push_str("  }\n");
    }
    // Covering edges of the skeleton: c −→ d strict with nothing in between.
    for c in 0..sk.len() {
        for d in sk.successors(c) {
            let covered = (0..sk.len()).any(|e| sk.sees(c, e) && sk.sees(e, d));
            if covered {
                continue;
            }
            let anchor = |i: usize| quote(frame.name(sk.clusters[i].members()[0]));
            let (from, to) = (anchor(c), anchor(d));
            writeln!(out, "  {from} -> {to} [ltail=cluster_{c}, lhead=cluster_{d}];").unwrap();
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn frame(points: &[&str], edges: &[(&str, &str)], auto_close: bool) -> Frame {
        Frame::build(points.iter().map(|s| s.to_string()).collect(), edges, auto_close).unwrap()
    }

    #[test]
    fn single_irreflexive_point_full_output() {
        let f = frame(&["w"], &[], false);
        assert_eq!(
            frame_to_dot(&f),
            "digraph frame {\n\
             \x20 compound=true;\n\
             \x20 rankdir=BT;\n\
             \x20 node [shape=ellipse];\n\
             \x20 subgraph cluster_0 {\n\
             \x20   style=dashed;\n\
             \x20   label=\"\";\n\
             \x20   \"w\" [style=dashed];\n\
             \x20 }\n\
             }\n"
        );
    }

    #[test]
    fn reflexive_point_renders_solid() {
        let f = frame(&["w"], &[("w", "w")], false);
        let dot = frame_to_dot(&f);
        assert!(dot.contains("style=solid;"));
        assert!(dot.contains("\"w\" [style=solid];"));
        assert!(!dot.contains("dashed"));
    }

    #[test]
    fn covering_edges_only() {
        // 3-chain a → b → c (closed): skeleton edge a→c is implied.
        let f = frame(&["a", "b", "c"], &[("a", "b"), ("b", "c")], true);
        let dot = frame_to_dot(&f);
        let arrows: Vec<&str> = dot.lines().filter(|l| l.contains("->")).collect();
        assert_eq!(arrows.len(), 2);
        assert!(dot.contains("\"a\" -> \"b\""));
        assert!(dot.contains("\"b\" -> \"c\""));
        assert!(!dot.contains("\"a\" -> \"c\""));
    }

    #[test]
    fn cluster_boxes_and_cross_edges() {
        // A 2-point cluster below an irreflexive top.
        let f = frame(&["x", "y", "t"], &[("x", "y"), ("y", "x"), ("x", "t"), ("y", "t")], true);
        let dot = frame_to_dot(&f);
        assert!(dot.contains("subgraph cluster_0"));
        assert!(dot.contains("subgraph cluster_1"));
        // Nondegenerate box solid, its members solid; degenerate top dashed.
        assert!(dot.contains("    style=solid;\n    label=\"\";\n    \"x\" [style=solid];\n    \"y\" [style=solid];"));
        assert!(dot.contains("    style=dashed;\n    label=\"\";\n    \"t\" [style=dashed];"));
        // One box-to-box edge with compound clipping attributes.
        let arrows: Vec<&str> = dot.lines().filter(|l| l.contains("->")).collect();
        assert_eq!(arrows.len(), 1);
        assert!(arrows[0].contains("ltail=cluster_") && arrows[0].contains("lhead=cluster_"));
    }

    #[test]
    fn names_are_escaped() {
        let f = frame(&["a\"b\\c"], &[], false);
        let dot = frame_to_dot(&f);
        assert!(dot.contains("\"a\\\"b\\\\c\""));
    }

    #[test]
    fn output_is_deterministic() {
        let f = crate::families::make_h(1).unwrap();
        assert_eq!(frame_to_dot(&f), frame_to_dot(&f));
        // H_1: 7 degenerate clusters, 1 root, covering edges a→b{i,j} and
        // b{i,j}→c_i/c_j only (a→c covered via b).
        let dot = frame_to_dot(&f);
        assert_eq!(dot.matches("subgraph cluster_").count(), 7);
        assert_eq!(dot.lines().filter(|l| l.contains("->")).count(), 3 + 6);
    }
}
