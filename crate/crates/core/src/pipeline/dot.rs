//! Graphviz export. P-vertices are circles, Q- and C-vertices boxes; edges
//! whose split is listed as zero-weight are dashed.

use std::fmt::Write;

use super::AnalysisReport;
use crate::splits::Split;
use crate::trees::{PcKind, PcTree, PqKind, PqNode, PqTree};

fn quote(label: &str) -> String {
    format!("\"{}\"", label.replace('\\', "\\\\").replace('"', "\\\""))
}

impl PcTree {
    /// An undirected DOT graph with leaves drawn as their labels.
    pub fn to_dot(&self, zero_weight: &[Split]) -> String {
        let n = self.taxa().len();
        let mut out = String::from("graph pctree {\n");
        for v in 0..self.vertex_count() {
            let line = match self.kind(v) {
                None => format!("  v{v} [label={}, shape=plaintext];\n", quote(self.taxa().label(v))),
                Some(PcKind::P) => format!("  v{v} [label=\"P\", shape=circle];\n"),
                Some(PcKind::C) => format!("  v{v} [label=\"C\", shape=box];\n"),
            };
            out.push_str(&line);
        }
        for (u, v) in self.edges() {
            let dashed = Split::new(self.side(u, v), n)
                .is_ok_and(|s| zero_weight.contains(&s));
            let style = if dashed { " [style=dashed]" } else { "" };
            let _ = writeln!(out, "  v{u} -- v{v}{style};");
        }
        out.push_str("}\n");
        out
    }
}

impl PqTree {
    /// A directed DOT graph from the root down, children in order.
    pub fn to_dot(&self) -> String {
        fn walk(t: &PqTree, v: &PqNode, next: &mut usize, out: &mut String) -> usize {
            let id = *next;
            *next += 1;
            let line = match v {
                PqNode::Leaf(i) => format!("  v{id} [label={}, shape=plaintext];\n", quote(t.taxa().label(*i))),
                PqNode::Internal(PqKind::P, _) => format!("  v{id} [label=\"P\", shape=circle];\n"),
                PqNode::Internal(PqKind::Q, _) => format!("  v{id} [label=\"Q\", shape=box];\n"),
            };
            out.push_str(&line);
            for c in v.children() {
                let child = walk(t, c, next, out);
                let _ = writeln!(out, "  v{id} -> v{child};");
            }
            id
        }
        let mut out = String::from("digraph pqtree {\n  ordering=out;\n");
        walk(self, self.root(), &mut 0, &mut out);
        out.push_str("}\n");
        out
    }
}

impl AnalysisReport {
    /// The best-fit tree with closure additions dashed.
    pub fn to_dot(&self) -> String {
        self.tree.to_dot(&self.closure_additions)
    }
}
