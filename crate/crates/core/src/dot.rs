//! Graphviz exports of the solver graphs.

use std::fmt::Write;

use crate::error::Result;
use crate::eulerian::{AddedEdgeSet, SlotMultiDigraph};
use crate::pathcover::{BipartiteSplit, IntervalDigraph};
use crate::twolevel::{penalty_edges, AuxAssignment, TwoLevelGraph};

/// Job multigraph on slots; added edges are dashed.
pub fn job_graph_dot(graph: &SlotMultiDigraph, added: &AddedEdgeSet) -> String {
    let mut out = String::from("digraph jobs {\n  rankdir=LR;\n");
    for s in graph.vertices() {
        writeln!(out, "  s{s} [label=\"{s}\"];").unwrap();
    }
    for e in graph.edges() {
        writeln!(out, "  s{} -> s{} [label=\"j{}\"];", e.from, e.to, e.job).unwrap();
    }
    for a in &added.edges {
        writeln!(
            out,
            "  s{} -> s{} [style=dashed, label=\"{:?}\"];",
            a.from, a.to, a.role
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

/// Two-level graph: job edges solid, auxiliary edges dashed and penalty
/// edges dotted red. Without an assignment only job edges are drawn.
pub fn two_level_dot(graph: &TwoLevelGraph, assignment: Option<&AuxAssignment>) -> Result<String> {
    let mut out = String::from("digraph two_level {\n  rankdir=TB;\n");
    out.push_str("  { rank=same;");
    for s in graph.slots() {
        write!(out, " a{s};").unwrap();
    }
    out.push_str(" }\n  { rank=same;");
    for s in graph.slots() {
        write!(out, " b{s};").unwrap();
    }
    out.push_str(" }\n");
    for e in graph.edges() {
        writeln!(
            out,
            "  a{} -> b{} [label=\"j{}\"];",
            e.origin, e.dest, e.job
        )
        .unwrap();
    }
    if let Some(assignment) = assignment {
        for e in graph.edges() {
            if let Some(y) = assignment.get(e.job) {
                writeln!(out, "  b{} -> a{y} [style=dashed];", e.dest).unwrap();
            }
        }
        for (u, v) in penalty_edges(graph, assignment)? {
            writeln!(out, "  a{u} -> a{v} [style=dotted, color=red];").unwrap();
        }
    }
    out.push_str("}\n");
    Ok(out)
}

/// Interval digraph on jobs, labelled with origin and destination.
pub fn interval_dot(digraph: &IntervalDigraph) -> String {
    let mut out = String::from("digraph interval {\n");
    for (v, job) in digraph.instance().jobs().iter().enumerate() {
        writeln!(
            out,
            "  j{v} [label=\"j{v} ({}, {})\"];",
            job.origin, job.dest
        )
        .unwrap();
    }
    for (u, v) in digraph.edges() {
        writeln!(out, "  j{u} -> j{v};").unwrap();
    }
    out.push_str("}\n");
    out
}

/// Bipartite split with matching edges in bold.
pub fn bipartite_dot(split: &BipartiteSplit) -> String {
    let mut out = String::from("digraph bipartite {\n  rankdir=LR;\n");
    let n = split.side_len();
    out.push_str("  { rank=same;");
    for v in 0..n {
        write!(out, " x{v};").unwrap();
    }
    out.push_str(" }\n  { rank=same;");
    for v in 0..n {
        write!(out, " y{v};").unwrap();
    }
    out.push_str(" }\n");
    let matched = split.matching();
    for (u, v) in split.edges() {
        let style = if matched.contains(&(u, v)) {
            " [style=bold]"
        } else {
            ""
        };
        writeln!(out, "  x{u} -> y{v}{style};").unwrap();
    }
    out.push_str("}\n");
    out
}
