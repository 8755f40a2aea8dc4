//! Writes the derivation graph of the first reference refutation as DOT.
//!
//! Run with `cargo run --example export_trace > ref1.dot` and render with
//! `dot -Tsvg ref1.dot`.

use erue::checker::check_builtin;
use erue::dot::DerivationGraph;

fn main() {
    let report = check_builtin("ref1").expect("bundled script");
    let graph = DerivationGraph::from_report(&report);
    print!("{}", graph.to_dot());
    eprintln!("{} nodes, {} edges", graph.nodes.len(), graph.edges.len());
}
