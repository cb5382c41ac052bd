//! Small example graphs shipped with the crate, in edge-list format.
//!
//! The files live in `crates/core/fixtures/` and are embedded at compile
//! time, so the same graphs back the unit tests, the guide and the CLI
//! golden tests.

use crate::graph::UndirectedGraph;
use crate::io::{parse_graph, Format};

pub const FIG1A: &str = include_str!("../fixtures/fig1a.txt");
pub const FIG1C: &str = include_str!("../fixtures/fig1c.txt");
pub const FIG3A: &str = include_str!("../fixtures/fig3a.txt");
pub const FIG4A: &str = include_str!("../fixtures/fig4a.txt");
pub const FIG6A: &str = include_str!("../fixtures/fig6a.txt");

fn load(text: &str) -> UndirectedGraph {
    parse_graph(text, Format::EdgeList).expect("bundled fixture parses")
}

/// Six nodes `a1 a2 a3 b1 b2 c1`, nine edges; a SMIG with a unique
/// faithful DAG whose skeleton differs from the graph.
pub fn fig1a() -> UndirectedGraph {
    load(FIG1A)
}

/// Five nodes `a1 a2 b1 b2 c1`, seven edges; not a SMIG.
pub fn fig1c() -> UndirectedGraph {
    load(FIG1C)
}

/// Five nodes `a..e`; simplicial nodes `a`, `d`, `e`.
pub fn fig3a() -> UndirectedGraph {
    load(FIG3A)
}

/// Five nodes `a..e`; simplicial nodes `a`, `c`, with `b`, `d`, `e`
/// sharing one boundary.
pub fn fig4a() -> UndirectedGraph {
    load(FIG4A)
}

/// Eight nodes `v1..v8`, seventeen edges, six faithful posets.
pub fn fig6a() -> UndirectedGraph {
    load(FIG6A)
}
