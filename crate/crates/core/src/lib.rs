//! Faithful DAGs and posets for marginal independence graphs.
//!
//! An undirected graph whose missing edges are pairwise marginal
//! independencies is explained by a DAG on the same nodes when two nodes are
//! adjacent exactly if they share a common ancestor. Graphs admitting such a
//! DAG are called SMIGs. This crate
//!
//! * recognizes SMIGs and trivially perfect graphs ([`smig`]),
//! * computes transitive closures, reductions and marginal independence
//!   graphs of DAGs ([`poset`]),
//! * enumerates minimal, maximal and all faithful posets, faithful DAGs and
//!   compact DAG patterns, and builds tree posets ([`enumerate`]),
//! * explains non-SMIGs with auxiliary latent nodes via edge clique covers
//!   ([`latent`]),
//! * reproduces isomorphism-reduced and labeled census counts ([`census`]),
//! * and cross-checks all of the above against exhaustive search
//!   ([`oracle`]).
//!
//! ```
//! use smig::{fixtures, enumerate::faithful_posets, smig::is_smig};
//!
//! let g = fixtures::fig6a();
//! assert!(is_smig(&g).is_smig());
//! assert_eq!(faithful_posets(&g)?.len(), 6);
//! # Ok::<(), smig::Error>(())
//! ```
//!
//! Graphs hold at most [`MAX_NODES`] nodes.

pub mod canon;
pub mod census;
pub mod cli;
pub mod enumerate;
mod error;
pub mod fixtures;
pub mod graph;
pub mod io;
pub mod latent;
mod nodeset;
pub mod oracle;
pub mod poset;
pub mod smig;

pub use error::{Error, Result};
pub use graph::{Dag, Labels, MixedGraph, NodeId, SimplexDecomposition, UndirectedGraph};
pub use nodeset::{NodeSet, MAX_NODES};
pub use poset::Poset;

// The guide's code listings run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/graphs.md")]
    mod graphs {}
    #[doc = include_str!("../../../book/src/posets.md")]
    mod posets {}
    #[doc = include_str!("../../../book/src/recognition.md")]
    mod recognition {}
    #[doc = include_str!("../../../book/src/enumeration.md")]
    mod enumeration {}
    #[doc = include_str!("../../../book/src/latent.md")]
    mod latent {}
    #[doc = include_str!("../../../book/src/census.md")]
    mod census {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
