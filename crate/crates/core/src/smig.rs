//! Recognition of SMIGs (graphs with a faithful DAG on the same nodes),
//! trivially perfect graphs, sink graphs, and graphs whose faithful DAG is
//! unique.
//!
//! A graph is a SMIG exactly when every edge lies inside a simplex. The
//! simplex of a simplicial node `v` is `Bd(v)`, so recognition only needs the
//! simplicial nodes and one subset test per edge and simplex.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Dag, Labels, MixedGraph, SimplexDecomposition, UndirectedGraph};
use crate::nodeset::{NodeSet, MAX_NODES};

/// Outcome of SMIG recognition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SmigVerdict {
    Smig(SimplexDecomposition),
    /// An edge contained in no simplex.
    NotSmig { edge: (usize, usize) },
}

impl SmigVerdict {
    pub fn is_smig(&self) -> bool {
        matches!(self, SmigVerdict::Smig(_))
    }

    pub fn decomposition(&self) -> Option<&SimplexDecomposition> {
        match self {
            SmigVerdict::Smig(d) => Some(d),
            SmigVerdict::NotSmig { .. } => None,
        }
    }

    pub fn witness(&self) -> Option<(usize, usize)> {
        match self {
            SmigVerdict::Smig(_) => None,
            SmigVerdict::NotSmig { edge } => Some(*edge),
        }
    }
}

pub fn is_smig(u: &UndirectedGraph) -> SmigVerdict {
    let decomposition = u.simplex_decomposition();
    for (a, b) in u.edges() {
        if decomposition.simplex_containing(a, b).is_none() {
            return SmigVerdict::NotSmig { edge: (a, b) };
        }
    }
    SmigVerdict::Smig(decomposition)
}

/// The simplex decomposition, or [`Error::NotSmig`] with the witness edge.
pub fn require_smig(u: &UndirectedGraph) -> Result<SimplexDecomposition> {
    match is_smig(u) {
        SmigVerdict::Smig(d) => Ok(d),
        SmigVerdict::NotSmig { edge: (a, b) } => Err(Error::NotSmig(a, b)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ForbiddenKind {
    P4,
    C4,
}

/// An induced four-node path or cycle, nodes listed in path/cycle order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ForbiddenSubgraph {
    pub kind: ForbiddenKind,
    pub nodes: [usize; 4],
}

impl fmt::Display for ForbiddenSubgraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.nodes;
        match self.kind {
            ForbiddenKind::P4 => write!(f, "P4 {a} - {b} - {c} - {d}"),
            ForbiddenKind::C4 => write!(f, "C4 {a} - {b} - {c} - {d} - {a}"),
        }
    }
}

/// First induced P4 or C4 in lexicographic order of node quadruples.
pub fn find_forbidden_subgraph(u: &UndirectedGraph) -> Option<ForbiddenSubgraph> {
    let n = u.n();
    for a in 0..n {
        for b in (a + 1)..n {
            for c in (b + 1)..n {
                for d in (c + 1)..n {
                    let quad = NodeSet::from_iter([a, b, c, d]);
                    if let Some(w) = classify_quad(u, quad) {
                        return Some(w);
                    }
                }
            }
        }
    }
    None
}

fn classify_quad(u: &UndirectedGraph, quad: NodeSet) -> Option<ForbiddenSubgraph> {
    let deg = |v: usize| u.adj(v).intersection(quad).len();
    let degrees: Vec<usize> = quad.iter().map(deg).collect();
    let edges: usize = degrees.iter().sum::<usize>() / 2;
    let kind = match edges {
        3 if degrees.iter().filter(|&&d| d == 1).count() == 2
            && degrees.iter().filter(|&&d| d == 2).count() == 2 =>
        {
            ForbiddenKind::P4
        }
        4 if degrees.iter().all(|&d| d == 2) => ForbiddenKind::C4,
        _ => return None,
    };
    let start = match kind {
        ForbiddenKind::P4 => quad.iter().find(|&v| deg(v) == 1)?,
        ForbiddenKind::C4 => quad.first()?,
    };
    // walk along the path or around the cycle
    let mut nodes = [start; 4];
    let mut prev = usize::MAX;
    let mut cur = start;
    for slot in nodes.iter_mut().skip(1) {
        let next = u
            .adj(cur)
            .intersection(quad)
            .iter()
            .filter(|&w| w != prev && w != start)
            .min()?;
        prev = cur;
        cur = next;
        *slot = cur;
    }
    Some(ForbiddenSubgraph { kind, nodes })
}

/// No induced P4 and no induced C4 (quadruple scan).
pub fn is_trivially_perfect(u: &UndirectedGraph) -> bool {
    find_forbidden_subgraph(u).is_none()
}

/// Same question answered by central-point recursion: every connected
/// piece must have a node adjacent to all others in it, and removing that
/// node must leave pieces with the same property.
pub fn is_trivially_perfect_by_central_points(u: &UndirectedGraph) -> bool {
    fn rec(u: &UndirectedGraph, within: NodeSet) -> bool {
        u.components_within(within).into_iter().all(|comp| {
            match central_point(u, comp) {
                Some(c) => rec(u, comp.without(c)),
                None => false,
            }
        })
    }
    rec(u, u.nodes())
}

/// Lowest-index node of `comp` adjacent to every other node of `comp`.
pub(crate) fn central_point(u: &UndirectedGraph, comp: NodeSet) -> Option<usize> {
    comp.iter()
        .find(|&v| comp.without(v).is_subset(u.adj(v)))
}

/// A SMIG with each edge oriented by strict boundary containment; edges
/// between nodes of equal boundary stay undirected. Edges whose endpoint
/// boundaries are incomparable are left out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SinkGraph {
    mixed: MixedGraph,
    classes: Vec<NodeSet>,
}

impl SinkGraph {
    pub fn mixed(&self) -> &MixedGraph {
        &self.mixed
    }

    pub fn n(&self) -> usize {
        self.mixed.n()
    }

    /// Classes of nodes with equal boundary, ordered by smallest member.
    /// Every class is a clique, and the undirected edges are exactly the
    /// pairs inside a class.
    pub fn classes(&self) -> &[NodeSet] {
        &self.classes
    }

    pub fn arcs(&self) -> Vec<(usize, usize)> {
        self.mixed.arcs()
    }

    pub fn undirected_edges(&self) -> Vec<(usize, usize)> {
        self.mixed.undirected_edges()
    }

    pub fn is_fully_directed(&self) -> bool {
        self.mixed.undirected_edges().is_empty()
    }
}

/// Builds the sink graph of a SMIG. Non-SMIG input is rejected with the
/// recognition witness.
pub fn sink_graph(u: &UndirectedGraph) -> Result<SinkGraph> {
    require_smig(u)?;
    Ok(sink_graph_unchecked(u))
}

pub(crate) fn sink_graph_unchecked(u: &UndirectedGraph) -> SinkGraph {
    let n = u.n();
    let mut directed = vec![NodeSet::EMPTY; n];
    let mut undirected = vec![NodeSet::EMPTY; n];
    for (a, b) in u.edges() {
        let (ba, bb) = (u.bd(a), u.bd(b));
        if ba == bb {
            undirected[a].insert(b);
            undirected[b].insert(a);
        } else if ba.is_subset(bb) {
            directed[a].insert(b);
        } else if bb.is_subset(ba) {
            directed[b].insert(a);
        }
    }
    let mut classes: Vec<NodeSet> = Vec::new();
    let mut seen = NodeSet::EMPTY;
    for (v, row) in undirected.iter().enumerate() {
        if seen.contains(v) {
            continue;
        }
        let class = row.with(v);
        seen = seen.union(class);
        classes.push(class);
    }
    SinkGraph {
        mixed: MixedGraph::from_rows_unchecked(directed, undirected).with_labels(u.labels().clone()),
        classes,
    }
}

/// True iff the SMIG `u` has exactly one faithful DAG: every simplex holds a
/// single simplicial node and the sink graph is fully directed with the
/// same arcs as the (then unique) minimal poset.
pub fn has_unique_faithful_dag(u: &UndirectedGraph) -> Result<bool> {
    let decomposition = require_smig(u)?;
    if decomposition.simplicial.iter().any(|s| s.len() != 1) {
        return Ok(false);
    }
    let sink = sink_graph_unchecked(u);
    if !sink.is_fully_directed() {
        return Ok(false);
    }
    let mut minimal = vec![NodeSet::EMPTY; u.n()];
    for s in &decomposition.simplicial {
        let i = s.first().expect("simplex has a simplicial node");
        minimal[i] = u.adj(i);
    }
    let sink_rows: Vec<NodeSet> = (0..u.n()).map(|v| sink.mixed.out_arcs(v)).collect();
    Ok(sink_rows == minimal)
}

/// Embeds `u` as an induced subgraph of a SMIG: one fresh node per edge,
/// joined to both endpoints. Returns the enlarged graph and a DAG (fresh
/// node -> each endpoint) whose marginal independence graph it is.
pub fn embed_as_induced_smig(u: &UndirectedGraph) -> Result<(UndirectedGraph, Dag)> {
    let edges = u.edges();
    let n = u.n();
    Error::check_capacity("embedded node count", n + edges.len(), MAX_NODES)?;
    let total = n + edges.len();
    let mut arcs = Vec::with_capacity(2 * edges.len());
    let mut labels: Labels = u.labels().clone();
    for (k, &(a, b)) in edges.iter().enumerate() {
        arcs.push((n + k, a));
        arcs.push((n + k, b));
        if !u.labels().is_empty() {
            labels.insert(n + k, format!("e_{}_{}", u.name(a), u.name(b)));
        }
    }
    let dag = Dag::new(total, arcs)?.with_labels(labels.clone());
    let mut rows: Vec<NodeSet> = u.rows().to_vec();
    rows.resize(total, NodeSet::EMPTY);
    for (k, &(a, b)) in edges.iter().enumerate() {
        let e = n + k;
        rows[e] = NodeSet::singleton(a).with(b);
        rows[a].insert(e);
        rows[b].insert(e);
    }
    let enlarged = UndirectedGraph::from_adjacency_unchecked(rows).with_labels(labels);
    debug_assert_eq!(dag.marginal_independence_graph(), enlarged);
    Ok((enlarged, dag))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn smig_examples() {
        assert!(is_smig(&fixtures::fig1a()).is_smig());
        let c = is_smig(&fixtures::fig1c());
        assert!(!c.is_smig());
        let (a, b) = c.witness().unwrap();
        assert!(fixtures::fig1c().has_edge(a, b));
        assert!(is_smig(&UndirectedGraph::complete(5)).is_smig());
        assert_eq!(
            is_smig(&UndirectedGraph::cycle(4)),
            SmigVerdict::NotSmig { edge: (0, 1) }
        );
        assert!(is_smig(&UndirectedGraph::empty(3)).is_smig());
    }

    #[test]
    fn trivially_perfect_examples() {
        let w = find_forbidden_subgraph(&UndirectedGraph::path(4)).unwrap();
        assert_eq!(w.kind, ForbiddenKind::P4);
        assert_eq!(w.nodes, [0, 1, 2, 3]);
        let w = find_forbidden_subgraph(&UndirectedGraph::cycle(4)).unwrap();
        assert_eq!(w.kind, ForbiddenKind::C4);
        assert_eq!(w.nodes, [0, 1, 2, 3]);
        assert!(is_trivially_perfect(&UndirectedGraph::star(3)));
        let g = fixtures::fig1a();
        let w = find_forbidden_subgraph(&g).unwrap();
        assert_eq!(w.kind, ForbiddenKind::P4);
        // the witness really is an induced path
        let [a, b, c, d] = w.nodes;
        assert!(g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(c, d));
        assert!(!g.has_edge(a, c) && !g.has_edge(b, d) && !g.has_edge(a, d));
    }

    #[test]
    fn sink_graph_examples() {
        let g = fixtures::fig1a();
        let s = sink_graph(&g).unwrap();
        let name = |(u, v): (usize, usize)| format!("{}->{}", g.name(u), g.name(v));
        let mut arcs: Vec<String> = s.arcs().into_iter().map(name).collect();
        arcs.sort();
        assert_eq!(arcs, ["a1->a2", "a1->b1", "a3->a2", "a3->b2", "c1->b1", "c1->b2"]);
        assert!(s.is_fully_directed());

        let k3 = sink_graph(&UndirectedGraph::complete(3)).unwrap();
        assert!(k3.arcs().is_empty());
        assert_eq!(k3.undirected_edges(), vec![(0, 1), (0, 2), (1, 2)]);
        assert_eq!(k3.classes(), &[NodeSet::full(3)]);

        // x=0 c=1 y=2
        let p = sink_graph(&UndirectedGraph::path(3)).unwrap();
        assert_eq!(p.arcs(), vec![(0, 1), (2, 1)]);
        assert!(p.undirected_edges().is_empty());

        assert_eq!(sink_graph(&fixtures::fig1c()).unwrap_err(), {
            let (a, b) = is_smig(&fixtures::fig1c()).witness().unwrap();
            Error::NotSmig(a, b)
        });
    }

    #[test]
    fn unique_dag_examples() {
        assert!(has_unique_faithful_dag(&UndirectedGraph::path(3)).unwrap());
        for k in 2..6 {
            assert!(has_unique_faithful_dag(&UndirectedGraph::star(k)).unwrap());
        }
        assert!(!has_unique_faithful_dag(&UndirectedGraph::complete(3)).unwrap());
        assert!(!has_unique_faithful_dag(&UndirectedGraph::complete(2)).unwrap());
        assert!(has_unique_faithful_dag(&UndirectedGraph::cycle(4)).is_err());
    }

    #[test]
    fn embedding_examples() {
        let (g, d) = embed_as_induced_smig(&UndirectedGraph::complete(3)).unwrap();
        assert_eq!((g.n(), g.edge_count(), d.arc_count()), (6, 9, 6));

        let (g, d) = embed_as_induced_smig(&UndirectedGraph::path(2)).unwrap();
        assert_eq!(g, UndirectedGraph::complete(3));
        assert_eq!(d.arcs(), vec![(2, 0), (2, 1)]);

        let c = fixtures::fig1c();
        let (g, d) = embed_as_induced_smig(&c).unwrap();
        assert_eq!(g.n(), 12);
        assert_eq!(d.marginal_independence_graph(), g);
        assert!(is_smig(&g).is_smig());
        let (restricted, _) = g.induced(NodeSet::full(c.n()));
        assert_eq!(restricted, c);
    }
}
