//! Graph types shared by every other module.
//!
//! All graphs are immutable once built. Node indices are dense (`0..n`) and
//! adjacency is stored as one [`NodeSet`] row per node, which keeps clique
//! tests and boundary containment checks to a handful of word operations.
//! Optional string labels travel with a graph but never take part in
//! equality, hashing or ordering.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::nodeset::{NodeSet, MAX_NODES};

/// Dense node index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(pub usize);

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl From<usize> for NodeId {
    fn from(v: usize) -> Self {
        NodeId(v)
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Node labels keyed by index.
pub type Labels = BTreeMap<usize, String>;

fn check_node_count(n: usize) -> Result<()> {
    Error::check_capacity("node count", n, MAX_NODES)
}

fn check_node(v: usize, n: usize) -> Result<()> {
    if v < n {
        Ok(())
    } else {
        Err(Error::NodeOutOfRange { node: v, n })
    }
}

fn name_of(labels: &Labels, v: usize) -> String {
    labels.get(&v).cloned().unwrap_or_else(|| v.to_string())
}

/// Simple undirected graph; in this crate usually a marginal independence
/// graph whose missing edges are the pairwise independencies.
#[derive(Clone)]
pub struct UndirectedGraph {
    adj: Vec<NodeSet>,
    labels: Labels,
}

impl UndirectedGraph {
    /// Builds a graph on `n` nodes. Self-loops and repeated edges (in either
    /// orientation) are rejected.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        check_node_count(n)?;
        let mut adj = vec![NodeSet::EMPTY; n];
        for (u, v) in edges {
            check_node(u, n)?;
            check_node(v, n)?;
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if adj[u].contains(v) {
                return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
            }
            adj[u].insert(v);
            adj[v].insert(u);
        }
        Ok(UndirectedGraph {
            adj,
            labels: Labels::new(),
        })
    }

    /// Builds a graph from adjacency rows, checking symmetry and loops.
    pub fn from_adjacency(rows: Vec<NodeSet>) -> Result<Self> {
        check_node_count(rows.len())?;
        let n = rows.len();
        let all = NodeSet::full(n);
        for (u, &row) in rows.iter().enumerate() {
            if row.contains(u) {
                return Err(Error::SelfLoop(u));
            }
            if !row.is_subset(all) {
                let bad = row.difference(all).first().unwrap_or(n);
                return Err(Error::NodeOutOfRange { node: bad, n });
            }
            for v in row {
                if !rows[v].contains(u) {
                    return Err(Error::Inconsistent(format!(
                        "adjacency is not symmetric at {u} - {v}"
                    )));
                }
            }
        }
        Ok(Self::from_adjacency_unchecked(rows))
    }

    pub(crate) fn from_adjacency_unchecked(adj: Vec<NodeSet>) -> Self {
        UndirectedGraph {
            adj,
            labels: Labels::new(),
        }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_adjacency_unchecked(vec![NodeSet::EMPTY; n])
    }

    pub fn complete(n: usize) -> Self {
        let all = NodeSet::full(n);
        Self::from_adjacency_unchecked((0..n).map(|v| all.without(v)).collect())
    }

    /// Path `0 - 1 - .. - (n-1)`.
    pub fn path(n: usize) -> Self {
        Self::new(n, (1..n).map(|v| (v - 1, v))).expect("path is simple")
    }

    /// Cycle on `n >= 3` nodes.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least three nodes");
        Self::new(n, (0..n).map(|v| (v, (v + 1) % n))).expect("cycle is simple")
    }

    /// Star with center `0` and `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        Self::new(leaves + 1, (1..=leaves).map(|v| (0, v))).expect("star is simple")
    }

    pub fn with_labels(mut self, labels: Labels) -> Self {
        self.labels = labels;
        self
    }

    pub fn labels(&self) -> &Labels {
        &self.labels
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels.get(&v).map(String::as_str)
    }

    /// Label if present, otherwise the index.
    pub fn name(&self, v: usize) -> String {
        name_of(&self.labels, v)
    }

    /// Index of the node carrying `label`.
    pub fn node_by_label(&self, label: &str) -> Option<usize> {
        self.labels
            .iter()
            .find_map(|(&v, l)| (l == label).then_some(v))
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn nodes(&self) -> NodeSet {
        NodeSet::full(self.n())
    }

    /// Adjacency row of `v` (no range check).
    #[inline]
    pub fn adj(&self, v: usize) -> NodeSet {
        self.adj[v]
    }

    pub fn rows(&self) -> &[NodeSet] {
        &self.adj
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].contains(v)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.len()).sum::<usize>() / 2
    }

    /// Edges as `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n() {
            for v in self.adj[u].iter().filter(|&v| v > u) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighborhood(&self, v: impl Into<NodeId>) -> Result<NodeSet> {
        let v = v.into().index();
        check_node(v, self.n())?;
        Ok(self.adj[v])
    }

    /// Closed neighborhood `N(v) ∪ {v}`.
    pub fn boundary(&self, v: impl Into<NodeId>) -> Result<NodeSet> {
        let v = v.into().index();
        check_node(v, self.n())?;
        Ok(self.bd(v))
    }

    #[inline]
    pub(crate) fn bd(&self, v: usize) -> NodeSet {
        self.adj[v].with(v)
    }

    /// A node is simplicial when its boundary is a clique.
    pub fn is_simplicial(&self, v: impl Into<NodeId>) -> Result<bool> {
        let v = v.into().index();
        check_node(v, self.n())?;
        let by_clique = self.is_clique(self.bd(v));
        debug_assert_eq!(by_clique, self.simplicial_by_containment(v));
        Ok(by_clique)
    }

    /// Second characterization: `Bd(v) ⊆ Bd(w)` for every neighbor `w`.
    pub fn simplicial_by_containment(&self, v: usize) -> bool {
        let bv = self.bd(v);
        self.adj[v].iter().all(|w| bv.is_subset(self.bd(w)))
    }

    pub fn is_clique(&self, set: NodeSet) -> bool {
        set.iter().all(|v| set.without(v).is_subset(self.adj[v]))
    }

    pub fn simplicial_nodes(&self) -> NodeSet {
        (0..self.n()).filter(|&v| self.is_clique(self.bd(v))).collect()
    }

    /// Simplexes (maximal cliques holding at least one simplicial node),
    /// ordered by their smallest simplicial node.
    pub fn simplex_decomposition(&self) -> SimplexDecomposition {
        let mut simplexes: Vec<NodeSet> = Vec::new();
        let mut simplicial: Vec<NodeSet> = Vec::new();
        for v in self.simplicial_nodes() {
            let bd = self.bd(v);
            match simplexes.iter().position(|&s| s == bd) {
                Some(k) => simplicial[k].insert(v),
                None => {
                    simplexes.push(bd);
                    simplicial.push(NodeSet::singleton(v));
                }
            }
        }
        SimplexDecomposition {
            simplexes,
            simplicial,
        }
    }

    pub fn connected_components(&self) -> Vec<NodeSet> {
        let mut seen = NodeSet::EMPTY;
        let mut out = Vec::new();
        for s in 0..self.n() {
            if seen.contains(s) {
                continue;
            }
            let comp = self.component_of(s, self.nodes());
            seen = seen.union(comp);
            out.push(comp);
        }
        out
    }

    /// Component of `s` in the subgraph induced by `within`.
    pub(crate) fn component_of(&self, s: usize, within: NodeSet) -> NodeSet {
        let mut comp = NodeSet::singleton(s);
        let mut frontier = comp;
        while let Some(v) = frontier.first() {
            frontier.remove(v);
            let fresh = self.adj[v].intersection(within).difference(comp);
            comp = comp.union(fresh);
            frontier = frontier.union(fresh);
        }
        comp
    }

    /// Components of the subgraph induced by `within`.
    pub(crate) fn components_within(&self, within: NodeSet) -> Vec<NodeSet> {
        let mut rest = within;
        let mut out = Vec::new();
        while let Some(s) = rest.first() {
            let comp = self.component_of(s, within);
            rest = rest.difference(comp);
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n() == 0 || self.component_of(0, self.nodes()) == self.nodes()
    }

    /// All maximal cliques, via Bron–Kerbosch with Tomita pivoting.
    pub fn maximal_cliques(&self) -> Vec<NodeSet> {
        let mut out = Vec::new();
        self.bron_kerbosch(NodeSet::EMPTY, self.nodes(), NodeSet::EMPTY, &mut out);
        out.sort();
        out
    }

    fn bron_kerbosch(&self, r: NodeSet, mut p: NodeSet, mut x: NodeSet, out: &mut Vec<NodeSet>) {
        if p.is_empty() {
            if x.is_empty() {
                out.push(r);
            }
            return;
        }
        let pivot = p
            .union(x)
            .iter()
            .max_by_key(|&u| p.intersection(self.adj[u]).len())
            .expect("p is non-empty");
        for v in p.difference(self.adj[pivot]) {
            let nv = self.adj[v];
            self.bron_kerbosch(r.with(v), p.intersection(nv), x.intersection(nv), out);
            p.remove(v);
            x.insert(v);
        }
    }

    /// Subgraph induced by `set`, with nodes renumbered in ascending order.
    /// Returns the graph and the original index of each new node.
    pub fn induced(&self, set: NodeSet) -> (UndirectedGraph, Vec<usize>) {
        let map: Vec<usize> = set.to_vec();
        let mut inv = [usize::MAX; MAX_NODES];
        for (i, &v) in map.iter().enumerate() {
            inv[v] = i;
        }
        let rows = map
            .iter()
            .map(|&v| self.adj[v].intersection(set).iter().map(|w| inv[w]).collect())
            .collect();
        let labels = map
            .iter()
            .enumerate()
            .filter_map(|(i, v)| self.labels.get(v).map(|l| (i, l.clone())))
            .collect();
        (
            UndirectedGraph::from_adjacency_unchecked(rows).with_labels(labels),
            map,
        )
    }

    /// Relabels node `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> UndirectedGraph {
        assert_eq!(perm.len(), self.n());
        let mut rows = vec![NodeSet::EMPTY; self.n()];
        for u in 0..self.n() {
            rows[perm[u]] = self.adj[u].iter().map(|v| perm[v]).collect();
        }
        UndirectedGraph::from_adjacency_unchecked(rows)
    }
}

impl PartialEq for UndirectedGraph {
    fn eq(&self, other: &Self) -> bool {
        self.adj == other.adj
    }
}

impl Eq for UndirectedGraph {}

impl Hash for UndirectedGraph {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.adj.hash(state);
    }
}

impl fmt::Debug for UndirectedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UndirectedGraph(n={}, edges={:?})", self.n(), self.edges())
    }
}

/// Simplexes of a graph and the simplicial nodes inside each.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplexDecomposition {
    pub simplexes: Vec<NodeSet>,
    /// `simplicial[k]` are the simplicial nodes of `simplexes[k]`.
    pub simplicial: Vec<NodeSet>,
}

impl SimplexDecomposition {
    pub fn len(&self) -> usize {
        self.simplexes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplexes.is_empty()
    }

    /// Index of the simplex containing both endpoints, if any.
    pub fn simplex_containing(&self, u: usize, v: usize) -> Option<usize> {
        let pair = NodeSet::singleton(u).with(v);
        self.simplexes.iter().position(|s| pair.is_subset(*s))
    }

    /// Number of ways to pick one simplicial node per simplex.
    pub fn selection_count(&self) -> u128 {
        self.simplicial.iter().map(|s| s.len() as u128).product()
    }
}

/// Directed acyclic graph. Acyclicity is checked on construction.
#[derive(Clone)]
pub struct Dag {
    children: Vec<NodeSet>,
    labels: Labels,
}

impl Dag {
    pub fn new<I>(n: usize, arcs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        check_node_count(n)?;
        let mut children = vec![NodeSet::EMPTY; n];
        for (u, v) in arcs {
            check_node(u, n)?;
            check_node(v, n)?;
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if children[u].contains(v) {
                return Err(Error::DuplicateArc(u, v));
            }
            children[u].insert(v);
        }
        Self::from_children(children)
    }

    pub fn from_children(children: Vec<NodeSet>) -> Result<Self> {
        check_node_count(children.len())?;
        let n = children.len();
        for (u, row) in children.iter().enumerate() {
            if row.contains(u) {
                return Err(Error::SelfLoop(u));
            }
            if let Some(bad) = row.difference(NodeSet::full(n)).first() {
                return Err(Error::NodeOutOfRange { node: bad, n });
            }
        }
        let dag = Self::from_children_unchecked(children);
        match dag.find_cycle_node() {
            Some(v) => Err(Error::Cycle(v)),
            None => Ok(dag),
        }
    }

    pub(crate) fn from_children_unchecked(children: Vec<NodeSet>) -> Self {
        Dag {
            children,
            labels: Labels::new(),
        }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_children_unchecked(vec![NodeSet::EMPTY; n])
    }

    pub fn with_labels(mut self, labels: Labels) -> Self {
        self.labels = labels;
        self
    }

    pub fn labels(&self) -> &Labels {
        &self.labels
    }

    pub fn name(&self, v: usize) -> String {
        name_of(&self.labels, v)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.children.len()
    }

    #[inline]
    pub fn children(&self, v: usize) -> NodeSet {
        self.children[v]
    }

    pub fn child_rows(&self) -> &[NodeSet] {
        &self.children
    }

    pub fn parents(&self, v: usize) -> NodeSet {
        (0..self.n()).filter(|&u| self.children[u].contains(v)).collect()
    }

    #[inline]
    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.children[u].contains(v)
    }

    pub fn arc_count(&self) -> usize {
        self.children.iter().map(|r| r.len()).sum()
    }

    /// Arcs sorted lexicographically.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.arc_count());
        for (u, row) in self.children.iter().enumerate() {
            out.extend(row.iter().map(|v| (u, v)));
        }
        out
    }

    /// Returns a node on a directed cycle, if there is one.
    fn find_cycle_node(&self) -> Option<usize> {
        let order = self.kahn_order();
        if order.len() == self.n() {
            return None;
        }
        let placed: NodeSet = order.into_iter().collect();
        NodeSet::full(self.n()).difference(placed).first()
    }

    fn kahn_order(&self) -> Vec<usize> {
        let n = self.n();
        let mut indeg = vec![0usize; n];
        for row in &self.children {
            for v in *row {
                indeg[v] += 1;
            }
        }
        let mut ready: NodeSet = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(u) = ready.first() {
            ready.remove(u);
            order.push(u);
            for v in self.children[u] {
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    ready.insert(v);
                }
            }
        }
        order
    }

    /// Topological order, smallest available index first.
    pub fn topological_order(&self) -> Vec<usize> {
        self.kahn_order()
    }

    /// Undirected skeleton.
    pub fn skeleton(&self) -> UndirectedGraph {
        let mut rows = self.children.clone();
        for u in 0..self.n() {
            for v in self.children[u] {
                rows[v].insert(u);
            }
        }
        UndirectedGraph::from_adjacency_unchecked(rows).with_labels(self.labels.clone())
    }

    /// Every arc of `self` is an arc of `other`.
    pub fn is_subgraph_of(&self, other: &Dag) -> bool {
        self.n() == other.n()
            && self
                .children
                .iter()
                .zip(&other.children)
                .all(|(a, b)| a.is_subset(*b))
    }
}

impl PartialEq for Dag {
    fn eq(&self, other: &Self) -> bool {
        self.children == other.children
    }
}

impl Eq for Dag {}

impl Hash for Dag {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.children.hash(state);
    }
}

impl PartialOrd for Dag {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dag {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.n()
            .cmp(&other.n())
            .then_with(|| self.arcs().cmp(&other.arcs()))
    }
}

impl fmt::Debug for Dag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Dag(n={}, arcs={:?})", self.n(), self.arcs())
    }
}

/// Graph carrying both directed and undirected edges, at most one per pair.
#[derive(Clone, PartialEq, Eq)]
pub struct MixedGraph {
    directed: Vec<NodeSet>,
    undirected: Vec<NodeSet>,
    labels: Labels,
}

impl MixedGraph {
    pub fn new<A, E>(n: usize, arcs: A, edges: E) -> Result<Self>
    where
        A: IntoIterator<Item = (usize, usize)>,
        E: IntoIterator<Item = (usize, usize)>,
    {
        check_node_count(n)?;
        let mut directed = vec![NodeSet::EMPTY; n];
        let mut undirected = vec![NodeSet::EMPTY; n];
        let occupied =
            |d: &[NodeSet], un: &[NodeSet], u: usize, v: usize| d[u].contains(v) || d[v].contains(u) || un[u].contains(v);
        for (u, v) in arcs {
            check_node(u, n)?;
            check_node(v, n)?;
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if occupied(&directed, &undirected, u, v) {
                return Err(Error::ConflictingEdge(u, v));
            }
            directed[u].insert(v);
        }
        for (u, v) in edges {
            check_node(u, n)?;
            check_node(v, n)?;
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if occupied(&directed, &undirected, u, v) {
                return Err(Error::ConflictingEdge(u, v));
            }
            undirected[u].insert(v);
            undirected[v].insert(u);
        }
        Ok(MixedGraph {
            directed,
            undirected,
            labels: Labels::new(),
        })
    }

    pub(crate) fn from_rows_unchecked(directed: Vec<NodeSet>, undirected: Vec<NodeSet>) -> Self {
        MixedGraph {
            directed,
            undirected,
            labels: Labels::new(),
        }
    }

    pub fn with_labels(mut self, labels: Labels) -> Self {
        self.labels = labels;
        self
    }

    pub fn labels(&self) -> &Labels {
        &self.labels
    }

    pub fn name(&self, v: usize) -> String {
        name_of(&self.labels, v)
    }

    pub fn n(&self) -> usize {
        self.directed.len()
    }

    pub fn out_arcs(&self, v: usize) -> NodeSet {
        self.directed[v]
    }

    pub fn undirected_neighbors(&self, v: usize) -> NodeSet {
        self.undirected[v]
    }

    pub fn arcs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (u, row) in self.directed.iter().enumerate() {
            out.extend(row.iter().map(|v| (u, v)));
        }
        out
    }

    /// Undirected edges as `(u, v)` with `u < v`.
    pub fn undirected_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (u, row) in self.undirected.iter().enumerate() {
            out.extend(row.iter().filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.directed[u].contains(v)
    }

    pub fn has_undirected(&self, u: usize, v: usize) -> bool {
        self.undirected[u].contains(v)
    }

    pub fn skeleton(&self) -> UndirectedGraph {
        let mut rows = self.undirected.clone();
        for u in 0..self.n() {
            rows[u] = rows[u].union(self.directed[u]);
            for v in self.directed[u] {
                rows[v].insert(u);
            }
        }
        UndirectedGraph::from_adjacency_unchecked(rows).with_labels(self.labels.clone())
    }

    /// The directed part alone.
    pub fn directed_part(&self) -> Result<Dag> {
        Dag::from_children(self.directed.clone())
    }
}

impl fmt::Debug for MixedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "MixedGraph(n={}, arcs={:?}, undirected={:?})",
            self.n(),
            self.arcs(),
            self.undirected_edges()
        )
    }
}
