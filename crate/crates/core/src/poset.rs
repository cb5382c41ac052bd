//! DAG and poset calculus: ancestors, transitive closure and reduction, and
//! the map from a DAG to its marginal independence graph.
//!
//! Closure is computed by pushing descendant rows backwards along a
//! topological order; the reduction keeps an arc `u -> v` of the closure only
//! when no other descendant of `u` already reaches `v`.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Dag, NodeId, UndirectedGraph};
use crate::nodeset::NodeSet;

impl Dag {
    /// Strict descendant rows: `rows[v]` holds every `w != v` reachable from `v`.
    pub fn descendant_rows(&self) -> Vec<NodeSet> {
        let mut desc = vec![NodeSet::EMPTY; self.n()];
        for &u in self.topological_order().iter().rev() {
            let mut row = NodeSet::EMPTY;
            for c in self.children(u) {
                row = row.union(desc[c]).with(c);
            }
            desc[u] = row;
        }
        desc
    }

    /// Reflexive ancestor rows: `rows[v]` holds `v` and every node reaching it.
    pub fn ancestor_rows(&self) -> Vec<NodeSet> {
        let mut anc: Vec<NodeSet> = (0..self.n()).map(NodeSet::singleton).collect();
        for u in self.topological_order() {
            for c in self.children(u) {
                anc[c] = anc[c].union(anc[u]);
            }
        }
        anc
    }

    /// All nodes with a directed path to `v`, including `v`.
    pub fn ancestors(&self, v: impl Into<NodeId>) -> Result<NodeSet> {
        let v = v.into().index();
        if v >= self.n() {
            return Err(Error::NodeOutOfRange { node: v, n: self.n() });
        }
        let mut anc = NodeSet::singleton(v);
        let mut frontier = anc;
        while let Some(w) = frontier.first() {
            frontier.remove(w);
            let fresh = self.parents(w).difference(anc);
            anc = anc.union(fresh);
            frontier = frontier.union(fresh);
        }
        Ok(anc)
    }

    /// `u -> v` for every `u != v` with a directed path `u ~> v`.
    pub fn transitive_closure(&self) -> Dag {
        Dag::from_children_unchecked(self.descendant_rows()).with_labels(self.labels().clone())
    }

    /// The unique smallest arc set with the same closure.
    pub fn transitive_reduction(&self) -> Dag {
        Dag::from_children_unchecked(reduce_closure(&self.descendant_rows()))
            .with_labels(self.labels().clone())
    }

    pub fn is_atransitive(&self) -> bool {
        let desc = self.descendant_rows();
        (0..self.n()).all(|u| {
            let ch = self.children(u);
            ch.iter().all(|c| !desc[c].intersects(ch))
        })
    }

    pub fn is_transitively_closed(&self) -> bool {
        self.child_rows() == self.descendant_rows().as_slice()
    }

    /// Undirected graph joining every pair of nodes with a common ancestor.
    pub fn marginal_independence_graph(&self) -> UndirectedGraph {
        let anc = self.ancestor_rows();
        let n = self.n();
        let mut rows = vec![NodeSet::EMPTY; n];
        for v in 0..n {
            for w in (v + 1)..n {
                if anc[v].intersects(anc[w]) {
                    rows[v].insert(w);
                    rows[w].insert(v);
                }
            }
        }
        UndirectedGraph::from_adjacency_unchecked(rows).with_labels(self.labels().clone())
    }

    /// The marginal independence graph is unchanged by taking the closure.
    pub fn closure_invariance_check(&self) -> bool {
        self.marginal_independence_graph() == self.transitive_closure().marginal_independence_graph()
    }

    /// Length (in arcs) of a longest directed path.
    pub fn height(&self) -> usize {
        let mut depth = vec![0usize; self.n()];
        let mut best = 0;
        for u in self.topological_order() {
            for c in self.children(u) {
                depth[c] = depth[c].max(depth[u] + 1);
                best = best.max(depth[c]);
            }
        }
        best
    }
}

/// Reduction of a transitively closed relation given by strict descendant rows.
pub(crate) fn reduce_closure(desc: &[NodeSet]) -> Vec<NodeSet> {
    desc.iter()
        .map(|&row| {
            let implied = row.iter().fold(NodeSet::EMPTY, |acc, w| acc.union(desc[w]));
            row.difference(implied)
        })
        .collect()
}

/// A partial order, stored as its transitive reduction (Hasse diagram).
///
/// Two posets are equal when their reductions have the same arcs; labels do
/// not take part.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poset {
    reduction: Dag,
}

impl Poset {
    /// The poset generated by the reachability relation of `dag`.
    pub fn from_dag(dag: &Dag) -> Poset {
        Poset {
            reduction: dag.transitive_reduction(),
        }
    }

    /// Wraps a DAG that is already atransitive.
    pub fn from_reduction(reduction: Dag) -> Result<Poset> {
        if !reduction.is_atransitive() {
            return Err(Error::Inconsistent("arc set contains a transitive arc".into()));
        }
        Ok(Poset { reduction })
    }

    pub(crate) fn from_reduction_unchecked(reduction: Dag) -> Poset {
        debug_assert!(reduction.is_atransitive());
        Poset { reduction }
    }

    pub fn n(&self) -> usize {
        self.reduction.n()
    }

    pub fn reduction(&self) -> &Dag {
        &self.reduction
    }

    pub fn into_reduction(self) -> Dag {
        self.reduction
    }

    pub fn closure(&self) -> Dag {
        self.reduction.transitive_closure()
    }

    pub fn height(&self) -> usize {
        self.reduction.height()
    }

    /// Bound graph: nodes joined when they share a lower bound.
    pub fn bound_graph(&self) -> UndirectedGraph {
        self.reduction.marginal_independence_graph()
    }

    pub fn with_labels(self, labels: crate::graph::Labels) -> Poset {
        Poset {
            reduction: self.reduction.with_labels(labels),
        }
    }
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poset(n={}, hasse={:?})", self.n(), self.reduction.arcs())
    }
}

/// An atransitive DAG under construction, one arc at a time.
///
/// Keeps strict descendant and ancestor rows so that each insertion is
/// checked for cycles and newly transitive arcs without a full recompute.
#[derive(Clone, Debug)]
pub(crate) struct AtransitiveBuilder {
    children: Vec<NodeSet>,
    desc: Vec<NodeSet>,
    anc: Vec<NodeSet>,
}

impl AtransitiveBuilder {
    pub fn new(n: usize) -> Self {
        AtransitiveBuilder {
            children: vec![NodeSet::EMPTY; n],
            desc: vec![NodeSet::EMPTY; n],
            anc: vec![NodeSet::EMPTY; n],
        }
    }

    /// Whether adding `a -> b` keeps the graph acyclic and atransitive.
    pub fn can_add(&self, a: usize, b: usize) -> bool {
        if a == b || self.desc[a].contains(b) || self.desc[b].contains(a) {
            return false;
        }
        let below_b = self.desc[b].with(b);
        self.anc[a]
            .with(a)
            .iter()
            .all(|x| !self.children[x].intersects(below_b))
    }

    pub fn add(&mut self, a: usize, b: usize) {
        debug_assert!(self.can_add(a, b));
        let above_a = self.anc[a].with(a);
        let below_b = self.desc[b].with(b);
        for x in above_a {
            self.desc[x] = self.desc[x].union(below_b);
        }
        for y in below_b {
            self.anc[y] = self.anc[y].union(above_a);
        }
        self.children[a].insert(b);
    }

    #[cfg(test)]
    pub fn children(&self) -> &[NodeSet] {
        &self.children
    }

    pub fn descendants(&self) -> &[NodeSet] {
        &self.desc
    }
}

/// An acyclic DAG under construction (transitive arcs allowed).
#[derive(Clone, Debug)]
pub(crate) struct AcyclicBuilder {
    children: Vec<NodeSet>,
    desc: Vec<NodeSet>,
    anc: Vec<NodeSet>,
}

impl AcyclicBuilder {
    pub fn new(n: usize) -> Self {
        AcyclicBuilder {
            children: vec![NodeSet::EMPTY; n],
            desc: vec![NodeSet::EMPTY; n],
            anc: vec![NodeSet::EMPTY; n],
        }
    }

    pub fn can_add(&self, a: usize, b: usize) -> bool {
        a != b && !self.desc[b].contains(a) && !self.children[a].contains(b)
    }

    pub fn add(&mut self, a: usize, b: usize) {
        debug_assert!(self.can_add(a, b));
        let above_a = self.anc[a].with(a);
        let below_b = self.desc[b].with(b);
        for x in above_a {
            self.desc[x] = self.desc[x].union(below_b);
        }
        for y in below_b {
            self.anc[y] = self.anc[y].union(above_a);
        }
        self.children[a].insert(b);
    }

    pub fn children(&self) -> &[NodeSet] {
        &self.children
    }

    pub fn descendants(&self) -> &[NodeSet] {
        &self.desc
    }
}
