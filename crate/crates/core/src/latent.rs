//! Auxiliary (latent) nodes for graphs that are not SMIGs.
//!
//! A DAG over `V ∪ Q` explains `u` on `V` when two observed nodes are
//! adjacent in `u` exactly if they share an ancestor. Every edge clique
//! cover `C_1..C_k` of `u` gives such a DAG with one source `q_j -> C_j` per
//! clique, so the minimum number of auxiliaries is at most the minimum cover
//! size. For graphs built by [`hardness_gadget`] the two numbers coincide.

use std::fmt;

use crate::enumerate::minimal_posets;
use crate::error::{Error, Result};
use crate::graph::{Dag, UndirectedGraph};
use crate::nodeset::{NodeSet, MAX_NODES};
use crate::smig::is_smig;

/// Largest graph the exact cover solver accepts.
pub const EXACT_COVER_LIMIT: usize = 20;

/// Largest graph [`min_auxiliary_bruteforce`] accepts.
pub const BRUTEFORCE_LIMIT: usize = 8;

/// A DAG over observed nodes `0..n` followed by auxiliary nodes `n..n + q`.
#[derive(Clone, PartialEq, Eq)]
pub struct AugmentedDag {
    pub dag: Dag,
    pub observed: NodeSet,
    pub auxiliary: NodeSet,
}

impl AugmentedDag {
    pub fn auxiliary_count(&self) -> usize {
        self.auxiliary.len()
    }

    /// Marginal independence graph of the whole DAG restricted to the
    /// observed nodes.
    pub fn observed_graph(&self) -> UndirectedGraph {
        let mig = self.dag.marginal_independence_graph();
        let rows = self
            .observed
            .iter()
            .map(|v| mig.adj(v).intersection(self.observed))
            .collect();
        UndirectedGraph::from_adjacency_unchecked(rows)
    }

    pub fn is_faithful_to(&self, u: &UndirectedGraph) -> bool {
        self.observed.len() == u.n() && self.observed_graph() == *u
    }
}

impl fmt::Debug for AugmentedDag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AugmentedDag")
            .field("observed", &self.observed.len())
            .field("arcs", &self.dag.arcs())
            .finish()
    }
}

/// A set of cliques jointly containing every edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueCover {
    pub cliques: Vec<NodeSet>,
}

impl CliqueCover {
    pub fn len(&self) -> usize {
        self.cliques.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cliques.is_empty()
    }

    /// `Ok` iff every set is a clique of `u` and every edge lies in one.
    pub fn validate(&self, u: &UndirectedGraph) -> Result<()> {
        for (j, &c) in self.cliques.iter().enumerate() {
            if c.iter().any(|v| v >= u.n()) {
                return Err(Error::InvalidCover(format!("clique {j} has a node out of range")));
            }
            if !u.is_clique(c) {
                return Err(Error::InvalidCover(format!("set {j} {:?} is not a clique", c.to_vec())));
            }
        }
        for (a, b) in u.edges() {
            if !self.cliques.iter().any(|c| c.contains(a) && c.contains(b)) {
                return Err(Error::InvalidCover(format!("edge {a} - {b} is not covered")));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoverMode {
    Exact,
    Greedy,
}

/// `u` plus a pendant node `w_i = n + i` attached to each `v_i`.
pub fn hardness_gadget(u: &UndirectedGraph) -> UndirectedGraph {
    let n = u.n();
    let mut rows: Vec<NodeSet> = u.rows().to_vec();
    rows.extend((0..n).map(NodeSet::singleton));
    for (v, row) in rows.iter_mut().enumerate().take(n) {
        row.insert(n + v);
    }
    let mut labels = u.labels().clone();
    if !labels.is_empty() {
        for v in 0..n {
            labels.insert(n + v, format!("w_{}", u.name(v)));
        }
    }
    UndirectedGraph::from_adjacency_unchecked(rows).with_labels(labels)
}

/// Uncovered edges as adjacency rows.
#[derive(Clone)]
struct Uncovered(Vec<NodeSet>);

impl Uncovered {
    fn cover(&mut self, c: NodeSet) {
        for v in c {
            self.0[v] = self.0[v].difference(c);
        }
    }

    fn first_edge(&self) -> Option<(usize, usize)> {
        self.0
            .iter()
            .enumerate()
            .find_map(|(v, row)| row.first().map(|w| (v, w)))
    }

    fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(v, row)| row.iter().filter(move |&w| w > v).map(move |w| (v, w)))
    }

    fn count(&self, c: NodeSet) -> usize {
        c.iter().map(|v| self.0[v].intersection(c).len()).sum::<usize>() / 2
    }
}

/// Repeatedly grows the first uncovered edge into a maximal clique, adding
/// the candidate that covers the most uncovered edges (lowest id on ties).
pub fn greedy_edge_clique_cover(u: &UndirectedGraph) -> CliqueCover {
    let mut uncovered = Uncovered(u.rows().to_vec());
    let mut cliques = Vec::new();
    while let Some((a, b)) = uncovered.first_edge() {
        let mut clique = NodeSet::singleton(a).with(b);
        let mut candidates = u.adj(a).intersection(u.adj(b));
        while !candidates.is_empty() {
            let best = candidates
                .iter()
                .max_by_key(|&w| (uncovered.0[w].intersection(clique).len(), std::cmp::Reverse(w)))
                .expect("nonempty");
            clique.insert(best);
            candidates = candidates.intersection(u.adj(best));
        }
        uncovered.cover(clique);
        cliques.push(clique);
    }
    CliqueCover { cliques }
}

struct CoverSearch<'a> {
    u: &'a UndirectedGraph,
    maximal: Vec<NodeSet>,
    best: Option<Vec<NodeSet>>,
    /// Search stops once a cover of at most this size is known.
    target: usize,
    /// Only covers strictly smaller than this are of interest.
    bound: usize,
    nodes: u64,
}

impl CoverSearch<'_> {
    /// Size of a set of uncovered edges no two of which fit in one clique.
    fn lower_bound(&self, uncovered: &Uncovered) -> usize {
        let mut chosen: Vec<NodeSet> = Vec::new();
        for (a, b) in uncovered.edges() {
            let e = NodeSet::singleton(a).with(b);
            if chosen.iter().all(|&f| !self.u.is_clique(e.union(f))) {
                chosen.push(e);
            }
        }
        chosen.len()
    }

    fn run(&mut self, uncovered: Uncovered, stack: &mut Vec<NodeSet>) -> bool {
        self.nodes += 1;
        let branching = uncovered
            .edges()
            .map(|(a, b)| {
                let containing: Vec<NodeSet> = self
                    .maximal
                    .iter()
                    .copied()
                    .filter(|c| c.contains(a) && c.contains(b))
                    .collect();
                containing
            })
            .min_by_key(Vec::len);
        let Some(mut options) = branching else {
            if stack.len() < self.bound {
                self.bound = stack.len();
                self.best = Some(stack.clone());
            }
            return self.bound <= self.target;
        };
        if stack.len() + self.lower_bound(&uncovered) >= self.bound {
            return false;
        }
        options.sort_by_key(|&c| std::cmp::Reverse(uncovered.count(c)));
        for c in options {
            let mut next = uncovered.clone();
            next.cover(c);
            stack.push(c);
            let done = self.run(next, stack);
            stack.pop();
            if done {
                return true;
            }
        }
        false
    }
}

fn exact_search(u: &UndirectedGraph, target: usize, bound: usize) -> Result<Option<CliqueCover>> {
    Error::check_capacity("nodes for exact clique cover", u.n(), EXACT_COVER_LIMIT)?;
    let mut search = CoverSearch {
        u,
        maximal: u.maximal_cliques().into_iter().filter(|c| c.len() >= 2).collect(),
        best: None,
        target,
        bound,
        nodes: 0,
    };
    search.run(Uncovered(u.rows().to_vec()), &mut Vec::new());
    Ok(search.best.map(|cliques| CliqueCover { cliques }))
}

/// A minimum cover (exact branch and bound) or a greedy one.
pub fn edge_clique_cover(u: &UndirectedGraph, mode: CoverMode) -> Result<CliqueCover> {
    let greedy = greedy_edge_clique_cover(u);
    match mode {
        CoverMode::Greedy => Ok(greedy),
        CoverMode::Exact => {
            Ok(exact_search(u, 0, greedy.len())?.unwrap_or(greedy))
        }
    }
}

/// Some cover with at most `budget` cliques, or `None` if none exists.
pub fn edge_clique_cover_within(u: &UndirectedGraph, budget: usize) -> Result<Option<CliqueCover>> {
    let greedy = greedy_edge_clique_cover(u);
    if greedy.len() <= budget {
        return Ok(Some(greedy));
    }
    exact_search(u, budget, budget + 1)
}

fn augmented(n: usize, children: Vec<NodeSet>, labels: &crate::graph::Labels) -> Result<AugmentedDag> {
    Error::check_capacity("observed plus auxiliary nodes", children.len(), MAX_NODES)?;
    let total = children.len();
    let mut labels = labels.clone();
    if !labels.is_empty() {
        for j in n..total {
            labels.insert(j, format!("q{}", j - n + 1));
        }
    }
    Ok(AugmentedDag {
        dag: Dag::from_children(children)?.with_labels(labels),
        observed: NodeSet::full(n),
        auxiliary: NodeSet::full(total).difference(NodeSet::full(n)),
    })
}

fn check_faithful(aug: AugmentedDag, u: &UndirectedGraph) -> Result<AugmentedDag> {
    if aug.is_faithful_to(u) {
        Ok(aug)
    } else {
        Err(Error::Inconsistent("construction is not faithful".into()))
    }
}

/// One auxiliary source `q_j = n + j` per clique, with arcs `q_j -> v` for
/// every `v` in clique `j`.
pub fn dag_from_cover(u: &UndirectedGraph, cover: &CliqueCover) -> Result<AugmentedDag> {
    cover.validate(u)?;
    let mut children = vec![NodeSet::EMPTY; u.n()];
    children.extend(cover.cliques.iter().copied());
    check_faithful(augmented(u.n(), children, u.labels())?, u)
}

/// Like [`dag_from_cover`], but a clique equal to the closed neighborhood
/// of a simplicial node `s` is realized by arcs `s -> C \ {s}` instead of a
/// new auxiliary node. Cliques contained in other cliques are dropped.
pub fn dag_from_cover_reusing_simplicial(u: &UndirectedGraph, cover: &CliqueCover) -> Result<AugmentedDag> {
    cover.validate(u)?;
    let mut cliques: Vec<NodeSet> = Vec::new();
    for &c in &cover.cliques {
        if c.len() >= 2 && !cliques.contains(&c) {
            cliques.push(c);
        }
    }
    let kept: Vec<NodeSet> = cliques
        .iter()
        .copied()
        .filter(|&c| !cliques.iter().any(|&d| d != c && c.is_subset(d)))
        .collect();
    let n = u.n();
    let mut children = vec![NodeSet::EMPTY; n];
    for c in kept {
        // Two adjacent simplicial nodes share their closed neighborhood, so
        // distinct cliques get non-adjacent roots and roots stay sources.
        match c.iter().find(|&s| u.adj(s).with(s) == c) {
            Some(s) => children[s] = c.without(s),
            None => children.push(c),
        }
    }
    check_faithful(augmented(n, children, u.labels())?, u)
}

/// A faithful DAG with few auxiliary nodes: none for a SMIG (a minimal
/// faithful poset), otherwise one built from an edge clique cover. The
/// count is an upper bound on the true minimum.
pub fn min_auxiliary_dag(u: &UndirectedGraph, mode: CoverMode) -> Result<AugmentedDag> {
    if is_smig(u).is_smig() {
        let minimal = minimal_posets(u)?.swap_remove(0);
        let dag = minimal.poset.into_reduction();
        return check_faithful(
            AugmentedDag {
                dag,
                observed: NodeSet::full(u.n()),
                auxiliary: NodeSet::EMPTY,
            },
            u,
        );
    }
    let cover = edge_clique_cover(u, mode)?;
    dag_from_cover_reusing_simplicial(u, &cover)
}

/// Exhaustive minimum number of auxiliary nodes, up to `max_q`.
///
/// An auxiliary node with a parent can be dropped in favour of its topmost
/// ancestor, so it suffices to search DAGs `G` on the observed nodes with
/// arcs along edges of `u`, plus auxiliary sources whose observed reach is a
/// descendant-closed clique of `u`. For each `G` the missing edges are
/// covered by as few such reaches as possible.
pub fn min_auxiliary_bruteforce(u: &UndirectedGraph, max_q: usize) -> Result<Option<AugmentedDag>> {
    let n = u.n();
    Error::check_capacity("nodes for brute-force auxiliary search", n, BRUTEFORCE_LIMIT)?;
    let cliques: Vec<NodeSet> = (1u64..(1 << n))
        .map(NodeSet::from_bits)
        .filter(|&s| s.len() >= 2 && u.is_clique(s))
        .collect();
    let mut search = AuxSearch {
        u,
        edges: u.edges(),
        cliques,
        best: None,
        limit: max_q + 1,
    };
    search.assign(0, &mut vec![NodeSet::EMPTY; n], &mut vec![NodeSet::EMPTY; n]);
    let Some((children, reaches)) = search.best else {
        return Ok(None);
    };
    let mut all = children;
    all.extend(reaches);
    check_faithful(augmented(n, all, u.labels())?, u).map(Some)
}

struct AuxSearch<'a> {
    u: &'a UndirectedGraph,
    edges: Vec<(usize, usize)>,
    cliques: Vec<NodeSet>,
    best: Option<(Vec<NodeSet>, Vec<NodeSet>)>,
    /// Only solutions with fewer auxiliaries than this are wanted.
    limit: usize,
}

impl AuxSearch<'_> {
    /// Each edge is absent or oriented either way; `desc` holds strict
    /// descendants of the partial DAG.
    fn assign(&mut self, k: usize, children: &mut Vec<NodeSet>, desc: &mut Vec<NodeSet>) {
        if self.limit == 0 {
            return;
        }
        if k == self.edges.len() {
            self.evaluate(children, desc);
            return;
        }
        let (a, b) = self.edges[k];
        self.assign(k + 1, children, desc);
        for (x, y) in [(a, b), (b, a)] {
            if desc[y].contains(x) {
                continue;
            }
            let saved = desc.clone();
            let below = desc[y].with(y);
            for (z, row) in desc.iter_mut().enumerate() {
                if z == x || row.contains(x) {
                    *row = row.union(below);
                }
            }
            children[x].insert(y);
            self.assign(k + 1, children, desc);
            children[x].remove(y);
            *desc = saved;
        }
    }

    fn evaluate(&mut self, children: &[NodeSet], desc: &[NodeSet]) {
        let n = self.u.n();
        let reach: Vec<NodeSet> = (0..n).map(|v| desc[v].with(v)).collect();
        let mut uncovered = Uncovered(self.u.rows().to_vec());
        for &r in &reach {
            if !self.u.is_clique(r) {
                return;
            }
            uncovered.cover(r);
        }
        let closed: Vec<NodeSet> = self
            .cliques
            .iter()
            .copied()
            .filter(|&c| c.iter().all(|v| reach[v].is_subset(c)))
            .collect();
        let closed: Vec<NodeSet> = closed
            .iter()
            .copied()
            .filter(|&c| !closed.iter().any(|&d| d != c && c.is_subset(d)))
            .collect();
        let mut stack = Vec::new();
        if let Some(found) = set_cover(&closed, uncovered, self.limit - 1, &mut stack) {
            self.limit = found.len();
            self.best = Some((children.to_vec(), found));
        }
    }
}

/// Covers the uncovered edges with at most `budget` of `sets`, branching on
/// the first uncovered edge.
fn set_cover(sets: &[NodeSet], uncovered: Uncovered, budget: usize, stack: &mut Vec<NodeSet>) -> Option<Vec<NodeSet>> {
    let Some((a, b)) = uncovered.first_edge() else {
        return Some(stack.clone());
    };
    if stack.len() >= budget {
        return None;
    }
    let mut best: Option<Vec<NodeSet>> = None;
    let mut budget = budget;
    for &s in sets.iter().filter(|s| s.contains(a) && s.contains(b)) {
        let mut next = uncovered.clone();
        next.cover(s);
        stack.push(s);
        if let Some(found) = set_cover(sets, next, budget, stack) {
            budget = found.len() - 1;
            best = Some(found);
        }
        stack.pop();
        if best.as_ref().is_some_and(|f| f.len() <= stack.len() + 1) {
            break;
        }
    }
    best
}
