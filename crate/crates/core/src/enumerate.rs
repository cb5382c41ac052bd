//! Faithful posets and DAGs of a SMIG.
//!
//! Every faithful poset arises from two independent choices: one simplicial
//! node per simplex (the set `I`, whose nodes become sources pointing at all
//! their neighbors) and a poset on the remaining nodes that is a subgraph of
//! some sink orientation. The lister walks the second choice as a subset
//! tree over the sink-graph edges restricted to `V \ I`, keeping only arc
//! sets that stay acyclic and atransitive. Those properties are closed under
//! taking subsets, so every node of the tree that survives pruning is a new
//! poset and is emitted immediately: the delay between two outputs is
//! polynomial.

use std::collections::HashSet;
use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::graph::{Dag, SimplexDecomposition, UndirectedGraph};
use crate::nodeset::NodeSet;
use crate::poset::{reduce_closure, AcyclicBuilder, AtransitiveBuilder, Poset};
use crate::smig::{central_point, find_forbidden_subgraph, require_smig, sink_graph_unchecked, SinkGraph};

/// One simplicial node chosen from each simplex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimplicialSelection {
    chosen: Vec<usize>,
}

impl SimplicialSelection {
    /// `chosen()[k]` is the node picked from simplex `k`.
    pub fn chosen(&self) -> &[usize] {
        &self.chosen
    }

    pub fn nodes(&self) -> NodeSet {
        self.chosen.iter().copied().collect()
    }

    /// Arc rows of the height-one poset `i -> N(i)` for each chosen `i`.
    pub fn minimal_rows(&self, u: &UndirectedGraph) -> Vec<NodeSet> {
        let mut rows = vec![NodeSet::EMPTY; u.n()];
        for &i in &self.chosen {
            rows[i] = u.adj(i);
        }
        rows
    }
}

/// All selections, as an odometer over the simplicial sets of the simplexes
/// (last simplex varies fastest).
pub fn simplicial_selections(d: &SimplexDecomposition) -> Vec<SimplicialSelection> {
    let options: Vec<Vec<usize>> = d.simplicial.iter().map(|s| s.to_vec()).collect();
    let mut out = Vec::new();
    let mut digits = vec![0usize; options.len()];
    loop {
        out.push(SimplicialSelection {
            chosen: digits.iter().zip(&options).map(|(&k, o)| o[k]).collect(),
        });
        let mut pos = options.len();
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < options[pos].len() {
                break;
            }
            digits[pos] = 0;
        }
    }
}

/// A minimal faithful poset together with the selection that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalPoset {
    pub poset: Poset,
    pub selection: SimplicialSelection,
}

/// One minimal faithful poset per simplicial selection.
pub fn minimal_posets(u: &UndirectedGraph) -> Result<Vec<MinimalPoset>> {
    let decomposition = require_smig(u)?;
    Ok(simplicial_selections(&decomposition)
        .into_iter()
        .map(|selection| {
            let dag = Dag::from_children_unchecked(selection.minimal_rows(u))
                .with_labels(u.labels().clone());
            MinimalPoset {
                poset: Poset::from_reduction_unchecked(dag),
                selection,
            }
        })
        .collect())
}

/// Rearranges `perm` into the next permutation in lexicographic order;
/// returns `false` after the last one.
fn next_permutation(perm: &mut [usize]) -> bool {
    let Some(i) = perm.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = perm.iter().rposition(|&x| x > perm[i]).expect("pivot has a successor");
    perm.swap(i, j);
    perm[i + 1..].reverse();
    true
}

/// Every sink orientation (equivalently every maximal faithful poset):
/// each class of boundary-equal nodes is put in some linear order.
pub fn visit_sink_orientations<F>(u: &UndirectedGraph, mut visit: F) -> Result<u64>
where
    F: FnMut(&Poset) -> ControlFlow<()>,
{
    require_smig(u)?;
    let sink = sink_graph_unchecked(u);
    let base: Vec<NodeSet> = (0..u.n()).map(|v| sink.mixed().out_arcs(v)).collect();
    let mut orders: Vec<Vec<usize>> = sink
        .classes()
        .iter()
        .filter(|c| c.len() > 1)
        .map(|c| c.to_vec())
        .collect();
    let mut count = 0;
    loop {
        let mut rows = base.clone();
        for order in &orders {
            for (k, &a) in order.iter().enumerate() {
                for &b in &order[k + 1..] {
                    rows[a].insert(b);
                }
            }
        }
        let closed = Dag::from_children_unchecked(rows);
        debug_assert!(closed.is_transitively_closed());
        let poset = Poset::from_dag(&closed).with_labels(u.labels().clone());
        count += 1;
        if visit(&poset).is_break() {
            return Ok(count);
        }
        // advance the rightmost class that still has a next order
        let mut advanced = false;
        for order in orders.iter_mut().rev() {
            if next_permutation(order) {
                advanced = true;
                break;
            }
            order.sort_unstable();
        }
        if !advanced {
            return Ok(count);
        }
    }
}

pub fn sink_orientations(u: &UndirectedGraph) -> Result<Vec<Poset>> {
    let mut out = Vec::new();
    visit_sink_orientations(u, |p| {
        out.push(p.clone());
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// A sink-graph edge on `V \ I`, with the orientations the lister may try.
#[derive(Clone, Copy, Debug)]
struct CandidateEdge {
    a: usize,
    b: usize,
    undirected: bool,
}

impl CandidateEdge {
    /// `a -> b`, and also `b -> a` when the sink graph leaves the edge open.
    fn orientations(self) -> impl Iterator<Item = (usize, usize)> {
        let rev = self.undirected.then_some((self.b, self.a));
        std::iter::once((self.a, self.b)).chain(rev)
    }
}

/// Sink-graph edges with both endpoints outside `selected`, sorted by
/// `(min endpoint, max endpoint)`.
fn restricted_edges(sink: &SinkGraph, selected: NodeSet) -> Vec<CandidateEdge> {
    let mut out = Vec::new();
    let m = sink.mixed();
    for a in 0..sink.n() {
        if selected.contains(a) {
            continue;
        }
        for b in (a + 1)..sink.n() {
            if selected.contains(b) {
                continue;
            }
            if m.has_undirected(a, b) {
                out.push(CandidateEdge { a, b, undirected: true });
            } else if m.has_arc(a, b) {
                out.push(CandidateEdge { a, b, undirected: false });
            } else if m.has_arc(b, a) {
                out.push(CandidateEdge { a: b, b: a, undirected: false });
            }
        }
    }
    out
}

/// Counters reported by the enumerators.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EnumerationStats {
    /// Distinct objects handed to the visitor.
    pub emitted: u64,
    /// Objects generated again from a different selection and suppressed.
    pub duplicates: u64,
    /// Surviving nodes of the recursion tree.
    pub nodes: u64,
}

struct PosetLister<'a, F> {
    u: &'a UndirectedGraph,
    edges: Vec<CandidateEdge>,
    selection_rows: Vec<NodeSet>,
    seen: &'a mut HashSet<Vec<NodeSet>>,
    stats: &'a mut EnumerationStats,
    visit: &'a mut F,
}

impl<F> PosetLister<'_, F>
where
    F: FnMut(&Poset) -> ControlFlow<()>,
{
    fn list(&mut self, g: &AtransitiveBuilder, start: usize) -> ControlFlow<()> {
        self.stats.nodes += 1;
        self.emit(g)?;
        for idx in start..self.edges.len() {
            for (a, b) in self.edges[idx].orientations() {
                if g.can_add(a, b) {
                    let mut next = g.clone();
                    next.add(a, b);
                    self.list(&next, idx + 1)?;
                }
            }
        }
        ControlFlow::Continue(())
    }

    /// Emits the reduction of `G ∪ I->`.
    fn emit(&mut self, g: &AtransitiveBuilder) -> ControlFlow<()> {
        // descendants of a selected node i are N(i): G never leaves N(i)
        let closure: Vec<NodeSet> = g
            .descendants()
            .iter()
            .zip(&self.selection_rows)
            .map(|(d, s)| d.union(*s))
            .collect();
        let rows = reduce_closure(&closure);
        if !self.seen.insert(rows.clone()) {
            self.stats.duplicates += 1;
            return ControlFlow::Continue(());
        }
        let dag = Dag::from_children_unchecked(rows).with_labels(self.u.labels().clone());
        debug_assert_eq!(&dag.marginal_independence_graph(), self.u);
        self.stats.emitted += 1;
        (self.visit)(&Poset::from_reduction_unchecked(dag))
    }
}

/// Streams every faithful poset of `u` exactly once, as its transitive
/// reduction. The visitor may stop the enumeration early.
pub fn visit_faithful_posets<F>(u: &UndirectedGraph, mut visit: F) -> Result<EnumerationStats>
where
    F: FnMut(&Poset) -> ControlFlow<()>,
{
    let decomposition = require_smig(u)?;
    let sink = sink_graph_unchecked(u);
    let mut seen = HashSet::new();
    let mut stats = EnumerationStats::default();
    for selection in simplicial_selections(&decomposition) {
        let mut lister = PosetLister {
            u,
            edges: restricted_edges(&sink, selection.nodes()),
            selection_rows: selection.minimal_rows(u),
            seen: &mut seen,
            stats: &mut stats,
            visit: &mut visit,
        };
        if lister.list(&AtransitiveBuilder::new(u.n()), 0).is_break() {
            break;
        }
    }
    Ok(stats)
}

pub fn faithful_posets(u: &UndirectedGraph) -> Result<Vec<Poset>> {
    let mut out = Vec::new();
    visit_faithful_posets(u, |p| {
        out.push(p.clone());
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// A family of faithful DAGs: `base` plus any subset of `optional`.
///
/// `core` is the DAG chosen on `V \ I`; `base` adds the mandatory arcs out
/// of `I` (those to nodes of `N(i)` not reachable from another node of
/// `N(i)`); the remaining arcs of `I->` are optional because `base`
/// already implies them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DagPattern {
    pub selection: SimplicialSelection,
    pub core: Dag,
    pub base: Dag,
    pub optional: Vec<(usize, usize)>,
}

impl DagPattern {
    pub fn mandatory(&self) -> Vec<(usize, usize)> {
        let selected = self.selection.nodes();
        self.base
            .arcs()
            .into_iter()
            .filter(|(a, _)| selected.contains(*a))
            .collect()
    }

    pub fn completion_count(&self) -> u128 {
        1u128 << self.optional.len()
    }

    /// Every DAG in the family, in order of the optional-arc bitmask.
    pub fn completions(&self) -> impl Iterator<Item = Dag> + '_ {
        assert!(self.optional.len() < 64, "too many optional arcs to expand");
        (0u64..1 << self.optional.len()).map(move |mask| {
            let mut rows = self.base.child_rows().to_vec();
            for (k, &(a, b)) in self.optional.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    rows[a].insert(b);
                }
            }
            Dag::from_children_unchecked(rows).with_labels(self.base.labels().clone())
        })
    }
}

fn build_pattern(
    u: &UndirectedGraph,
    selection: &SimplicialSelection,
    g: &AcyclicBuilder,
) -> DagPattern {
    let desc = g.descendants();
    let mut base = g.children().to_vec();
    let mut optional = Vec::new();
    for &i in selection.chosen() {
        let nbrs = u.adj(i);
        for j in nbrs {
            let implied = nbrs.without(j).iter().any(|k| desc[k].contains(j));
            if implied {
                optional.push((i, j));
            } else {
                base[i].insert(j);
            }
        }
    }
    optional.sort_unstable();
    let labels = u.labels().clone();
    DagPattern {
        selection: selection.clone(),
        core: Dag::from_children_unchecked(g.children().to_vec()).with_labels(labels.clone()),
        base: Dag::from_children_unchecked(base).with_labels(labels),
        optional,
    }
}

fn list_patterns<F>(
    u: &UndirectedGraph,
    selection: &SimplicialSelection,
    edges: &[CandidateEdge],
    g: &AcyclicBuilder,
    start: usize,
    visit: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(DagPattern) -> ControlFlow<()>,
{
    visit(build_pattern(u, selection, g))?;
    for idx in start..edges.len() {
        for (a, b) in edges[idx].orientations() {
            if g.can_add(a, b) {
                let mut next = g.clone();
                next.add(a, b);
                list_patterns(u, selection, edges, &next, idx + 1, visit)?;
            }
        }
    }
    ControlFlow::Continue(())
}

/// Streams one pattern per (selection, acyclic sub-DAG of the sink graph on
/// `V \ I`). Returns the number of patterns visited.
pub fn visit_faithful_dag_patterns<F>(u: &UndirectedGraph, mut visit: F) -> Result<u64>
where
    F: FnMut(&DagPattern) -> ControlFlow<()>,
{
    let decomposition = require_smig(u)?;
    let sink = sink_graph_unchecked(u);
    let mut count = 0u64;
    let mut counted = |p: DagPattern| {
        count += 1;
        visit(&p)
    };
    for selection in simplicial_selections(&decomposition) {
        let edges = restricted_edges(&sink, selection.nodes());
        if list_patterns(u, &selection, &edges, &AcyclicBuilder::new(u.n()), 0, &mut counted)
            .is_break()
        {
            break;
        }
    }
    Ok(count)
}

pub fn faithful_dag_patterns(u: &UndirectedGraph) -> Result<Vec<DagPattern>> {
    let mut out = Vec::new();
    visit_faithful_dag_patterns(u, |p| {
        out.push(p.clone());
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// Streams every faithful DAG once, by expanding the patterns.
pub fn visit_faithful_dags<F>(u: &UndirectedGraph, mut visit: F) -> Result<EnumerationStats>
where
    F: FnMut(&Dag) -> ControlFlow<()>,
{
    let mut seen: HashSet<Vec<NodeSet>> = HashSet::new();
    let mut stats = EnumerationStats::default();
    visit_faithful_dag_patterns(u, |pattern| {
        stats.nodes += 1;
        for dag in pattern.completions() {
            if !seen.insert(dag.child_rows().to_vec()) {
                stats.duplicates += 1;
                continue;
            }
            debug_assert_eq!(&dag.marginal_independence_graph(), u);
            stats.emitted += 1;
            visit(&dag)?;
        }
        ControlFlow::Continue(())
    })?;
    Ok(stats)
}

pub fn faithful_dags(u: &UndirectedGraph) -> Result<Vec<Dag>> {
    let mut out = Vec::new();
    visit_faithful_dags(u, |d| {
        out.push(d.clone());
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// Faithful DAGs with the fewest arcs, by exhaustive filtering.
pub fn min_arc_faithful_dags(u: &UndirectedGraph) -> Result<Vec<Dag>> {
    let mut best = usize::MAX;
    let mut out: Vec<Dag> = Vec::new();
    visit_faithful_dags(u, |d| {
        let m = d.arc_count();
        if m < best {
            best = m;
            out.clear();
        }
        if m == best {
            out.push(d.clone());
        }
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// A faithful poset whose Hasse diagram is a tree pointing at the root.
///
/// Built by taking the lowest-index node adjacent to all others as the
/// sink, recursing on the components of what remains and hanging each
/// component's root below the sink.
pub fn tree_poset(u: &UndirectedGraph) -> Result<Poset> {
    if !u.is_connected() {
        return Err(Error::Disconnected);
    }
    if let Some(w) = find_forbidden_subgraph(u) {
        return Err(Error::NotTriviallyPerfect(w));
    }
    let mut children = vec![NodeSet::EMPTY; u.n()];
    if u.n() > 0 {
        hang_tree(u, u.nodes(), &mut children)?;
    }
    let dag = Dag::from_children_unchecked(children).with_labels(u.labels().clone());
    debug_assert_eq!(&dag.marginal_independence_graph(), u);
    Ok(Poset::from_reduction_unchecked(dag))
}

fn hang_tree(u: &UndirectedGraph, comp: NodeSet, children: &mut [NodeSet]) -> Result<usize> {
    let sink = central_point(u, comp).ok_or_else(|| {
        Error::Inconsistent("trivially perfect component without a central point".into())
    })?;
    for sub in u.components_within(comp.without(sink)) {
        let root = hang_tree(u, sub, children)?;
        children[root].insert(sink);
    }
    Ok(sink)
}
