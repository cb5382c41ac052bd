//! Counting graphs and posets.
//!
//! Isomorphism classes of graphs on `n` nodes are generated by attaching a
//! new node, with every possible neighborhood, to one representative of
//! each class on `n - 1` nodes, then keeping one graph per canonical form.
//! Every graph arises this way (delete any node). A connected graph always
//! has a node whose deletion leaves it connected, so connected classes only
//! need connected parents and nonempty neighborhoods.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::canon::{canonical_form_dag, canonical_labeling, CanonicalForm};
use crate::enumerate::visit_faithful_posets;
use crate::error::{Error, Result};
use crate::graph::{Dag, UndirectedGraph};
use crate::nodeset::NodeSet;
use crate::poset::AtransitiveBuilder;
use crate::smig::{has_unique_faithful_dag, is_smig};

/// Largest `n` for [`census_connected`] without `allow_expensive`.
pub const CENSUS_LIMIT: usize = 7;
/// Largest `n` for [`census_connected`] with `allow_expensive`.
pub const CENSUS_EXPENSIVE_LIMIT: usize = 9;
/// Largest `n` for [`count_labeled_posets`] and [`count_faithful_to_complete`].
pub const POSET_LIMIT: usize = 7;
/// Largest `n` for [`count_smigs_height1`].
pub const HEIGHT1_LIMIT: usize = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub n: usize,
    pub graphs: u64,
    pub smigs: u64,
    pub unique_dag: u64,
}

/// One canonically labeled representative per isomorphism class of graphs
/// on `n` nodes, sorted by canonical form.
pub fn graph_classes(n: usize, connected_only: bool) -> Result<Vec<UndirectedGraph>> {
    Error::check_capacity("nodes for graph classes", n, CENSUS_EXPENSIVE_LIMIT)?;
    let mut classes = vec![UndirectedGraph::empty(0)];
    for m in 1..=n {
        let first = if connected_only && m > 1 { 1u64 } else { 0 };
        let found: HashMap<CanonicalForm, UndirectedGraph> = classes
            .par_iter()
            .map(|parent| -> Result<HashMap<CanonicalForm, UndirectedGraph>> {
                let mut local = HashMap::new();
                for mask in first..(1u64 << (m - 1)) {
                    let mut rows = parent.rows().to_vec();
                    let hood = NodeSet::from_bits(mask);
                    for w in hood {
                        rows[w].insert(m - 1);
                    }
                    rows.push(hood);
                    let g = UndirectedGraph::from_adjacency_unchecked(rows);
                    let (form, perm) = canonical_labeling(&g)?;
                    local.entry(form).or_insert_with(|| g.permuted(&perm));
                }
                Ok(local)
            })
            .try_reduce(HashMap::new, |mut a, b| {
                a.extend(b);
                Ok(a)
            })?;
        let mut sorted: Vec<(CanonicalForm, UndirectedGraph)> = found.into_iter().collect();
        sorted.sort_by_key(|e| e.0);
        classes = sorted.into_iter().map(|e| e.1).collect();
    }
    Ok(classes)
}

/// Connected graphs on `n` nodes up to isomorphism, how many are SMIGs,
/// and how many have exactly one faithful DAG. Above [`CENSUS_LIMIT`]
/// nodes the call requires `allow_expensive`.
pub fn census_connected(n: usize, allow_expensive: bool) -> Result<CensusRow> {
    let limit = if allow_expensive { CENSUS_EXPENSIVE_LIMIT } else { CENSUS_LIMIT };
    Error::check_capacity("nodes for connected census", n, limit)?;
    let classes = graph_classes(n, true)?;
    let (smigs, unique_dag) = classes
        .par_iter()
        .map(|g| {
            if !is_smig(g).is_smig() {
                return (0, 0);
            }
            let unique = has_unique_faithful_dag(g).expect("checked SMIG");
            (1, u64::from(unique))
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    Ok(CensusRow {
        n,
        graphs: classes.len() as u64,
        smigs,
        unique_dag,
    })
}

/// Number of partial orders on `n` labeled elements, counted as acyclic
/// atransitive arc sets (one per transitive reduction).
pub fn count_labeled_posets(n: usize) -> Result<u64> {
    Error::check_capacity("nodes for poset count", n, POSET_LIMIT)?;
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b)))
        .collect();
    fn walk(pairs: &[(usize, usize)], from: usize, b: &AtransitiveBuilder) -> u64 {
        let mut count = 1;
        for k in from..pairs.len() {
            let (x, y) = pairs[k];
            if b.can_add(x, y) {
                let mut next = b.clone();
                next.add(x, y);
                count += walk(pairs, k + 1, &next);
            }
        }
        count
    }
    Ok(walk(&pairs, 0, &AtransitiveBuilder::new(n)))
}

/// Faithful posets of the complete graph `K_n`, counted by enumeration and
/// checked against `n * P(n - 1)`.
pub fn count_faithful_to_complete(n: usize) -> Result<u64> {
    Error::check_capacity("nodes for faithful count", n, POSET_LIMIT)?;
    if n == 0 {
        return Ok(1);
    }
    let mut direct = 0u64;
    visit_faithful_posets(&UndirectedGraph::complete(n), |_| {
        direct += 1;
        std::ops::ControlFlow::Continue(())
    })?;
    let closed = (n as u64)
        .checked_mul(count_labeled_posets(n - 1)?)
        .ok_or_else(|| Error::Inconsistent("count overflow".into()))?;
    if direct != closed {
        return Err(Error::Inconsistent(format!(
            "{direct} faithful posets of K_{n} but n * P(n - 1) = {closed}"
        )));
    }
    Ok(direct)
}

/// SMIGs on `n` nodes up to isomorphism, counted both by filtering graph
/// classes and as posets of height at most one up to isomorphism; the two
/// counts must agree. `connected` restricts both sides to connected
/// structures.
pub fn count_smigs_height1(n: usize, connected: bool) -> Result<u64> {
    Error::check_capacity("nodes for height-one count", n, HEIGHT1_LIMIT)?;
    let by_graphs = graph_classes(n, connected)?
        .iter()
        .filter(|g| is_smig(g).is_smig())
        .count() as u64;
    let by_posets = height1_poset_classes(n, connected)?.len() as u64;
    if by_graphs != by_posets {
        return Err(Error::Inconsistent(format!(
            "{by_graphs} SMIG classes but {by_posets} height-one poset classes on {n} nodes"
        )));
    }
    Ok(by_graphs)
}

/// Canonical forms of posets of height at most one: sources `0..k` with
/// arcs into `k..n`.
fn height1_poset_classes(n: usize, connected: bool) -> Result<Vec<CanonicalForm>> {
    let mut forms: Vec<CanonicalForm> = (0..=n)
        .into_par_iter()
        .map(|k| -> Result<Vec<CanonicalForm>> {
            let pairs: Vec<(usize, usize)> = (0..k).flat_map(|a| (k..n).map(move |b| (a, b))).collect();
            let mut local = Vec::new();
            for mask in 0u64..(1 << pairs.len()) {
                let mut children = vec![NodeSet::EMPTY; n];
                for (bit, &(a, b)) in pairs.iter().enumerate() {
                    if mask >> bit & 1 == 1 {
                        children[a].insert(b);
                    }
                }
                let d = Dag::from_children_unchecked(children);
                if connected && !d.skeleton().is_connected() {
                    continue;
                }
                local.push(canonical_form_dag(&d)?);
            }
            Ok(local)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    forms.sort();
    forms.dedup();
    Ok(forms)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_class_counts() {
        let connected: Vec<usize> = (1..=6).map(|n| graph_classes(n, true).unwrap().len()).collect();
        assert_eq!(connected, vec![1, 1, 2, 6, 21, 112]);
        let all: Vec<usize> = (0..=5).map(|n| graph_classes(n, false).unwrap().len()).collect();
        assert_eq!(all, vec![1, 1, 2, 4, 11, 34]);
    }

    #[test]
    fn census_rows() {
        let rows: Vec<(u64, u64, u64)> = (2..=6)
            .map(|n| {
                let r = census_connected(n, false).unwrap();
                (r.graphs, r.smigs, r.unique_dag)
            })
            .collect();
        assert_eq!(rows, vec![(1, 1, 0), (2, 2, 1), (6, 4, 1), (21, 10, 2), (112, 27, 4)]);
        assert!(matches!(census_connected(8, false), Err(Error::Capacity { .. })));
    }

    #[test]
    fn poset_counts() {
        let p: Vec<u64> = (0..=5).map(|n| count_labeled_posets(n).unwrap()).collect();
        assert_eq!(p, vec![1, 1, 3, 19, 219, 4231]);
        let f: Vec<u64> = (1..=5).map(|n| count_faithful_to_complete(n).unwrap()).collect();
        assert_eq!(f, vec![1, 2, 9, 76, 1095]);
    }

    #[test]
    fn height_one_counts() {
        assert_eq!(count_smigs_height1(1, true).unwrap(), 1);
        assert_eq!(count_smigs_height1(4, true).unwrap(), 4);
        assert_eq!(count_smigs_height1(6, true).unwrap(), 27);
        for n in 1..=5 {
            count_smigs_height1(n, false).unwrap();
        }
    }
}
