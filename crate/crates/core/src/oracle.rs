//! Exhaustive ground truth for small graphs.
//!
//! A faithful DAG never has an arc between non-adjacent nodes (its
//! endpoints would share the tail as an ancestor), so the search assigns
//! each edge of `u` one of absent, `a -> b` or `b -> a`, drops assignments
//! that close a cycle, and keeps the DAGs whose marginal independence graph
//! is exactly `u`. Nothing here uses simplexes or sink graphs.

use std::collections::BTreeSet;

use crate::census::graph_classes;
use crate::enumerate::{faithful_dags, faithful_posets, minimal_posets, sink_orientations};
use crate::error::{Error, Result};
use crate::graph::{Dag, UndirectedGraph};
use crate::nodeset::NodeSet;
use crate::poset::Poset;
use crate::smig::is_smig;

/// Largest graph the exhaustive search accepts.
pub const ORACLE_LIMIT: usize = 6;

/// Every DAG on the nodes of `u` whose marginal independence graph is `u`,
/// sorted.
pub fn all_faithful_dags_bruteforce(u: &UndirectedGraph) -> Result<Vec<Dag>> {
    Error::check_capacity("nodes for exhaustive search", u.n(), ORACLE_LIMIT)?;
    let edges = u.edges();
    let mut out = Vec::new();
    let mut children = vec![NodeSet::EMPTY; u.n()];
    let mut desc = vec![NodeSet::EMPTY; u.n()];
    assign(u, &edges, 0, &mut children, &mut desc, &mut out);
    out.sort();
    Ok(out)
}

fn assign(
    u: &UndirectedGraph,
    edges: &[(usize, usize)],
    k: usize,
    children: &mut Vec<NodeSet>,
    desc: &mut Vec<NodeSet>,
    out: &mut Vec<Dag>,
) {
    if k == edges.len() {
        let d = Dag::from_children_unchecked(children.clone());
        if d.marginal_independence_graph() == *u {
            out.push(d);
        }
        return;
    }
    let (a, b) = edges[k];
    assign(u, edges, k + 1, children, desc, out);
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
        assign(u, edges, k + 1, children, desc, out);
        children[x].remove(y);
        *desc = saved;
    }
}

/// Distinct transitive closures of the faithful DAGs, as posets, sorted.
pub fn all_faithful_posets_bruteforce(u: &UndirectedGraph) -> Result<Vec<Poset>> {
    let set: BTreeSet<Poset> = all_faithful_dags_bruteforce(u)?
        .iter()
        .map(Poset::from_dag)
        .collect();
    Ok(set.into_iter().collect())
}

fn closure_rows(p: &Poset) -> Vec<NodeSet> {
    p.reduction().descendant_rows()
}

fn strictly_below(a: &[NodeSet], b: &[NodeSet]) -> bool {
    a != b && a.iter().zip(b).all(|(x, y)| x.is_subset(*y))
}

fn is_faithful(u: &UndirectedGraph, p: &Poset) -> bool {
    p.n() == u.n() && p.reduction().marginal_independence_graph() == *u
}

/// `p` is faithful to `u` and no faithful poset strictly contains it.
pub fn maximality_check(u: &UndirectedGraph, p: &Poset) -> Result<bool> {
    let all = all_faithful_posets_bruteforce(u)?;
    if !is_faithful(u, p) {
        return Ok(false);
    }
    let mine = closure_rows(p);
    Ok(!all.iter().any(|q| strictly_below(&mine, &closure_rows(q))))
}

/// `p` is faithful to `u` and strictly contains no faithful poset.
pub fn minimality_check(u: &UndirectedGraph, p: &Poset) -> Result<bool> {
    let all = all_faithful_posets_bruteforce(u)?;
    if !is_faithful(u, p) {
        return Ok(false);
    }
    let mine = closure_rows(p);
    Ok(!all.iter().any(|q| strictly_below(&closure_rows(q), &mine)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    /// Lister output against exhaustive posets and DAGs.
    Enumeration,
    /// SMIG recognition against existence of a faithful DAG.
    Recognition,
    /// Sink orientations and minimal posets against exhaustive extremes.
    Maximality,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub graphs: usize,
    pub smigs: usize,
    /// Edge lists of graphs where the check failed, with a reason.
    pub failures: Vec<String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs `check` on one representative of every connected graph class on
/// `n` nodes.
pub fn run_check(check: Check, n: usize) -> Result<CheckReport> {
    Error::check_capacity("nodes for exhaustive check", n, ORACLE_LIMIT)?;
    let mut report = CheckReport::default();
    for u in graph_classes(n, true)? {
        report.graphs += 1;
        let smig = is_smig(&u).is_smig();
        report.smigs += usize::from(smig);
        if let Some(reason) = check_one(check, &u, smig)? {
            report.failures.push(format!("{:?}: {reason}", u.edges()));
        }
    }
    Ok(report)
}

fn check_one(check: Check, u: &UndirectedGraph, smig: bool) -> Result<Option<String>> {
    match check {
        Check::Recognition => {
            let exists = !all_faithful_dags_bruteforce(u)?.is_empty();
            Ok((exists != smig).then(|| format!("recognized {smig}, faithful DAG exists {exists}")))
        }
        Check::Enumeration if smig => {
            let mut listed = faithful_posets(u)?;
            listed.sort();
            if listed != all_faithful_posets_bruteforce(u)? {
                return Ok(Some("faithful posets differ".into()));
            }
            let mut dags = faithful_dags(u)?;
            dags.sort();
            Ok((dags != all_faithful_dags_bruteforce(u)?).then(|| "faithful DAGs differ".into()))
        }
        Check::Maximality if smig => {
            let all = all_faithful_posets_bruteforce(u)?;
            let rows: Vec<Vec<NodeSet>> = all.iter().map(closure_rows).collect();
            let maximal: Vec<Poset> = all
                .iter()
                .zip(&rows)
                .filter(|(_, r)| !rows.iter().any(|s| strictly_below(r, s)))
                .map(|(p, _)| p.clone())
                .collect();
            let minimal: Vec<Poset> = all
                .iter()
                .zip(&rows)
                .filter(|(_, r)| !rows.iter().any(|s| strictly_below(s, r)))
                .map(|(p, _)| p.clone())
                .collect();
            let mut sinks = sink_orientations(u)?;
            sinks.sort();
            sinks.dedup();
            if sinks != maximal {
                return Ok(Some("sink orientations differ from maximal posets".into()));
            }
            let mut mins: Vec<Poset> = minimal_posets(u)?.into_iter().map(|m| m.poset).collect();
            mins.sort();
            mins.dedup();
            Ok((mins != minimal).then(|| "minimal posets differ".into()))
        }
        Check::Enumeration | Check::Maximality => Ok(None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn poset(n: usize, arcs: &[(usize, usize)]) -> Poset {
        Poset::from_dag(&Dag::new(n, arcs.iter().copied()).unwrap())
    }

    #[test]
    fn examples() {
        let p3 = UndirectedGraph::path(3);
        assert_eq!(
            all_faithful_dags_bruteforce(&p3).unwrap(),
            vec![Dag::new(3, [(0, 1), (2, 1)]).unwrap()]
        );
        assert!(all_faithful_dags_bruteforce(&fixtures::fig1c()).unwrap().is_empty());
        assert_eq!(all_faithful_posets_bruteforce(&UndirectedGraph::complete(3)).unwrap().len(), 9);
        assert_eq!(all_faithful_posets_bruteforce(&p3).unwrap().len(), 1);
        assert_eq!(all_faithful_posets_bruteforce(&UndirectedGraph::complete(4)).unwrap().len(), 76);
        assert!(all_faithful_dags_bruteforce(&UndirectedGraph::empty(7)).is_err());
    }

    #[test]
    fn extremes() {
        let k3 = UndirectedGraph::complete(3);
        assert!(maximality_check(&k3, &poset(3, &[(0, 1), (1, 2)])).unwrap());
        assert!(!maximality_check(&k3, &poset(3, &[(0, 1), (0, 2)])).unwrap());
        assert!(minimality_check(&k3, &poset(3, &[(0, 1), (0, 2)])).unwrap());
        let p3 = UndirectedGraph::path(3);
        assert!(maximality_check(&p3, &poset(3, &[(0, 1), (2, 1)])).unwrap());
        assert!(!maximality_check(&p3, &poset(3, &[(0, 1)])).unwrap());
    }

    #[test]
    fn six_node_fixture_has_one_faithful_dag() {
        let g = fixtures::fig1a();
        let dags = all_faithful_dags_bruteforce(&g).unwrap();
        assert_eq!(dags, faithful_dags(&g).unwrap());
        assert_eq!(dags.len(), 1);
    }

    #[test]
    fn checks_pass_up_to_four_nodes() {
        for check in [Check::Recognition, Check::Enumeration, Check::Maximality] {
            for n in 1..=4 {
                let report = run_check(check, n).unwrap();
                assert!(report.passed(), "{check:?} n={n}: {:?}", report.failures);
            }
        }
    }
}
