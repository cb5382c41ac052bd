//! Canonical forms of small graphs and digraphs.
//!
//! Individualization-refinement: the node set is split into an ordered
//! partition, refined until every node in a cell sees the same number of
//! out- and in-neighbors in each cell, and any remaining tie is broken by
//! trying every node of the first smallest non-singleton cell. Each
//! discrete partition orders the nodes; the canonical code is the largest
//! adjacency code over these orderings. Twin nodes (same neighbors apart
//! from each other) are swapped by an automorphism that fixes everything
//! else, so only one twin per class is tried at each branch.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Dag, UndirectedGraph};
use crate::nodeset::NodeSet;

/// Largest node count accepted by [`canonical_form`].
pub const CANON_LIMIT: usize = 10;

/// Identifies an isomorphism class: equal forms iff isomorphic.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    n: u8,
    directed: bool,
    code: u128,
}

impl CanonicalForm {
    pub fn n(&self) -> usize {
        self.n as usize
    }

    /// Adjacency bits in canonical order, left-padded with zero bits
    /// to whole bytes.
    pub fn bytes(&self) -> Vec<u8> {
        let pairs = if self.directed {
            self.n() * self.n().saturating_sub(1)
        } else {
            self.n() * self.n().saturating_sub(1) / 2
        };
        let len = pairs.div_ceil(8);
        self.code.to_be_bytes()[16 - len..].to_vec()
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm(n={}, {:x})", self.n, self.code)
    }
}

struct Canon<'a> {
    out: &'a [NodeSet],
    inn: &'a [NodeSet],
    directed: bool,
    best: Option<(u128, Vec<usize>)>,
}

impl Canon<'_> {
    fn refine(&self, cells: &mut Vec<Vec<usize>>) {
        loop {
            let sets: Vec<NodeSet> = cells.iter().map(|c| c.iter().copied().collect()).collect();
            let mut next = Vec::with_capacity(cells.len());
            for cell in cells.iter() {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut keyed: Vec<(Vec<(u8, u8)>, usize)> = cell
                    .iter()
                    .map(|&v| {
                        let sig = sets
                            .iter()
                            .map(|&s| (self.out[v].intersection(s).len() as u8, self.inn[v].intersection(s).len() as u8))
                            .collect();
                        (sig, v)
                    })
                    .collect();
                keyed.sort();
                let mut start = 0;
                for k in 1..=keyed.len() {
                    if k == keyed.len() || keyed[k].0 != keyed[start].0 {
                        next.push(keyed[start..k].iter().map(|e| e.1).collect());
                        start = k;
                    }
                }
            }
            let stable = next.len() == cells.len();
            *cells = next;
            if stable {
                return;
            }
        }
    }

    fn code(&self, order: &[usize]) -> u128 {
        let mut code = 0u128;
        for (i, &a) in order.iter().enumerate() {
            let range = if self.directed { 0..order.len() } else { i + 1..order.len() };
            for j in range {
                if j != i {
                    code = (code << 1) | u128::from(self.out[a].contains(order[j]));
                }
            }
        }
        code
    }

    fn twins(&self, v: usize, w: usize) -> bool {
        let both = NodeSet::singleton(v).with(w);
        self.out[v].difference(both) == self.out[w].difference(both)
            && self.inn[v].difference(both) == self.inn[w].difference(both)
            && self.out[v].contains(w) == self.out[w].contains(v)
    }

    fn search(&mut self, mut cells: Vec<Vec<usize>>) {
        self.refine(&mut cells);
        let Some(target) = cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.len() > 1)
            .min_by_key(|(k, c)| (c.len(), *k))
            .map(|(k, _)| k)
        else {
            let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
            let code = self.code(&order);
            if self.best.as_ref().is_none_or(|(b, _)| code > *b) {
                self.best = Some((code, order));
            }
            return;
        };
        let cell = cells[target].clone();
        let mut tried: Vec<usize> = Vec::new();
        for &v in &cell {
            if tried.iter().any(|&t| self.twins(t, v)) {
                continue;
            }
            tried.push(v);
            let mut next = cells.clone();
            let rest: Vec<usize> = cell.iter().copied().filter(|&w| w != v).collect();
            next[target] = vec![v];
            next.insert(target + 1, rest);
            self.search(next);
        }
    }
}

fn run(out: &[NodeSet], inn: &[NodeSet], directed: bool) -> Result<(CanonicalForm, Vec<usize>)> {
    let n = out.len();
    Error::check_capacity("nodes for canonical form", n, CANON_LIMIT)?;
    let mut canon = Canon {
        out,
        inn,
        directed,
        best: None,
    };
    if n == 0 {
        canon.best = Some((0, Vec::new()));
    } else {
        canon.search(vec![(0..n).collect()]);
    }
    let (code, order) = canon.best.expect("search reaches a leaf");
    let form = CanonicalForm {
        n: n as u8,
        directed,
        code,
    };
    Ok((form, order))
}

pub fn canonical_form(u: &UndirectedGraph) -> Result<CanonicalForm> {
    Ok(canonical_labeling(u)?.0)
}

/// The canonical form and a permutation `perm` (node `v` becomes
/// `perm[v]`) such that `u.permuted(&perm)` is the same for all graphs
/// isomorphic to `u`.
pub fn canonical_labeling(u: &UndirectedGraph) -> Result<(CanonicalForm, Vec<usize>)> {
    let (form, order) = run(u.rows(), u.rows(), false)?;
    Ok((form, inverse(&order)))
}

pub fn canonical_form_dag(d: &Dag) -> Result<CanonicalForm> {
    let parents: Vec<NodeSet> = (0..d.n()).map(|v| d.parents(v)).collect();
    Ok(run(d.child_rows(), &parents, true)?.0)
}

fn inverse(order: &[usize]) -> Vec<usize> {
    let mut perm = vec![0; order.len()];
    for (pos, &v) in order.iter().enumerate() {
        perm[v] = pos;
    }
    perm
}

/// Isomorphism test by trying every permutation; for checking only.
pub fn isomorphic_bruteforce(a: &UndirectedGraph, b: &UndirectedGraph) -> bool {
    if a.n() != b.n() || a.edge_count() != b.edge_count() {
        return false;
    }
    let mut perm: Vec<usize> = (0..a.n()).collect();
    loop {
        if a.permuted(&perm) == *b {
            return true;
        }
        let Some(i) = perm.windows(2).rposition(|w| w[0] < w[1]) else {
            return false;
        };
        let j = perm.iter().rposition(|&x| x > perm[i]).expect("pivot has a successor");
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
}
