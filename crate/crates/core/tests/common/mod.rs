//! Independent reference implementations for the integration tests.
//!
//! Everything here works on plain adjacency matrices and reachability by
//! Floyd–Warshall, and shares no code with the library's algorithms.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

/// Adjacency matrix of a simple undirected graph.
pub type Matrix = Vec<Vec<bool>>;

pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect()
}

/// Every labeled graph on `n` nodes, as sorted edge lists.
pub fn all_graphs(n: usize) -> Vec<Vec<(usize, usize)>> {
    let p = pairs(n);
    (0u64..1 << p.len())
        .map(|mask| {
            p.iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &e)| e)
                .collect()
        })
        .collect()
}

pub fn matrix(n: usize, edges: &[(usize, usize)]) -> Matrix {
    let mut m = vec![vec![false; n]; n];
    for &(a, b) in edges {
        m[a][b] = true;
        m[b][a] = true;
    }
    m
}

pub fn connected(m: &Matrix) -> bool {
    let n = m.len();
    if n == 0 {
        return true;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for w in 0..n {
            if m[v][w] && !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Reflexive-transitive reachability of a directed arc list.
pub fn reach(n: usize, arcs: &[(usize, usize)]) -> Matrix {
    let mut r = vec![vec![false; n]; n];
    for (v, row) in r.iter_mut().enumerate() {
        row[v] = true;
    }
    for &(a, b) in arcs {
        r[a][b] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if r[i][k] && r[k][j] {
                    r[i][j] = true;
                }
            }
        }
    }
    r
}

pub fn acyclic(n: usize, arcs: &[(usize, usize)]) -> bool {
    let r = reach(n, arcs);
    arcs.iter().all(|&(a, b)| !r[b][a])
}

/// Nodes `v != w` are adjacent iff some node reaches both.
pub fn mig(n: usize, arcs: &[(usize, usize)]) -> Matrix {
    let r = reach(n, arcs);
    let mut m = vec![vec![false; n]; n];
    for v in 0..n {
        for w in 0..n {
            if v != w && (0..n).any(|a| r[a][v] && r[a][w]) {
                m[v][w] = true;
            }
        }
    }
    m
}

/// Pairs `(a, b)`, `a != b`, joined by a directed path from `a` to `b`.
pub fn closure_pairs(n: usize, arcs: &[(usize, usize)]) -> BTreeSet<(usize, usize)> {
    let r = reach(n, arcs);
    let mut out = BTreeSet::new();
    for (a, row) in r.iter().enumerate() {
        for (b, &reached) in row.iter().enumerate() {
            if a != b && reached {
                out.insert((a, b));
            }
        }
    }
    out
}

/// Arcs of the closure not implied by two others.
pub fn reduction_pairs(n: usize, arcs: &[(usize, usize)]) -> BTreeSet<(usize, usize)> {
    let c = closure_pairs(n, arcs);
    c.iter()
        .copied()
        .filter(|&(a, b)| !(0..n).any(|k| k != a && k != b && c.contains(&(a, k)) && c.contains(&(k, b))))
        .collect()
}

/// Every DAG on `n` nodes, as arc lists (each pair absent or oriented).
pub fn all_dags(n: usize) -> Vec<Vec<(usize, usize)>> {
    let p = pairs(n);
    let total = 3usize.pow(p.len() as u32);
    let mut out = Vec::new();
    for mut code in 0..total {
        let mut arcs = Vec::new();
        for &(a, b) in &p {
            match code % 3 {
                1 => arcs.push((a, b)),
                2 => arcs.push((b, a)),
                _ => {}
            }
            code /= 3;
        }
        if acyclic(n, &arcs) {
            out.push(arcs);
        }
    }
    out
}

/// Faithful DAG counts and faithful posets (closures) of every graph on
/// `n` nodes, keyed by the graph's edge list.
pub struct Faithful {
    pub dag_count: HashMap<Vec<(usize, usize)>, usize>,
    pub posets: HashMap<Vec<(usize, usize)>, BTreeSet<Closure>>,
}

/// Ordered pairs of a transitive closure.
pub type Closure = BTreeSet<(usize, usize)>;

pub fn edges_of(m: &Matrix) -> Vec<(usize, usize)> {
    pairs(m.len()).into_iter().filter(|&(a, b)| m[a][b]).collect()
}

pub fn faithful_table(n: usize) -> Faithful {
    let mut dag_count = HashMap::new();
    let mut posets: HashMap<_, BTreeSet<_>> = HashMap::new();
    for arcs in all_dags(n) {
        let key = edges_of(&mig(n, &arcs));
        *dag_count.entry(key.clone()).or_insert(0) += 1;
        posets.entry(key).or_default().insert(closure_pairs(n, &arcs));
    }
    Faithful { dag_count, posets }
}

/// No induced four-node path or cycle.
pub fn trivially_perfect(m: &Matrix) -> bool {
    let n = m.len();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let q = [a, b, c, d];
                    let mut degrees = [0; 4];
                    let mut edges = 0;
                    for i in 0..4 {
                        for j in i + 1..4 {
                            if m[q[i]][q[j]] {
                                degrees[i] += 1;
                                degrees[j] += 1;
                                edges += 1;
                            }
                        }
                    }
                    degrees.sort();
                    // P4: degrees 1,1,2,2 and three edges; C4: all degree 2.
                    if (edges == 3 && degrees == [1, 1, 2, 2]) || (edges == 4 && degrees == [2, 2, 2, 2]) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Smallest number of cliques covering every edge, by trying all
/// collections of maximal-by-inclusion cliques in increasing size.
pub fn min_clique_cover(m: &Matrix) -> usize {
    let n = m.len();
    let cliques: Vec<u32> = (1u32..(1 << n))
        .filter(|&s| s.count_ones() >= 2)
        .filter(|&s| {
            (0..n).all(|a| (0..n).all(|b| a == b || s >> a & 1 == 0 || s >> b & 1 == 0 || m[a][b]))
        })
        .collect();
    let maximal: Vec<u32> = cliques
        .iter()
        .copied()
        .filter(|&s| !cliques.iter().any(|&t| t != s && t & s == s))
        .collect();
    let edges = edges_of(m);
    for k in 0..=maximal.len() {
        if choose(&maximal, k, 0, &mut Vec::new(), &edges) {
            return k;
        }
    }
    unreachable!("all maximal cliques cover every edge")
}

fn choose(sets: &[u32], k: usize, from: usize, chosen: &mut Vec<u32>, edges: &[(usize, usize)]) -> bool {
    if chosen.len() == k {
        return edges
            .iter()
            .all(|&(a, b)| chosen.iter().any(|&s| s >> a & 1 == 1 && s >> b & 1 == 1));
    }
    for i in from..sets.len() {
        chosen.push(sets[i]);
        if choose(sets, k, i + 1, chosen, edges) {
            return true;
        }
        chosen.pop();
    }
    false
}
