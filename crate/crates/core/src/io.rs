//! Text formats: edge lists, DOT and JSON.
//!
//! Edge list: a header line `n m` (optionally followed by `key=value`
//! flags such as `directed=true` or `poset=true`), then `m` lines `u v` with
//! 0-based node indices. Lines starting with `#` are comments; a comment of
//! the form `# name=<index> <label>` attaches a label to a node.
//!
//! JSON: `{"n": .., "edges": [[u, v], ..], "arcs": [[u, v], ..], "labels":
//! {"0": "a", ..}}`; `edges` holds undirected pairs and `arcs` directed
//! ones, both optional.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::Deserialize;
use serde_json::{json, Value};

use crate::enumerate::DagPattern;
use crate::error::{Error, Result};
use crate::graph::{Dag, Labels, MixedGraph, UndirectedGraph};
use crate::nodeset::MAX_NODES;
use crate::poset::Poset;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    EdgeList,
    Dot,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "edgelist" => Ok(Format::EdgeList),
            "dot" => Ok(Format::Dot),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format `{other}` (expected edgelist, dot or json)")),
        }
    }
}

/// Pairs read from any input format before they become a typed graph.
#[derive(Debug, Default)]
struct RawGraph {
    n: usize,
    /// `(u, v, line)`
    edges: Vec<(usize, usize, usize)>,
    arcs: Vec<(usize, usize, usize)>,
    labels: Labels,
    poset: bool,
}

impl RawGraph {
    fn check_pairs(&self) -> Result<()> {
        for &(u, v, line) in self.edges.iter().chain(&self.arcs) {
            for w in [u, v] {
                if w >= self.n {
                    return Err(Error::parse(
                        line,
                        format!("node {w} out of range for n = {}", self.n),
                    ));
                }
            }
            if u == v {
                return Err(Error::parse(line, format!("self-loop at node {u}")));
            }
        }
        Ok(())
    }

    fn into_undirected(self) -> Result<UndirectedGraph> {
        self.check_pairs()?;
        if let Some(&(_, _, line)) = self.arcs.first() {
            return Err(Error::parse(line, "directed arc in an undirected graph"));
        }
        let mut seen = std::collections::HashSet::new();
        for &(u, v, line) in &self.edges {
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::parse(line, format!("duplicate edge {u} - {v}")));
            }
        }
        let g = UndirectedGraph::new(self.n, self.edges.iter().map(|&(u, v, _)| (u, v)))?;
        Ok(g.with_labels(self.labels))
    }

    fn into_dag(self) -> Result<Dag> {
        self.check_pairs()?;
        if let Some(&(_, _, line)) = self.edges.first() {
            return Err(Error::parse(line, "undirected edge in a DAG"));
        }
        let mut seen = std::collections::HashSet::new();
        for &(u, v, line) in &self.arcs {
            if !seen.insert((u, v)) {
                return Err(Error::parse(line, format!("duplicate arc {u} -> {v}")));
            }
        }
        let poset = self.poset;
        let d = Dag::new(self.n, self.arcs.iter().map(|&(u, v, _)| (u, v)))?.with_labels(self.labels);
        if poset && !d.is_atransitive() {
            return Err(Error::parse(1, "poset=true but the arcs are not a transitive reduction"));
        }
        Ok(d)
    }
}

pub fn parse_graph(text: &str, format: Format) -> Result<UndirectedGraph> {
    let raw = match format {
        Format::EdgeList => parse_edge_list(text, false)?,
        Format::Dot => parse_dot(text)?,
        Format::Json => parse_json(text)?,
    };
    raw.into_undirected()
}

/// Parses a DAG. Edge-list pairs are read as arcs `u -> v`.
pub fn parse_dag(text: &str, format: Format) -> Result<Dag> {
    let raw = match format {
        Format::EdgeList => parse_edge_list(text, true)?,
        Format::Dot => parse_dot(text)?,
        Format::Json => parse_json(text)?,
    };
    raw.into_dag()
}

pub fn parse_poset(text: &str, format: Format) -> Result<Poset> {
    Poset::from_reduction(parse_dag(text, format)?)
}

fn parse_edge_list(text: &str, directed_default: bool) -> Result<RawGraph> {
    let mut raw = RawGraph::default();
    let mut header: Option<(usize, bool)> = None;
    let mut pairs = Vec::new();
    let mut last_line = 0;
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        last_line = lineno;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if let Some(rest) = comment.trim().strip_prefix("name=") {
                let (node, label) = rest
                    .split_once(char::is_whitespace)
                    .ok_or_else(|| Error::parse(lineno, "expected `# name=<index> <label>`"))?;
                let node: usize = node
                    .parse()
                    .map_err(|_| Error::parse(lineno, format!("bad node index `{node}`")))?;
                raw.labels.insert(node, label.trim().to_string());
            }
            continue;
        }
        let mut fields = line.split_whitespace();
        match header {
            None => {
                let n = parse_count(fields.next(), lineno, "node count")?;
                let m = parse_count(fields.next(), lineno, "edge count")?;
                if n > MAX_NODES {
                    return Err(Error::Capacity {
                        what: "node count",
                        actual: n,
                        limit: MAX_NODES,
                    });
                }
                let mut directed = directed_default;
                for flag in fields {
                    match flag.split_once('=') {
                        Some(("directed", v)) => directed = parse_bool(v, lineno)?,
                        Some(("poset", v)) => {
                            raw.poset = parse_bool(v, lineno)?;
                            directed |= raw.poset;
                        }
                        _ => return Err(Error::parse(lineno, format!("unknown header flag `{flag}`"))),
                    }
                }
                raw.n = n;
                header = Some((m, directed));
            }
            Some(_) => {
                let u = parse_count(fields.next(), lineno, "node")?;
                let v = parse_count(fields.next(), lineno, "node")?;
                if let Some(extra) = fields.next() {
                    return Err(Error::parse(lineno, format!("unexpected token `{extra}`")));
                }
                pairs.push((u, v, lineno));
            }
        }
    }
    let (m, directed) = header.ok_or_else(|| Error::parse(last_line.max(1), "missing `n m` header"))?;
    if pairs.len() != m {
        return Err(Error::parse(
            last_line.max(1),
            format!("header declares {m} edges but {} were listed", pairs.len()),
        ));
    }
    if let Some((&node, _)) = raw.labels.range(raw.n..).next() {
        return Err(Error::parse(1, format!("label for node {node} out of range")));
    }
    if directed {
        raw.arcs = pairs;
    } else {
        raw.edges = pairs;
    }
    Ok(raw)
}

fn parse_count(tok: Option<&str>, line: usize, what: &str) -> Result<usize> {
    let tok = tok.ok_or_else(|| Error::parse(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| Error::parse(line, format!("expected a non-negative integer {what}, found `{tok}`")))
}

fn parse_bool(v: &str, line: usize) -> Result<bool> {
    v.parse()
        .map_err(|_| Error::parse(line, format!("expected true or false, found `{v}`")))
}

#[derive(Deserialize)]
struct JsonGraph {
    n: usize,
    #[serde(default)]
    edges: Vec<[usize; 2]>,
    #[serde(default)]
    arcs: Vec<[usize; 2]>,
    #[serde(default)]
    labels: BTreeMap<String, String>,
    #[serde(default)]
    poset: bool,
}

fn parse_json(text: &str) -> Result<RawGraph> {
    let g: JsonGraph =
        serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.to_string()))?;
    if g.n > MAX_NODES {
        return Err(Error::Capacity {
            what: "node count",
            actual: g.n,
            limit: MAX_NODES,
        });
    }
    let mut labels = Labels::new();
    for (k, v) in g.labels {
        let node: usize = k
            .parse()
            .map_err(|_| Error::parse(1, format!("label key `{k}` is not a node index")))?;
        if node >= g.n {
            return Err(Error::parse(1, format!("label for node {node} out of range")));
        }
        labels.insert(node, v);
    }
    Ok(RawGraph {
        n: g.n,
        edges: g.edges.iter().map(|&[u, v]| (u, v, 1)).collect(),
        arcs: g.arcs.iter().map(|&[u, v]| (u, v, 1)).collect(),
        labels,
        poset: g.poset,
    })
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Id(String),
    Undirected,
    Directed,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Eq,
    Sep,
}

fn tokenize_dot(text: &str) -> Result<Vec<(Tok, usize)>> {
    let mut out = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let trimmed = line.trim_start();
        if trimmed.starts_with('#') {
            continue;
        }
        let mut chars = line.char_indices().peekable();
        while let Some((pos, c)) = chars.next() {
            let tok = match c {
                c if c.is_whitespace() => continue,
                '/' if line[pos..].starts_with("//") => break,
                '{' => Tok::LBrace,
                '}' => Tok::RBrace,
                '[' => Tok::LBracket,
                ']' => Tok::RBracket,
                '=' => Tok::Eq,
                ';' | ',' => Tok::Sep,
                '-' if line[pos..].starts_with("--") => {
                    chars.next();
                    Tok::Undirected
                }
                '-' if line[pos..].starts_with("->") => {
                    chars.next();
                    Tok::Directed
                }
                '"' => {
                    let mut s = String::new();
                    let mut closed = false;
                    while let Some((_, c)) = chars.next() {
                        match c {
                            '\\' => {
                                if let Some((_, e)) = chars.next() {
                                    s.push(e);
                                }
                            }
                            '"' => {
                                closed = true;
                                break;
                            }
                            c => s.push(c),
                        }
                    }
                    if !closed {
                        return Err(Error::parse(lineno, "unterminated string"));
                    }
                    Tok::Id(s)
                }
                c if c.is_alphanumeric() || c == '_' || c == '.' => {
                    let mut s = String::from(c);
                    while let Some(&(_, d)) = chars.peek() {
                        if d.is_alphanumeric() || d == '_' || d == '.' {
                            s.push(d);
                            chars.next();
                        } else {
                            break;
                        }
                    }
                    Tok::Id(s)
                }
                other => return Err(Error::parse(lineno, format!("unexpected character `{other}`"))),
            };
            out.push((tok, lineno));
        }
    }
    Ok(out)
}

/// Reads the subset of DOT this crate emits: node statements with an
/// optional `label` attribute and `--` / `->` edge statements. Numeric
/// identifiers are node indices; otherwise nodes are numbered in order of
/// first appearance and the identifier becomes the label.
fn parse_dot(text: &str) -> Result<RawGraph> {
    let toks = tokenize_dot(text)?;
    let mut pos = 0;
    let line_at = |p: usize| toks.get(p).or(toks.last()).map_or(1, |t| t.1);
    let expect_id = |pos: &mut usize| -> Result<(String, usize)> {
        match toks.get(*pos) {
            Some((Tok::Id(s), l)) => {
                *pos += 1;
                Ok((s.clone(), *l))
            }
            _ => Err(Error::parse(line_at(*pos), "expected an identifier")),
        }
    };
    let (kw, l) = expect_id(&mut pos)?;
    let kw = if kw == "strict" { expect_id(&mut pos)?.0 } else { kw };
    let directed = match kw.as_str() {
        "graph" => false,
        "digraph" => true,
        _ => return Err(Error::parse(l, "expected `graph` or `digraph`")),
    };
    if let Some((Tok::Id(_), _)) = toks.get(pos) {
        pos += 1;
    }
    if toks.get(pos).map(|t| &t.0) != Some(&Tok::LBrace) {
        return Err(Error::parse(line_at(pos), "expected `{`"));
    }
    pos += 1;

    let mut names: Vec<String> = Vec::new();
    let mut attr_labels: BTreeMap<String, String> = BTreeMap::new();
    let mut pairs: Vec<(String, String, bool, usize)> = Vec::new();
    let intern = |names: &mut Vec<String>, s: &str| {
        if !names.iter().any(|x| x == s) {
            names.push(s.to_string());
        }
    };
    loop {
        match toks.get(pos) {
            None => return Err(Error::parse(line_at(pos), "missing `}`")),
            Some((Tok::RBrace, _)) => break,
            Some((Tok::Sep, _)) => {
                pos += 1;
                continue;
            }
            _ => {}
        }
        let (first, line) = expect_id(&mut pos)?;
        // graph-level `key=value` and default attribute statements
        if toks.get(pos).map(|t| &t.0) == Some(&Tok::Eq) {
            pos += 2;
            continue;
        }
        let is_default = matches!(first.as_str(), "node" | "edge" | "graph");
        let mut chain = vec![first];
        let mut chain_directed = None;
        while let Some((t @ (Tok::Undirected | Tok::Directed), l)) = toks.get(pos) {
            let d = *t == Tok::Directed;
            if d != directed {
                return Err(Error::parse(*l, "edge operator does not match graph kind"));
            }
            chain_directed = Some(d);
            pos += 1;
            chain.push(expect_id(&mut pos)?.0);
        }
        let mut attrs = BTreeMap::new();
        if toks.get(pos).map(|t| &t.0) == Some(&Tok::LBracket) {
            pos += 1;
            loop {
                match toks.get(pos) {
                    Some((Tok::RBracket, _)) => {
                        pos += 1;
                        break;
                    }
                    Some((Tok::Sep, _)) => pos += 1,
                    Some((Tok::Id(k), _)) => {
                        let k = k.clone();
                        pos += 1;
                        if toks.get(pos).map(|t| &t.0) == Some(&Tok::Eq) {
                            pos += 1;
                            let (v, _) = expect_id(&mut pos)?;
                            attrs.insert(k, v);
                        }
                    }
                    _ => return Err(Error::parse(line_at(pos), "malformed attribute list")),
                }
            }
        }
        if is_default && chain.len() == 1 {
            continue;
        }
        for name in &chain {
            intern(&mut names, name);
        }
        match chain_directed {
            None => {
                if let Some(label) = attrs.remove("label") {
                    attr_labels.insert(chain[0].clone(), label);
                }
            }
            Some(d) => {
                for w in chain.windows(2) {
                    pairs.push((w[0].clone(), w[1].clone(), d, line));
                }
            }
        }
    }

    let numeric = names.iter().all(|s| s.parse::<usize>().is_ok());
    let index_of = |s: &str| -> usize {
        if numeric {
            s.parse().expect("checked numeric")
        } else {
            names.iter().position(|x| x == s).expect("interned")
        }
    };
    let n = if numeric {
        names.iter().map(|s| index_of(s) + 1).max().unwrap_or(0)
    } else {
        names.len()
    };
    if n > MAX_NODES {
        return Err(Error::Capacity {
            what: "node count",
            actual: n,
            limit: MAX_NODES,
        });
    }
    let mut labels = Labels::new();
    for name in &names {
        let v = index_of(name);
        match attr_labels.get(name) {
            Some(l) => {
                labels.insert(v, l.clone());
            }
            None if !numeric => {
                labels.insert(v, name.clone());
            }
            None => {}
        }
    }
    let mut raw = RawGraph {
        n,
        labels,
        ..RawGraph::default()
    };
    for (a, b, d, line) in pairs {
        let pair = (index_of(&a), index_of(&b), line);
        if d {
            raw.arcs.push(pair);
        } else {
            raw.edges.push(pair);
        }
    }
    Ok(raw)
}

fn labels_json(labels: &Labels) -> Value {
    Value::Object(
        labels
            .iter()
            .map(|(k, v)| (k.to_string(), Value::String(v.clone())))
            .collect(),
    )
}

fn pairs_json(pairs: &[(usize, usize)]) -> Value {
    Value::Array(pairs.iter().map(|&(u, v)| json!([u, v])).collect())
}

pub fn graph_to_json(g: &UndirectedGraph) -> Value {
    let mut v = json!({ "n": g.n(), "edges": pairs_json(&g.edges()) });
    if !g.labels().is_empty() {
        v["labels"] = labels_json(g.labels());
    }
    v
}

pub fn dag_to_json(d: &Dag) -> Value {
    let mut v = json!({ "n": d.n(), "arcs": pairs_json(&d.arcs()) });
    if !d.labels().is_empty() {
        v["labels"] = labels_json(d.labels());
    }
    v
}

pub fn poset_to_json(p: &Poset) -> Value {
    let mut v = dag_to_json(p.reduction());
    v["poset"] = Value::Bool(true);
    v
}

pub fn mixed_to_json(m: &MixedGraph) -> Value {
    let mut v = json!({
        "n": m.n(),
        "arcs": pairs_json(&m.arcs()),
        "edges": pairs_json(&m.undirected_edges()),
    });
    if !m.labels().is_empty() {
        v["labels"] = labels_json(m.labels());
    }
    v
}

pub fn pattern_to_json(p: &DagPattern) -> Value {
    let mut v = dag_to_json(&p.base);
    v["optional"] = pairs_json(&p.optional);
    v["selection"] = json!(p.selection.chosen());
    v
}

fn edge_list(n: usize, pairs: &[(usize, usize)], flags: &str, labels: &Labels, suffix: &dyn Fn(usize) -> &'static str) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{} {}{}", n, pairs.len(), flags);
    for (v, l) in labels {
        let _ = writeln!(s, "# name={v} {l}");
    }
    for (k, (u, v)) in pairs.iter().enumerate() {
        let _ = writeln!(s, "{u} {v}{}", suffix(k));
    }
    s
}

fn dot_id(labels: &Labels, v: usize) -> String {
    match labels.get(&v) {
        Some(l) => format!("{v} [label=\"{}\"]", l.replace('\\', "\\\\").replace('"', "\\\"")),
        None => v.to_string(),
    }
}

fn dot(kind: &str, name: &str, n: usize, labels: &Labels, lines: &[String]) -> String {
    let mut s = format!("{kind} {name} {{\n");
    for v in 0..n {
        let _ = writeln!(s, "  {};", dot_id(labels, v));
    }
    for l in lines {
        let _ = writeln!(s, "  {l};");
    }
    s.push_str("}\n");
    s
}

pub fn write_graph(g: &UndirectedGraph, format: Format) -> String {
    match format {
        Format::EdgeList => edge_list(g.n(), &g.edges(), "", g.labels(), &|_| ""),
        Format::Dot => {
            let lines: Vec<String> = g.edges().iter().map(|(u, v)| format!("{u} -- {v}")).collect();
            dot("graph", "G", g.n(), g.labels(), &lines)
        }
        Format::Json => graph_to_json(g).to_string() + "\n",
    }
}

pub fn write_dag(d: &Dag, format: Format) -> String {
    match format {
        Format::EdgeList => edge_list(d.n(), &d.arcs(), " directed=true", d.labels(), &|_| ""),
        Format::Dot => {
            let lines: Vec<String> = d.arcs().iter().map(|(u, v)| format!("{u} -> {v}")).collect();
            dot("digraph", "G", d.n(), d.labels(), &lines)
        }
        Format::Json => dag_to_json(d).to_string() + "\n",
    }
}

pub fn write_poset(p: &Poset, format: Format) -> String {
    let d = p.reduction();
    match format {
        Format::EdgeList => edge_list(d.n(), &d.arcs(), " poset=true", d.labels(), &|_| ""),
        Format::Dot => {
            let lines: Vec<String> = d.arcs().iter().map(|(u, v)| format!("{u} -> {v}")).collect();
            dot("digraph", "P", d.n(), d.labels(), &lines)
        }
        Format::Json => poset_to_json(p).to_string() + "\n",
    }
}

/// Mixed graphs: in edge lists, lines read `u -> v` or `u -- v`; in DOT,
/// undirected edges are drawn as `->` with `dir=none` so the output stays a
/// valid digraph.
pub fn write_mixed(m: &MixedGraph, format: Format) -> String {
    let arcs = m.arcs();
    let undirected = m.undirected_edges();
    match format {
        Format::EdgeList => {
            let mut s = format!("{} {} mixed=true\n", m.n(), arcs.len() + undirected.len());
            for (v, l) in m.labels() {
                let _ = writeln!(s, "# name={v} {l}");
            }
            for (u, v) in &arcs {
                let _ = writeln!(s, "{u} -> {v}");
            }
            for (u, v) in &undirected {
                let _ = writeln!(s, "{u} -- {v}");
            }
            s
        }
        Format::Dot => {
            let mut lines: Vec<String> = arcs.iter().map(|(u, v)| format!("{u} -> {v}")).collect();
            lines.extend(undirected.iter().map(|(u, v)| format!("{u} -> {v} [dir=none]")));
            dot("digraph", "S", m.n(), m.labels(), &lines)
        }
        Format::Json => mixed_to_json(m).to_string() + "\n",
    }
}

/// Patterns: optional arcs are marked `optional` in edge lists and dashed in
/// DOT.
pub fn write_pattern(p: &DagPattern, format: Format) -> String {
    let base = p.base.arcs();
    match format {
        Format::EdgeList => {
            let mut all = base.clone();
            all.extend(&p.optional);
            let split = base.len();
            let suffix = move |k: usize| if k >= split { " optional" } else { "" };
            edge_list(p.base.n(), &all, " pattern=true", p.base.labels(), &suffix)
        }
        Format::Dot => {
            let mut lines: Vec<String> = base.iter().map(|(u, v)| format!("{u} -> {v}")).collect();
            lines.extend(p.optional.iter().map(|(u, v)| format!("{u} -> {v} [style=dashed]")));
            dot("digraph", "Pattern", p.base.n(), p.base.labels(), &lines)
        }
        Format::Json => pattern_to_json(p).to_string() + "\n",
    }
}
