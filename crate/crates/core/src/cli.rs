//! The `smig` command line.
//!
//! Input graphs are read from a file argument or standard input (`-` or no
//! argument). The input format is detected from the first non-comment
//! character: `{` means JSON, `graph`/`digraph`/`strict` mean DOT, anything
//! else is an edge list. `--format` selects the output format.
//!
//! Exit codes: 0 success, 1 the answer is "no" (not a SMIG, infeasible
//! budget, failed check), 2 usage or input error, 3 capacity limit.

use std::io::{Read, Write};
use std::ops::ControlFlow;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::census::{census_connected, count_faithful_to_complete, count_labeled_posets};
use crate::enumerate::{
    minimal_posets, visit_faithful_dag_patterns, visit_faithful_dags, visit_faithful_posets,
    visit_sink_orientations, tree_poset,
};
use crate::error::Error;
use crate::graph::{Dag, UndirectedGraph};
use crate::io::{self, Format};
use crate::latent::{
    edge_clique_cover, edge_clique_cover_within, min_auxiliary_bruteforce, min_auxiliary_dag,
    dag_from_cover_reusing_simplicial, AugmentedDag, CliqueCover, CoverMode,
};
use crate::nodeset::NodeSet;
use crate::oracle::{run_check, Check};
use crate::smig::{embed_as_induced_smig, has_unique_faithful_dag, is_smig, sink_graph, SmigVerdict};

#[derive(Parser, Debug)]
#[command(name = "smig", version, about = "Faithful DAGs and posets for marginal independence graphs")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, default_value = "edgelist")]
    format: OutFormat,
    /// Worker threads for parallel loops (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Reserved; no command uses randomness.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OutFormat {
    Edgelist,
    Dot,
    Json,
}

impl From<OutFormat> for Format {
    fn from(f: OutFormat) -> Format {
        match f {
            OutFormat::Edgelist => Format::EdgeList,
            OutFormat::Dot => Format::Dot,
            OutFormat::Json => Format::Json,
        }
    }
}

#[derive(Args, Debug)]
struct Input {
    /// Graph file; `-` or omitted reads standard input.
    input: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether the graph is a SMIG; print its simplexes or a witness edge.
    Recognize(Input),
    /// Print the sink graph (boundary-containment orientation).
    SinkGraph(Input),
    /// List faithful posets, DAGs, DAG patterns, minimal or maximal posets.
    Enumerate {
        #[arg(long, default_value = "posets")]
        mode: EnumMode,
        /// Stop after this many outputs.
        #[arg(long)]
        limit: Option<u64>,
        /// Print only the number of outputs.
        #[arg(long)]
        count_only: bool,
        #[command(flatten)]
        input: Input,
    },
    /// Print a tree-shaped faithful poset of a connected trivially perfect graph.
    Tree(Input),
    /// Decide whether exactly one DAG is faithful.
    Unique(Input),
    /// Embed the graph as an induced subgraph of a SMIG.
    Embed(Input),
    /// Faithful DAG with auxiliary nodes, from an edge clique cover.
    Latent {
        #[arg(long, default_value = "exact")]
        mode: LatentMode,
        /// Exact mode: find a cover of at most this size. Oracle mode:
        /// largest number of auxiliaries to try.
        #[arg(long)]
        budget: Option<usize>,
        #[command(flatten)]
        input: Input,
    },
    /// Count graph classes (--table1) or labeled posets (--table2).
    Census {
        #[arg(long, conflicts_with = "table2", required_unless_present = "table2")]
        table1: bool,
        #[arg(long)]
        table2: bool,
        /// Largest node count.
        #[arg(short)]
        n: usize,
        /// Permit the slow rows beyond the default limits.
        #[arg(long)]
        allow_expensive: bool,
    },
    /// Compare the algorithms against exhaustive search on all connected graphs.
    Oracle {
        #[arg(long)]
        check: CheckKind,
        #[arg(short)]
        n: usize,
    },
    /// Marginal independence graph of a DAG.
    Mig(Input),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum EnumMode {
    Posets,
    Dags,
    Patterns,
    Minimal,
    Maximal,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum LatentMode {
    Exact,
    Greedy,
    Oracle,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CheckKind {
    Enumeration,
    Recognition,
    Maximality,
}

/// Failure of a command: an exit code and a message for standard error.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::NotSmig(..) | Error::NotTriviallyPerfect(_) | Error::Disconnected | Error::Inconsistent(_) => 1,
            Error::Capacity { .. } => 3,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Failure {
        Failure {
            code: 2,
            message: e.to_string(),
        }
    }
}

type Outcome = std::result::Result<i32, Failure>;

/// Runs the command line `args` (including the program name) and returns
/// the process exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(rendered.as_bytes())
            } else {
                stderr.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let mut ctx = Ctx {
        stdin: String::new(),
        out: Vec::new(),
        format: cli.format.into(),
    };
    if cli.command.reads_stdin() {
        if let Err(e) = stdin.read_to_string(&mut ctx.stdin) {
            let _ = writeln!(stderr, "error: {e}");
            return 2;
        }
    }
    let result = match cli.threads {
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(|| ctx.dispatch(cli.command)),
            Err(e) => Err(Failure {
                code: 2,
                message: e.to_string(),
            }),
        },
        None => ctx.dispatch(cli.command),
    };
    if let Err(e) = stdout.write_all(&ctx.out) {
        let _ = writeln!(stderr, "error: {e}");
        return 2;
    }
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

/// Standard input is read before dispatch and output is buffered, so the
/// work can move to a thread pool.
struct Ctx {
    stdin: String,
    out: Vec<u8>,
    format: Format,
}

impl Command {
    fn input(&self) -> Option<&Input> {
        match self {
            Command::Recognize(i)
            | Command::SinkGraph(i)
            | Command::Tree(i)
            | Command::Unique(i)
            | Command::Embed(i)
            | Command::Mig(i) => Some(i),
            Command::Enumerate { input, .. } | Command::Latent { input, .. } => Some(input),
            Command::Census { .. } | Command::Oracle { .. } => None,
        }
    }

    fn reads_stdin(&self) -> bool {
        self.input().is_some_and(|i| matches!(i.input.as_deref(), None | Some("-")))
    }
}

fn detect(text: &str) -> Format {
    let body = text
        .lines()
        .map(str::trim_start)
        .find(|l| !l.is_empty() && !l.starts_with('#') && !l.starts_with("//"))
        .unwrap_or("");
    if body.starts_with('{') {
        Format::Json
    } else if ["graph", "digraph", "strict"].iter().any(|k| body.starts_with(k)) {
        Format::Dot
    } else {
        Format::EdgeList
    }
}

fn names(u: &UndirectedGraph, set: NodeSet) -> Vec<String> {
    set.iter().map(|v| u.name(v)).collect()
}

impl Ctx {
    fn read_text(&mut self, input: &Input) -> std::result::Result<String, Failure> {
        match input.input.as_deref() {
            None | Some("-") => Ok(std::mem::take(&mut self.stdin)),
            Some(path) => std::fs::read_to_string(path).map_err(|e| Failure {
                code: 2,
                message: format!("{path}: {e}"),
            }),
        }
    }

    fn read_graph(&mut self, input: &Input) -> std::result::Result<UndirectedGraph, Failure> {
        let text = self.read_text(input)?;
        Ok(io::parse_graph(&text, detect(&text))?)
    }

    fn emit(&mut self, text: &str) -> Outcome {
        self.out.write_all(text.as_bytes())?;
        Ok(0)
    }

    fn dispatch(&mut self, command: Command) -> Outcome {
        match command {
            Command::Recognize(input) => {
                let u = self.read_graph(&input)?;
                self.recognize(&u)
            }
            Command::SinkGraph(input) => {
                let u = self.read_graph(&input)?;
                let s = sink_graph(&u)?;
                self.emit(&io::write_mixed(s.mixed(), self.format))
            }
            Command::Enumerate {
                mode,
                limit,
                count_only,
                input,
            } => {
                let u = self.read_graph(&input)?;
                self.enumerate(&u, mode, limit, count_only)
            }
            Command::Tree(input) => {
                let u = self.read_graph(&input)?;
                let p = tree_poset(&u)?;
                self.emit(&io::write_poset(&p, self.format))
            }
            Command::Unique(input) => {
                let u = self.read_graph(&input)?;
                let unique = has_unique_faithful_dag(&u)?;
                let text = match self.format {
                    Format::Json => format!("{}\n", json!({ "unique": unique })),
                    _ => format!("{}\n", if unique { "unique" } else { "not unique" }),
                };
                self.emit(&text)?;
                Ok(if unique { 0 } else { 1 })
            }
            Command::Embed(input) => {
                let u = self.read_graph(&input)?;
                let (g, d) = embed_as_induced_smig(&u)?;
                let text = match self.format {
                    Format::Json => format!("{}\n", json!({ "graph": io::graph_to_json(&g), "dag": io::dag_to_json(&d) })),
                    f => format!("{}\n{}", io::write_graph(&g, f), io::write_dag(&d, f)),
                };
                self.emit(&text)
            }
            Command::Latent { mode, budget, input } => {
                let u = self.read_graph(&input)?;
                self.latent(&u, mode, budget)
            }
            Command::Census {
                table1,
                n,
                allow_expensive,
                ..
            } => {
                if table1 {
                    self.table1(n, allow_expensive)
                } else {
                    self.table2(n, allow_expensive)
                }
            }
            Command::Oracle { check, n } => self.oracle(check, n),
            Command::Mig(input) => {
                let text = self.read_text(&input)?;
                let d = io::parse_dag(&text, detect(&text))?;
                self.emit(&io::write_graph(&d.marginal_independence_graph(), self.format))
            }
        }
    }

    fn recognize(&mut self, u: &UndirectedGraph) -> Outcome {
        match is_smig(u) {
            SmigVerdict::Smig(d) => {
                let simplexes: Vec<(Vec<String>, Vec<String>)> = d
                    .simplexes
                    .iter()
                    .zip(&d.simplicial)
                    .map(|(&s, &i)| (names(u, s), names(u, i)))
                    .collect();
                let text = match self.format {
                    Format::Json => {
                        let list: Vec<Value> = simplexes
                            .iter()
                            .map(|(s, i)| json!({ "nodes": s, "simplicial": i }))
                            .collect();
                        format!("{}\n", json!({ "smig": true, "simplexes": list }))
                    }
                    _ => {
                        let mut t = String::from("smig\n");
                        for (s, i) in &simplexes {
                            t.push_str(&format!("simplex {} simplicial {}\n", s.join(" "), i.join(" ")));
                        }
                        t
                    }
                };
                self.emit(&text)
            }
            SmigVerdict::NotSmig { edge: (a, b) } => {
                let text = match self.format {
                    Format::Json => format!("{}\n", json!({ "smig": false, "witness": [u.name(a), u.name(b)] })),
                    _ => format!("not smig\nwitness {} {}\n", u.name(a), u.name(b)),
                };
                self.emit(&text)?;
                Ok(1)
            }
        }
    }

    fn enumerate(&mut self, u: &UndirectedGraph, mode: EnumMode, limit: Option<u64>, count_only: bool) -> Outcome {
        let format = self.format;
        let labels = u.labels().clone();
        let mut items: Vec<String> = Vec::new();
        let mut json_items: Vec<Value> = Vec::new();
        let mut count = 0u64;
        let cap = limit.unwrap_or(u64::MAX);
        let mut push = |text: Option<String>, value: Option<Value>| {
            count += 1;
            if !count_only {
                if let Some(t) = text {
                    items.push(t);
                }
                if let Some(v) = value {
                    json_items.push(v);
                }
            }
            if count >= cap {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        };
        let render_poset = |p: &crate::Poset| {
            let p = p.clone().with_labels(labels.clone());
            match format {
                Format::Json => (None, Some(io::poset_to_json(&p))),
                f => (Some(io::write_poset(&p, f)), None),
            }
        };
        let render_dag = |d: &Dag| {
            let d = d.clone().with_labels(labels.clone());
            match format {
                Format::Json => (None, Some(io::dag_to_json(&d))),
                f => (Some(io::write_dag(&d, f)), None),
            }
        };
        if cap > 0 {
            match mode {
                EnumMode::Posets => {
                    visit_faithful_posets(u, |p| {
                        let (t, v) = render_poset(p);
                        push(t, v)
                    })?;
                }
                EnumMode::Maximal => {
                    visit_sink_orientations(u, |p| {
                        let (t, v) = render_poset(p);
                        push(t, v)
                    })?;
                }
                EnumMode::Minimal => {
                    for m in minimal_posets(u)? {
                        let (t, v) = render_poset(&m.poset);
                        if push(t, v).is_break() {
                            break;
                        }
                    }
                }
                EnumMode::Dags => {
                    visit_faithful_dags(u, |d| {
                        let (t, v) = render_dag(d);
                        push(t, v)
                    })?;
                }
                EnumMode::Patterns => {
                    visit_faithful_dag_patterns(u, |p| {
                        let mut p = p.clone();
                        p.base = p.base.with_labels(labels.clone());
                        match format {
                            Format::Json => push(None, Some(io::pattern_to_json(&p))),
                            f => push(Some(io::write_pattern(&p, f)), None),
                        }
                    })?;
                }
            }
        }
        let text = if count_only {
            format!("{count}\n")
        } else {
            match format {
                Format::Json => format!("{}\n", Value::Array(json_items)),
                Format::EdgeList => items.join("\n"),
                Format::Dot => items.concat(),
            }
        };
        self.emit(&text)
    }

    fn latent(&mut self, u: &UndirectedGraph, mode: LatentMode, budget: Option<usize>) -> Outcome {
        let smig = is_smig(u).is_smig();
        let (aug, cover, proven): (AugmentedDag, Option<CliqueCover>, bool) = match mode {
            LatentMode::Oracle => {
                let max_q = budget.unwrap_or(u.edge_count());
                match min_auxiliary_bruteforce(u, max_q)? {
                    Some(a) => (a, None, true),
                    None => {
                        self.emit(&format!("{}\n", json!({ "feasible": false, "budget": max_q })))?;
                        return Ok(1);
                    }
                }
            }
            LatentMode::Exact | LatentMode::Greedy if smig => (min_auxiliary_dag(u, CoverMode::Exact)?, None, true),
            LatentMode::Exact => {
                let cover = match budget {
                    Some(k) => match edge_clique_cover_within(u, k)? {
                        Some(c) => c,
                        None => {
                            self.emit(&format!("{}\n", json!({ "feasible": false, "budget": k })))?;
                            return Ok(1);
                        }
                    },
                    None => edge_clique_cover(u, CoverMode::Exact)?,
                };
                let aug = dag_from_cover_reusing_simplicial(u, &cover)?;
                (aug, Some(cover), false)
            }
            LatentMode::Greedy => {
                let cover = edge_clique_cover(u, CoverMode::Greedy)?;
                (dag_from_cover_reusing_simplicial(u, &cover)?, Some(cover), false)
            }
        };
        let minimality = if proven { "proven" } else { "upper bound" };
        let text = match self.format {
            Format::Json => {
                let cliques: Vec<Vec<String>> = cover
                    .iter()
                    .flat_map(|c| c.cliques.iter().map(|&s| names(u, s)))
                    .collect();
                let arcs: Vec<[String; 2]> = aug
                    .dag
                    .arcs()
                    .into_iter()
                    .filter(|(a, _)| aug.auxiliary.contains(*a))
                    .map(|(a, b)| [aug.dag.name(a), aug.dag.name(b)])
                    .collect();
                let v = json!({
                    "observed": aug.observed.len(),
                    "auxiliary": aug.auxiliary_count(),
                    "minimality": minimality,
                    "cliques": cliques,
                    "auxiliary_arcs": arcs,
                    "dag": io::dag_to_json(&aug.dag),
                });
                format!("{v}\n")
            }
            f => format!(
                "# auxiliary={} minimality={}\n{}",
                aug.auxiliary_count(),
                minimality.replace(' ', "-"),
                io::write_dag(&aug.dag, f)
            ),
        };
        self.emit(&text)
    }

    fn table1(&mut self, n: usize, allow_expensive: bool) -> Outcome {
        let rows = (2..=n.max(1))
            .map(|k| census_connected(k, allow_expensive))
            .collect::<crate::Result<Vec<_>>>()?;
        let text = match self.format {
            Format::Json => format!("{}\n", serde_json::to_value(&rows).expect("rows serialize")),
            _ => {
                let mut t = format!("{:>3} {:>10} {:>10} {:>10}\n", "n", "connected", "smig", "unique");
                for r in &rows {
                    t.push_str(&format!("{:>3} {:>10} {:>10} {:>10}\n", r.n, r.graphs, r.smigs, r.unique_dag));
                }
                t
            }
        };
        self.emit(&text)
    }

    fn table2(&mut self, n: usize, allow_expensive: bool) -> Outcome {
        let limit = if allow_expensive { crate::census::POSET_LIMIT } else { 6 };
        Error::check_capacity("nodes for poset table", n, limit)?;
        let mut rows = Vec::new();
        for k in 1..=n {
            rows.push((k, count_labeled_posets(k)?, count_faithful_to_complete(k)?));
        }
        let text = match self.format {
            Format::Json => {
                let v: Vec<Value> = rows
                    .iter()
                    .map(|&(k, p, f)| json!({ "n": k, "posets": p, "faithful_to_complete": f }))
                    .collect();
                format!("{}\n", Value::Array(v))
            }
            _ => {
                let mut t = format!("{:>3} {:>10} {:>10}\n", "n", "posets", "faithful");
                for (k, p, f) in rows {
                    t.push_str(&format!("{k:>3} {p:>10} {f:>10}\n"));
                }
                t
            }
        };
        self.emit(&text)
    }

    fn oracle(&mut self, kind: CheckKind, n: usize) -> Outcome {
        let check = match kind {
            CheckKind::Enumeration => Check::Enumeration,
            CheckKind::Recognition => Check::Recognition,
            CheckKind::Maximality => Check::Maximality,
        };
        let report = run_check(check, n)?;
        let status = if report.passed() { "PASS" } else { "FAIL" };
        let text = match self.format {
            Format::Json => format!(
                "{}\n",
                json!({
                    "check": format!("{check:?}").to_lowercase(),
                    "n": n,
                    "graphs": report.graphs,
                    "smigs": report.smigs,
                    "passed": report.passed(),
                    "failures": report.failures,
                })
            ),
            _ => {
                let mut t = format!(
                    "{} n={n} graphs={} smigs={}: {status}\n",
                    format!("{check:?}").to_lowercase(),
                    report.graphs,
                    report.smigs
                );
                for f in &report.failures {
                    t.push_str(&format!("counterexample {f}\n"));
                }
                t
            }
        };
        self.emit(&text)?;
        Ok(if report.passed() { 0 } else { 1 })
    }
}
