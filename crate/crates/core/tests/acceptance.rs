//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines always reach standard
//! output. Criterion 9 (the larger census rows) runs only when
//! `SMIG_STRETCH=1` is set.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::Value;

use smig::census::{census_connected, count_faithful_to_complete, count_labeled_posets};
use smig::enumerate::{faithful_posets, minimal_posets, sink_orientations, tree_poset, visit_faithful_posets};
use smig::latent::{dag_from_cover, edge_clique_cover, hardness_gadget, min_auxiliary_bruteforce, CoverMode};
use smig::smig::{has_unique_faithful_dag, is_smig};
use smig::{Error, Poset, UndirectedGraph};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn fixture(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("fixtures");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn cli(args: &[&str]) -> (i32, String, Duration) {
    let start = Instant::now();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("smig").chain(args.iter().copied());
    let code = smig::cli::run(argv, &mut std::io::empty(), &mut out, &mut err);
    (code, String::from_utf8(out).expect("utf-8 output"), start.elapsed())
}

fn graph(n: usize, edges: &[(usize, usize)]) -> UndirectedGraph {
    UndirectedGraph::new(n, edges.iter().copied()).expect("valid graph")
}

fn closure_of(p: &Poset) -> BTreeSet<(usize, usize)> {
    common::closure_pairs(p.n(), &p.reduction().arcs())
}

fn one_based(arcs: &[(usize, usize)]) -> Vec<(usize, usize)> {
    arcs.iter().map(|&(a, b)| (a - 1, b - 1)).collect()
}

fn criterion_1() -> Outcome {
    let (code, out, t1) = cli(&["recognize", &fixture("fig1a.txt")]);
    ensure!(code == 0 && out.starts_with("smig\n"), "six-node SMIG fixture not recognized: {code} {out}");
    let (code, out, t2) = cli(&["recognize", &fixture("fig1c.txt")]);
    ensure!(code == 1 && out.contains("witness"), "non-SMIG fixture: exit {code}, output {out}");

    let (code, out, t3) = cli(&["enumerate", "--mode", "posets", "--format", "json", &fixture("fig6a.txt")]);
    ensure!(code == 0, "enumerate exited {code}");
    let listed: Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
    let got: BTreeSet<BTreeSet<(usize, usize)>> = listed
        .as_array()
        .ok_or("expected a JSON array")?
        .iter()
        .map(|p| {
            p["arcs"]
                .as_array()
                .unwrap()
                .iter()
                .map(|a| (a[0].as_u64().unwrap() as usize, a[1].as_u64().unwrap() as usize))
                .collect()
        })
        .collect();
    ensure!(listed.as_array().unwrap().len() == 6, "expected 6 posets, got {}", listed.as_array().unwrap().len());
    // Arc sets as drawn (nodes v1..v8); two drawings carry an implied arc,
    // so both sides are compared as transitive reductions.
    let drawn: [&[(usize, usize)]; 6] = [
        &[(1, 5), (2, 5), (1, 6), (3, 6), (4, 6), (1, 7), (3, 7), (4, 7), (1, 8), (2, 8), (3, 8)],
        &[(1, 5), (2, 5), (1, 6), (3, 6), (4, 6), (1, 7), (3, 7), (4, 7), (3, 8), (5, 8)],
        &[(1, 5), (2, 5), (7, 6), (1, 7), (3, 7), (4, 7), (1, 8), (2, 8), (3, 8)],
        &[(1, 5), (2, 5), (7, 6), (1, 7), (3, 7), (4, 7), (3, 8), (5, 8)],
        &[(1, 5), (2, 5), (1, 6), (3, 6), (4, 6), (6, 7), (1, 7), (1, 8), (2, 8), (3, 8)],
        &[(1, 5), (2, 5), (1, 6), (3, 6), (4, 6), (6, 7), (1, 7), (3, 8), (5, 8)],
    ];
    let expected: BTreeSet<BTreeSet<(usize, usize)>> =
        drawn.iter().map(|arcs| common::reduction_pairs(8, &one_based(arcs))).collect();
    ensure!(got == expected, "poset arc sets differ from the reference drawings");

    let (code, out, t4) = cli(&["enumerate", "--mode", "minimal", "--format", "json", &fixture("fig3a.txt")]);
    let v: Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
    let list = v.as_array().ok_or("expected a JSON array")?;
    ensure!(code == 0 && list.len() == 1, "expected one minimal poset, got {}", list.len());
    let arcs: BTreeSet<(u64, u64)> = list[0]["arcs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|a| (a[0].as_u64().unwrap(), a[1].as_u64().unwrap()))
        .collect();
    // a=0 b=1 c=2 d=3 e=4: a->b, d->b, e->b, d->c, e->c
    let want: BTreeSet<(u64, u64)> = [(0, 1), (3, 1), (4, 1), (3, 2), (4, 2)].into();
    ensure!(arcs == want, "minimal poset arcs {arcs:?}");
    let slowest = [t1, t2, t3, t4].into_iter().max().unwrap();
    ensure!(slowest < Duration::from_secs(1), "slowest command took {slowest:?}");
    Ok(format!("slowest command {slowest:?}"))
}

fn criterion_2() -> Outcome {
    let mut checked = 0;
    let mut suppressed = 0;
    for n in 1..=5 {
        let table = common::faithful_table(n);
        for edges in common::all_graphs(n) {
            let m = common::matrix(n, &edges);
            if !common::connected(&m) {
                continue;
            }
            let u = graph(n, &edges);
            let reference = table.posets.get(&edges).cloned().unwrap_or_default();
            ensure!(is_smig(&u).is_smig() == !reference.is_empty(), "recognition disagrees on {edges:?}");
            if reference.is_empty() {
                continue;
            }
            checked += 1;
            let listed: Vec<BTreeSet<(usize, usize)>> = faithful_posets(&u).map_err(|e| e.to_string())?.iter().map(closure_of).collect();
            let listed_set: BTreeSet<_> = listed.iter().cloned().collect();
            ensure!(listed.len() == listed_set.len(), "duplicate output on {edges:?}");
            ensure!(listed_set == reference, "poset sets differ on {edges:?}");
            suppressed += visit_faithful_posets(&u, |_| std::ops::ControlFlow::Continue(())).unwrap().duplicates;

            let minimal: BTreeSet<_> = reference
                .iter()
                .filter(|p| !reference.iter().any(|q| q != *p && q.is_subset(p)))
                .cloned()
                .collect();
            let maximal: BTreeSet<_> = reference
                .iter()
                .filter(|p| !reference.iter().any(|q| q != *p && p.is_subset(q)))
                .cloned()
                .collect();
            let got_min: BTreeSet<_> = minimal_posets(&u).unwrap().iter().map(|m| closure_of(&m.poset)).collect();
            let got_max: BTreeSet<_> = sink_orientations(&u).unwrap().iter().map(closure_of).collect();
            ensure!(got_min == minimal, "minimal posets differ on {edges:?}");
            ensure!(got_max == maximal, "maximal posets differ on {edges:?}");
        }
    }
    Ok(format!("{checked} labeled connected SMIGs, {suppressed} repeats suppressed"))
}

fn criterion_3() -> Outcome {
    let expected = [(1, 1, 0), (2, 2, 1), (6, 4, 1), (21, 10, 2), (112, 27, 4), (853, 88, 10)];
    for (n, want) in (2..=7).zip(expected) {
        let r = census_connected(n, false).map_err(|e| e.to_string())?;
        ensure!((r.graphs, r.smigs, r.unique_dag) == want, "n={n}: {r:?}");
        ensure!(r.unique_dag <= r.smigs && r.smigs <= r.graphs, "n={n}: counts not monotone");
    }
    Ok("n = 2..7".into())
}

fn criterion_4() -> Outcome {
    let posets: Vec<u64> = (1..=5).map(|n| count_labeled_posets(n).unwrap()).collect();
    ensure!(posets == [1, 3, 19, 219, 4231], "posets {posets:?}");
    let faithful = (1..=5).map(count_faithful_to_complete).collect::<Result<Vec<u64>, Error>>();
    let faithful = faithful.map_err(|e| e.to_string())?;
    ensure!(faithful == [1, 2, 9, 76, 1095], "faithful to K_n {faithful:?}");
    for n in 2..=5 {
        ensure!(faithful[n - 1] == n as u64 * posets[n - 2], "closed form fails at n={n}");
    }
    Ok("n = 1..5".into())
}

fn criterion_5() -> Outcome {
    let mut checked = 0;
    for n in 1..=5 {
        let table = common::faithful_table(n);
        for edges in common::all_graphs(n) {
            if !common::connected(&common::matrix(n, &edges)) {
                continue;
            }
            let Some(&count) = table.dag_count.get(&edges) else {
                continue;
            };
            checked += 1;
            let unique = has_unique_faithful_dag(&graph(n, &edges)).map_err(|e| e.to_string())?;
            ensure!(unique == (count == 1), "{edges:?}: {count} faithful DAGs, detector says {unique}");
        }
    }
    ensure!(has_unique_faithful_dag(&UndirectedGraph::path(3)).unwrap(), "path");
    for k in 2..=6 {
        ensure!(has_unique_faithful_dag(&UndirectedGraph::star(k)).unwrap(), "star with {k} leaves");
    }
    ensure!(!has_unique_faithful_dag(&UndirectedGraph::complete(3)).unwrap(), "K3");
    Ok(format!("{checked} labeled connected SMIGs"))
}

fn criterion_6() -> Outcome {
    let mut checked = 0;
    for n in 0..=4 {
        for edges in common::all_graphs(n) {
            let u = graph(n, &edges);
            let cover = edge_clique_cover(&u, CoverMode::Exact).map_err(|e| e.to_string())?.len();
            ensure!(cover == common::min_clique_cover(&common::matrix(n, &edges)), "{edges:?}: cover {cover}");
            let q = min_auxiliary_bruteforce(&hardness_gadget(&u), cover)
                .map_err(|e| e.to_string())?
                .ok_or_else(|| format!("{edges:?}: no explanation with {cover} auxiliaries"))?
                .auxiliary_count();
            ensure!(q == cover, "{edges:?}: cover {cover}, auxiliaries {q}");
            checked += 1;
        }
    }
    Ok(format!("{checked} labeled graphs"))
}

fn criterion_7() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for trial in 0..1000 {
        let n = rng.gen_range(1..=8);
        let density: f64 = rng.gen();
        let edges: Vec<(usize, usize)> = common::pairs(n).into_iter().filter(|_| rng.gen_bool(density)).collect();
        let u = graph(n, &edges);
        for mode in [CoverMode::Exact, CoverMode::Greedy] {
            let cover = edge_clique_cover(&u, mode).map_err(|e| e.to_string())?;
            let aug = dag_from_cover(&u, &cover).map_err(|e| format!("trial {trial}: {e}"))?;
            let total = aug.dag.n();
            let m = common::mig(total, &aug.dag.arcs());
            let restricted: Vec<Vec<bool>> = (0..n).map(|v| m[v][..n].to_vec()).collect();
            ensure!(restricted == common::matrix(n, &edges), "trial {trial}: {edges:?} not reproduced");
            ensure!(aug.auxiliary_count() <= edges.len(), "trial {trial}: more auxiliaries than edges");
        }
    }
    Ok("1000 random graphs, exact and greedy covers".into())
}

fn criterion_8() -> Outcome {
    let mut accepted = 0;
    for n in 1..=6 {
        for edges in common::all_graphs(n) {
            let m = common::matrix(n, &edges);
            let expected = common::connected(&m) && common::trivially_perfect(&m);
            match tree_poset(&graph(n, &edges)) {
                Ok(p) => {
                    ensure!(expected, "{edges:?} accepted");
                    let arcs = p.reduction().arcs();
                    ensure!(arcs.len() == n - 1, "{edges:?}: {} arcs", arcs.len());
                    ensure!(common::mig(n, &arcs) == m, "{edges:?}: wrong MIG");
                    accepted += 1;
                }
                Err(_) => ensure!(!expected, "{edges:?} rejected"),
            }
        }
    }
    for (name, u) in [("P4", UndirectedGraph::path(4)), ("C4", UndirectedGraph::cycle(4))] {
        match tree_poset(&u) {
            Err(Error::NotTriviallyPerfect(w)) => ensure!(w.to_string().starts_with(name), "witness {w}"),
            other => return Err(format!("{name}: {other:?}")),
        }
    }
    Ok(format!("{accepted} labeled graphs accepted"))
}

fn criterion_9() -> Outcome {
    let r = census_connected(8, true).map_err(|e| e.to_string())?;
    ensure!((r.graphs, r.smigs, r.unique_dag) == (11117, 328, 27), "n=8: {r:?}");
    let p6 = count_labeled_posets(6).map_err(|e| e.to_string())?;
    ensure!(p6 == 130023, "P(6) = {p6}");
    Ok("n=8 census and P(6)".into())
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("fixtures through the command line", criterion_1),
        ("enumeration equals exhaustive search, n <= 5", criterion_2),
        ("connected graph census, n = 2..7", criterion_3),
        ("labeled posets and posets faithful to K_n", criterion_4),
        ("unique faithful DAG detection", criterion_5),
        ("clique cover equals auxiliaries of the gadget, n <= 4", criterion_6),
        ("cover construction is faithful on random graphs", criterion_7),
        ("tree posets exactly on connected trivially perfect graphs", criterion_8),
    ];
    let mut failed = 0;
    let mut run = |k: usize, name: &str, f: fn() -> Outcome| {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        match result {
            Ok(detail) => println!("criterion {k}: PASS  {name} ({detail}; {:.2?})", start.elapsed()),
            Err(why) => {
                failed += 1;
                println!("criterion {k}: FAIL  {name}: {why}");
            }
        }
    };
    for (k, (name, f)) in criteria.into_iter().enumerate() {
        run(k + 1, name, f);
    }
    if std::env::var("SMIG_STRETCH").is_ok_and(|v| v == "1") {
        run(9, "stretch: n = 8 census and P(6)", criterion_9);
    } else {
        println!("criterion 9: SKIP  stretch rows (set SMIG_STRETCH=1)");
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
