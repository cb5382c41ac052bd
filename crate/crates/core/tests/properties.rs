mod common;

use std::collections::BTreeSet;
use std::sync::OnceLock;

use proptest::prelude::*;
use proptest::sample::subsequence;

use smig::canon::canonical_form;
use smig::enumerate::{faithful_posets, minimal_posets, sink_orientations};
use smig::io::{parse_dag, parse_graph, parse_poset, write_dag, write_graph, write_poset, Format};
use smig::latent::{edge_clique_cover, CoverMode};
use smig::smig::{embed_as_induced_smig, is_smig};
use smig::{Dag, Labels, NodeSet, Poset, UndirectedGraph};

const FORMATS: [Format; 3] = [Format::EdgeList, Format::Dot, Format::Json];

fn graph_strategy(max_n: usize) -> impl Strategy<Value = UndirectedGraph> {
    (0..=max_n).prop_flat_map(|n| {
        let pairs = common::pairs(n);
        let len = pairs.len();
        subsequence(pairs, 0..=len).prop_map(move |edges| UndirectedGraph::new(n, edges).unwrap())
    })
}

/// Arcs only run from lower to higher index, so every draw is acyclic.
fn dag_strategy(max_n: usize) -> impl Strategy<Value = Dag> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = common::pairs(n);
        let len = pairs.len();
        (subsequence(pairs, 0..=len), Just(n)).prop_map(|(arcs, n)| Dag::new(n, arcs).unwrap())
    })
}

fn labels(n: usize) -> impl Strategy<Value = Option<Labels>> {
    proptest::option::of(proptest::collection::btree_set("v[a-z0-9_]{0,4}", n..=n))
        .prop_map(|set| set.map(|names| names.into_iter().enumerate().collect()))
}

fn tables() -> &'static [common::Faithful] {
    static TABLES: OnceLock<Vec<common::Faithful>> = OnceLock::new();
    TABLES.get_or_init(|| (0..=5).map(common::faithful_table).collect())
}

fn closures(posets: &[Poset]) -> BTreeSet<Vec<NodeSet>> {
    posets.iter().map(|p| p.reduction().descendant_rows()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn graphs_round_trip((g, names) in graph_strategy(9).prop_flat_map(|g| { let n = g.n(); (Just(g), labels(n)) })) {
        let g = match names { Some(l) => g.with_labels(l), None => g };
        for format in FORMATS {
            let text = write_graph(&g, format);
            prop_assert_eq!(&parse_graph(&text, format).unwrap(), &g, "{:?}\n{}", format, text);
        }
    }

    #[test]
    fn dags_and_posets_round_trip((d, names) in dag_strategy(9).prop_flat_map(|d| { let n = d.n(); (Just(d), labels(n)) })) {
        let d = match names { Some(l) => d.with_labels(l), None => d };
        let p = Poset::from_dag(&d);
        for format in FORMATS {
            let text = write_dag(&d, format);
            prop_assert_eq!(&parse_dag(&text, format).unwrap(), &d, "{:?}\n{}", format, text);
            let text = write_poset(&p, format);
            prop_assert_eq!(&parse_poset(&text, format).unwrap(), &p, "{:?}\n{}", format, text);
        }
    }

    #[test]
    fn every_listed_poset_is_faithful(d in dag_strategy(6)) {
        let u = d.marginal_independence_graph();
        prop_assert!(is_smig(&u).is_smig());
        let listed = faithful_posets(&u).unwrap();
        let all = closures(&listed);
        prop_assert_eq!(all.len(), listed.len(), "duplicates");
        prop_assert!(all.contains(&Poset::from_dag(&d).reduction().descendant_rows()));
        for p in &listed {
            prop_assert_eq!(&p.reduction().marginal_independence_graph(), &u);
        }
        for p in sink_orientations(&u).unwrap() {
            prop_assert!(all.contains(&p.reduction().descendant_rows()));
        }
        for m in minimal_posets(&u).unwrap() {
            prop_assert!(all.contains(&m.poset.reduction().descendant_rows()));
        }
    }

    #[test]
    fn recognition_matches_exhaustive_search(g in graph_strategy(5)) {
        let table = &tables()[g.n()];
        prop_assert_eq!(is_smig(&g).is_smig(), table.dag_count.contains_key(&g.edges()));
    }

    #[test]
    fn embedding_is_induced_and_faithful(g in graph_strategy(7)) {
        let (h, d) = embed_as_induced_smig(&g).unwrap();
        prop_assert_eq!(&d.marginal_independence_graph(), &h);
        let m = common::matrix(h.n(), &h.edges());
        for (a, b) in common::pairs(g.n()) {
            prop_assert_eq!(m[a][b], g.has_edge(a, b));
        }
        prop_assert!(is_smig(&h).is_smig());
    }

    #[test]
    fn canonical_form_ignores_labels(g in graph_strategy(9), perm in Just((0..9).collect::<Vec<usize>>()).prop_shuffle()) {
        let perm: Vec<usize> = perm.into_iter().filter(|&v| v < g.n()).collect();
        prop_assert_eq!(canonical_form(&g).unwrap(), canonical_form(&g.permuted(&perm)).unwrap());
    }

    #[test]
    fn greedy_cover_is_no_smaller_than_exact(g in graph_strategy(9)) {
        let exact = edge_clique_cover(&g, CoverMode::Exact).unwrap();
        let greedy = edge_clique_cover(&g, CoverMode::Greedy).unwrap();
        prop_assert!(exact.len() <= greedy.len());
        prop_assert!(exact.validate(&g).is_ok() && greedy.validate(&g).is_ok());
    }
}
