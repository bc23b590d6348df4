use antiramsey::density::{exhaustive_max_2_density, exhaustive_max_density};
use antiramsey::experiments::{corpus, CoupledSample, CorpusKind, CorpusParams};
use antiramsey::structure::{clique_incidence_is_forest, BadnessLedger};
use antiramsey::{
    badness, colour_graph, complete_colouring, enumerate_cliques, find_rainbow_clique,
    kk_components, max_2_density, max_density, parse_any, peel_trace, stage_bound, Colouring,
    Graph,
};
use proptest::prelude::*;

fn small_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut i = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[i] {
                        edges.push((u, v));
                    }
                    i += 1;
                }
            }
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn density_matches_exhaustive(g in small_graph(8)) {
        prop_assume!(g.edge_count() > 0);
        prop_assert_eq!(max_density(&g).unwrap(), exhaustive_max_density(&g).unwrap());
        if g.n() >= 3 {
            prop_assert_eq!(max_2_density(&g).unwrap(), exhaustive_max_2_density(&g).unwrap());
        }
    }

    #[test]
    fn cliques_contain_their_faces(g in small_graph(8), k in 3usize..6) {
        let smaller = enumerate_cliques(&g, k - 1);
        for q in enumerate_cliques(&g, k) {
            for drop in 0..k {
                let face: Vec<usize> = q.iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, &v)| v).collect();
                prop_assert!(smaller.binary_search(&face).is_ok());
            }
        }
    }

    #[test]
    fn graph_text_and_json_round_trip(g in small_graph(9)) {
        prop_assert_eq!(parse_any(&g.to_edge_list()).unwrap(), g.clone());
        let json = serde_json::to_string(&g).unwrap();
        prop_assert_eq!(parse_any(&json).unwrap(), g);
    }

    #[test]
    fn coupled_samples_nest(seed in any::<u64>(), trial in 0u64..1000, p in 0.0f64..1.0, q in 0.0f64..1.0) {
        let s = CoupledSample::draw(15, seed, trial);
        let (lo, hi) = (s.graph(p.min(q)), s.graph(p.max(q)));
        prop_assert!(lo.edges().iter().all(|&(u, v)| hi.has_edge(u, v)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gluing_mixes_colour_soundly(seed in any::<u64>(), k in 5usize..=6, length in 1usize..10) {
        let params = CorpusParams { count: 3, length, ..CorpusParams::default() };
        for entry in corpus(CorpusKind::GluingMix, k, &params, seed).unwrap() {
            let g = &entry.graph;
            let c = colour_graph(g, k).unwrap();
            let full = complete_colouring(g, &c).unwrap();
            prop_assert_eq!(find_rainbow_clique(g, &full, k), None);
            prop_assert_eq!(find_rainbow_clique(g, &c, k), None);

            if badness(g, k) <= k as i64 - 4 {
                prop_assert!(clique_incidence_is_forest(g, k));
            }
            let trace = peel_trace(g, k).unwrap();
            prop_assert_eq!(trace.reconstructed_badness(BadnessLedger::General), badness(g, k));
            let (_, report) = antiramsey::anti_rainbow_colouring(g, k).unwrap();
            prop_assert!(report.stage <= stage_bound(report.badness, k).unwrap());
        }
    }

    #[test]
    fn random_sparse_graphs_colour_per_component(seed in any::<u64>()) {
        let params = CorpusParams { count: 2, n: 9, p: 0.75, ..CorpusParams::default() };
        for entry in corpus(CorpusKind::RandomSparse, 5, &params, seed).unwrap() {
            let g = &entry.graph;
            let c = colour_graph(g, 5).unwrap();
            c.check_proper(g).unwrap();
            prop_assert_eq!(find_rainbow_clique(g, &c, 5), None);
            let coloured_in_cliques = c.iter().all(|((u, v), _)| {
                kk_components(g, 5).iter().any(|comp| {
                    let (a, b) = (comp.index_of_label(u), comp.index_of_label(v));
                    matches!((a, b), (Some(a), Some(b)) if comp.has_edge(a, b))
                })
            });
            prop_assert!(coloured_in_cliques);
        }
    }

    #[test]
    fn canonical_renaming_is_idempotent(pairs in proptest::collection::btree_map((0usize..12, 0usize..12), 1u32..40, 0..20)) {
        let c: Colouring = pairs.into_iter().filter(|((u, v), _)| u != v).collect();
        let once = c.canonical();
        prop_assert!(once.is_canonical());
        prop_assert_eq!(once.canonical(), once.clone());
        prop_assert_eq!(once.len(), c.len());
        prop_assert_eq!(once.colour_count(), c.colour_count());
    }
}
