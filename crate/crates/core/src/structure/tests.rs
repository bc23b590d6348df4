use super::*;
use crate::fixtures::{
    clique_chain, figure1_fixtures, from_cliques, two_cliques_sharing_edge,
    two_cliques_sharing_vertex, two_disjoint_cliques,
};

#[test]
fn components_of_glued_cliques() {
    let comps = kk_components(&two_cliques_sharing_edge(5), 5);
    assert_eq!(comps.len(), 1);
    assert_eq!(comps[0].n(), 8);
    assert_eq!(kk_components(&two_disjoint_cliques(5), 5).len(), 2);
    let comps = kk_components(&two_cliques_sharing_vertex(5), 5);
    assert_eq!(comps.len(), 2);
    assert_eq!(comps[0].labels(), &[0, 1, 2, 3, 4]);
    assert_eq!(comps[1].labels(), &[0, 5, 6, 7, 8]);
}

#[test]
fn components_strip_loose_structure() {
    // A K_5 with a pendant path hanging off it.
    let g = from_cliques(7, &[vec![0, 1, 2, 3, 4]], &[(4, 5), (5, 6)]);
    let comps = kk_components(&g, 5);
    assert_eq!(comps.len(), 1);
    assert_eq!(comps[0].edge_count(), 10);
    assert!(kk_components(&Graph::path(6), 5).is_empty());
    assert!(is_single_component(&Graph::complete(5), 5));
    assert!(!is_single_component(&g, 5));
}

#[test]
fn min_degree_tie_breaks() {
    assert_eq!(min_degree_vertex(&Graph::complete(5)).unwrap(), 0);
    assert_eq!(min_degree_vertex(&Graph::star(3)).unwrap(), 1);
    assert_eq!(min_degree_vertex(&Graph::path(3)).unwrap(), 0);
    assert_eq!(min_degree_vertex(&Graph::empty(0)), Err(Error::EmptyGraph));
}

#[test]
fn split_two_glued_k5() {
    let g = two_cliques_sharing_edge(5);
    let split = split_neighbourhood(&g, 2, 5).unwrap();
    assert_eq!(split.r, vec![2, 3, 4]);
    assert_eq!(split.s, vec![0, 1]);
}

#[test]
fn split_k6() {
    let g = Graph::complete(6);
    for v in 0..6 {
        let split = split_neighbourhood(&g, v, 5).unwrap();
        assert_eq!(split.r, vec![v]);
        assert_eq!(split.s.len(), 5);
    }
}

#[test]
fn split_rejects_uncovered_input() {
    let g = from_cliques(6, &[vec![0, 1, 2, 3, 4]], &[(4, 5)]);
    assert_eq!(split_neighbourhood(&g, 0, 5), Err(Error::VertexOutsideCliques(5)));
}

#[test]
fn split_x2_fixture() {
    let (_, g) = figure1_fixtures().into_iter().nth(1).unwrap();
    let split = split_neighbourhood(&g, 0, 5).unwrap();
    assert_eq!((split.r.len(), split.s.len()), (2, 3));
}

#[test]
fn classify_figure1() {
    for (expected, g) in figure1_fixtures() {
        let v = min_degree_vertex(&g).unwrap();
        assert_eq!(v, 0);
        let split = split_neighbourhood(&g, v, 5).unwrap();
        assert_eq!(classify_kv(&split, &g).unwrap(), expected);
    }
}

#[test]
fn classify_errors_on_overlapping_cliques() {
    // K_6 minus an edge: the degree-4 vertex sees a K_5 and shares it with
    // four vertices that lie in a second K_5, so X(1).
    let g = from_cliques(6, &[vec![0, 1, 2, 3, 4], vec![1, 2, 3, 4, 5]], &[]);
    let split = split_neighbourhood(&g, 0, 5).unwrap();
    assert_eq!(classify_kv(&split, &g).unwrap(), KvConfig::X(1));
    // Vertex 5 sits in two K_5's that meet the first one in two edges; its
    // closed neighbourhood matches none of the shapes.
    let g = from_cliques(
        10,
        &[vec![0, 1, 2, 3, 4], vec![5, 1, 2, 6, 7], vec![5, 3, 4, 8, 9]],
        &[],
    );
    let split = split_neighbourhood(&g, 5, 5).unwrap();
    assert!(matches!(classify_kv(&split, &g), Err(Error::Classification { .. })));
}

#[test]
fn badness_values() {
    assert_eq!(badness(&Graph::complete(5), 5), 0);
    assert_eq!(badness(&Graph::complete_minus_edge(6), 5), 2);
    assert_eq!(badness(&Graph::complete(6), 5), 4);
}

#[test]
fn reduce_two_glued_k5() {
    let g = two_cliques_sharing_edge(5);
    let split = split_neighbourhood(&g, 2, 5).unwrap();
    let red = reduce(&g, &split, 5);
    assert_eq!(red.g_star.labels(), &[0, 1, 5, 6, 7]);
    assert!(red.g_star.is_complete());
    assert_eq!(red.extra_edges, 0);
    assert_eq!(g.edge_count() - red.g_star.edge_count(), 9);
    assert_eq!(KvConfig::X(3).edge_delta(5), 9);
}

#[test]
fn reduce_k6() {
    let g = Graph::complete(6);
    let split = split_neighbourhood(&g, 0, 5).unwrap();
    let red = reduce(&g, &split, 5);
    assert_eq!(g.edge_count() - red.g_star.edge_count(), 5);
    assert_eq!(red.g_v.edge_count(), 10);
}

#[test]
fn reduce_y1_fixture() {
    let (_, g) = figure1_fixtures().into_iter().nth(3).unwrap();
    let split = split_neighbourhood(&g, 0, 5).unwrap();
    let red = reduce(&g, &split, 5);
    assert_eq!(g.edge_count() - red.g_star.edge_count(), 5);
    assert_eq!(KvConfig::Y(1).edge_delta(5), 5);
}

#[test]
fn reduce_strips_edges_outside_cliques() {
    // S(0) = {1, 2, 3, 4}; the edges 12 and 34 continue into two further
    // K_5's, the four cross edges only lie in the K_5 through 0.
    let g = from_cliques(
        11,
        &[vec![0, 1, 2, 3, 4], vec![1, 2, 5, 6, 7], vec![3, 4, 8, 9, 10]],
        &[],
    );
    let split = split_neighbourhood(&g, 0, 5).unwrap();
    let red = reduce(&g, &split, 5);
    assert_eq!(red.extra_edges, 4);
    assert_eq!(red.g_star.edge_count() - red.g_v.edge_count(), red.extra_edges);
    assert_eq!(kk_components(&red.g_v, 5).len(), 2);
}

#[test]
fn peel_chain() {
    let trace = peel_trace(&clique_chain(5, 3), 5).unwrap();
    assert_eq!(trace.steps.len(), 2);
    for s in &trace.steps {
        assert_eq!(s.config, KvConfig::X(3));
        assert_eq!(s.b_delta, 0);
    }
    assert!(matches!(&trace.end, PeelEnd::Residue(r) if r.len() == 5));
    assert_eq!(trace.badness, 0);
}

#[test]
fn peel_k6_and_k5() {
    let trace = peel_trace(&Graph::complete(6), 5).unwrap();
    assert_eq!(trace.steps.len(), 1);
    assert_eq!(trace.steps[0].config, KvConfig::U);
    assert_eq!(trace.steps[0].b_delta, 4);
    let trace = peel_trace(&Graph::complete(5), 5).unwrap();
    assert!(trace.steps.is_empty());
    assert_eq!(trace.end, PeelEnd::Residue(vec![0, 1, 2, 3, 4]));
}

#[test]
fn peel_figure1_ledgers_conserve() {
    for (config, g) in figure1_fixtures() {
        let trace = peel_trace(&g, 5).unwrap();
        assert_eq!(trace.steps[0].config, config);
        assert_eq!(trace.badness, badness(&g, 5));
        assert_eq!(trace.reconstructed_badness(BadnessLedger::General), trace.badness);
    }
}

#[test]
fn peel_rejects_dense_and_split_inputs() {
    assert!(matches!(
        peel_trace(&Graph::complete(7), 5),
        Err(Error::TooDense { .. })
    ));
    assert!(matches!(
        peel_trace(&two_disjoint_cliques(5), 5),
        Err(Error::NotSingleComponent { components: 2 })
    ));
    assert!(matches!(peel_trace(&Graph::complete(4), 4), Err(Error::UnsupportedK { .. })));
}

#[test]
fn trace_json_shape() {
    let trace = peel_trace(&Graph::complete(6), 5).unwrap();
    let json = serde_json::to_value(&trace.steps[0]).unwrap();
    assert_eq!(
        json,
        serde_json::json!({"v": 0, "config": "U1", "edgeDelta": 5, "extraEdges": 0, "bDelta": 4})
    );
}

#[test]
fn config_delta_tables() {
    // b-delta follows from the edge delta: 2 * de - (k + 1) * l.
    for k in 5..=9 {
        for l in 1..=k - 2 {
            for c in [KvConfig::X(l), KvConfig::Y(l)] {
                assert_eq!(c.badness_delta(k), 2 * c.edge_delta(k) - (k as i64 + 1) * l as i64);
            }
        }
        assert_eq!(KvConfig::U.badness_delta(k), 2 * KvConfig::U.edge_delta(k) - (k as i64 + 1));
    }
}

#[test]
fn clique_forest_audit() {
    assert!(clique_incidence_is_forest(&clique_chain(5, 4), 5));
    assert!(!clique_incidence_is_forest(&Graph::complete(6), 5));

    // Three K_5 on the common edge 01: pairwise they form a triangle, but
    // the incidence structure is a star.
    let book = from_cliques(
        11,
        &[vec![0, 1, 2, 3, 4], vec![0, 1, 5, 6, 7], vec![0, 1, 8, 9, 10]],
        &[],
    );
    assert_eq!(badness(&book, 5), 0);
    assert!(clique_incidence_is_forest(&book, 5));
    assert!(clique_incidence_is_forest(&crate::fixtures::petal_hub(), 5));
}
