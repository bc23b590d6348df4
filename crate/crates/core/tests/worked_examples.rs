//! Small worked examples through the public API, one module at a time.

use antiramsey::experiments::{dense_subgraph_census, gnp, Recipe};
use antiramsey::fixtures::{clique_chain, two_cliques_sharing_edge, two_cliques_sharing_vertex};
use antiramsey::k4::component_vertex_bound_check;
use antiramsey::oracle::forced_rainbow;
use antiramsey::{
    anti_rainbow_colouring, badness, classify_kv, colour_graph, complete_colouring,
    enumerate_cliques, find_rainbow_clique, kk_components, max_2_density, max_density,
    min_degree_vertex, parse_graph, peel_trace, reduce, split_neighbourhood, stage_bound,
    GraphError, Graph, KvConfig, Rational, Stage,
};

#[test]
fn parsing() {
    let tri = parse_graph("0 1\n1 2\n0 2").unwrap();
    assert_eq!((tri.n(), tri.edge_count()), (3, 3));
    let empty = parse_graph("n=4\n").unwrap();
    assert_eq!((empty.n(), empty.edge_count()), (4, 0));
    assert_eq!(parse_graph("0 0"), Err(GraphError::Loop(0)));
}

#[test]
fn cliques_and_densities() {
    assert_eq!(enumerate_cliques(&Graph::complete(5), 4).len(), 5);
    assert!(enumerate_cliques(&Graph::empty(6), 3).is_empty());
    assert_eq!(max_density(&Graph::complete(4)).unwrap(), Rational::new(3, 2));
    assert_eq!(max_density(&Graph::path(2)).unwrap(), Rational::new(1, 2));
    assert_eq!(max_2_density(&Graph::complete(5)).unwrap(), Rational::integer(3));
    assert_eq!(max_2_density(&Graph::complete(4)).unwrap(), Rational::new(5, 2));
    assert_eq!(max_2_density(&Graph::complete(3)).unwrap(), Rational::integer(2));
}

#[test]
fn components() {
    let shared_edge = kk_components(&two_cliques_sharing_edge(5), 5);
    assert_eq!(shared_edge.len(), 1);
    assert_eq!(shared_edge[0].n(), 8);
    let apart = Graph::complete(5).disjoint_union(&Graph::complete(5));
    assert_eq!(kk_components(&apart, 5).len(), 2);
    assert_eq!(kk_components(&two_cliques_sharing_vertex(5), 5).len(), 2);
}

#[test]
fn peeling_vertex_and_split() {
    assert_eq!(min_degree_vertex(&Graph::complete(5)).unwrap(), 0);
    assert_eq!(min_degree_vertex(&Graph::star(3)).unwrap(), 1);
    assert_eq!(min_degree_vertex(&Graph::path(3)).unwrap(), 0);

    let k6 = Graph::complete(6);
    let split = split_neighbourhood(&k6, 0, 5).unwrap();
    assert_eq!(split.r, vec![0]);
    assert_eq!(split.s, vec![1, 2, 3, 4, 5]);
    assert_eq!(classify_kv(&split, &k6).unwrap(), KvConfig::U);
    let red = reduce(&k6, &split, 5);
    assert!(red.g_star.is_complete() && red.g_star.n() == 5);
    assert_eq!(k6.edge_count() - red.g_star.edge_count(), 5);

    // Vertex 2 of the glued pair is private to the first K_5.
    let pair = two_cliques_sharing_edge(5);
    let split = split_neighbourhood(&pair, 2, 5).unwrap();
    assert_eq!(split.r, vec![2, 3, 4]);
    assert_eq!(split.s, vec![0, 1]);
    assert_eq!(classify_kv(&split, &pair).unwrap(), KvConfig::X(3));
    assert_eq!(pair.edge_count() - reduce(&pair, &split, 5).g_star.edge_count(), 9);
}

#[test]
fn badness_and_traces() {
    assert_eq!(badness(&Graph::complete(5), 5), 0);
    assert_eq!(badness(&Graph::complete_minus_edge(6), 5), 2);
    assert_eq!(badness(&Graph::complete(6), 5), 4);

    let chain = peel_trace(&clique_chain(5, 3), 5).unwrap();
    assert_eq!(chain.steps.len(), 2);
    assert!(chain.steps.iter().all(|s| s.config == KvConfig::X(3) && s.b_delta == 0));
    let k6 = peel_trace(&Graph::complete(6), 5).unwrap();
    assert_eq!(k6.steps.len(), 1);
    assert_eq!((k6.steps[0].config, k6.steps[0].b_delta), (KvConfig::U, 4));
    assert!(peel_trace(&Graph::complete(5), 5).unwrap().steps.is_empty());
}

#[test]
fn stage_bounds() {
    assert_eq!(stage_bound(0, 5).unwrap(), Stage::P0);
    assert_eq!(stage_bound(4, 5).unwrap(), Stage::P2);
    assert_eq!(stage_bound(8, 5).unwrap(), Stage::P4);
    assert!(stage_bound(10, 5).is_err());
}

#[test]
fn colourings() {
    let (c, report) = anti_rainbow_colouring(&Graph::complete(5), 5).unwrap();
    assert_eq!(report.stage, Stage::P0);
    assert_eq!(c.multiplicities().values().copied().collect::<Vec<_>>(), vec![2]);

    let chain = clique_chain(5, 4);
    let (_, report) = anti_rainbow_colouring(&chain, 5).unwrap();
    assert_eq!((report.badness, report.stage), (0, Stage::P0));

    let k6 = Graph::complete(6);
    let (c, report) = anti_rainbow_colouring(&k6, 5).unwrap();
    assert!(report.stage <= Stage::P2);
    assert_eq!(find_rainbow_clique(&k6, &complete_colouring(&k6, &c).unwrap(), 5), None);
}

#[test]
fn whole_graph_colouring() {
    let union = Graph::complete(5).disjoint_union(&Graph::complete(6));
    let c = colour_graph(&union, 5).unwrap();
    let first: Vec<u32> = c.iter().filter(|((u, _), _)| *u < 5).map(|(_, col)| col).collect();
    let second: Vec<u32> = c.iter().filter(|((u, _), _)| *u >= 5).map(|(_, col)| col).collect();
    assert!(first.iter().all(|x| !second.contains(x)));
    assert_eq!(find_rainbow_clique(&union, &c, 5), None);

    let mut edges = Graph::complete(5).edges().to_vec();
    edges.extend([(4, 5), (5, 6), (0, 7)]);
    let pendant = Graph::from_edges(8, edges).unwrap();
    let c = colour_graph(&pendant, 5).unwrap();
    assert!(c.iter().all(|((u, v), _)| u < 5 && v < 5));
    assert_eq!(c.len(), 2);

    let two = two_cliques_sharing_vertex(5);
    let c = colour_graph(&two, 5).unwrap();
    assert_eq!(c.len(), 4);
    assert_eq!(find_rainbow_clique(&two, &c, 5), None);
}

#[test]
fn oracle_and_k4() {
    assert!(!forced_rainbow(&Graph::complete(4), 4).unwrap());
    assert_eq!(component_vertex_bound_check(&Graph::complete(4)).unwrap(), 4);
    assert_eq!(component_vertex_bound_check(&two_cliques_sharing_edge(4)).unwrap(), 6);
}

#[test]
fn experiments() {
    assert_eq!(gnp(5, 0.0, 1).edge_count(), 0);
    assert!(gnp(5, 1.0, 1).is_complete());
    let chain = Recipe::CliqueChain { k: 5, length: 3 }.build().unwrap();
    assert_eq!((chain.n(), badness(&chain, 5)), (11, 0));
    let glued = Recipe::Glued { k: 5, steps: vec![KvConfig::U], seed: 0, trial: 0 }.build().unwrap();
    assert_eq!(badness(&glued, 5), 4);
    assert!(dense_subgraph_census(&Graph::complete(4), 12, Rational::new(15, 7)).unwrap().is_empty());
}
