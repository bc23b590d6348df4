//! Random graphs, test corpora, the dense-subgraph census and threshold
//! scans on `G(n, p)`.
//!
//! All randomness comes from ChaCha8 streams: a seed picks the key and a
//! trial index picks the stream, so trials can run in any order (or in
//! parallel) and still produce the same graphs.

mod census;
mod corpus;
mod scan;
mod subgraph;

pub use census::{
    dense_subgraph_census, dense_subgraph_census_with, has_dense_subgraph, has_dense_subgraph_with,
    CensusOptions,
};
pub use corpus::{corpus, k4_corpus, CorpusEntry, CorpusKind, CorpusParams, Recipe};
pub use scan::{j_presence_grid, scan_to_csv, threshold_scan, threshold_scan_with, ScanOptions, ScanRow};
pub use subgraph::{contains_j, contains_subgraph};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;

/// The RNG for `trial` under `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// `G(n, p)`: each pair `u < v`, in lexicographic order, is an edge when
/// its uniform draw falls below `p`.
pub fn gnp(n: usize, p: f64, seed: u64) -> Graph {
    CoupledSample::draw(n, seed, 0).graph(p)
}

/// One uniform per vertex pair. Thresholding the same sample at several
/// `p` gives nested graphs, so monotone properties are monotone pointwise.
#[derive(Clone, Debug)]
pub struct CoupledSample {
    n: usize,
    uniforms: Vec<f64>,
}

impl CoupledSample {
    pub fn draw(n: usize, seed: u64, trial: u64) -> Self {
        let mut rng = trial_rng(seed, trial);
        let uniforms = (0..n * n.saturating_sub(1) / 2).map(|_| rng.gen::<f64>()).collect();
        CoupledSample { n, uniforms }
    }

    pub fn graph(&self, p: f64) -> Graph {
        let mut edges = Vec::new();
        let mut i = 0;
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.uniforms[i] < p {
                    edges.push((u, v));
                }
                i += 1;
            }
        }
        Graph::from_edges(self.n, edges).expect("pairs are in range")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extremes() {
        assert_eq!(gnp(5, 0.0, 3).edge_count(), 0);
        assert!(gnp(5, 1.0, 3).is_complete());
        assert_eq!(gnp(0, 0.5, 3).n(), 0);
    }

    #[test]
    fn deterministic_per_seed() {
        assert_eq!(gnp(30, 0.3, 11).edges(), gnp(30, 0.3, 11).edges());
        assert_ne!(gnp(30, 0.3, 11).edges(), gnp(30, 0.3, 12).edges());
    }

    #[test]
    fn edge_count_concentrates() {
        let pairs = 100.0 * 99.0 / 2.0;
        let sigma = (pairs * 0.25_f64).sqrt();
        for seed in 0..100 {
            let e = gnp(100, 0.5, seed).edge_count() as f64;
            assert!((e - pairs / 2.0).abs() < 5.0 * sigma, "seed {seed}: {e}");
        }
    }

    #[test]
    fn coupled_graphs_are_nested() {
        let s = CoupledSample::draw(25, 5, 7);
        let small = s.graph(0.2);
        let big = s.graph(0.4);
        assert!(small.edges().iter().all(|&(u, v)| big.has_edge(u, v)));
    }
}
