//! Constructive anti-Ramsey colourings of sparse graphs.
//!
//! Given a graph whose maximum density is below `(k+1)/2` (or below `15/7`
//! for `k = 4`), the crate builds a proper partial edge-colouring in which
//! every `K_k` has two edges of the same colour. Uncoloured edges count as
//! distinct colours, so giving each one a fresh colour yields a total proper
//! colouring without a rainbow `K_k`.
//!
//! The colouring is produced by peeling minimum-degree vertices and
//! re-inserting them, and every structural fact the construction relies on
//! is checked while it runs. See the guide in `book/` for a tour.

pub mod colouring;
pub mod density;
pub mod engine;
pub mod error;
pub mod experiments;
pub mod fixtures;
mod flow;
pub mod graph;
pub mod k4;
pub mod oracle;
pub mod rational;
pub mod stage;
pub mod structure;

pub use colouring::Colouring;
pub use density::{densest_subgraph, max_2_density, max_density};
pub use engine::{anti_rainbow_colouring, colour_graph, StageReport};
pub use error::{Error, GraphError, Result};
pub use graph::{enumerate_cliques, parse_any, parse_graph, Graph};
pub use oracle::{
    brute_force_no_rainbow_colouring, complete_colouring, find_rainbow_clique, forced_rainbow,
    RainbowWitness,
};
pub use rational::Rational;
pub use stage::{check_stage, stage_bound, Stage};
pub use structure::{
    badness, classify_kv, kk_components, min_degree_vertex, peel_trace, reduce,
    split_neighbourhood, KvConfig, NeighbourhoodSplit, PeelTrace,
};


#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/graphs.md")]
    mod graphs {}
    #[doc = include_str!("../../../book/src/peeling.md")]
    mod peeling {}
    #[doc = include_str!("../../../book/src/stages.md")]
    mod stages {}
    #[doc = include_str!("../../../book/src/colouring.md")]
    mod colouring {}
    #[doc = include_str!("../../../book/src/oracle.md")]
    mod oracle {}
    #[doc = include_str!("../../../book/src/k4.md")]
    mod k4 {}
    #[doc = include_str!("../../../book/src/experiments.md")]
    mod experiments {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
