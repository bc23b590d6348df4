//! The `k = 4` specialisation: its own ledger, the witness `J`, and the
//! triangle-load colouring procedure.
//!
//! Below density `15/7` a `K_4`-component peels only through `X1`, `X2`
//! and `U1` (the last only for `K_5` itself), and the ledger
//! `b_K4 = 7e - 15v + 18` drops by 6, 5 and 13 respectively. Instead of
//! stages the colouring tracks how many coloured edges a triangle carries.

use serde::{Deserialize, Serialize};

use crate::colouring::Colouring;
use crate::engine::{run_component, EngineOptions, Mode, StageReport};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::structure::peel::{check_density, peel_trace_with, BadnessLedger, PeelEnd, PeelTrace};
use crate::structure::{kk_components, KvConfig};

/// `b_K4(G) = 7 e(G) - 15 v(G) + 18`.
pub fn badness_k4(g: &Graph) -> i64 {
    7 * g.edge_count() as i64 - 15 * g.n() as i64 + 18
}

/// Ledger change of each peel, after removing the weight of stripped edges.
pub fn k4_delta(config: KvConfig) -> Option<i64> {
    BadnessLedger::K4.expected_delta(config, 4)
}

/// `b_K4` of a component together with the contribution of every peel.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct K4Ledger {
    pub value: i64,
    pub deltas: Vec<K4Delta>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct K4Delta {
    pub v: usize,
    pub config: KvConfig,
    /// `b_K4(G) - b_K4(G*)`; always 6, 5 or 13.
    pub delta: i64,
    /// `7 e(G_v* \ G_v)`.
    pub stripped: i64,
    pub degree: usize,
}

impl K4Ledger {
    pub fn from_trace(trace: &PeelTrace) -> Self {
        let deltas = trace
            .all_steps()
            .into_iter()
            .map(|s| K4Delta {
                v: s.v,
                config: s.config,
                delta: s.b_delta,
                stripped: 7 * s.extra_edges as i64,
                degree: s.degree,
            })
            .collect();
        K4Ledger { value: trace.badness, deltas }
    }
}

/// `K_{3,4}` plus a triangle on the three-vertex side: `a, b, c = 0, 1, 2`
/// and `w, x, y, z = 3..=6`.
pub fn witness_j() -> Graph {
    let mut edges = vec![(0, 1), (0, 2), (1, 2)];
    for t in 3..7 {
        edges.extend([(0, t), (1, t), (2, t)]);
    }
    Graph::from_edges(7, edges).expect("valid witness")
}

/// Peels a `K_4`-component with `m < 15/7` under the `b_K4` ledger.
///
/// Only `X1`, `X2` and `U1` are accepted, and an `X1` peel may leave at most
/// two components behind.
pub fn peel_trace_k4(g: &Graph) -> Result<PeelTrace> {
    let trace = peel_trace_with(g, 4, BadnessLedger::K4)?;
    check_branching(&trace)?;
    Ok(trace)
}

fn check_branching(trace: &PeelTrace) -> Result<()> {
    if let PeelEnd::Branch { components, .. } = &trace.end {
        let last = trace.steps.last().map(|s| s.config);
        if components.len() > 2 || last != Some(KvConfig::X(1)) {
            return Err(Error::invariant(format!(
                "{} components after a {} peel",
                components.len(),
                last.map_or("missing".to_string(), |c| c.to_string())
            )));
        }
        components.iter().try_for_each(check_branching)?;
    }
    Ok(())
}

/// Colours a single `K_4`-component with `m < 15/7` so that no `K_4` is
/// rainbow. A triangle carries at most one coloured edge while
/// `b_K4 < 6` and at most two while `b_K4 < 12`.
pub fn anti_rainbow_colouring_k4(g: &Graph) -> Result<(Colouring, StageReport)> {
    run_component(g, 4, Mode::K4, &EngineOptions::default())
}

/// Number of vertices of a `K_4`-component with `m < 15/7`. More than ten
/// would contradict the ledger and is reported as an invariant failure.
pub fn component_vertex_bound_check(g: &Graph) -> Result<usize> {
    check_density(g, BadnessLedger::K4.density_bound(4))?;
    let comps = kk_components(g, 4);
    if comps.len() != 1 || comps[0].n() != g.n() || comps[0].edge_count() != g.edge_count() {
        return Err(Error::NotSingleComponent { components: comps.len() });
    }
    if g.n() > 10 {
        return Err(Error::invariant(format!(
            "K_4-component below 15/7 with {} vertices",
            g.n()
        )));
    }
    Ok(g.n())
}
