use serde::{Deserialize, Serialize};

use super::{
    classify_kv, components_from_index, min_degree_vertex, reduce, split_with_index, CliqueIndex,
    KvConfig,
};
use crate::density::densest_subgraph;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rational::Rational;

/// Which badness functional a peel is accounted in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BadnessLedger {
    /// `b(G) = 2e - (k+1)v + 2k`, for `k >= 5`.
    General,
    /// `b_K4(G) = 7e - 15v + 18`.
    K4,
}

impl BadnessLedger {
    pub fn value(&self, g: &Graph, k: usize) -> i64 {
        match self {
            BadnessLedger::General => super::badness(g, k),
            BadnessLedger::K4 => crate::k4::badness_k4(g),
        }
    }

    /// Weight of one edge of `G* \ G_v` in the ledger.
    pub fn edge_weight(&self) -> i64 {
        match self {
            BadnessLedger::General => 2,
            BadnessLedger::K4 => 7,
        }
    }

    /// Closed-form ledger change from `G` to `G*`.
    pub fn expected_delta(&self, config: KvConfig, k: usize) -> Option<i64> {
        match self {
            BadnessLedger::General => Some(config.badness_delta(k)),
            BadnessLedger::K4 => match config {
                KvConfig::X(1) => Some(6),
                KvConfig::X(2) => Some(5),
                KvConfig::U => Some(13),
                _ => None,
            },
        }
    }

    /// Strict upper bound on the ledger implied by the density precondition.
    pub fn bound(&self, k: usize) -> i64 {
        match self {
            BadnessLedger::General => 2 * k as i64,
            BadnessLedger::K4 => 18,
        }
    }

    pub fn density_bound(&self, k: usize) -> Rational {
        match self {
            BadnessLedger::General => Rational::new(k as i64 + 1, 2),
            BadnessLedger::K4 => Rational::new(15, 7),
        }
    }
}

/// One peel: vertex `v` (original label) and what removing `R(v)` cost.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeelStep {
    pub v: usize,
    pub config: KvConfig,
    #[serde(rename = "edgeDelta")]
    pub edge_delta: i64,
    #[serde(rename = "extraEdges")]
    pub extra_edges: usize,
    #[serde(rename = "bDelta")]
    pub b_delta: i64,
    #[serde(skip)]
    pub degree: usize,
}

/// How a peel sequence ends: at a single `K_k`, or by splitting into
/// several components that are peeled on their own.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum PeelEnd {
    /// Original labels of the final `K_k`.
    Residue(Vec<usize>),
    /// `junction` is `b(G_v) - sum of b(component)`: components share
    /// vertices but not edges.
    Branch {
        junction: i64,
        components: Vec<PeelTrace>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeelTrace {
    pub k: usize,
    /// Ledger value of the graph this trace starts from.
    pub badness: i64,
    pub steps: Vec<PeelStep>,
    pub end: PeelEnd,
}

impl PeelTrace {
    /// Every step of the trace and of all branches, depth first.
    pub fn all_steps(&self) -> Vec<&PeelStep> {
        let mut out: Vec<&PeelStep> = self.steps.iter().collect();
        if let PeelEnd::Branch { components, .. } = &self.end {
            for c in components {
                out.extend(c.all_steps());
            }
        }
        out
    }

    /// Recomputes the starting ledger value from the steps and the end:
    /// every step contributes its delta plus the weighted stripped edges.
    pub fn reconstructed_badness(&self, ledger: BadnessLedger) -> i64 {
        let steps: i64 = self
            .steps
            .iter()
            .map(|s| s.b_delta + ledger.edge_weight() * s.extra_edges as i64)
            .sum();
        let end = match &self.end {
            PeelEnd::Residue(_) => match ledger {
                // b(K_k) = 0 in both ledgers.
                BadnessLedger::General | BadnessLedger::K4 => 0,
            },
            PeelEnd::Branch {
                junction,
                components,
            } => {
                junction
                    + components
                        .iter()
                        .map(|c| c.reconstructed_badness(ledger))
                        .sum::<i64>()
            }
        };
        steps + end
    }

    pub fn branch_count(&self) -> usize {
        match &self.end {
            PeelEnd::Residue(_) => 0,
            PeelEnd::Branch { components, .. } => {
                1 + components.iter().map(PeelTrace::branch_count).sum::<usize>()
            }
        }
    }
}

/// Peels a single `K_k`-component (`k >= 5`) down to its base cliques.
///
/// Checks the density precondition exactly, then at every step checks the
/// edge and badness changes against their closed forms and the residue
/// against `K_k`. A failed check is an [`Error::Invariant`].
pub fn peel_trace(g: &Graph, k: usize) -> Result<PeelTrace> {
    if k < 5 {
        return Err(Error::UnsupportedK { k, need: "k >= 5" });
    }
    peel_trace_with(g, k, BadnessLedger::General)
}

/// [`peel_trace`] with an explicit ledger; the `k = 4` peel goes through here.
pub fn peel_trace_with(g: &Graph, k: usize, ledger: BadnessLedger) -> Result<PeelTrace> {
    check_density(g, ledger.density_bound(k))?;
    let comps = super::kk_components(g, k);
    if comps.len() != 1 || comps[0].n() != g.n() || comps[0].edge_count() != g.edge_count() {
        return Err(Error::NotSingleComponent {
            components: comps.len(),
        });
    }
    peel_component(g, k, ledger)
}

pub(crate) fn check_density(g: &Graph, bound: Rational) -> Result<()> {
    let (density, set) = densest_subgraph(g)?;
    if density >= bound {
        return Err(Error::TooDense {
            vertices: set.iter().map(|&v| g.label(v)).collect(),
            density,
            bound,
        });
    }
    Ok(())
}

fn peel_component(g: &Graph, k: usize, ledger: BadnessLedger) -> Result<PeelTrace> {
    let start = ledger.value(g, k);
    if start < 0 || start >= ledger.bound(k) {
        return Err(Error::invariant(format!(
            "ledger value {start} outside [0, {}) on a component with {} vertices",
            ledger.bound(k),
            g.n()
        )));
    }
    let mut steps = Vec::new();
    let mut cur = g.clone();
    loop {
        if cur.n() <= k {
            if cur.n() == k && cur.is_complete() {
                return Ok(PeelTrace {
                    k,
                    badness: start,
                    steps,
                    end: PeelEnd::Residue(cur.labels().to_vec()),
                });
            }
            return Err(Error::invariant(format!(
                "residue on {:?} has {} vertices but is not K_{k}",
                cur.labels(),
                cur.n()
            )));
        }
        let index = CliqueIndex::new(&cur, k);
        let v = min_degree_vertex(&cur)?;
        let split = split_with_index(&cur, &index, v)?;
        if split.r.len() > k - 1 {
            return Err(Error::invariant(format!(
                "|R({})| = {} exceeds k - 1",
                cur.label(v),
                split.r.len()
            )));
        }
        let config = classify_kv(&split, &cur)?;
        let expected = ledger.expected_delta(config, k).ok_or_else(|| {
            Error::Classification {
                vertex: cur.label(v),
                reason: format!("{config} is not admissible for this ledger"),
            }
        })?;
        let red = reduce(&cur, &split, k);
        let edge_delta = (cur.edge_count() - red.g_star.edge_count()) as i64;
        let b_delta = ledger.value(&cur, k) - ledger.value(&red.g_star, k);
        if edge_delta != config.edge_delta(k) {
            return Err(Error::invariant(format!(
                "{config} at {}: edge delta {edge_delta}, closed form {}",
                cur.label(v),
                config.edge_delta(k)
            )));
        }
        if b_delta != expected {
            return Err(Error::invariant(format!(
                "{config} at {}: badness delta {b_delta}, closed form {expected}",
                cur.label(v)
            )));
        }
        steps.push(PeelStep {
            v: cur.label(v),
            config,
            edge_delta,
            extra_edges: red.extra_edges,
            b_delta,
            degree: cur.degree(v),
        });
        let g_v = red.g_v;
        let index_v = CliqueIndex::new(&g_v, k);
        let parts = components_from_index(&g_v, &index_v);
        if parts.len() == 1 {
            cur = g_v;
            continue;
        }
        let mut components = Vec::with_capacity(parts.len());
        let mut sum = 0;
        for (vs, es) in &parts {
            let part = g_v.subgraph(vs, es);
            sum += ledger.value(&part, k);
            components.push(peel_component(&part, k, ledger)?);
        }
        return Ok(PeelTrace {
            k,
            badness: start,
            steps,
            end: PeelEnd::Branch {
                junction: ledger.value(&g_v, k) - sum,
                components,
            },
        });
    }
}
