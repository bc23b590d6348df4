use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::density::max_density;
use crate::error::{Error, Result};
use crate::fixtures::{clique_chain, figure1_fixtures};
use crate::graph::{enumerate_cliques, Graph};
use crate::k4::badness_k4;
use crate::rational::Rational;
use crate::structure::{badness, kk_components, KvConfig};

use super::{trial_rng, CoupledSample};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CorpusKind {
    CliqueChain,
    Figure1Fixtures,
    RandomSparse,
    GluingMix,
}

impl std::str::FromStr for CorpusKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "clique-chain" => Ok(CorpusKind::CliqueChain),
            "figure1-fixtures" => Ok(CorpusKind::Figure1Fixtures),
            "random-sparse" => Ok(CorpusKind::RandomSparse),
            "gluing-mix" => Ok(CorpusKind::GluingMix),
            other => Err(Error::Params(format!("unknown corpus kind `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorpusParams {
    /// Graphs to draw (random kinds).
    pub count: usize,
    /// Chain length, or the most attachments in a gluing mix.
    pub length: usize,
    /// Vertices and edge probability for `random-sparse`.
    pub n: usize,
    pub p: f64,
}

impl Default for CorpusParams {
    fn default() -> Self {
        CorpusParams { count: 100, length: 3, n: 10, p: 0.6 }
    }
}

/// How to rebuild a corpus graph exactly.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Recipe {
    CliqueChain { k: usize, length: usize },
    Figure1 { index: usize },
    RandomSparse { n: usize, p: f64, seed: u64, trial: u64 },
    /// Start from `K_k` and attach one piece per entry of `steps`; `seed`
    /// and `trial` choose where each piece goes.
    Glued { k: usize, steps: Vec<KvConfig>, seed: u64, trial: u64 },
}

impl Recipe {
    pub fn build(&self) -> Result<Graph> {
        match *self {
            Recipe::CliqueChain { k, length } => {
                if k < 4 || length == 0 {
                    return Err(Error::Params(format!("clique chain needs k >= 4 and length >= 1, got {k}, {length}")));
                }
                Ok(clique_chain(k, length))
            }
            Recipe::Figure1 { index } => figure1_fixtures()
                .into_iter()
                .nth(index)
                .map(|(_, g)| g)
                .ok_or_else(|| Error::Params(format!("figure-1 fixture {index} does not exist"))),
            Recipe::RandomSparse { n, p, seed, trial } => Ok(CoupledSample::draw(n, seed, trial).graph(p)),
            Recipe::Glued { k, ref steps, seed, trial } => {
                let mut rng = trial_rng(seed, trial);
                let mut g = Graph::complete(k);
                for &step in steps {
                    g = attach(&g, k, step, &mut rng)
                        .ok_or_else(|| Error::Params(format!("no place to attach {step}")))?;
                }
                Ok(g)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub recipe: Recipe,
    pub graph: Graph,
}

impl CorpusEntry {
    fn new(recipe: Recipe) -> Result<Self> {
        let graph = recipe.build()?;
        Ok(CorpusEntry { recipe, graph })
    }
}

fn density_bound(k: usize) -> Rational {
    if k == 4 {
        Rational::new(15, 7)
    } else {
        Rational::new(k as i64 + 1, 2)
    }
}

/// Draws test inputs of the given kind. Every graph satisfies the density
/// precondition for `k` and carries the recipe that rebuilds it.
pub fn corpus(kind: CorpusKind, k: usize, params: &CorpusParams, seed: u64) -> Result<Vec<CorpusEntry>> {
    if k < 4 {
        return Err(Error::UnsupportedK { k, need: "k >= 4" });
    }
    match kind {
        CorpusKind::CliqueChain => Ok(vec![CorpusEntry::new(Recipe::CliqueChain { k, length: params.length })?]),
        CorpusKind::Figure1Fixtures => {
            if k != 5 {
                return Err(Error::Params("the figure-1 fixtures are for k = 5".into()));
            }
            (0..7).map(|index| CorpusEntry::new(Recipe::Figure1 { index })).collect()
        }
        CorpusKind::RandomSparse => random_sparse(k, params, seed),
        CorpusKind::GluingMix => gluing_mix(k, params, seed),
    }
}

const ATTEMPTS: u64 = 200;

fn random_sparse(k: usize, params: &CorpusParams, seed: u64) -> Result<Vec<CorpusEntry>> {
    if !(0.0..=1.0).contains(&params.p) {
        return Err(Error::Params(format!("p = {} is not a probability", params.p)));
    }
    let bound = density_bound(k);
    let mut out = Vec::with_capacity(params.count);
    let mut trial = 0;
    while out.len() < params.count {
        let limit = trial + ATTEMPTS;
        loop {
            if trial == limit {
                return Err(Error::Params(format!(
                    "G({}, {}) gave no graph with a K_{k} below density {bound} in {ATTEMPTS} draws",
                    params.n, params.p
                )));
            }
            let recipe = Recipe::RandomSparse { n: params.n, p: params.p, seed, trial };
            trial += 1;
            let g = recipe.build()?;
            if !enumerate_cliques(&g, k).is_empty() && max_density(&g)? < bound {
                out.push(CorpusEntry { recipe, graph: g });
                break;
            }
        }
    }
    Ok(out)
}

fn ledger(g: &Graph, k: usize) -> i64 {
    if k == 4 {
        badness_k4(g)
    } else {
        badness(g, k)
    }
}

fn ledger_bound(k: usize) -> i64 {
    if k == 4 {
        18
    } else {
        2 * k as i64
    }
}

/// Attachments a gluing mix draws from.
fn menu(k: usize) -> Vec<KvConfig> {
    if k == 4 {
        return vec![KvConfig::X(1), KvConfig::X(2)];
    }
    let mut out: Vec<KvConfig> = (1..=k - 2).map(KvConfig::X).collect();
    out.extend((1..=k - 2).map(KvConfig::Y));
    out.push(KvConfig::U);
    out
}

fn gluing_mix(k: usize, params: &CorpusParams, seed: u64) -> Result<Vec<CorpusEntry>> {
    let bound = density_bound(k);
    let mut out = Vec::with_capacity(params.count);
    let mut trial = 0;
    let mut misses = 0;
    while out.len() < params.count {
        let entry = draw_glued(k, params.length, seed, trial);
        trial += 1;
        match entry {
            Some(e) if max_density(&e.graph)? < bound && kk_components(&e.graph, k).len() == 1 => {
                out.push(e);
                misses = 0;
            }
            _ => {
                misses += 1;
                if misses == ATTEMPTS {
                    return Err(Error::Params(format!(
                        "no gluing mix for k = {k} with up to {} steps in {ATTEMPTS} draws",
                        params.length
                    )));
                }
            }
        }
    }
    Ok(out)
}

/// Picks a random attachment sequence that keeps the ledger in range, then
/// rebuilds it through [`Recipe::build`] so the recipe is exact.
fn draw_glued(k: usize, max_steps: usize, seed: u64, trial: u64) -> Option<CorpusEntry> {
    // The sequence and the placements use separate streams of the trial.
    let mut pick = trial_rng(seed ^ 0x9e37_79b9_7f4a_7c15, trial);
    let mut place = trial_rng(seed, trial);
    let len = pick.gen_range(0..=max_steps);
    let mut g = Graph::complete(k);
    let mut steps = Vec::new();
    for _ in 0..len {
        let mut options = menu(k);
        options.shuffle(&mut pick);
        let mut placed = false;
        for step in options {
            // Try the step on a throwaway RNG first so a miss does not
            // disturb the placement stream.
            let mut probe = place.clone();
            if let Some(h) = attach(&g, k, step, &mut probe) {
                if ledger(&h, k) < ledger_bound(k) {
                    g = h;
                    place = probe;
                    steps.push(step);
                    placed = true;
                    break;
                }
            }
        }
        if !placed {
            break;
        }
    }
    let recipe = Recipe::Glued { k, steps, seed, trial };
    let graph = recipe.build().ok()?;
    debug_assert_eq!(graph, g);
    Some(CorpusEntry { recipe, graph })
}

/// Adds new vertices `R` so that a new vertex sees the given configuration:
/// `R` is a clique joined to an existing set `S` that spans `K_{k-l}` for
/// `X(l)`, `K_{k+1-l}` minus an edge for `Y(l)`, and `K_k` for `U`.
fn attach(g: &Graph, k: usize, step: KvConfig, rng: &mut impl Rng) -> Option<Graph> {
    let cliques = enumerate_cliques(g, k);
    let (ell, s) = match step {
        KvConfig::X(ell) => {
            let q = cliques.choose(rng)?;
            let s: Vec<usize> = q.choose_multiple(rng, k - ell).copied().collect();
            (ell, s)
        }
        KvConfig::U => (1, cliques.choose(rng)?.clone()),
        KvConfig::Y(ell) => {
            // S = T + {x, y} with T + {x} inside a clique, y joined to T but
            // not to x.
            let need = k - 1 - ell;
            let mut places = Vec::new();
            for q in &cliques {
                for &x in q {
                    for y in 0..g.n() {
                        if q.contains(&y) || g.has_edge(x, y) {
                            continue;
                        }
                        let common: Vec<usize> =
                            q.iter().copied().filter(|&t| t != x && g.has_edge(t, y)).collect();
                        if common.len() >= need {
                            places.push((x, y, common));
                        }
                    }
                }
            }
            let (x, y, common) = places.choose(rng)?;
            let mut s: Vec<usize> = common.choose_multiple(rng, need).copied().collect();
            s.extend([*x, *y]);
            (ell, s)
        }
    };
    let n = g.n();
    let mut edges = g.edges().to_vec();
    for r in n..n + ell {
        edges.extend(s.iter().map(|&t| (t, r)));
        edges.extend((n..r).map(|r0| (r0, r)));
    }
    Some(Graph::from_edges(n + ell, edges).expect("attachment stays in range"))
}

/// `K_4`-components with `m < 15/7`, glued from `K_4` by `X1` and `X2`
/// attachments, plus `K_5`.
pub fn k4_corpus(count: usize, seed: u64) -> Result<Vec<CorpusEntry>> {
    let params = CorpusParams { count: count.saturating_sub(1), length: 3, ..CorpusParams::default() };
    let mut out = vec![CorpusEntry::new(Recipe::Glued { k: 4, steps: vec![KvConfig::U], seed, trial: u64::MAX })?];
    out.extend(gluing_mix(4, &params, seed)?);
    out.truncate(count);
    Ok(out)
}
