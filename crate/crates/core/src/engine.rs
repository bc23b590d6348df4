//! The inductive colouring.
//!
//! A component is coloured by peeling its minimum-degree vertex `v`,
//! colouring what is left (recursively, one component at a time when the
//! remainder falls apart), and then colouring a few uncoloured edges of
//! `K(v)` so that the new `K_k`'s through `R(v)` get a repeated colour.
//!
//! Which edges to colour is found by search over a small, fixed family of
//! shapes (one edge in an existing colour, two or three disjoint edges in a
//! new colour, and two-colour combinations of those). Every candidate is
//! scored by the exact stage of the resulting colouring, and a step is
//! accepted only if it reaches the stage the induction promises.
//!
//! A step that falls short is first retried from other minimum-degree
//! vertices. If none works, the default is to keep the best sound
//! extension and record a [`Finding`]; with [`EngineOptions::strict`] the
//! shortfall is an [`Error::Invariant`] instead. Soundness (a proper
//! colouring with no rainbow `K_k`) is checked either way.

use serde::Serialize;

use crate::colouring::Colouring;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::stage::{stage_bound, stage_profile, Evaluator, Score, Stage};
use crate::structure::peel::check_density;
use crate::structure::{
    classify_kv, components_from_index, kk_components, min_degree_vertices, reduce,
    split_with_index, BadnessLedger, CliqueIndex, KvConfig, NeighbourhoodSplit,
};

/// Limits on the search.
#[derive(Clone, Debug)]
pub struct EngineOptions {
    /// Candidate edge sets scored per extension step.
    pub step_budget: usize,
    /// Minimum-degree vertices tried per peel before a step failure is final.
    pub vertex_attempts: usize,
    /// Treat a missed stage promise as an error rather than a finding.
    pub strict: bool,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions {
            step_budget: 200_000,
            vertex_attempts: 4,
            strict: false,
        }
    }
}

/// One extension step as it actually ran.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct StepAudit {
    pub v: usize,
    pub config: KvConfig,
    /// Stage of the colouring being extended (`j_v`, or the merged stage
    /// when the remainder split).
    pub base: Stage,
    /// Index the step is measured from: `j_v`, bumped to 1 when the
    /// remainder lost edges, or `j_min` after a split.
    pub start: usize,
    pub target: Stage,
    pub achieved: Stage,
    pub max_three: usize,
    /// Shape of the accepted edge set, 0 when nothing had to be coloured.
    pub shape: usize,
    pub evaluations: usize,
    pub components: usize,
    /// Whether `v` was not the first minimum-degree vertex.
    pub alternate: bool,
}

impl StepAudit {
    /// `achieved - start`; at most 0, 1 or 2 depending on the shape of `K(v)`.
    pub fn advance(&self) -> i64 {
        self.achieved.index() as i64 - self.start as i64
    }
}

/// A promise the colouring did not keep. The colouring is still sound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Finding {
    pub v: Option<usize>,
    pub config: Option<KvConfig>,
    pub message: String,
}

/// One component of a split remainder.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ComponentEntry {
    pub vertices: Vec<usize>,
    pub badness: i64,
    /// `|b|` of the subgraph of `G` induced on this component's part of `S(v)`.
    pub s_badness: i64,
    /// Edges of the component inside `S(v)`.
    pub s_edges: usize,
    pub stage: Stage,
    /// Whether the component was coloured with its single `S(v)` edge left
    /// uncoloured.
    pub reserved: bool,
}

/// Accounting for a peel whose remainder splits into several components.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BranchReport {
    pub v: usize,
    pub config: KvConfig,
    pub components: Vec<ComponentEntry>,
    pub b_sum: i64,
    pub jmin: usize,
    /// Stage of the merged colouring restricted to `S(v)`.
    pub s_stage: Option<Stage>,
    pub achieved: Stage,
}

/// Result summary for one component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct StageReport {
    pub k: usize,
    pub vertices: Vec<usize>,
    pub stage: Stage,
    pub badness: i64,
    /// Guaranteed stage for this badness (`k >= 5`).
    pub bound: Option<Stage>,
    pub max_three: usize,
    /// Allowed coloured edges per triangle (`k = 4`).
    pub triangle_cap: Option<usize>,
    pub steps: Vec<StepAudit>,
    #[serde(rename = "componentLedger")]
    pub branches: Vec<BranchReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub findings: Vec<Finding>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Mode {
    General,
    K4,
}

impl Mode {
    fn ledger(self) -> BadnessLedger {
        match self {
            Mode::General => BadnessLedger::General,
            Mode::K4 => BadnessLedger::K4,
        }
    }

    /// Score key the search minimises, and the largest acceptable value.
    fn key(self, score: Score) -> usize {
        match self {
            Mode::General => score.stage.index(),
            Mode::K4 => score.max_three,
        }
    }

    fn limit(self, b: i64, k: usize) -> Result<usize> {
        match self {
            Mode::General => stage_bound(b, k)
                .map(Stage::index)
                .map_err(|e| Error::invariant(e.to_string())),
            Mode::K4 => Ok(triangle_cap(b)),
        }
    }
}

/// Coloured edges allowed per triangle at `b_K4 = b`.
pub(crate) fn triangle_cap(b: i64) -> usize {
    if b < 6 {
        1
    } else if b < 12 {
        2
    } else {
        3
    }
}

#[derive(Clone, Debug)]
struct Outcome {
    colouring: Colouring,
    stage: Stage,
    max_three: usize,
    steps: Vec<StepAudit>,
    branches: Vec<BranchReport>,
    findings: Vec<Finding>,
}

/// A failure at this peel (worth retrying with another vertex) or one
/// passed up from below (already retried there).
enum Fail {
    Here(Error),
    Below(Error),
}

type Pair = (usize, usize);

fn norm(u: usize, v: usize) -> Pair {
    (u.min(v), u.max(v))
}

/// Colours a single `K_k`-component with every `K_k` non-rainbow.
///
/// Requires `k >= 5`, `m(g) < (k+1)/2` and `g` a single component. The
/// stage reached never exceeds [`stage_bound`] of `b(g)`.
pub fn anti_rainbow_colouring(g: &Graph, k: usize) -> Result<(Colouring, StageReport)> {
    anti_rainbow_colouring_with(g, k, &EngineOptions::default())
}

pub fn anti_rainbow_colouring_with(
    g: &Graph,
    k: usize,
    opts: &EngineOptions,
) -> Result<(Colouring, StageReport)> {
    if k < 5 {
        return Err(Error::UnsupportedK { k, need: "k >= 5" });
    }
    run_component(g, k, Mode::General, opts)
}

/// Like [`anti_rainbow_colouring`], leaving the given edges (original
/// labels) uncoloured and every triangle through one of them with a second
/// uncoloured edge.
pub fn anti_rainbow_colouring_avoiding(
    g: &Graph,
    k: usize,
    avoid: &[(usize, usize)],
) -> Result<(Colouring, StageReport)> {
    if k < 5 {
        return Err(Error::UnsupportedK { k, need: "k >= 5" });
    }
    let avoid: Vec<Pair> = avoid.iter().map(|&(u, v)| norm(u, v)).collect();
    run_component_avoiding(g, k, Mode::General, &EngineOptions::default(), &avoid)
}

pub(crate) fn run_component(
    g: &Graph,
    k: usize,
    mode: Mode,
    opts: &EngineOptions,
) -> Result<(Colouring, StageReport)> {
    run_component_avoiding(g, k, mode, opts, &[])
}

fn run_component_avoiding(
    g: &Graph,
    k: usize,
    mode: Mode,
    opts: &EngineOptions,
    avoid: &[Pair],
) -> Result<(Colouring, StageReport)> {
    let ledger = mode.ledger();
    check_density(g, ledger.density_bound(k))?;
    let comps = kk_components(g, k);
    if comps.len() != 1 || comps[0].n() != g.n() || comps[0].edge_count() != g.edge_count() {
        return Err(Error::NotSingleComponent {
            components: comps.len(),
        });
    }
    let b = ledger.value(g, k);
    if b < 0 || b >= ledger.bound(k) {
        return Err(Error::invariant(format!(
            "badness {b} outside [0, {}) for a component satisfying the density bound",
            ledger.bound(k)
        )));
    }
    let out = colour_component(g, avoid, mode, k, opts)?;
    let colouring = out.colouring.canonical();
    let profile = stage_profile(g, &colouring, k).map_err(|e| match e {
        Error::Rainbow(clique) => {
            Error::invariant(format!("engine output leaves {clique:?} rainbow"))
        }
        other => Error::invariant(format!("engine output rejected: {other}")),
    })?;
    if profile.stage != out.stage || profile.max_three != out.max_three {
        return Err(Error::invariant(format!(
            "incremental evaluation said {} / {}, direct check says {} / {}",
            out.stage, out.max_three, profile.stage, profile.max_three
        )));
    }
    let (bound, cap) = match mode {
        Mode::General => (Some(stage_bound(b, k)?), None),
        Mode::K4 => (None, Some(triangle_cap(b))),
    };
    let mut findings = out.findings;
    let mut over = Vec::new();
    if let Some(bound) = bound {
        if profile.stage > bound {
            over.push(format!("stage {} exceeds the bound {bound} for badness {b}", profile.stage));
        }
    }
    if let Some(cap) = cap {
        if profile.max_three > cap {
            over.push(format!(
                "{} coloured edges in a triangle, at most {cap} allowed for b_K4 = {b}",
                profile.max_three
            ));
        }
    }
    for message in over {
        if opts.strict {
            return Err(Error::invariant(message));
        }
        findings.push(Finding { v: None, config: None, message });
    }
    let report = StageReport {
        k,
        vertices: g.labels().to_vec(),
        stage: profile.stage,
        badness: b,
        bound,
        max_three: profile.max_three,
        triangle_cap: cap,
        steps: out.steps,
        branches: out.branches,
        findings,
    };
    Ok((colouring, report))
}

/// Colours every `K_k`-component of `g` with its own palette. Edges in no
/// `K_k` stay uncoloured. `k = 4` uses the triangle-load procedure.
pub fn colour_graph(g: &Graph, k: usize) -> Result<Colouring> {
    Ok(colour_graph_with_reports(g, k, &EngineOptions::default())?.0)
}

pub fn colour_graph_with_reports(
    g: &Graph,
    k: usize,
    opts: &EngineOptions,
) -> Result<(Colouring, Vec<StageReport>)> {
    let mode = match k {
        4 => Mode::K4,
        k if k >= 5 => Mode::General,
        _ => return Err(Error::UnsupportedK { k, need: "k >= 4" }),
    };
    let mut colouring = Colouring::new();
    let mut reports = Vec::new();
    for comp in kk_components(g, k) {
        let (c, report) = run_component(&comp, k, mode, opts)?;
        colouring.merge_disjoint(&c);
        reports.push(report);
    }
    Ok((colouring.canonical(), reports))
}

fn colour_component(
    g: &Graph,
    reserved: &[Pair],
    mode: Mode,
    k: usize,
    opts: &EngineOptions,
) -> Result<Outcome> {
    if g.n() == k && g.is_complete() {
        return base_case(g, reserved, k);
    }
    if mode == Mode::K4 && g.n() == 5 && g.is_complete() {
        return Ok(k5_matching_classes(g));
    }
    let candidates = min_degree_vertices(g);
    let mut last = None;
    for (attempt, &v) in candidates.iter().take(opts.vertex_attempts.max(1)).enumerate() {
        match peel_step(g, v, reserved, mode, k, opts, attempt > 0, false) {
            Ok(out) => return Ok(out),
            Err(Fail::Below(e)) => return Err(e),
            Err(Fail::Here(e)) if e.is_invariant() => last = Some(e),
            Err(Fail::Here(e)) => return Err(e),
        }
    }
    match (last, candidates.first()) {
        (Some(_), Some(&v)) if !opts.strict => {
            peel_step(g, v, reserved, mode, k, opts, false, true).map_err(|f| match f {
                Fail::Here(e) | Fail::Below(e) => e,
            })
        }
        (last, _) => Err(last.unwrap_or(Error::EmptyGraph)),
    }
}

/// Two disjoint edges of a `K_k` in one colour, avoiding reserved edges.
fn base_case(g: &Graph, reserved: &[Pair], k: usize) -> Result<Outcome> {
    let is_reserved = |e: Pair| reserved.contains(&norm(g.label(e.0), g.label(e.1)));
    let edges = g.edges();
    for (i, &a) in edges.iter().enumerate() {
        if is_reserved(a) {
            continue;
        }
        for &b in &edges[i + 1..] {
            if is_reserved(b) || a.0 == b.0 || a.0 == b.1 || a.1 == b.0 || a.1 == b.1 {
                continue;
            }
            let mut colouring = Colouring::new();
            colouring.set(g.label(a.0), g.label(a.1), 1);
            colouring.set(g.label(b.0), g.label(b.1), 1);
            let profile = stage_profile(g, &colouring, k)?;
            return Ok(Outcome {
                colouring,
                stage: profile.stage,
                max_three: profile.max_three,
                steps: Vec::new(),
                branches: Vec::new(),
                findings: Vec::new(),
            });
        }
    }
    Err(Error::invariant(format!("no two disjoint free edges in K_{k}")))
}

/// `K_5` split into its five near-perfect matchings, one colour each: the
/// class missing `x` lies inside the `K_4` on the other four vertices.
fn k5_matching_classes(g: &Graph) -> Outcome {
    let mut colouring = Colouring::new();
    for x in 0..5 {
        for (a, b) in [((x + 1) % 5, (x + 4) % 5), ((x + 2) % 5, (x + 3) % 5)] {
            colouring.set(g.label(a), g.label(b), x as u32 + 1);
        }
    }
    let profile = stage_profile(g, &colouring, 4).expect("matching classes are proper");
    Outcome {
        colouring,
        stage: profile.stage,
        max_three: profile.max_three,
        steps: Vec::new(),
        branches: Vec::new(),
        findings: Vec::new(),
    }
}

fn edges_of(g: &Graph) -> Vec<Pair> {
    g.edges().iter().map(|&(u, v)| norm(g.label(u), g.label(v))).collect()
}

#[allow(clippy::too_many_arguments)]
fn peel_step(
    g: &Graph,
    v: usize,
    reserved: &[Pair],
    mode: Mode,
    k: usize,
    opts: &EngineOptions,
    alternate: bool,
    lenient: bool,
) -> std::result::Result<Outcome, Fail> {
    let index = CliqueIndex::new(g, k);
    let split = split_with_index(g, &index, v).map_err(Fail::Here)?;
    let config = classify_kv(&split, g).map_err(Fail::Here)?;
    let ledger = mode.ledger();
    if ledger.expected_delta(config, k).is_none() {
        return Err(Fail::Here(Error::Classification {
            vertex: g.label(v),
            reason: format!("{config} cannot occur for k = {k} under the density bound"),
        }));
    }
    if mode == Mode::K4 && config == KvConfig::U {
        return Err(Fail::Here(Error::invariant(format!(
            "U1 at {} in a K_4-component other than K_5",
            g.label(v)
        ))));
    }
    let red = reduce(g, &split, k);
    let b = ledger.value(g, k);
    let limit = mode.limit(b, k).map_err(Fail::Here)?;
    let parts = components_from_index(&red.g_v, &CliqueIndex::new(&red.g_v, k));
    let mut steps = Vec::new();
    let mut branches = Vec::new();
    let mut findings = Vec::new();
    let miss = |findings: &mut Vec<Finding>, message: String| {
        if lenient {
            findings.push(Finding { v: Some(g.label(v)), config: Some(config), message });
            Ok(())
        } else {
            Err(Fail::Here(Error::invariant(message)))
        }
    };
    let (base, base_stage, start, target, part_count, branch) = if parts.len() == 1 {
        let child_edges = edges_of(&red.g_v);
        let inherited: Vec<Pair> =
            reserved.iter().copied().filter(|e| child_edges.contains(e)).collect();
        // With `S(v)` a single edge, `P0` survives only if that edge is still
        // uncoloured below; ask for that, falling back if it cannot be had.
        let child = if config == KvConfig::X(k - 2) {
            let s_edge = norm(g.label(split.s[0]), g.label(split.s[1]));
            let mut with = inherited.clone();
            with.push(s_edge);
            match colour_component(&red.g_v, &with, mode, k, opts) {
                Ok(out) => out,
                Err(_) => colour_component(&red.g_v, &inherited, mode, k, opts).map_err(Fail::Below)?,
            }
        } else {
            colour_component(&red.g_v, &inherited, mode, k, opts).map_err(Fail::Below)?
        };
        let mut start = child.stage.index();
        if child.stage == Stage::P0 && red.extra_edges > 0 {
            start = 1;
        }
        let target = match mode {
            Mode::General => (start + config.max_advance(k)).min(limit),
            Mode::K4 => limit,
        };
        steps.extend(child.steps);
        branches.extend(child.branches);
        findings.extend(child.findings);
        (child.colouring, child.stage, start, target, 1, None)
    } else {
        if config == KvConfig::U || config == KvConfig::X(k - 2) {
            return Err(Fail::Here(Error::invariant(format!(
                "{config} at {} left {} components",
                g.label(v),
                parts.len()
            ))));
        }
        let s_labels: Vec<usize> = split.s.iter().map(|&x| g.label(x)).collect();
        let mut merged = Colouring::new();
        let mut entries = Vec::new();
        let mut b_sum = 0;
        for (vs, es) in &parts {
            let part = red.g_v.subgraph(vs, es);
            let part_edges = edges_of(&part);
            let s_in: Vec<usize> = part
                .labels()
                .iter()
                .copied()
                .filter(|l| s_labels.contains(l))
                .collect();
            let s_edges: Vec<Pair> = part_edges
                .iter()
                .copied()
                .filter(|&(a, c)| s_in.contains(&a) && s_in.contains(&c))
                .collect();
            let s_local: Vec<usize> = s_in.iter().map(|&l| g.index_of_label(l).expect("label")).collect();
            let s_badness = ledger.value(&g.induced(&s_local), k).abs();
            let part_badness = ledger.value(&part, k);
            b_sum += part_badness + s_badness;
            let inherited: Vec<Pair> =
                reserved.iter().copied().filter(|e| part_edges.contains(e)).collect();
            let (out, was_reserved) = if s_edges.len() == 1 {
                let mut with = inherited.clone();
                with.push(s_edges[0]);
                let first = colour_component(&part, &with, mode, k, opts);
                match first {
                    Ok(out) if out.stage == Stage::P0 => (out, true),
                    first => {
                        let second = colour_component(&part, &inherited, mode, k, opts);
                        match (first, second) {
                            (Ok(a), Ok(b)) if b.stage < a.stage => (b, false),
                            (Ok(a), _) => (a, true),
                            (Err(_), Ok(b)) => (b, false),
                            (Err(_), Err(e)) => return Err(Fail::Below(e)),
                        }
                    }
                }
            } else {
                (colour_component(&part, &inherited, mode, k, opts).map_err(Fail::Below)?, false)
            };
            entries.push(ComponentEntry {
                vertices: part.labels().to_vec(),
                badness: part_badness,
                s_badness,
                s_edges: s_edges.len(),
                stage: out.stage,
                reserved: was_reserved,
            });
            merged.merge_disjoint(&out.colouring);
            steps.extend(out.steps);
            branches.extend(out.branches);
            findings.extend(out.findings);
        }
        let kk = k as i64;
        if mode == Mode::General {
            let b_kv = ledger.value(&g.induced(&split.kv), k);
            if b < b_kv + b_sum {
                miss(&mut findings, format!(
                    "b(G) = {b} below b(K(v)) + b_sum = {b_kv} + {b_sum} at {}",
                    g.label(v)
                ))?;
            }
        }
        let jmin = match mode {
            Mode::General => {
                if b_sum < kk - 3 {
                    0
                } else if b_sum < kk - 1 {
                    1
                } else if b_sum < kk {
                    2
                } else if b_sum < 2 * kk - 2 {
                    3
                } else {
                    // Only reachable when b(G) >= 2k - 2 as well, where P4
                    // is all that is asked for.
                    4
                }
            }
            Mode::K4 => 0,
        };
        let target = match mode {
            Mode::General => jmin.min(limit),
            Mode::K4 => limit,
        };
        let s_graph = g.induced(&split.s);
        let s_stage = stage_profile(&s_graph, &merged.restricted_to(&s_graph), k)
            .ok()
            .map(|p| p.stage);
        let merged_stage = stage_profile(&red.g_v, &merged, k)
            .map_err(|e| Fail::Here(Error::invariant(format!("merged colouring: {e}"))))?
            .stage;
        let report = BranchReport {
            v: g.label(v),
            config,
            components: entries,
            b_sum,
            jmin,
            s_stage,
            achieved: Stage::P4,
        };
        (merged, merged_stage, jmin, target, parts.len(), Some(report))
    };
    let reserved_local: Vec<Pair> = reserved
        .iter()
        .filter_map(|&(a, c)| {
            let (x, y) = (g.index_of_label(a)?, g.index_of_label(c)?);
            g.has_edge(x, y).then_some(norm(x, y))
        })
        .collect();
    let found = extend_search(
        g,
        &index,
        &split,
        config,
        &base,
        &reserved_local,
        mode,
        k,
        target,
        opts.step_budget,
    )
    .map_err(Fail::Here)?;
    let key = mode.key(found.score);
    if key > target {
        miss(&mut findings, format!(
            "{config} at {}: best extension reaches {} (triangle load {}), promised {} (from {start}, b = {b}, limit {limit})",
            g.label(v),
            found.score.stage,
            found.score.max_three,
            match mode {
                Mode::General => Stage::from_index(target).to_string(),
                Mode::K4 => format!("triangle load {target}"),
            }
        ))?;
    }
    let mut colouring = base;
    for &(e, c) in &found.adds {
        let (x, y) = g.edges()[e];
        colouring.set(g.label(x), g.label(y), c);
    }
    if let Some(mut report) = branch {
        report.achieved = found.score.stage;
        branches.push(report);
    }
    steps.push(StepAudit {
        v: g.label(v),
        config,
        base: base_stage,
        start,
        target: match mode {
            Mode::General => Stage::from_index(target),
            Mode::K4 => Stage::P4,
        },
        achieved: found.score.stage,
        max_three: found.score.max_three,
        shape: found.shape,
        evaluations: found.evaluations,
        components: part_count,
        alternate,
    });
    Ok(Outcome {
        colouring,
        stage: found.score.stage,
        max_three: found.score.max_three,
        steps,
        branches,
        findings,
    })
}

struct Found {
    adds: Vec<(usize, u32)>,
    score: Score,
    shape: usize,
    evaluations: usize,
}

/// Candidate shapes in the order they are tried for each configuration.
fn shape_order(config: KvConfig, mode: Mode, k: usize) -> &'static [usize] {
    match (mode, config) {
        (Mode::K4, KvConfig::X(2)) => &[0, 1, 2, 4, 3, 5],
        (Mode::K4, _) => &[0, 2, 1, 4, 3, 5],
        (Mode::General, KvConfig::X(l)) if l + 2 == k => &[0, 2, 1, 4, 3, 5],
        (Mode::General, KvConfig::X(_)) => &[0, 1, 2, 4, 3, 5],
        (Mode::General, KvConfig::Y(_)) => &[0, 2, 3, 1, 4, 5],
        (Mode::General, KvConfig::U) => &[0, 3, 2, 1, 4, 5],
    }
}

/// Finds edges of `K(v)` to colour so that every `K_k` through `R(v)` has a
/// repeated colour, minimising the mode's score.
#[allow(clippy::too_many_arguments)]
fn extend_search(
    g: &Graph,
    index: &CliqueIndex,
    split: &NeighbourhoodSplit,
    config: KvConfig,
    base: &Colouring,
    reserved: &[Pair],
    mode: Mode,
    k: usize,
    target: usize,
    budget: usize,
) -> Result<Found> {
    let watched: Vec<usize> = (0..index.cliques.len())
        .filter(|&id| index.cliques[id].iter().any(|&x| split.in_r(x)))
        .collect();
    let eval = Evaluator::new(g, index, base, watched);
    let class = |(a, b): Pair| split.in_s(a) as usize + split.in_s(b) as usize;
    let mut pool: Vec<usize> = (0..g.edge_count())
        .filter(|&e| {
            let (a, b) = g.edges()[e];
            split.in_kv(a) && split.in_kv(b) && eval.base_colour(e) == 0 && !reserved.contains(&(a, b))
        })
        .collect();
    pool.sort_by_key(|&e| (class(g.edges()[e]), e));
    let mut palette: Vec<u32> = Vec::new();
    for (i, &a) in split.kv.iter().enumerate() {
        for &b in &split.kv[i + 1..] {
            if let Some(e) = g.edge_index(a, b) {
                let c = eval.base_colour(e);
                if c != 0 && !palette.contains(&c) {
                    palette.push(c);
                }
            }
        }
    }
    palette.sort_unstable();
    let fresh = eval.max_colour() + 1;
    let disjoint = |e: usize, f: usize| {
        let (a, b) = g.edges()[e];
        let (c, d) = g.edges()[f];
        a != c && a != d && b != c && b != d
    };
    let reserved_ok = |adds: &[(usize, u32)]| {
        reserved.iter().all(|&(x, y)| {
            g.neighbours(x)
                .iter()
                .filter(|&&z| z != y && g.has_edge(y, z))
                .all(|&z| !(eval.coloured_pair(x, z, adds) && eval.coloured_pair(y, z, adds)))
        })
    };

    let mut best: Option<(usize, Vec<(usize, u32)>, Score, usize)> = None;
    let best_key = std::cell::Cell::new(usize::MAX);
    let mut evaluations = 0usize;
    // Returns true once the search should stop.
    let mut consider = |adds: &[(usize, u32)], shape: usize| -> bool {
        evaluations += 1;
        if reserved_ok(adds) {
            if let Some(score) = eval.evaluate(adds) {
                let key = mode.key(score);
                if best.as_ref().is_none_or(|b| key < b.0) {
                    best = Some((key, adds.to_vec(), score, shape));
                    best_key.set(key);
                }
                if key == 0 {
                    return true;
                }
            }
        }
        evaluations >= budget
    };

    'shapes: for &shape in shape_order(config, mode, k) {
        let stop = match shape {
            0 => consider(&[], 0),
            1 => {
                let mut stop = false;
                'one: for &e in &pool {
                    for &c in &palette {
                        if consider(&[(e, c)], 1) {
                            stop = true;
                            break 'one;
                        }
                    }
                }
                stop
            }
            2 => {
                let mut stop = false;
                'two: for (i, &e) in pool.iter().enumerate() {
                    for &f in &pool[i + 1..] {
                        if disjoint(e, f) && consider(&[(e, fresh), (f, fresh)], 2) {
                            stop = true;
                            break 'two;
                        }
                    }
                }
                stop
            }
            3 => {
                let mut stop = false;
                'three: for (i, &e) in pool.iter().enumerate() {
                    for (j, &f) in pool.iter().enumerate().skip(i + 1) {
                        if !disjoint(e, f) {
                            continue;
                        }
                        for &h in &pool[j + 1..] {
                            if disjoint(e, h)
                                && disjoint(f, h)
                                && consider(&[(e, fresh), (f, fresh), (h, fresh)], 3)
                            {
                                stop = true;
                                break 'three;
                            }
                        }
                    }
                }
                stop
            }
            4 => {
                let mut stop = false;
                'four: for (i, &e) in pool.iter().enumerate() {
                    for &f in &pool[i + 1..] {
                        for &c in &palette {
                            for &d in &palette {
                                if c != d && consider(&[(e, c), (f, d)], 4) {
                                    stop = true;
                                    break 'four;
                                }
                            }
                        }
                    }
                }
                stop
            }
            5 => {
                let pairs: Vec<(usize, usize)> = pool
                    .iter()
                    .enumerate()
                    .flat_map(|(i, &e)| pool[i + 1..].iter().map(move |&f| (e, f)))
                    .filter(|&(e, f)| disjoint(e, f))
                    .collect();
                let mut stop = false;
                'five: for (i, &(e, f)) in pairs.iter().enumerate() {
                    for &(h, l) in &pairs[i + 1..] {
                        if h == e || h == f || l == e || l == f {
                            continue;
                        }
                        let adds = [(e, fresh), (f, fresh), (h, fresh + 1), (l, fresh + 1)];
                        if consider(&adds, 5) {
                            stop = true;
                            break 'five;
                        }
                    }
                }
                stop
            }
            _ => unreachable!("unknown shape"),
        };
        if stop {
            break 'shapes;
        }
        if best_key.get() <= target {
            break;
        }
    }
    match best {
        Some((_, adds, score, shape)) => Ok(Found {
            adds,
            score,
            shape,
            evaluations,
        }),
        None => Err(Error::invariant(format!(
            "{config} at {}: no edge set among {evaluations} candidates makes the K_{k}'s through R(v) non-rainbow",
            g.label(split.v)
        ))),
    }
}

/// Extends a colouring of `G*` (or of `G_v`) to `G` after peeling `v`.
///
/// `c_star` is keyed by the labels of `g`. Returns the extended colouring and
/// its stage; fails if the promised stage cannot be reached.
pub fn extend_colouring(
    g: &Graph,
    c_star: &Colouring,
    split: &NeighbourhoodSplit,
    config: KvConfig,
    k: usize,
) -> Result<(Colouring, Stage)> {
    let index = CliqueIndex::new(g, k);
    let red = reduce(g, split, k);
    let j_v = stage_profile(&red.g_v, c_star, k)?.stage;
    let mut start = j_v.index();
    if j_v == Stage::P0 && red.extra_edges > 0 {
        start = 1;
    }
    let limit = stage_bound(crate::structure::badness(g, k), k)?.index();
    let target = (start + config.max_advance(k)).min(limit);
    let found = extend_search(
        g,
        &index,
        split,
        config,
        c_star,
        &[],
        Mode::General,
        k,
        target,
        EngineOptions::default().step_budget,
    )?;
    if found.score.stage.index() > target {
        return Err(Error::invariant(format!(
            "{config}: reached {}, promised {}",
            found.score.stage,
            Stage::from_index(target)
        )));
    }
    let mut out = c_star.clone();
    for &(e, c) in &found.adds {
        let (x, y) = g.edges()[e];
        out.set(g.label(x), g.label(y), c);
    }
    Ok((out, found.score.stage))
}

/// Merges coloured components of `G_v` (disjoint palettes) and extends the
/// result over `K(v)`, aiming for the stage `j_min` derived from `b_sum`.
pub fn combine_components(
    g: &Graph,
    split: &NeighbourhoodSplit,
    components: &[(Graph, Colouring)],
    k: usize,
) -> Result<(Colouring, BranchReport)> {
    if components.len() < 2 {
        return Err(Error::Params("combining needs at least two components".into()));
    }
    let config = classify_kv(split, g)?;
    if config == KvConfig::U || config == KvConfig::X(k - 2) {
        return Err(Error::Params(format!("{config} never splits the remainder")));
    }
    let index = CliqueIndex::new(g, k);
    let s_labels: Vec<usize> = split.s.iter().map(|&x| g.label(x)).collect();
    let mut merged = Colouring::new();
    let mut entries = Vec::new();
    let mut b_sum = 0;
    for (part, c) in components {
        let s_in: Vec<usize> = part.labels().iter().copied().filter(|l| s_labels.contains(l)).collect();
        let s_local: Vec<usize> = s_in.iter().filter_map(|&l| g.index_of_label(l)).collect();
        let s_edges = edges_of(part)
            .into_iter()
            .filter(|&(a, b)| s_in.contains(&a) && s_in.contains(&b))
            .count();
        let badness = crate::structure::badness(part, k);
        let s_badness = crate::structure::badness(&g.induced(&s_local), k).abs();
        b_sum += badness + s_badness;
        entries.push(ComponentEntry {
            vertices: part.labels().to_vec(),
            badness,
            s_badness,
            s_edges,
            stage: stage_profile(part, c, k)?.stage,
            reserved: false,
        });
        merged.merge_disjoint(c);
    }
    let kk = k as i64;
    let jmin = if b_sum < kk - 3 {
        0
    } else if b_sum < kk - 1 {
        1
    } else if b_sum < kk {
        2
    } else if b_sum < 2 * kk - 2 {
        3
    } else {
        return Err(Error::BadnessOutOfRange {
            b: b_sum,
            bound: 2 * kk - 2,
        });
    };
    let limit = stage_bound(crate::structure::badness(g, k), k)?.index();
    let target = jmin.min(limit);
    let found = extend_search(
        g,
        &index,
        split,
        config,
        &merged,
        &[],
        Mode::General,
        k,
        target,
        EngineOptions::default().step_budget,
    )?;
    if found.score.stage.index() > target {
        return Err(Error::invariant(format!(
            "{config}: reached {}, promised {}",
            found.score.stage,
            Stage::from_index(target)
        )));
    }
    let s_graph = g.induced(&split.s);
    let s_stage = stage_profile(&s_graph, &merged.restricted_to(&s_graph), k)
        .ok()
        .map(|p| p.stage);
    for &(e, c) in &found.adds {
        let (x, y) = g.edges()[e];
        merged.set(g.label(x), g.label(y), c);
    }
    let report = BranchReport {
        v: g.label(split.v),
        config,
        components: entries,
        b_sum,
        jmin,
        s_stage,
        achieved: found.score.stage,
    };
    Ok((merged, report))
}
