//! The stage hierarchy `P0 ⊂ P1 ⊂ ... ⊂ P4` of partial colourings.
//!
//! Every stage asks for each `K_k` to contain two edges of equal colour.
//! `P1`..`P3` additionally cap the number of coloured edges on any four
//! vertices at `j + 2`. `P0` asks for the most: every colour used exactly
//! twice, exactly two coloured edges per `K_k`, at most three coloured edges
//! on four vertices, and no two `K_k`'s sharing more than one edge.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::colouring::Colouring;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::structure::CliqueIndex;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Stage {
    P0,
    P1,
    P2,
    P3,
    P4,
}

impl Stage {
    pub const ALL: [Stage; 5] = [Stage::P0, Stage::P1, Stage::P2, Stage::P3, Stage::P4];

    pub fn index(self) -> usize {
        self as usize
    }

    /// Stage with the given index, saturating at `P4`.
    pub fn from_index(j: usize) -> Stage {
        Stage::ALL[j.min(4)]
    }

    /// Largest number of coloured edges allowed on four vertices, if capped.
    pub fn four_vertex_cap(self) -> Option<usize> {
        match self {
            Stage::P0 | Stage::P1 => Some(3),
            Stage::P2 => Some(4),
            Stage::P3 => Some(5),
            Stage::P4 => None,
        }
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P{}", self.index())
    }
}

impl Serialize for Stage {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Stage {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        match s.strip_prefix('P').and_then(|j| j.parse::<usize>().ok()) {
            Some(j) if j <= 4 => Ok(Stage::ALL[j]),
            _ => Err(serde::de::Error::custom(format!("invalid stage `{s}`"))),
        }
    }
}

/// The strongest stage guaranteed for a component of badness `b`.
pub fn stage_bound(b: i64, k: usize) -> Result<Stage> {
    let k = k as i64;
    if b < 0 || b >= 2 * k {
        return Err(Error::BadnessOutOfRange { b, bound: 2 * k });
    }
    Ok(if b < k - 3 {
        Stage::P0
    } else if b < k - 1 {
        Stage::P1
    } else if b < k + 1 {
        Stage::P2
    } else if b < 2 * k - 2 {
        Stage::P3
    } else {
        Stage::P4
    })
}

/// Everything [`check_stage`] measures, for audits and reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StageProfile {
    pub stage: Stage,
    /// Most coloured edges spanned by any four vertices.
    pub max_four: usize,
    /// Most coloured edges in any triangle of the graph.
    pub max_three: usize,
    pub colours_used_twice: bool,
    pub two_per_clique: bool,
    pub cliques_share_at_most_one_edge: bool,
}

/// Smallest `j` with the colouring in stage `P_j`; fails on an improper
/// colouring or a rainbow `K_k`.
pub fn check_stage(g: &Graph, c: &Colouring, k: usize) -> Result<Stage> {
    Ok(stage_profile(g, c, k)?.stage)
}

pub fn stage_profile(g: &Graph, c: &Colouring, k: usize) -> Result<StageProfile> {
    c.check_proper(g)?;
    let index = CliqueIndex::new(g, k);
    let eval = Evaluator::new(g, &index, c, (0..index.cliques.len()).collect());
    if let Some(id) = eval.rainbow_clique(&[]) {
        return Err(Error::Rainbow(
            index.cliques[id].iter().map(|&v| g.label(v)).collect(),
        ));
    }
    Ok(eval.profile())
}

/// Stage evaluation for a fixed graph and base colouring under small
/// batches of added colours. Works on local edge indices.
pub(crate) struct Evaluator<'a> {
    g: &'a Graph,
    colour: Vec<u32>,
    colours_at: Vec<Vec<u32>>,
    coloured_adj: Vec<Vec<usize>>,
    counts: HashMap<u32, usize>,
    clique_edges: Vec<Vec<usize>>,
    clique_coloured: Vec<usize>,
    watched: Vec<usize>,
    base_four: usize,
    base_three: usize,
    pairs_ok: bool,
}

/// Outcome of adding a batch of colours.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Score {
    pub stage: Stage,
    pub max_three: usize,
}

impl<'a> Evaluator<'a> {
    /// `watched` lists the cliques whose non-rainbow condition is checked on
    /// every evaluation; the others are assumed settled by the base.
    pub fn new(g: &'a Graph, index: &'a CliqueIndex, base: &Colouring, watched: Vec<usize>) -> Self {
        let m = g.edge_count();
        let mut colour = vec![0u32; m];
        let mut colours_at = vec![Vec::new(); g.n()];
        let mut coloured_adj = vec![Vec::new(); g.n()];
        let mut counts = HashMap::new();
        for (i, &(u, v)) in g.edges().iter().enumerate() {
            if let Some(c) = base.get_local(g, u, v) {
                colour[i] = c;
                colours_at[u].push(c);
                colours_at[v].push(c);
                coloured_adj[u].push(v);
                coloured_adj[v].push(u);
                *counts.entry(c).or_insert(0) += 1;
            }
        }
        let clique_edges: Vec<Vec<usize>> = index
            .cliques
            .iter()
            .map(|c| {
                let mut es = Vec::new();
                for (i, &u) in c.iter().enumerate() {
                    for &w in &c[i + 1..] {
                        es.push(g.edge_index(u, w).expect("clique edge"));
                    }
                }
                es
            })
            .collect();
        let clique_coloured = clique_edges
            .iter()
            .map(|es| es.iter().filter(|&&e| colour[e] != 0).count())
            .collect();
        let mut eval = Evaluator {
            g,
            colour,
            colours_at,
            coloured_adj,
            counts,
            clique_edges,
            clique_coloured,
            watched,
            base_four: 0,
            base_three: 0,
            pairs_ok: !index.has_clique_pair_sharing_two_edges(),
        };
        eval.base_four = eval.full_max_four();
        eval.base_three = eval.full_max_three();
        eval
    }

    pub fn base_colour(&self, e: usize) -> u32 {
        self.colour[e]
    }

    pub fn max_colour(&self) -> u32 {
        self.counts.keys().copied().max().unwrap_or(0)
    }

    fn colour_with(&self, e: usize, adds: &[(usize, u32)]) -> u32 {
        if self.colour[e] != 0 {
            return self.colour[e];
        }
        adds.iter().find(|&&(a, _)| a == e).map_or(0, |&(_, c)| c)
    }

    pub fn coloured_pair(&self, x: usize, y: usize, adds: &[(usize, u32)]) -> bool {
        self.pair_colour(x, y, adds) != 0
    }

    fn pair_colour(&self, x: usize, y: usize, adds: &[(usize, u32)]) -> u32 {
        match self.g.edge_index(x, y) {
            Some(e) => self.colour_with(e, adds),
            None => 0,
        }
    }

    /// Whether the additions keep the colouring proper.
    pub fn proper(&self, adds: &[(usize, u32)]) -> bool {
        for (i, &(e, c)) in adds.iter().enumerate() {
            if self.colour[e] != 0 {
                return false;
            }
            let (u, v) = self.g.edges()[e];
            if self.colours_at[u].contains(&c) || self.colours_at[v].contains(&c) {
                return false;
            }
            for &(f, d) in &adds[..i] {
                if f == e {
                    return false;
                }
                if d == c {
                    let (x, y) = self.g.edges()[f];
                    if x == u || x == v || y == u || y == v {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// A watched clique left rainbow by the additions, if any.
    pub fn rainbow_clique(&self, adds: &[(usize, u32)]) -> Option<usize> {
        let mut seen: Vec<u32> = Vec::new();
        'cliques: for &id in &self.watched {
            seen.clear();
            for &e in &self.clique_edges[id] {
                let c = self.colour_with(e, adds);
                if c != 0 {
                    if seen.contains(&c) {
                        continue 'cliques;
                    }
                    seen.push(c);
                }
            }
            return Some(id);
        }
        None
    }

    /// Stage and triangle load after the additions, or `None` if they break
    /// properness or leave a watched clique rainbow.
    pub fn evaluate(&self, adds: &[(usize, u32)]) -> Option<Score> {
        if !self.proper(adds) || self.rainbow_clique(adds).is_some() {
            return None;
        }
        let four = self.max_four_with(adds);
        let three = self.max_three_with(adds);
        let stage = if four <= 3 && self.p0_extras(adds) {
            Stage::P0
        } else {
            match four {
                0..=3 => Stage::P1,
                4 => Stage::P2,
                5 => Stage::P3,
                _ => Stage::P4,
            }
        };
        Some(Score {
            stage,
            max_three: three,
        })
    }

    fn p0_extras(&self, adds: &[(usize, u32)]) -> bool {
        self.pairs_ok && self.twice_with(adds) && self.two_per_clique_with(adds)
    }

    fn twice_with(&self, adds: &[(usize, u32)]) -> bool {
        let mut extra: BTreeMap<u32, usize> = BTreeMap::new();
        for &(_, c) in adds {
            *extra.entry(c).or_insert(0) += 1;
        }
        for (&c, &n) in &self.counts {
            if n + extra.get(&c).copied().unwrap_or(0) != 2 {
                return false;
            }
        }
        extra
            .iter()
            .all(|(c, &n)| self.counts.contains_key(c) || n == 2)
    }

    fn two_per_clique_with(&self, adds: &[(usize, u32)]) -> bool {
        self.clique_edges.iter().enumerate().all(|(id, es)| {
            let added = adds.iter().filter(|(e, _)| es.contains(e)).count();
            self.clique_coloured[id] + added == 2
        })
    }

    fn coloured_neighbours(&self, x: usize, adds: &[(usize, u32)], out: &mut Vec<usize>) {
        out.extend_from_slice(&self.coloured_adj[x]);
        for &(e, _) in adds {
            let (u, v) = self.g.edges()[e];
            if u == x {
                out.push(v);
            } else if v == x {
                out.push(u);
            }
        }
    }

    fn coloured_on(&self, set: &[usize; 4], adds: &[(usize, u32)]) -> usize {
        let mut n = 0;
        for i in 0..4 {
            for j in i + 1..4 {
                if self.pair_colour(set[i], set[j], adds) != 0 {
                    n += 1;
                }
            }
        }
        n
    }

    /// Max coloured edges over four-sets containing edge `(a, b)`. A set with
    /// four or more coloured edges is connected in the coloured graph, so it
    /// suffices to grow from `(a, b)` along coloured edges.
    fn max_four_at(&self, a: usize, b: usize, adds: &[(usize, u32)]) -> usize {
        let mut best = 0;
        let mut first = Vec::new();
        self.coloured_neighbours(a, adds, &mut first);
        self.coloured_neighbours(b, adds, &mut first);
        first.sort_unstable();
        first.dedup();
        let mut second = Vec::new();
        for &c in &first {
            if c == a || c == b {
                continue;
            }
            second.clear();
            second.extend_from_slice(&first);
            self.coloured_neighbours(c, adds, &mut second);
            second.sort_unstable();
            second.dedup();
            for &d in &second {
                if d == a || d == b || d == c {
                    continue;
                }
                best = best.max(self.coloured_on(&[a, b, c, d], adds));
            }
        }
        best
    }

    fn full_max_four(&self) -> usize {
        if self.g.n() < 4 {
            return 0;
        }
        // Per coloured component, the most coloured edges on 1..=4 of its
        // vertices; then the best way to pick four vertices across them.
        let n = self.g.n();
        let mut comp = vec![usize::MAX; n];
        let mut dp = [0usize, 0, 0, 0, 0];
        for start in 0..n {
            if comp[start] != usize::MAX || self.coloured_adj[start].is_empty() {
                continue;
            }
            let mut members = vec![start];
            comp[start] = start;
            let mut i = 0;
            while i < members.len() {
                for &w in &self.coloured_adj[members[i]] {
                    if comp[w] == usize::MAX {
                        comp[w] = start;
                        members.push(w);
                    }
                }
                i += 1;
            }
            let size = members.len();
            let mut f = [0usize, 0, 1, 0, 0];
            if size >= 3 {
                let triangle = members.iter().any(|&x| {
                    self.coloured_adj[x].iter().any(|&y| {
                        self.coloured_adj[y].iter().any(|&z| z != x && self.coloured_adj[x].contains(&z))
                    })
                });
                f[3] = if triangle { 3 } else { 2 };
            }
            if size >= 4 {
                f[4] = members
                    .iter()
                    .flat_map(|&x| self.coloured_adj[x].iter().map(move |&y| (x, y)))
                    .filter(|&(x, y)| x < y)
                    .map(|(x, y)| self.max_four_at(x, y, &[]))
                    .max()
                    .unwrap_or(0);
            }
            let take = size.min(4);
            let prev = dp;
            for total in 1..=4 {
                for t in 1..=take.min(total) {
                    dp[total] = dp[total].max(prev[total - t] + f[t]);
                }
            }
        }
        dp.into_iter().max().unwrap_or(0)
    }

    fn max_four_with(&self, adds: &[(usize, u32)]) -> usize {
        let mut best = self.base_four;
        for &(e, _) in adds {
            let (u, v) = self.g.edges()[e];
            best = best.max(self.max_four_at(u, v, adds));
        }
        best
    }

    fn max_three_at(&self, a: usize, b: usize, adds: &[(usize, u32)]) -> usize {
        let (na, nb) = (self.g.neighbours(a), self.g.neighbours(b));
        let mut best = 0;
        let (mut i, mut j) = (0, 0);
        while i < na.len() && j < nb.len() {
            match na[i].cmp(&nb[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    let c = na[i];
                    let n = [(a, b), (a, c), (b, c)]
                        .iter()
                        .filter(|&&(x, y)| self.pair_colour(x, y, adds) != 0)
                        .count();
                    best = best.max(n);
                    i += 1;
                    j += 1;
                }
            }
        }
        best
    }

    fn full_max_three(&self) -> usize {
        let mut best = 0;
        for (e, &(u, v)) in self.g.edges().iter().enumerate() {
            if self.colour[e] != 0 {
                best = best.max(self.max_three_at(u, v, &[]));
            }
        }
        best
    }

    fn max_three_with(&self, adds: &[(usize, u32)]) -> usize {
        let mut best = self.base_three;
        for &(e, _) in adds {
            let (u, v) = self.g.edges()[e];
            best = best.max(self.max_three_at(u, v, adds));
        }
        best
    }

    pub fn profile(&self) -> StageProfile {
        let score = self.evaluate(&[]).expect("base colouring is proper");
        StageProfile {
            stage: score.stage,
            max_four: self.base_four,
            max_three: self.base_three,
            colours_used_twice: self.twice_with(&[]),
            two_per_clique: self.two_per_clique_with(&[]),
            cliques_share_at_most_one_edge: self.pairs_ok,
        }
    }
}
