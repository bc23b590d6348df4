//! Brute-force checks that share no code with the engine.
//!
//! [`find_rainbow_clique`] reads a partial colouring the way the problem
//! does (each uncoloured edge is its own colour). [`forced_rainbow`] and
//! [`brute_force_no_rainbow_colouring`] search every total proper colouring
//! up to renaming of colours, so they only run on small graphs.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::colouring::Colouring;
use crate::error::{Error, Result};
use crate::graph::{enumerate_cliques, Graph};

/// A `K_k` whose edges carry pairwise distinct colours once every
/// uncoloured edge has been given a fresh one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RainbowWitness {
    pub clique: Vec<usize>,
    pub colours: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct OracleOptions {
    /// Largest number of `K_k` edges the exhaustive search accepts.
    pub max_edges: usize,
    pub time_budget: Duration,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            max_edges: 24,
            time_budget: Duration::from_secs(120),
        }
    }
}

/// Gives every uncoloured edge of `g` its own new colour, in edge order.
pub fn complete_colouring(g: &Graph, c: &Colouring) -> Result<Colouring> {
    c.check_proper(g)?;
    Ok(complete_unchecked(g, c))
}

fn complete_unchecked(g: &Graph, c: &Colouring) -> Colouring {
    let mut out = c.clone();
    let mut next = c.max_colour();
    for &(u, v) in g.edges() {
        let (a, b) = (g.label(u), g.label(v));
        if !out.is_coloured(a, b) {
            next += 1;
            out.set(a, b, next);
        }
    }
    out
}

/// First `K_k` (in clique enumeration order) that is rainbow under `c`.
/// Vertices in the witness are labels of `g`.
pub fn find_rainbow_clique(g: &Graph, c: &Colouring, k: usize) -> Option<RainbowWitness> {
    let full = complete_unchecked(g, c);
    enumerate_cliques(g, k).into_iter().find_map(|clique| {
        let mut colours = Vec::with_capacity(k * (k - 1) / 2);
        for (i, &u) in clique.iter().enumerate() {
            for &w in &clique[i + 1..] {
                colours.push(full.get_local(g, u, w).expect("completed"));
            }
        }
        let mut sorted = colours.clone();
        sorted.sort_unstable();
        sorted.dedup();
        (sorted.len() == colours.len()).then(|| RainbowWitness {
            clique: clique.iter().map(|&v| g.label(v)).collect(),
            colours,
        })
    })
}

/// True when every total proper colouring of `g` has a rainbow `K_k`.
pub fn forced_rainbow(g: &Graph, k: usize) -> Result<bool> {
    forced_rainbow_with(g, k, &OracleOptions::default())
}

pub fn forced_rainbow_with(g: &Graph, k: usize, opts: &OracleOptions) -> Result<bool> {
    Ok(brute_force_no_rainbow_colouring_with(g, k, opts)?.is_none())
}

/// A total proper colouring of `g` with no rainbow `K_k`, if there is one.
pub fn brute_force_no_rainbow_colouring(g: &Graph, k: usize) -> Result<Option<Colouring>> {
    brute_force_no_rainbow_colouring_with(g, k, &OracleOptions::default())
}

pub fn brute_force_no_rainbow_colouring_with(
    g: &Graph,
    k: usize,
    opts: &OracleOptions,
) -> Result<Option<Colouring>> {
    if k < 3 {
        return Err(Error::Params(format!("k = {k}; rainbow cliques need k >= 3")));
    }
    let cliques = enumerate_cliques(g, k);
    let mut in_clique = vec![false; g.edge_count()];
    let clique_edges: Vec<Vec<usize>> = cliques
        .iter()
        .map(|c| {
            let mut es = Vec::new();
            for (i, &u) in c.iter().enumerate() {
                for &w in &c[i + 1..] {
                    let e = g.edge_index(u, w).expect("clique edge");
                    in_clique[e] = true;
                    es.push(e);
                }
            }
            es
        })
        .collect();
    let active: Vec<usize> = (0..g.edge_count()).filter(|&e| in_clique[e]).collect();
    guard(active.len(), opts)?;

    let mut search = Search::new(g, clique_edges, opts);
    let order = search.greedy_order(&active);
    let found = search.extend(&order, 0)?;
    Ok(found.then(|| {
        let mut c = Colouring::new();
        for &e in &active {
            let (u, v) = g.edges()[e];
            c.set(g.label(u), g.label(v), search.colour[e]);
        }
        complete_unchecked(g, &c).canonical()
    }))
}

/// Number of total proper colourings of `g` counted up to renaming colours,
/// i.e. partitions of the edge set into matchings.
pub fn count_colourings_up_to_renaming(g: &Graph, opts: &OracleOptions) -> Result<u64> {
    let all: Vec<usize> = (0..g.edge_count()).collect();
    guard(all.len(), opts)?;
    let mut search = Search::new(g, Vec::new(), opts);
    let mut count = 0;
    search.count(&all, 0, &mut count)?;
    Ok(count)
}

/// A colouring in the strongest stage `P0`, if one exists: every `K_k`
/// gets exactly two coloured edges sharing a colour of its own, and no
/// four vertices span more than three coloured edges.
///
/// An edge coloured for one `K_k` would be a third coloured edge of any
/// other `K_k` through it, so each `K_k` picks two disjoint edges lying in
/// no other `K_k`. The search backtracks over those choices.
pub fn p0_colouring(g: &Graph, k: usize) -> Result<Option<Colouring>> {
    p0_colouring_with(g, k, &OracleOptions::default())
}

pub fn p0_colouring_with(g: &Graph, k: usize, opts: &OracleOptions) -> Result<Option<Colouring>> {
    let cliques = enumerate_cliques(g, k);
    let edge_sets: Vec<Vec<(usize, usize)>> = cliques
        .iter()
        .map(|q| {
            let mut es = Vec::new();
            for (i, &a) in q.iter().enumerate() {
                for &b in &q[i + 1..] {
                    es.push((a.min(b), a.max(b)));
                }
            }
            es
        })
        .collect();
    for (i, a) in edge_sets.iter().enumerate() {
        for b in &edge_sets[i + 1..] {
            if a.iter().filter(|e| b.contains(e)).count() > 1 {
                return Ok(None);
            }
        }
    }
    let options: Vec<Vec<[(usize, usize); 2]>> = edge_sets
        .iter()
        .enumerate()
        .map(|(i, es)| {
            let private: Vec<(usize, usize)> = es
                .iter()
                .copied()
                .filter(|e| edge_sets.iter().enumerate().all(|(j, other)| j == i || !other.contains(e)))
                .collect();
            let mut pairs = Vec::new();
            for (x, &e) in private.iter().enumerate() {
                for &f in &private[x + 1..] {
                    if e.0 != f.0 && e.0 != f.1 && e.1 != f.0 && e.1 != f.1 {
                        pairs.push([e, f]);
                    }
                }
            }
            pairs
        })
        .collect();
    let mut order: Vec<usize> = (0..cliques.len()).collect();
    order.sort_by_key(|&i| options[i].len());
    let mut walk = P0Walk {
        n: g.n(),
        coloured: vec![vec![false; g.n()]; g.n()],
        chosen: Vec::new(),
        started: Instant::now(),
        budget: opts.time_budget,
        nodes: 0,
    };
    if !walk.extend(&options, &order, 0)? {
        return Ok(None);
    }
    let mut c = Colouring::new();
    for (i, pair) in walk.chosen.iter().enumerate() {
        for &(a, b) in pair {
            c.set(g.label(a), g.label(b), i as u32 + 1);
        }
    }
    Ok(Some(c))
}

struct P0Walk {
    n: usize,
    coloured: Vec<Vec<bool>>,
    chosen: Vec<[(usize, usize); 2]>,
    started: Instant,
    budget: Duration,
    nodes: u64,
}

impl P0Walk {
    fn set(&mut self, (a, b): (usize, usize), on: bool) {
        self.coloured[a][b] = on;
        self.coloured[b][a] = on;
    }

    /// Whether some four vertices through `(a, b)` span four coloured edges.
    fn crowded(&self, (a, b): (usize, usize)) -> bool {
        let c = &self.coloured;
        for x in 0..self.n {
            if x == a || x == b {
                continue;
            }
            for y in x + 1..self.n {
                if y == a || y == b {
                    continue;
                }
                let count = [(a, b), (a, x), (a, y), (b, x), (b, y), (x, y)]
                    .iter()
                    .filter(|&&(p, q)| c[p][q])
                    .count();
                if count > 3 {
                    return true;
                }
            }
        }
        false
    }

    fn extend(&mut self, options: &[Vec<[(usize, usize); 2]>], order: &[usize], at: usize) -> Result<bool> {
        let Some(&i) = order.get(at) else {
            return Ok(true);
        };
        self.nodes += 1;
        if self.nodes.is_multiple_of(4096) && self.started.elapsed() > self.budget {
            return Err(Error::Guard(format!("P0 search passed {:?}", self.budget)));
        }
        for &pair in &options[i] {
            self.set(pair[0], true);
            self.set(pair[1], true);
            if !self.crowded(pair[0]) && !self.crowded(pair[1]) {
                self.chosen.push(pair);
                if self.extend(options, order, at + 1)? {
                    return Ok(true);
                }
                self.chosen.pop();
            }
            self.set(pair[0], false);
            self.set(pair[1], false);
        }
        Ok(false)
    }
}

fn guard(edges: usize, opts: &OracleOptions) -> Result<()> {
    if opts.max_edges > 63 {
        return Err(Error::Params("exhaustive search supports at most 63 edges".into()));
    }
    if edges > opts.max_edges {
        return Err(Error::Guard(format!(
            "{edges} edges to search, limit is {}",
            opts.max_edges
        )));
    }
    Ok(())
}

/// Backtracking over edges with canonical colour introduction: the next
/// edge may take any colour already in use or exactly one new colour.
struct Search<'a> {
    g: &'a Graph,
    colour: Vec<u32>,
    /// Bit `c` set when colour `c` is on an edge at the vertex.
    at_vertex: Vec<u64>,
    used: u32,
    clique_edges: Vec<Vec<usize>>,
    cliques_of: Vec<Vec<usize>>,
    /// Per clique: how many of its edges carry each colour.
    tally: Vec<[u8; 64]>,
    coloured: Vec<usize>,
    repeats: Vec<usize>,
    settled: usize,
    nodes: u64,
    started: Instant,
    budget: Duration,
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph, clique_edges: Vec<Vec<usize>>, opts: &OracleOptions) -> Self {
        let mut cliques_of = vec![Vec::new(); g.edge_count()];
        for (q, es) in clique_edges.iter().enumerate() {
            for &e in es {
                cliques_of[e].push(q);
            }
        }
        let n_cliques = clique_edges.len();
        Search {
            g,
            colour: vec![0; g.edge_count()],
            at_vertex: vec![0; g.n()],
            used: 0,
            clique_edges,
            cliques_of,
            tally: vec![[0; 64]; n_cliques],
            coloured: vec![0; n_cliques],
            repeats: vec![0; n_cliques],
            settled: 0,
            nodes: 0,
            started: Instant::now(),
            budget: opts.time_budget,
        }
    }

    /// Most-constrained first: prefer edges that close a clique, then edges
    /// in many cliques, then edges touching cliques already begun.
    fn greedy_order(&self, active: &[usize]) -> Vec<usize> {
        let mut placed = vec![false; self.g.edge_count()];
        let mut filled = vec![0usize; self.clique_edges.len()];
        let mut order = Vec::with_capacity(active.len());
        while order.len() < active.len() {
            let &e = active
                .iter()
                .filter(|&&e| !placed[e])
                .max_by_key(|&&e| {
                    let qs = &self.cliques_of[e];
                    let closes = qs
                        .iter()
                        .filter(|&&q| filled[q] + 1 == self.clique_edges[q].len())
                        .count();
                    let begun: usize = qs.iter().map(|&q| filled[q]).sum();
                    (closes, qs.len(), begun, std::cmp::Reverse(e))
                })
                .expect("edges remain");
            placed[e] = true;
            for &q in &self.cliques_of[e] {
                filled[q] += 1;
            }
            order.push(e);
        }
        order
    }

    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes.is_multiple_of(4096) && self.started.elapsed() > self.budget {
            return Err(Error::Guard(format!(
                "exhaustive search ran past {:?} after {} nodes",
                self.budget, self.nodes
            )));
        }
        Ok(())
    }

    fn free(&self, e: usize, c: u32) -> bool {
        let (u, v) = self.g.edges()[e];
        (self.at_vertex[u] | self.at_vertex[v]) & (1u64 << c) == 0
    }

    /// Colours `e`; returns false if that leaves a fully coloured rainbow
    /// clique (the assignment stays in place either way).
    fn assign(&mut self, e: usize, c: u32) -> bool {
        let (u, v) = self.g.edges()[e];
        self.colour[e] = c;
        self.at_vertex[u] |= 1 << c;
        self.at_vertex[v] |= 1 << c;
        let mut ok = true;
        for i in 0..self.cliques_of[e].len() {
            let q = self.cliques_of[e][i];
            let t = &mut self.tally[q][c as usize];
            *t += 1;
            if *t == 2 {
                self.repeats[q] += 1;
                if self.repeats[q] == 1 {
                    self.settled += 1;
                }
            }
            self.coloured[q] += 1;
            if self.repeats[q] == 0 && self.coloured[q] == self.clique_edges[q].len() {
                ok = false;
            }
        }
        ok
    }

    fn unassign(&mut self, e: usize) {
        let c = self.colour[e];
        let (u, v) = self.g.edges()[e];
        self.colour[e] = 0;
        self.at_vertex[u] &= !(1 << c);
        self.at_vertex[v] &= !(1 << c);
        for i in 0..self.cliques_of[e].len() {
            let q = self.cliques_of[e][i];
            let t = &mut self.tally[q][c as usize];
            if *t == 2 {
                self.repeats[q] -= 1;
                if self.repeats[q] == 0 {
                    self.settled -= 1;
                }
            }
            *t -= 1;
            self.coloured[q] -= 1;
        }
    }

    /// Colours `order[at..]`, stopping as soon as every clique holds a
    /// repeated colour; the rest then get fresh colours.
    fn extend(&mut self, order: &[usize], at: usize) -> Result<bool> {
        self.tick()?;
        if self.settled == self.clique_edges.len() {
            for &e in &order[at..] {
                self.used += 1;
                self.assign(e, self.used);
            }
            return Ok(true);
        }
        let Some(&e) = order.get(at) else {
            return Ok(false);
        };
        for c in 1..=self.used + 1 {
            if !self.free(e, c) {
                continue;
            }
            let fresh = c > self.used;
            if fresh {
                self.used += 1;
            }
            if self.assign(e, c) && self.extend(order, at + 1)? {
                return Ok(true);
            }
            self.unassign(e);
            if fresh {
                self.used -= 1;
            }
        }
        Ok(false)
    }

    fn count(&mut self, order: &[usize], at: usize, total: &mut u64) -> Result<()> {
        self.tick()?;
        let Some(&e) = order.get(at) else {
            *total += 1;
            return Ok(());
        };
        for c in 1..=self.used + 1 {
            if !self.free(e, c) {
                continue;
            }
            let fresh = c > self.used;
            if fresh {
                self.used += 1;
            }
            self.assign(e, c);
            self.count(order, at + 1, total)?;
            self.unassign(e);
            if fresh {
                self.used -= 1;
            }
        }
        Ok(())
    }
}
