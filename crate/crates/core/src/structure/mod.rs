//! Clique-component decomposition and the neighbourhood analysis that drives
//! the inductive colouring.
//!
//! For a minimum-degree vertex `v` of a graph in which every vertex and edge
//! lies in a `K_k`:
//!
//! * `K(v)` is the subgraph induced by `v` and its neighbours;
//! * `R(v)` holds `v` and every neighbour whose `K_k`'s all pass through `v`;
//! * `S(v)` is the rest of `K(v)`.
//!
//! Removing `R(v)` gives `G*`; dropping the edges of `G*` that lie in no
//! `K_k` gives `G_v`. The shape of `K(v)` is always one of `X(l)`, `Y(l)`
//! or `U(1)` ([`KvConfig`]), and each shape changes the edge count and the
//! badness `b(G) = 2e - (k+1)v + 2k` by a fixed amount.

pub(crate) mod peel;

pub use peel::{peel_trace, peel_trace_with, BadnessLedger, PeelEnd, PeelStep, PeelTrace};

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{enumerate_cliques, Graph};

/// Index of every `k`-clique of a graph, by vertex and by edge.
#[derive(Clone, Debug)]
pub struct CliqueIndex {
    pub k: usize,
    pub cliques: Vec<Vec<usize>>,
    by_vertex: Vec<Vec<usize>>,
    by_edge: HashMap<(usize, usize), Vec<usize>>,
}

impl CliqueIndex {
    pub fn new(g: &Graph, k: usize) -> Self {
        let cliques = enumerate_cliques(g, k);
        let mut by_vertex = vec![Vec::new(); g.n()];
        let mut by_edge: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (id, c) in cliques.iter().enumerate() {
            for (i, &u) in c.iter().enumerate() {
                by_vertex[u].push(id);
                for &w in &c[i + 1..] {
                    by_edge.entry((u, w)).or_default().push(id);
                }
            }
        }
        CliqueIndex {
            k,
            cliques,
            by_vertex,
            by_edge,
        }
    }

    pub fn containing_vertex(&self, v: usize) -> &[usize] {
        &self.by_vertex[v]
    }

    pub fn containing_edge(&self, u: usize, v: usize) -> &[usize] {
        self.by_edge
            .get(&(u.min(v), u.max(v)))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    /// True if any two cliques share two or more edges' worth of vertices
    /// (at least three common vertices).
    pub fn has_clique_pair_sharing_two_edges(&self) -> bool {
        let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
        for (&_, ids) in self.by_edge.iter() {
            for (i, &a) in ids.iter().enumerate() {
                for &b in &ids[i + 1..] {
                    let c = seen.entry((a.min(b), a.max(b))).or_insert(0);
                    *c += 1;
                    if *c >= 2 {
                        return true;
                    }
                }
            }
        }
        false
    }
}

/// `b(G) = 2 e(G) - (k+1) v(G) + 2k`.
pub fn badness(g: &Graph, k: usize) -> i64 {
    2 * g.edge_count() as i64 - (k as i64 + 1) * g.n() as i64 + 2 * k as i64
}

/// Vertex of minimum degree, smallest index on ties.
pub fn min_degree_vertex(g: &Graph) -> Result<usize> {
    (0..g.n())
        .min_by_key(|&v| (g.degree(v), v))
        .ok_or(Error::EmptyGraph)
}

/// All vertices of minimum degree, ascending.
pub fn min_degree_vertices(g: &Graph) -> Vec<usize> {
    let Some(d) = (0..g.n()).map(|v| g.degree(v)).min() else {
        return Vec::new();
    };
    (0..g.n()).filter(|&v| g.degree(v) == d).collect()
}

/// The `K_k`-components of `g`: vertices and edges in no `K_k` are dropped
/// and cliques are grouped by the transitive closure of edge-intersection.
/// Each component is the union of its cliques, ordered by first clique.
pub fn kk_components(g: &Graph, k: usize) -> Vec<Graph> {
    let index = CliqueIndex::new(g, k);
    components_from_index(g, &index)
        .into_iter()
        .map(|(vertices, edges)| g.subgraph(&vertices, &edges))
        .collect()
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut root = x;
    while parent[root] != root {
        root = parent[root];
    }
    let mut cur = x;
    while parent[cur] != root {
        let next = parent[cur];
        parent[cur] = root;
        cur = next;
    }
    root
}

/// Vertex and edge sets of each component, in this graph's indices.
pub(crate) fn components_from_index(
    g: &Graph,
    index: &CliqueIndex,
) -> Vec<(Vec<usize>, Vec<(usize, usize)>)> {
    let count = index.cliques.len();
    let mut parent: Vec<usize> = (0..count).collect();
    for &(u, v) in g.edges() {
        let ids = index.containing_edge(u, v);
        for w in ids.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut order: Vec<usize> = Vec::new();
    let mut groups: HashMap<usize, (Vec<usize>, Vec<(usize, usize)>)> = HashMap::new();
    for id in 0..count {
        let root = find(&mut parent, id);
        let entry = groups.entry(root).or_insert_with(|| {
            order.push(root);
            (Vec::new(), Vec::new())
        });
        let c = &index.cliques[id];
        entry.0.extend_from_slice(c);
        for (i, &u) in c.iter().enumerate() {
            for &w in &c[i + 1..] {
                entry.1.push((u, w));
            }
        }
    }
    order
        .into_iter()
        .map(|root| {
            let (mut vs, mut es) = groups.remove(&root).expect("group");
            vs.sort_unstable();
            vs.dedup();
            es.sort_unstable();
            es.dedup();
            (vs, es)
        })
        .collect()
}

/// True when `g` is itself one `K_k`-component: every vertex and edge in a
/// `K_k`, all cliques connected through shared edges.
pub fn is_single_component(g: &Graph, k: usize) -> bool {
    let index = CliqueIndex::new(g, k);
    let comps = components_from_index(g, &index);
    comps.len() == 1 && comps[0].0.len() == g.n() && comps[0].1.len() == g.edge_count()
}

/// Checks that every vertex and edge of `g` lies in some `K_k`.
pub fn check_covered(g: &Graph, index: &CliqueIndex) -> Result<()> {
    for v in 0..g.n() {
        if index.containing_vertex(v).is_empty() {
            return Err(Error::VertexOutsideCliques(g.label(v)));
        }
    }
    for &(u, v) in g.edges() {
        if index.containing_edge(u, v).is_empty() {
            return Err(Error::EdgeOutsideCliques(g.label(u), g.label(v)));
        }
    }
    Ok(())
}

/// `K(v)` split into `R(v)` and `S(v)`. Vertex sets are sorted local indices
/// of the graph the split was computed on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NeighbourhoodSplit {
    pub v: usize,
    pub k: usize,
    pub kv: Vec<usize>,
    pub r: Vec<usize>,
    pub s: Vec<usize>,
}

impl NeighbourhoodSplit {
    pub fn in_r(&self, x: usize) -> bool {
        self.r.binary_search(&x).is_ok()
    }

    pub fn in_s(&self, x: usize) -> bool {
        self.s.binary_search(&x).is_ok()
    }

    pub fn in_kv(&self, x: usize) -> bool {
        self.kv.binary_search(&x).is_ok()
    }
}

/// Computes `K(v)`, `R(v)`, `S(v)`.
///
/// Requires every vertex and edge of `g` to lie in a `K_k`.
pub fn split_neighbourhood(g: &Graph, v: usize, k: usize) -> Result<NeighbourhoodSplit> {
    let index = CliqueIndex::new(g, k);
    split_with_index(g, &index, v)
}

pub(crate) fn split_with_index(
    g: &Graph,
    index: &CliqueIndex,
    v: usize,
) -> Result<NeighbourhoodSplit> {
    check_covered(g, index)?;
    let mut kv: Vec<usize> = g.neighbours(v).to_vec();
    kv.push(v);
    kv.sort_unstable();
    let mut r = vec![v];
    let mut s = Vec::new();
    for &w in g.neighbours(v) {
        let all_through_v = index
            .containing_vertex(w)
            .iter()
            .all(|&id| index.cliques[id].binary_search(&v).is_ok());
        if all_through_v {
            r.push(w);
        } else {
            s.push(w);
        }
    }
    r.sort_unstable();
    s.sort_unstable();
    Ok(NeighbourhoodSplit {
        v,
        k: index.k,
        kv,
        r,
        s,
    })
}

/// Shape of `K(v)`: `X(l)` is `K_k`, `Y(l)` is `K_{k+1}` minus an edge,
/// `U` is `K_{k+1}`; `l = |R(v)|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KvConfig {
    X(usize),
    Y(usize),
    U,
}

impl KvConfig {
    pub fn ell(&self) -> usize {
        match *self {
            KvConfig::X(l) | KvConfig::Y(l) => l,
            KvConfig::U => 1,
        }
    }

    /// `e(G) - e(G*)`.
    pub fn edge_delta(&self, k: usize) -> i64 {
        let k = k as i64;
        match *self {
            KvConfig::U => k,
            KvConfig::X(l) => {
                let l = l as i64;
                l * (l - 1) / 2 + l * (k - l)
            }
            KvConfig::Y(l) => {
                let l = l as i64;
                l * (l - 1) / 2 + l * (k - l + 1)
            }
        }
    }

    /// `b(G) - b(G*)`.
    pub fn badness_delta(&self, k: usize) -> i64 {
        let k = k as i64;
        match *self {
            KvConfig::U => k - 1,
            KvConfig::X(l) => (k - l as i64 - 2) * l as i64,
            KvConfig::Y(l) => (k - l as i64) * l as i64,
        }
    }

    /// Largest stage advance the extension step may cost.
    pub fn max_advance(&self, k: usize) -> usize {
        match *self {
            KvConfig::X(l) if l + 2 == k => 0,
            KvConfig::X(_) => 1,
            KvConfig::Y(_) | KvConfig::U => 2,
        }
    }
}

impl fmt::Display for KvConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KvConfig::X(l) => write!(f, "X{l}"),
            KvConfig::Y(l) => write!(f, "Y{l}"),
            KvConfig::U => write!(f, "U1"),
        }
    }
}

impl Serialize for KvConfig {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for KvConfig {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        let bad = || serde::de::Error::custom(format!("invalid configuration `{s}`"));
        if s == "U1" {
            return Ok(KvConfig::U);
        }
        let (kind, ell) = s.split_at(1);
        let ell: usize = ell.parse().map_err(|_| bad())?;
        match kind {
            "X" => Ok(KvConfig::X(ell)),
            "Y" => Ok(KvConfig::Y(ell)),
            _ => Err(bad()),
        }
    }
}

fn missing_edges(g: &Graph, set: &[usize]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (i, &u) in set.iter().enumerate() {
        for &w in &set[i + 1..] {
            if !g.has_edge(u, w) {
                out.push((u, w));
            }
        }
    }
    out
}

/// Classifies `K(v)` and verifies the clique shapes of `R(v)` and `S(v)`.
///
/// Any mismatch is reported rather than guessed around: on valid inputs the
/// three shapes are exhaustive.
pub fn classify_kv(split: &NeighbourhoodSplit, g: &Graph) -> Result<KvConfig> {
    let k = split.k;
    let fail = |reason: String| Error::Classification {
        vertex: g.label(split.v),
        reason,
    };
    let size = split.kv.len();
    let ell = split.r.len();
    let missing_kv = missing_edges(g, &split.kv);
    let missing_r = missing_edges(g, &split.r);
    let missing_s = missing_edges(g, &split.s);
    if !missing_r.is_empty() {
        return Err(fail(format!("R(v) on {ell} vertices is not complete")));
    }
    let config = if size == k && missing_kv.is_empty() {
        if !(1..=k - 2).contains(&ell) {
            return Err(fail(format!("K(v) = K_{k} with |R(v)| = {ell} outside 1..={}", k - 2)));
        }
        KvConfig::X(ell)
    } else if size == k + 1 && missing_kv.len() == 1 {
        if !(1..=k - 2).contains(&ell) {
            return Err(fail(format!(
                "K(v) = K_{}^- with |R(v)| = {ell} outside 1..={}",
                k + 1,
                k - 2
            )));
        }
        if missing_s.len() != 1 {
            return Err(fail(format!(
                "K(v) = K_{}^- but the missing edge is not inside S(v)",
                k + 1
            )));
        }
        KvConfig::Y(ell)
    } else if size == k + 1 && missing_kv.is_empty() {
        if ell != 1 {
            return Err(fail(format!("K(v) = K_{} with |R(v)| = {ell}", k + 1)));
        }
        KvConfig::U
    } else {
        return Err(fail(format!(
            "K(v) has {size} vertices and {} missing edges; expected K_{k}, K_{}^- or K_{}",
            missing_kv.len(),
            k + 1,
            k + 1
        )));
    };
    let expected_s = match config {
        KvConfig::X(l) => (k - l, 0),
        KvConfig::Y(l) => (k - l + 1, 1),
        KvConfig::U => (k, 0),
    };
    if (split.s.len(), missing_s.len()) != expected_s {
        return Err(fail(format!(
            "{config}: S(v) has {} vertices and {} missing edges",
            split.s.len(),
            missing_s.len()
        )));
    }
    Ok(config)
}

/// `G*` and `G_v` for a split, plus `e(G* \ G_v)`.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub g_star: Graph,
    pub g_v: Graph,
    pub extra_edges: usize,
}

/// Deletes `R(v)`, then the edges of the remainder that lie in no `K_k`.
pub fn reduce(g: &Graph, split: &NeighbourhoodSplit, k: usize) -> Reduction {
    let keep: Vec<usize> = (0..g.n()).filter(|&x| !split.in_r(x)).collect();
    let g_star = g.induced(&keep);
    let index = CliqueIndex::new(&g_star, k);
    let g_v = g_star.retain_edges(|u, w| !index.containing_edge(u, w).is_empty());
    let extra_edges = g_star.edge_count() - g_v.edge_count();
    Reduction {
        g_star,
        g_v,
        extra_edges,
    }
}

/// Whether the cliques and the edges they share form a forest: join each
/// `K_k` to every edge it shares with another `K_k`, and look for a cycle.
/// Several cliques on one common edge make a star, not a cycle; a ring of
/// cliques glued along distinct edges does make one. Used to audit the
/// acyclicity assumption for low-badness inputs.
pub fn clique_incidence_is_forest(g: &Graph, k: usize) -> bool {
    let index = CliqueIndex::new(g, k);
    let mut parent: Vec<usize> = (0..index.cliques.len()).collect();
    for &(u, v) in g.edges() {
        let ids = index.containing_edge(u, v);
        if ids.len() < 2 {
            continue;
        }
        let node = parent.len();
        parent.push(node);
        for &id in ids {
            let (ra, rb) = (find(&mut parent, id), find(&mut parent, node));
            if ra == rb {
                return false;
            }
            parent[ra] = rb;
        }
    }
    true
}

#[cfg(test)]
mod tests;
