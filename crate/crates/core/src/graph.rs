//! Simple undirected graphs on contiguous vertex indices.
//!
//! A [`Graph`] produced by restriction (induced subgraphs, clique components,
//! the reduced graphs of a peel) keeps a `labels` vector mapping each local
//! index to the vertex id of the graph the whole computation started from.
//! Labels are strictly increasing, so local order and original order agree.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::GraphError;

/// Serialises as [`GraphJson`]; labels are not part of the wire form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "GraphJson", try_from = "GraphJson")]
pub struct Graph {
    labels: Vec<usize>,
    adj: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl From<Graph> for GraphJson {
    fn from(g: Graph) -> Self {
        g.to_json()
    }
}

impl TryFrom<GraphJson> for Graph {
    type Error = GraphError;

    fn try_from(json: GraphJson) -> Result<Self, GraphError> {
        Graph::from_json(&json)
    }
}

/// JSON wire form: `{"n": int, "edges": [[u, v], ...]}` with sorted edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            labels: (0..n).collect(),
            adj: vec![Vec::new(); n],
            edges: Vec::new(),
        }
    }

    /// Builds a graph from an edge list, deduplicating repeated pairs.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(GraphError::Loop(u));
            }
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::OutOfRange { endpoint: x, n });
                }
            }
            set.insert((u.min(v), u.max(v)));
        }
        Ok(Self::from_sorted((0..n).collect(), set.into_iter().collect()))
    }

    fn from_sorted(labels: Vec<usize>, edges: Vec<(usize, usize)>) -> Self {
        let mut adj = vec![Vec::new(); labels.len()];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph { labels, adj, edges }
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Self::from_edges(n, edges).expect("valid complete graph")
    }

    /// `K_n` minus the edge `{n-2, n-1}`.
    pub fn complete_minus_edge(n: usize) -> Self {
        assert!(n >= 2);
        let g = Self::complete(n);
        g.without_edges(&[(n - 2, n - 1)])
    }

    pub fn path(n: usize) -> Self {
        Self::from_edges(n, (1..n).map(|v| (v - 1, v))).expect("valid path")
    }

    /// Star with centre 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        Self::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v))).expect("valid star")
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Sorted `(u, v)` pairs with `u < v`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn label(&self, v: usize) -> usize {
        self.labels[v]
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn index_of_label(&self, label: usize) -> Option<usize> {
        self.labels.binary_search(&label).ok()
    }

    /// Position of edge `{u, v}` in [`Graph::edges`].
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&(u.min(v), u.max(v))).ok()
    }

    /// Number of edges with both endpoints in `set`.
    pub fn edges_within(&self, set: &[usize]) -> usize {
        let mut count = 0;
        for (i, &u) in set.iter().enumerate() {
            for &v in &set[i + 1..] {
                if self.has_edge(u, v) {
                    count += 1;
                }
            }
        }
        count
    }

    /// Subgraph induced by `vertices` (any order, duplicates ignored).
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut keep: Vec<usize> = vertices.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            local[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| local[u] != usize::MAX && local[v] != usize::MAX)
            .map(|&(u, v)| (local[u], local[v]))
            .collect();
        let labels = keep.iter().map(|&v| self.labels[v]).collect();
        Graph::from_sorted(labels, edges)
    }

    /// Same vertex set, edges restricted by `keep`.
    pub fn retain_edges(&self, mut keep: impl FnMut(usize, usize) -> bool) -> Graph {
        let edges = self.edges.iter().copied().filter(|&(u, v)| keep(u, v)).collect();
        Graph::from_sorted(self.labels.clone(), edges)
    }

    pub fn without_edges(&self, removed: &[(usize, usize)]) -> Graph {
        let removed: BTreeSet<(usize, usize)> =
            removed.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        self.retain_edges(|u, v| !removed.contains(&(u, v)))
    }

    /// Subgraph with the given vertex set and exactly the given edges
    /// (in this graph's indices). Edges must lie inside the vertex set.
    pub fn subgraph(&self, vertices: &[usize], edges: &[(usize, usize)]) -> Graph {
        let mut keep: Vec<usize> = vertices.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            local[v] = i;
        }
        let mut es: Vec<(usize, usize)> = edges
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (local[u], local[v]);
                assert!(a != usize::MAX && b != usize::MAX, "edge outside vertex set");
                (a.min(b), a.max(b))
            })
            .collect();
        es.sort_unstable();
        es.dedup();
        let labels = keep.iter().map(|&v| self.labels[v]).collect();
        Graph::from_sorted(labels, es)
    }

    /// Forgets labels: the same graph, relabelled `0..n`.
    pub fn relabelled(&self) -> Graph {
        Graph::from_sorted((0..self.n()).collect(), self.edges.clone())
    }

    /// Disjoint union, `other` shifted past this graph's vertices.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n();
        let edges = self
            .edges
            .iter()
            .copied()
            .chain(other.edges.iter().map(|&(u, v)| (u + shift, v + shift)));
        Graph::from_edges(shift + other.n(), edges).expect("valid union")
    }

    /// Edge list text: an `n=<count>` header followed by one `u v` per line.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("n={}\n", self.n());
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            n: self.n(),
            edges: self.edges.iter().map(|&(u, v)| [u, v]).collect(),
        }
    }

    pub fn from_json(json: &GraphJson) -> Result<Graph, GraphError> {
        Graph::from_edges(json.n, json.edges.iter().map(|e| (e[0], e[1])))
    }

    /// Connected components as sorted vertex lists, ordered by smallest vertex.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for s in 0..self.n() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut stack = vec![s];
            let mut comp = Vec::new();
            while let Some(u) = stack.pop() {
                comp.push(u);
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_complete(&self) -> bool {
        let n = self.n();
        self.edge_count() == n * n.saturating_sub(1) / 2
    }
}

/// Parses the edge-list text format.
///
/// Blank lines and lines starting with `#` are skipped. An optional
/// `n=<count>` line fixes the vertex count; otherwise it is one more than
/// the largest endpoint.
pub fn parse_graph(text: &str) -> Result<Graph, GraphError> {
    let mut declared = None;
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let malformed = || GraphError::Malformed {
            line: i + 1,
            text: line.to_string(),
        };
        if let Some(rest) = line.strip_prefix("n=").or_else(|| line.strip_prefix("n =")) {
            declared = Some(rest.trim().parse::<usize>().map_err(|_| malformed())?);
            continue;
        }
        let mut parts = line.split_whitespace();
        let (Some(a), Some(b), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(malformed());
        };
        let u: usize = a.parse().map_err(|_| malformed())?;
        let v: usize = b.parse().map_err(|_| malformed())?;
        if u == v {
            return Err(GraphError::Loop(u));
        }
        edges.push((u, v));
    }
    let n = match declared {
        Some(n) => n,
        None => edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0),
    };
    Graph::from_edges(n, edges)
}

/// Parses either the JSON form or the edge-list form, whichever `text` is.
pub fn parse_any(text: &str) -> Result<Graph, GraphError> {
    if text.trim_start().starts_with('{') {
        let json: GraphJson =
            serde_json::from_str(text).map_err(|e| GraphError::Json(e.to_string()))?;
        Graph::from_json(&json)
    } else {
        parse_graph(text)
    }
}

/// All `k`-vertex sets inducing complete subgraphs, sorted lexicographically.
pub fn enumerate_cliques(g: &Graph, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k == 0 {
        return out;
    }
    let mut current = Vec::with_capacity(k);
    for v in 0..g.n() {
        let cand: Vec<usize> = g.neighbours(v).iter().copied().filter(|&w| w > v).collect();
        current.push(v);
        extend_clique(g, k, &mut current, &cand, &mut out);
        current.pop();
    }
    out
}

fn extend_clique(
    g: &Graph,
    k: usize,
    current: &mut Vec<usize>,
    cand: &[usize],
    out: &mut Vec<Vec<usize>>,
) {
    if current.len() == k {
        out.push(current.clone());
        return;
    }
    if current.len() + cand.len() < k {
        return;
    }
    for (i, &w) in cand.iter().enumerate() {
        let next: Vec<usize> = cand[i + 1..]
            .iter()
            .copied()
            .filter(|&x| g.has_edge(w, x))
            .collect();
        current.push(w);
        extend_clique(g, k, current, &next, out);
        current.pop();
    }
}
