//! Small named graphs used throughout the tests, the corpus and the guide.
//!
//! In every configuration fixture vertex `0` is the minimum-degree vertex the
//! peel picks first, so `K(0)` has the advertised shape.

use crate::graph::Graph;
use crate::structure::KvConfig;

fn clique_edges(vertices: &[usize]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (i, &u) in vertices.iter().enumerate() {
        for &w in &vertices[i + 1..] {
            out.push((u, w));
        }
    }
    out
}

/// Builds a graph on `n` vertices from a list of cliques plus loose edges.
pub fn from_cliques(n: usize, cliques: &[Vec<usize>], extra: &[(usize, usize)]) -> Graph {
    let mut edges: Vec<(usize, usize)> = cliques.iter().flat_map(|c| clique_edges(c)).collect();
    edges.extend_from_slice(extra);
    Graph::from_edges(n, edges).expect("fixture edges are valid")
}

/// `len` copies of `K_k`, each glued to the previous one along an edge, the
/// glued edges pairwise disjoint. Every peel step is `X(k-2)`.
pub fn clique_chain(k: usize, len: usize) -> Graph {
    assert!(k >= 4 && len >= 1);
    let n = k + (len - 1) * (k - 2);
    let mut cliques = vec![(0..k).collect::<Vec<_>>()];
    let mut glue = (0, 1);
    let mut next = k;
    for _ in 1..len {
        let mut c = vec![glue.0, glue.1];
        c.extend(next..next + k - 2);
        glue = (next, next + 1);
        next += k - 2;
        cliques.push(c);
    }
    from_cliques(n, &cliques, &[])
}

/// Two copies of `K_k` sharing the edge `{0, 1}`; vertex 2 is private to the
/// first copy.
pub fn two_cliques_sharing_edge(k: usize) -> Graph {
    let first: Vec<usize> = (0..k).collect();
    let mut second = vec![0, 1];
    second.extend(k..2 * k - 2);
    from_cliques(2 * k - 2, &[first, second], &[])
}

/// Two copies of `K_k` sharing only vertex 0.
pub fn two_cliques_sharing_vertex(k: usize) -> Graph {
    let first: Vec<usize> = (0..k).collect();
    let mut second = vec![0];
    second.extend(k..2 * k - 1);
    from_cliques(2 * k - 1, &[first, second], &[])
}

/// Two vertex-disjoint copies of `K_k`.
pub fn two_disjoint_cliques(k: usize) -> Graph {
    Graph::complete(k).disjoint_union(&Graph::complete(k))
}

/// The seven configurations of `K(v)` for `k = 5`, each embedded in a
/// single `K_5`-component with maximum density below 3.
pub fn figure1_fixtures() -> Vec<(KvConfig, Graph)> {
    vec![
        (KvConfig::X(1), x1_fixture()),
        (KvConfig::X(2), x2_fixture()),
        (KvConfig::X(3), two_cliques_sharing_edge(5).relabelled_with_first(2)),
        (KvConfig::Y(1), y1_fixture()),
        (KvConfig::Y(2), y2_fixture()),
        (KvConfig::Y(3), y3_fixture()),
        (KvConfig::U, Graph::complete(6)),
    ]
}

/// `K_6` minus the edge `{0, 5}`: `K(0)` is a `K_5` whose other four
/// vertices also span a `K_5` with vertex 5.
fn x1_fixture() -> Graph {
    from_cliques(6, &[vec![0, 1, 2, 3, 4], vec![1, 2, 3, 4, 5]], &[])
}

/// `R(0) = {0, 1}` and `S(0) = {2, 3, 4}`, the triangle lying in a second
/// `K_5` with private vertices 5 and 6.
fn x2_fixture() -> Graph {
    from_cliques(7, &[vec![0, 1, 2, 3, 4], vec![2, 3, 4, 5, 6]], &[])
}

/// `S(0)` is `K_5` minus `{3, 4}` on `1..=5`; vertex 6 mirrors vertex 0, so
/// every vertex of `S(0)` lies in a `K_5` avoiding 0.
fn y1_fixture() -> Graph {
    from_cliques(
        7,
        &[
            vec![0, 1, 2, 3, 5],
            vec![0, 1, 2, 4, 5],
            vec![6, 1, 2, 3, 5],
            vec![6, 1, 2, 4, 5],
        ],
        &[],
    )
}

/// `R(0) = {0, 1}`, `S(0)` is `K_4` minus `{3, 5}` on `2..=5`; `{6, 7}`
/// mirrors `R(0)`.
fn y2_fixture() -> Graph {
    from_cliques(
        8,
        &[
            vec![0, 1, 2, 3, 4],
            vec![0, 1, 2, 4, 5],
            vec![6, 7, 2, 3, 4],
            vec![6, 7, 2, 4, 5],
        ],
        &[],
    )
}

/// `R(0) = {0, 1, 2}`, `S(0)` is the path `4 - 3 - 5`; `{6, 7, 8}` mirrors
/// `R(0)`.
fn y3_fixture() -> Graph {
    from_cliques(
        9,
        &[
            vec![0, 1, 2, 3, 4],
            vec![0, 1, 2, 3, 5],
            vec![6, 7, 8, 3, 4],
            vec![6, 7, 8, 3, 5],
        ],
        &[],
    )
}

impl Graph {
    /// Swaps vertex `v` with vertex 0 (labels reset to `0..n`).
    pub fn relabelled_with_first(&self, v: usize) -> Graph {
        let swap = |x: usize| {
            if x == v {
                0
            } else if x == 0 {
                v
            } else {
                x
            }
        };
        Graph::from_edges(self.n(), self.edges().iter().map(|&(a, b)| (swap(a), swap(b))))
            .expect("permutation of a valid graph")
    }
}

/// `K_5` on `0..5` with a further `K_5` glued along each of the six edges
/// of the `K_4` on `0..4`. Its badness for `k = 5` is 0, yet the private
/// edges of the central `K_5` all meet at vertex 4, so no colouring in
/// `P0` exists.
pub fn petal_hub() -> Graph {
    let mut cliques = vec![(0..5).collect::<Vec<_>>()];
    let mut next = 5;
    for a in 0..4 {
        for b in a + 1..4 {
            cliques.push(vec![a, b, next, next + 1, next + 2]);
            next += 3;
        }
    }
    from_cliques(next, &cliques, &[])
}
