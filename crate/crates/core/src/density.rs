//! Exact maximum density `m(G)` and maximum 2-density `m2(G)`.
//!
//! Both maxima are attained on induced subgraphs, so the production routes
//! solve a sequence of closure problems (pick edges, pay for their endpoints)
//! by min cut, updating the candidate ratio until no set beats it. The
//! exhaustive scans at the bottom are the independent oracles used by the
//! tests and the acceptance suite.

use crate::error::{Error, Result};
use crate::flow::{FlowNetwork, INF};
use crate::graph::Graph;
use crate::rational::Rational;

/// `max e(S) * q - |S| * p` over vertex sets containing `forced`, with the
/// maximising set.
fn best_closure(g: &Graph, p: i64, q: i64, forced: &[usize]) -> (i64, Vec<usize>) {
    let m = g.edge_count();
    let n = g.n();
    let s = m + n;
    let t = s + 1;
    let mut net = FlowNetwork::new(n + m + 2);
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        net.add_arc(s, i, q);
        net.add_arc(i, m + u, INF);
        net.add_arc(i, m + v, INF);
    }
    for v in 0..n {
        net.add_arc(m + v, t, p);
    }
    for &v in forced {
        net.add_arc(s, m + v, INF);
    }
    net.max_flow(s, t);
    let side = net.source_side(s);
    let set: Vec<usize> = (0..n).filter(|&v| side[m + v]).collect();
    let value = g.edges_within(&set) as i64 * q - set.len() as i64 * p;
    (value, set)
}

/// Exact `m(G) = max e(S)/|S|` over non-empty `S`; `0` for edgeless graphs.
pub fn max_density(g: &Graph) -> Result<Rational> {
    Ok(densest_subgraph(g)?.0)
}

/// Like [`max_density`], also returning a vertex set attaining it.
pub fn densest_subgraph(g: &Graph) -> Result<(Rational, Vec<usize>)> {
    if g.n() == 0 {
        return Err(Error::EmptyGraph);
    }
    if g.edge_count() == 0 {
        return Ok((Rational::ZERO, vec![0]));
    }
    let mut best_set: Vec<usize> = (0..g.n()).collect();
    let mut ratio = Rational::new(g.edge_count() as i64, g.n() as i64);
    loop {
        let (value, set) = best_closure(g, ratio.numer(), ratio.denom(), &[]);
        if value <= 0 || set.is_empty() {
            return Ok((ratio, best_set));
        }
        ratio = Rational::new(g.edges_within(&set) as i64, set.len() as i64);
        best_set = set;
    }
}

/// Exact `m2(G) = max (e(S) - 1)/(|S| - 2)` over `|S| >= 3`.
pub fn max_2_density(g: &Graph) -> Result<Rational> {
    let n = g.n();
    if n < 3 {
        return Err(Error::TooFewVertices(n));
    }
    if g.edge_count() == 0 {
        return Ok(Rational::new(-1, n as i64 - 2));
    }
    let two_density = |set: &[usize]| {
        Rational::new(g.edges_within(set) as i64 - 1, set.len() as i64 - 2)
    };
    let mut ratio = two_density(&(0..n).collect::<Vec<_>>());
    loop {
        // A set beats `ratio` iff e(S) - ratio * |S| > 1 - 2 * ratio, with
        // |S| >= 3. Scale by the denominator to stay in integers.
        let (p, q) = (ratio.numer(), ratio.denom());
        let threshold = q - 2 * p;
        let (mut value, mut set) = best_closure(g, p, q, &[]);
        if set.len() < 3 {
            // The unconstrained optimum is too small; an optimal set with at
            // least three vertices contains an edge plus one more vertex.
            value = i64::MIN;
            for &(u, v) in g.edges() {
                for w in 0..n {
                    if w == u || w == v {
                        continue;
                    }
                    let (val, s) = best_closure(g, p, q, &[u, v, w]);
                    if val > value {
                        value = val;
                        set = s;
                    }
                }
            }
        }
        if value <= threshold {
            return Ok(ratio);
        }
        let next = two_density(&set);
        debug_assert!(next > ratio);
        ratio = next;
    }
}

/// Brute force over all non-empty vertex subsets. Exponential; intended for
/// cross-checks on graphs with at most ~20 vertices.
pub fn exhaustive_max_density(g: &Graph) -> Result<Rational> {
    let n = g.n();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    assert!(n <= 24, "exhaustive scan limited to 24 vertices");
    let masks = adjacency_masks(g);
    let mut best = Rational::ZERO;
    for set in 1u32..(1 << n) {
        let e = edges_in_mask(&masks, set);
        let r = Rational::new(e as i64, set.count_ones() as i64);
        if r > best {
            best = r;
        }
    }
    Ok(best)
}

/// Brute-force counterpart of [`max_2_density`].
pub fn exhaustive_max_2_density(g: &Graph) -> Result<Rational> {
    let n = g.n();
    if n < 3 {
        return Err(Error::TooFewVertices(n));
    }
    assert!(n <= 24, "exhaustive scan limited to 24 vertices");
    let masks = adjacency_masks(g);
    let mut best: Option<Rational> = None;
    for set in 1u32..(1 << n) {
        let size = set.count_ones() as i64;
        if size < 3 {
            continue;
        }
        let r = Rational::new(edges_in_mask(&masks, set) as i64 - 1, size - 2);
        if best.is_none_or(|b| r > b) {
            best = Some(r);
        }
    }
    Ok(best.expect("n >= 3"))
}

fn adjacency_masks(g: &Graph) -> Vec<u32> {
    (0..g.n())
        .map(|v| g.neighbours(v).iter().fold(0u32, |m, &w| m | (1 << w)))
        .collect()
}

fn edges_in_mask(masks: &[u32], set: u32) -> u32 {
    let mut twice = 0;
    let mut rest = set;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        twice += (masks[v] & set).count_ones();
    }
    twice / 2
}
