use crate::density::max_density;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::k4::witness_j;
use crate::rational::Rational;

use super::subgraph::contains_j;

#[derive(Clone, Debug)]
pub struct CensusOptions {
    /// Search nodes before giving up with [`Error::Guard`].
    pub node_budget: u64,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions { node_budget: 20_000_000 }
    }
}

/// Connected vertex sets `S` with `|S| <= vmax` and `e(S) >= threshold |S|`,
/// drawn from the `ceil(threshold)`-core of `g`, as sorted labels.
///
/// Any set of density at least `threshold` keeps that density when a vertex
/// of degree below `threshold` is dropped, and one of its components is at
/// least as dense, so the census is empty exactly when `g` has no dense set
/// of at most `vmax` vertices.
pub fn dense_subgraph_census(g: &Graph, vmax: usize, threshold: Rational) -> Result<Vec<Vec<usize>>> {
    dense_subgraph_census_with(g, vmax, threshold, &CensusOptions::default())
}

pub fn dense_subgraph_census_with(
    g: &Graph,
    vmax: usize,
    threshold: Rational,
    opts: &CensusOptions,
) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    search(g, vmax, threshold, opts, &mut |set| {
        out.push(set);
        true
    })?;
    out.sort();
    Ok(out)
}

/// Whether [`dense_subgraph_census`] would return anything, stopping at the
/// first set found. A copy of `J` answers at once when it qualifies.
pub fn has_dense_subgraph(g: &Graph, vmax: usize, threshold: Rational) -> Result<bool> {
    has_dense_subgraph_with(g, vmax, threshold, &CensusOptions::default())
}

pub fn has_dense_subgraph_with(
    g: &Graph,
    vmax: usize,
    threshold: Rational,
    opts: &CensusOptions,
) -> Result<bool> {
    check_params(vmax, threshold)?;
    let j = witness_j();
    if vmax >= j.n() && threshold <= Rational::new(j.edge_count() as i64, j.n() as i64) && contains_j(g) {
        return Ok(true);
    }
    let mut found = false;
    search(g, vmax, threshold, opts, &mut |_| {
        found = true;
        false
    })?;
    Ok(found)
}

fn check_params(vmax: usize, threshold: Rational) -> Result<()> {
    if vmax > 12 {
        return Err(Error::Guard(format!("census vmax = {vmax}, limit is 12")));
    }
    if threshold <= Rational::integer(0) {
        return Err(Error::Params(format!("census threshold {threshold} must be positive")));
    }
    Ok(())
}

/// Vertices of the `d`-core of `g` (local indices, ascending).
fn core(g: &Graph, d: usize) -> Vec<usize> {
    let mut deg: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    let mut alive = vec![true; g.n()];
    let mut stack: Vec<usize> = (0..g.n()).filter(|&v| deg[v] < d).collect();
    for &v in &stack {
        alive[v] = false;
    }
    while let Some(v) = stack.pop() {
        for &w in g.neighbours(v) {
            if alive[w] {
                deg[w] -= 1;
                if deg[w] < d {
                    alive[w] = false;
                    stack.push(w);
                }
            }
        }
    }
    (0..g.n()).filter(|&v| alive[v]).collect()
}

/// Calls `emit` on each qualifying set until it returns false.
fn search(
    g: &Graph,
    vmax: usize,
    threshold: Rational,
    opts: &CensusOptions,
    emit: &mut dyn FnMut(Vec<usize>) -> bool,
) -> Result<()> {
    check_params(vmax, threshold)?;
    let (num, den) = (threshold.numer(), threshold.denom());
    let d = ((num + den - 1) / den) as usize;
    let keep = core(g, d);
    if keep.is_empty() {
        return Ok(());
    }
    let h = g.induced(&keep);
    if max_density(&h)? < threshold {
        return Ok(());
    }
    let mut walk = Walk {
        h: &h,
        vmax,
        num,
        den,
        nodes: 0,
        budget: opts.node_budget,
        in_set: vec![false; h.n()],
        set_deg: vec![0; h.n()],
    };
    for root in 0..h.n() {
        let ext: Vec<usize> = h.neighbours(root).iter().copied().filter(|&w| w > root).collect();
        walk.add(root);
        let go_on = walk.extend(root, &mut vec![root], 0, ext, emit)?;
        walk.remove(root);
        if !go_on {
            break;
        }
    }
    Ok(())
}

/// Enumerates connected sets rooted at their smallest vertex, each exactly
/// once (extension sets grow only by exclusive neighbours).
struct Walk<'a> {
    h: &'a Graph,
    vmax: usize,
    num: i64,
    den: i64,
    nodes: u64,
    budget: u64,
    in_set: Vec<bool>,
    /// Neighbours of each vertex inside the current set.
    set_deg: Vec<usize>,
}

impl Walk<'_> {
    fn add(&mut self, v: usize) {
        self.in_set[v] = true;
        for &w in self.h.neighbours(v) {
            self.set_deg[w] += 1;
        }
    }

    fn remove(&mut self, v: usize) {
        self.in_set[v] = false;
        for &w in self.h.neighbours(v) {
            self.set_deg[w] -= 1;
        }
    }

    fn dense(&self, e: usize, s: usize) -> bool {
        self.den * e as i64 >= self.num * s as i64
    }

    /// Upper bound check: can some superset within the size limit, built
    /// from vertices above `root`, reach the threshold? Each added vertex
    /// brings its edges into the set plus at most half of its other edges
    /// among the added ones.
    fn reachable(&self, root: usize, e: usize, s: usize) -> bool {
        let room = self.vmax - s;
        if room == 0 {
            return false;
        }
        let mut gains: Vec<usize> = (root + 1..self.h.n())
            .filter(|&w| !self.in_set[w])
            .map(|w| {
                let inside = self.set_deg[w];
                let outside = (self.h.degree(w) - inside).min(room - 1);
                2 * inside + outside
            })
            .collect();
        gains.sort_unstable_by(|a, b| b.cmp(a));
        let mut twice = 2 * e;
        for (i, gain) in gains.into_iter().take(room).enumerate() {
            twice += gain;
            if self.den * twice as i64 >= 2 * self.num * (s + i + 1) as i64 {
                return true;
            }
        }
        false
    }

    fn extend(
        &mut self,
        root: usize,
        set: &mut Vec<usize>,
        e: usize,
        mut ext: Vec<usize>,
        emit: &mut dyn FnMut(Vec<usize>) -> bool,
    ) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::Guard(format!(
                "census search passed {} nodes",
                self.budget
            )));
        }
        if self.dense(e, set.len()) {
            let mut labels: Vec<usize> = set.iter().map(|&v| self.h.label(v)).collect();
            labels.sort_unstable();
            if !emit(labels) {
                return Ok(false);
            }
        }
        if set.len() == self.vmax || !self.reachable(root, e, set.len()) {
            return Ok(true);
        }
        while let Some(w) = ext.pop() {
            let mut next = ext.clone();
            for &u in self.h.neighbours(w) {
                let exclusive = u > root
                    && !self.in_set[u]
                    && self.set_deg[u] == 0
                    && !next.contains(&u);
                if exclusive {
                    next.push(u);
                }
            }
            let gained = self.set_deg[w];
            self.add(w);
            set.push(w);
            let go_on = self.extend(root, set, e + gained, next, emit)?;
            set.pop();
            self.remove(w);
            if !go_on {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
