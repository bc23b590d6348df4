use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::engine::colour_graph;
use crate::error::{Error, Result};
use crate::rational::Rational;

use super::census::{has_dense_subgraph_with, CensusOptions};
use super::subgraph::contains_j;
use super::CoupledSample;

/// One point of a threshold scan: `trials` samples of `G(n, n^-c)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub n: usize,
    pub c: f64,
    pub p: f64,
    pub trials: usize,
    /// Fraction of samples containing `J`; only defined for `k = 4`.
    pub rate_j_subgraph: Option<f64>,
    /// Fraction on which every `K_k`-component passes the density check and
    /// gets coloured.
    pub rate_colourable: f64,
    /// Fraction with a dense set of at most `census_vmax` vertices, among
    /// the samples the census decided.
    pub rate_dense_census_nonempty: f64,
    /// Samples on which the census ran out of budget.
    pub census_undecided: usize,
    pub seed: u64,
}

#[derive(Clone, Debug)]
pub struct ScanOptions {
    pub colour: bool,
    pub census: bool,
    pub census_vmax: usize,
    pub census_budget: u64,
    /// Upper limit on `n * trials`.
    pub max_work: usize,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            colour: true,
            census: true,
            census_vmax: 12,
            census_budget: 2_000_000,
            max_work: 1_000_000,
        }
    }
}

#[derive(Clone, Copy, Default)]
struct Cell {
    j: bool,
    colourable: bool,
    census: Option<bool>,
}

/// Scans `p = n^-c` over `exponents`. Trial `t` draws one coupled sample
/// shared by every exponent, so per-trial indicators of monotone properties
/// are monotone along the grid.
pub fn threshold_scan(k: usize, n: usize, exponents: &[f64], trials: usize, seed: u64) -> Result<Vec<ScanRow>> {
    threshold_scan_with(k, n, exponents, trials, seed, &ScanOptions::default())
}

pub fn threshold_scan_with(
    k: usize,
    n: usize,
    exponents: &[f64],
    trials: usize,
    seed: u64,
    opts: &ScanOptions,
) -> Result<Vec<ScanRow>> {
    if k < 4 {
        return Err(Error::UnsupportedK { k, need: "k >= 4" });
    }
    if trials == 0 || n == 0 || exponents.is_empty() {
        return Err(Error::Params("scan needs n >= 1, trials >= 1 and at least one exponent".into()));
    }
    if let Some(c) = exponents.iter().find(|c| !c.is_finite() || **c < 0.0) {
        return Err(Error::Params(format!("exponent {c} must be finite and non-negative")));
    }
    if n.saturating_mul(trials) > opts.max_work {
        return Err(Error::Guard(format!(
            "n * trials = {} exceeds {}",
            n.saturating_mul(trials),
            opts.max_work
        )));
    }
    let threshold = if k == 4 { Rational::new(15, 7) } else { Rational::new(k as i64 + 1, 2) };
    let census_opts = CensusOptions { node_budget: opts.census_budget };
    let grid: Vec<Vec<Cell>> = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let sample = CoupledSample::draw(n, seed, t);
            exponents
                .iter()
                .map(|&c| {
                    let g = sample.graph(p_of(n, c));
                    let j = k == 4 && contains_j(&g);
                    let colourable = if opts.colour {
                        match colour_graph(&g, k) {
                            Ok(_) => true,
                            Err(e) if e.is_invariant() => return Err(e),
                            Err(_) => false,
                        }
                    } else {
                        false
                    };
                    let census = if !opts.census {
                        None
                    } else if j && opts.census_vmax >= 7 {
                        Some(true)
                    } else {
                        match has_dense_subgraph_with(&g, opts.census_vmax, threshold, &census_opts) {
                            Ok(found) => Some(found),
                            Err(Error::Guard(_)) => None,
                            Err(e) => return Err(e),
                        }
                    };
                    Ok(Cell { j, colourable, census })
                })
                .collect::<Result<Vec<Cell>>>()
        })
        .collect::<Result<_>>()?;

    Ok(exponents
        .iter()
        .enumerate()
        .map(|(i, &c)| {
            let column = grid.iter().map(|row| row[i]);
            let rate = |hits: usize, of: usize| if of == 0 { 0.0 } else { hits as f64 / of as f64 };
            let j_hits = column.clone().filter(|x| x.j).count();
            let col_hits = column.clone().filter(|x| x.colourable).count();
            let decided = column.clone().filter(|x| x.census.is_some()).count();
            let census_hits = column.filter(|x| x.census == Some(true)).count();
            ScanRow {
                n,
                c,
                p: p_of(n, c),
                trials,
                rate_j_subgraph: (k == 4).then(|| rate(j_hits, trials)),
                rate_colourable: rate(col_hits, trials),
                rate_dense_census_nonempty: rate(census_hits, decided),
                census_undecided: if opts.census { trials - decided } else { 0 },
                seed,
            }
        })
        .collect())
}

fn p_of(n: usize, c: f64) -> f64 {
    (n as f64).powf(-c).min(1.0)
}

/// Per-trial `J` indicators along the grid (rows are trials).
pub fn j_presence_grid(n: usize, exponents: &[f64], trials: usize, seed: u64) -> Vec<Vec<bool>> {
    (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let sample = CoupledSample::draw(n, seed, t);
            exponents.iter().map(|&c| contains_j(&sample.graph(p_of(n, c)))).collect()
        })
        .collect()
}

/// CSV with header `n,c,p,trials,rate_j,rate_colourable,rate_census,seed`;
/// `rate_j` is empty when undefined.
pub fn scan_to_csv(rows: &[ScanRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["n", "c", "p", "trials", "rate_j", "rate_colourable", "rate_census", "seed"])
        .expect("in-memory write");
    for r in rows {
        w.write_record([
            r.n.to_string(),
            r.c.to_string(),
            r.p.to_string(),
            r.trials.to_string(),
            r.rate_j_subgraph.map_or(String::new(), |x| x.to_string()),
            r.rate_colourable.to_string(),
            r.rate_dense_census_nonempty.to_string(),
            r.seed.to_string(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flushed")).expect("ascii")
}
