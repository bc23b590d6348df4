//! Partial edge-colourings keyed by vertex pairs.
//!
//! Keys are the vertex ids of whatever graph the colouring is read against;
//! the engine always works in original labels, so colourings of different
//! pieces of a graph can be merged directly.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Colouring {
    map: BTreeMap<(usize, usize), u32>,
}

/// JSON wire form: `{"edges": [[u, v, colour], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColouringJson {
    pub edges: Vec<[usize; 3]>,
}

fn key(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

impl Colouring {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, u: usize, v: usize) -> Option<u32> {
        self.map.get(&key(u, v)).copied()
    }

    pub fn is_coloured(&self, u: usize, v: usize) -> bool {
        self.map.contains_key(&key(u, v))
    }

    pub fn set(&mut self, u: usize, v: usize, colour: u32) {
        assert!(colour >= 1, "colour ids start at 1");
        self.map.insert(key(u, v), colour);
    }

    pub fn remove(&mut self, u: usize, v: usize) -> Option<u32> {
        self.map.remove(&key(u, v))
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// Coloured edges in sorted order.
    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), u32)> + '_ {
        self.map.iter().map(|(&e, &c)| (e, c))
    }

    /// Largest colour id in use, 0 when empty.
    pub fn max_colour(&self) -> u32 {
        self.map.values().copied().max().unwrap_or(0)
    }

    /// Number of distinct colours.
    pub fn colour_count(&self) -> usize {
        let mut seen: Vec<u32> = self.map.values().copied().collect();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }

    /// How many edges carry each colour.
    pub fn multiplicities(&self) -> BTreeMap<u32, usize> {
        let mut out = BTreeMap::new();
        for &c in self.map.values() {
            *out.entry(c).or_insert(0) += 1;
        }
        out
    }

    /// Reads the colouring of `g`'s local edge `(u, v)` through its labels.
    pub fn get_local(&self, g: &Graph, u: usize, v: usize) -> Option<u32> {
        self.get(g.label(u), g.label(v))
    }

    /// Checks that every coloured pair is an edge of `g` (by label) and no
    /// two incident edges share a colour.
    pub fn check_proper(&self, g: &Graph) -> Result<()> {
        let index: HashMap<usize, usize> =
            g.labels().iter().enumerate().map(|(i, &l)| (l, i)).collect();
        let mut at_vertex: HashMap<(usize, u32), (usize, usize)> = HashMap::new();
        for (&(u, v), &c) in &self.map {
            let (Some(&a), Some(&b)) = (index.get(&u), index.get(&v)) else {
                return Err(Error::Improper(format!("{u}-{v} is not an edge of the graph")));
            };
            if !g.has_edge(a, b) {
                return Err(Error::Improper(format!("{u}-{v} is not an edge of the graph")));
            }
            for x in [u, v] {
                if let Some(&other) = at_vertex.get(&(x, c)) {
                    return Err(Error::Improper(format!(
                        "edges {}-{} and {u}-{v} share vertex {x} and colour {c}",
                        other.0, other.1
                    )));
                }
                at_vertex.insert((x, c), (u, v));
            }
        }
        Ok(())
    }

    /// Renames colours to `1, 2, ...` in order of first use along the sorted
    /// edge list.
    pub fn canonical(&self) -> Colouring {
        let mut rename: HashMap<u32, u32> = HashMap::new();
        let mut map = BTreeMap::new();
        for (&e, &c) in &self.map {
            let next = rename.len() as u32 + 1;
            let id = *rename.entry(c).or_insert(next);
            map.insert(e, id);
        }
        Colouring { map }
    }

    pub fn is_canonical(&self) -> bool {
        *self == self.canonical()
    }

    /// Adds `offset` to every colour id.
    pub fn shifted(&self, offset: u32) -> Colouring {
        Colouring {
            map: self.map.iter().map(|(&e, &c)| (e, c + offset)).collect(),
        }
    }

    /// Union with a colouring on a disjoint edge set; the other colouring's
    /// palette is shifted past this one's.
    pub fn merge_disjoint(&mut self, other: &Colouring) {
        let offset = self.max_colour();
        for (e, c) in other.iter() {
            let previous = self.map.insert(e, c + offset);
            assert!(previous.is_none(), "merged colourings overlap on {e:?}");
        }
    }

    /// Only the coloured edges lying in `g` (by label).
    pub fn restricted_to(&self, g: &Graph) -> Colouring {
        let mut out = Colouring::new();
        for &(u, v) in g.edges() {
            if let Some(c) = self.get_local(g, u, v) {
                out.set(g.label(u), g.label(v), c);
            }
        }
        out
    }

    pub fn to_json(&self) -> ColouringJson {
        ColouringJson {
            edges: self.map.iter().map(|(&(u, v), &c)| [u, v, c as usize]).collect(),
        }
    }

    pub fn from_json(json: &ColouringJson) -> Result<Colouring> {
        let mut out = Colouring::new();
        for &[u, v, c] in &json.edges {
            if c == 0 || c > u32::MAX as usize {
                return Err(Error::Improper(format!("colour {c} on {u}-{v} out of range")));
            }
            if u == v {
                return Err(Error::Improper(format!("loop {u}-{v}")));
            }
            if out.map.insert(key(u, v), c as u32).is_some() {
                return Err(Error::Improper(format!("edge {u}-{v} coloured twice")));
            }
        }
        Ok(out)
    }
}

impl FromIterator<((usize, usize), u32)> for Colouring {
    fn from_iter<I: IntoIterator<Item = ((usize, usize), u32)>>(iter: I) -> Self {
        let mut out = Colouring::new();
        for ((u, v), c) in iter {
            out.set(u, v, c);
        }
        out
    }
}
