use super::Objective;
use crate::element::ElementId;
use crate::error::{Error, Result};

/// Weighted max cut: `f(S) = Σ w(u, v)` over edges with exactly one endpoint in `S`.
#[derive(Clone, Debug)]
pub struct MaxCutInstance {
    n: usize,
    edges: Vec<(usize, usize, f64)>,
    adjacency: Vec<Vec<(usize, f64)>>,
}

impl MaxCutInstance {
    pub fn new(n: usize, edges: Vec<(usize, usize, f64)>) -> Result<Self> {
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v, w) in &edges {
            if u >= n || v >= n {
                return Err(Error::input(format!("edge ({u}, {v}) out of range for n = {n}")));
            }
            if u == v {
                return Err(Error::input(format!("self loop at vertex {u}")));
            }
            if !(w.is_finite() && w >= 0.0) {
                return Err(Error::input(format!("edge ({u}, {v}) has invalid weight {w}")));
            }
            adjacency[u].push((v, w));
            adjacency[v].push((u, w));
        }
        Ok(Self {
            n,
            edges,
            adjacency,
        })
    }

    /// Unit-weight graph.
    pub fn unit(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Self::new(n, edges.iter().map(|&(u, v)| (u, v, 1.0)).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize, f64)] {
        &self.edges
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adjacency[u].len()
    }

    fn membership(&self, set: &[ElementId]) -> Vec<u64> {
        let mut bits = vec![0u64; self.n.div_ceil(64)];
        for e in set {
            bits[e.0 >> 6] |= 1 << (e.0 & 63);
        }
        bits
    }

    // Signed change of the cut when `x` flips side, relative to `set`.
    fn flip_delta(&self, set: &[ElementId], x: ElementId) -> f64 {
        let mut delta = 0.0;
        for &(v, w) in &self.adjacency[x.0] {
            if set.binary_search(&ElementId(v)).is_ok() {
                delta -= w;
            } else {
                delta += w;
            }
        }
        delta
    }
}

impl Objective for MaxCutInstance {
    fn ground_size(&self) -> usize {
        self.n
    }

    // Iterates the edge list in its stored order, so f(S) and f(V \ S) sum the
    // same terms in the same order and agree bit for bit.
    fn value(&self, set: &[ElementId]) -> f64 {
        if set.is_empty() {
            return 0.0;
        }
        let bits = self.membership(set);
        let inside = |u: usize| bits[u >> 6] >> (u & 63) & 1 == 1;
        let mut total = 0.0;
        for &(u, v, w) in &self.edges {
            if inside(u) != inside(v) {
                total += w;
            }
        }
        total
    }

    fn value_with(&self, set: &[ElementId], x: ElementId, set_value: f64) -> f64 {
        (set_value + self.flip_delta(set, x)).max(0.0)
    }

    fn value_without(&self, set: &[ElementId], x: ElementId, set_value: f64) -> f64 {
        // x is in `set`; its neighbours inside stop being cut, outside ones are uncut
        let mut delta = 0.0;
        for &(v, w) in &self.adjacency[x.0] {
            if set.binary_search(&ElementId(v)).is_ok() {
                delta += w;
            } else {
                delta -= w;
            }
        }
        (set_value + delta).max(0.0)
    }

    fn kind(&self) -> &'static str {
        "maxcut"
    }
}
