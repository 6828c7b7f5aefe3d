//! Seeded random-graph generators with unit edge weights.
//!
//! Each generator draws from [`crate::rng::seeded`]`(seed)` in a fixed order,
//! so `(model, n, seed)` reproduces the same edge list on every run:
//!
//! * `er-gnp/v1`: for `u` in `0..n`, for `v` in `u+1..n`, one `f64` draw in
//!   `[0, 1)`; the edge `(u, v)` exists iff the draw is `< p`.
//! * `ba-linear/v1`: vertices `0..m` form an edgeless core. Vertex `m` joins
//!   every core vertex. Each later vertex draws targets uniformly from the
//!   list of all previous edge endpoints (each vertex repeated once per
//!   incident edge), rejecting repeats until it has `m` distinct targets.
//!   Exactly `m·(n−m)` edges result.
//! * `ws-ring/v1`: ring lattice joining each vertex to its `degree/2` nearest
//!   neighbours on each side. Then for `j` in `1..=degree/2`, for `u` in `0..n`,
//!   the edge `(u, u+j mod n)` is rewired with probability `p` to `(u, w)`, with `w`
//!   drawn uniformly until it is neither `u` nor a current neighbour of `u`.
//!
//! Output edges are listed as `(min, max)` pairs in ascending order.

use std::collections::BTreeSet;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::MaxCutInstance;
use crate::error::{Error, Result};
use crate::rng::seeded;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "lowercase")]
pub enum GraphModel {
    /// Erdős–Rényi `G(n, p)`.
    Er { p: f64 },
    /// Barabási–Albert preferential attachment, `m` edges per new vertex.
    Ba { m: usize },
    /// Watts–Strogatz small world: ring degree and rewiring probability.
    Ws { degree: usize, p: f64 },
}

impl GraphModel {
    /// Generator algorithm identifier recorded in output metadata.
    pub fn algorithm_id(&self) -> &'static str {
        match self {
            GraphModel::Er { .. } => "er-gnp/v1",
            GraphModel::Ba { .. } => "ba-linear/v1",
            GraphModel::Ws { .. } => "ws-ring/v1",
        }
    }

    fn validate(&self, n: usize) -> Result<()> {
        let prob_ok = |p: f64| (0.0..=1.0).contains(&p);
        match *self {
            GraphModel::Er { p } if !prob_ok(p) => Err(Error::input(format!("ER p = {p} not in [0, 1]"))),
            GraphModel::Ba { m } if m == 0 || m >= n => {
                Err(Error::input(format!("BA needs 1 <= m < n, got m = {m}, n = {n}")))
            }
            GraphModel::Ws { p, .. } if !prob_ok(p) => Err(Error::input(format!("WS p = {p} not in [0, 1]"))),
            GraphModel::Ws { degree, .. } if degree % 2 != 0 || degree >= n => Err(Error::input(format!(
                "WS ring degree must be even and < n, got {degree} with n = {n}"
            ))),
            _ => Ok(()),
        }
    }
}

pub fn gen_graph(model: GraphModel, n: usize, seed: u64) -> Result<MaxCutInstance> {
    model.validate(n)?;
    let mut rng = seeded(seed);
    let edges: Vec<(usize, usize)> = match model {
        GraphModel::Er { p } => {
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen::<f64>() < p {
                        edges.push((u, v));
                    }
                }
            }
            edges
        }
        GraphModel::Ba { m } => {
            let mut edges = Vec::with_capacity(m * (n - m));
            let mut endpoints: Vec<usize> = Vec::with_capacity(2 * m * (n - m));
            for source in m..n {
                let targets: Vec<usize> = if source == m {
                    (0..m).collect()
                } else {
                    let mut chosen = Vec::with_capacity(m);
                    while chosen.len() < m {
                        let t = endpoints[rng.gen_range(0..endpoints.len())];
                        if !chosen.contains(&t) {
                            chosen.push(t);
                        }
                    }
                    chosen
                };
                for &t in &targets {
                    edges.push((t.min(source), t.max(source)));
                    endpoints.push(t);
                    endpoints.push(source);
                }
            }
            edges.sort_unstable();
            edges
        }
        GraphModel::Ws { degree, p } => {
            let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
            for u in 0..n {
                for j in 1..=degree / 2 {
                    let v = (u + j) % n;
                    adj[u].insert(v);
                    adj[v].insert(u);
                }
            }
            for j in 1..=degree / 2 {
                for u in 0..n {
                    let v = (u + j) % n;
                    if rng.gen::<f64>() < p && adj[u].contains(&v) && adj[u].len() < n - 1 {
                        let w = loop {
                            let w = rng.gen_range(0..n);
                            if w != u && !adj[u].contains(&w) {
                                break w;
                            }
                        };
                        adj[u].remove(&v);
                        adj[v].remove(&u);
                        adj[u].insert(w);
                        adj[w].insert(u);
                    }
                }
            }
            let mut edges = Vec::new();
            for (u, nbrs) in adj.iter().enumerate() {
                edges.extend(nbrs.range(u + 1..).map(|&v| (u, v)));
            }
            edges
        }
    };
    MaxCutInstance::unit(n, &edges)
}
