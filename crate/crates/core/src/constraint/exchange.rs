//! Basis exchange maps.
//!
//! [`exchange_bijection`] computes the single-element exchange bijection
//! between two bases as a perfect matching in the bipartite exchange graph.
//! [`partition_exchange`] generalises it to blocks: given a basis `G` and a
//! partition of an independent set `A` into parts `A_j`, it finds disjoint
//! `Y_j ⊆ G` with `G - Y_j + A_j` a basis for every `j`. It is solved as a
//! matroid partitioning problem with shortest augmenting paths.

use std::collections::VecDeque;

use super::Independence;
use crate::element::{ElementId, ElementSet};
use crate::error::{Error, Result};

/// Bijection `σ: B_from \ B_to → B_to \ B_from` with `B_to + e - σ(e)` a basis.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExchangeMap {
    pub pairs: Vec<(ElementId, ElementId)>,
}

impl ExchangeMap {
    pub fn get(&self, e: ElementId) -> Option<ElementId> {
        self.pairs.iter().find(|p| p.0 == e).map(|p| p.1)
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// Exchange bijection from `b_from` to `b_to`.
///
/// Edges `(e, y)` of the exchange graph are those with `b_to + e - y`
/// independent. The matching is built by augmenting paths, processing `e` in
/// ascending id and trying partners `y` in ascending id, preferring a free
/// partner before re-routing a matched one.
pub fn exchange_bijection(
    matroid: &dyn Independence,
    b_from: &ElementSet,
    b_to: &ElementSet,
) -> Result<ExchangeMap> {
    if !matroid.is_basis(b_from) || !matroid.is_basis(b_to) {
        return Err(Error::input("exchange_bijection requires two bases"));
    }
    let left: Vec<ElementId> = b_from.difference(b_to).iter().collect();
    let right: Vec<ElementId> = b_to.difference(b_from).iter().collect();
    let adj: Vec<Vec<usize>> = left
        .iter()
        .map(|&e| {
            (0..right.len())
                .filter(|&j| matroid.independent(&b_to.swapped(right[j], e)))
                .collect()
        })
        .collect();

    let mut match_right: Vec<Option<usize>> = vec![None; right.len()];
    for i in 0..left.len() {
        let mut seen = vec![false; right.len()];
        if !augment(i, &adj, &mut match_right, &mut seen) {
            return Err(Error::input(
                "exchange graph has no perfect matching; the independence oracle is not a matroid",
            ));
        }
    }
    let mut pairs: Vec<(ElementId, ElementId)> = match_right
        .iter()
        .enumerate()
        .map(|(j, i)| (left[i.expect("perfect matching")], right[j]))
        .collect();
    pairs.sort();
    Ok(ExchangeMap { pairs })
}

fn augment(i: usize, adj: &[Vec<usize>], match_right: &mut [Option<usize>], seen: &mut [bool]) -> bool {
    if let Some(&j) = adj[i].iter().find(|&&j| match_right[j].is_none()) {
        seen[j] = true;
        match_right[j] = Some(i);
        return true;
    }
    for &j in &adj[i] {
        if seen[j] {
            continue;
        }
        seen[j] = true;
        let holder = match_right[j].expect("non-free partner");
        if augment(holder, adj, match_right, seen) {
            match_right[j] = Some(i);
            return true;
        }
    }
    false
}

/// Disjoint `Y_j ⊆ g` with `|Y_j| = |parts[j]|` and `g - Y_j + parts[j]` a
/// basis for every `j`.
///
/// `g` must be a basis, the parts disjoint from `g` and from each other, and
/// their union independent.
pub fn partition_exchange(
    matroid: &dyn Independence,
    g: &ElementSet,
    parts: &[ElementSet],
) -> Result<Vec<ElementSet>> {
    if !matroid.is_basis(g) {
        return Err(Error::input("partition_exchange requires g to be a basis"));
    }
    let union = parts.iter().fold(ElementSet::new(), |acc, p| acc.union(p));
    let total: usize = parts.iter().map(ElementSet::len).sum();
    if union.len() != total || !union.is_disjoint(g) || !matroid.independent(&union) {
        return Err(Error::input(
            "parts must be pairwise disjoint, disjoint from g, and jointly independent",
        ));
    }
    let ground: Vec<ElementId> = g.iter().collect();
    let k = matroid.rank();
    let ell = parts.len();

    // Y is independent in the j-th auxiliary matroid iff (g - Y) ∪ parts[j] has full rank.
    let spans = |j: usize, members: &[usize]| -> bool {
        let mut acc = parts[j].clone();
        for (idx, &e) in ground.iter().enumerate() {
            if members.contains(&idx) {
                continue;
            }
            let trial = acc.with(e);
            if matroid.independent(&trial) {
                acc = trial;
            }
        }
        acc.len() == k
    };

    let mut owner: Vec<Option<usize>> = vec![None; ground.len()];
    let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); ell];
    let mut assigned = 0usize;

    for start in 0..ground.len() {
        if assigned == total {
            break;
        }
        if owner[start].is_some() {
            continue;
        }
        // BFS over elements; parent[y] = (x, j) means x enters block j in place of y.
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; ground.len()];
        let mut visited = vec![false; ground.len()];
        visited[start] = true;
        let mut queue = VecDeque::from([start]);
        let mut sink: Option<(usize, usize)> = None;
        'search: while let Some(x) = queue.pop_front() {
            for j in 0..ell {
                if owner[x] == Some(j) {
                    continue;
                }
                let mut with_x = blocks[j].clone();
                with_x.push(x);
                if blocks[j].len() < parts[j].len() && spans(j, &with_x) {
                    sink = Some((x, j));
                    break 'search;
                }
                for &y in &blocks[j] {
                    if visited[y] {
                        continue;
                    }
                    let swapped: Vec<usize> = with_x.iter().copied().filter(|&z| z != y).collect();
                    if spans(j, &swapped) {
                        visited[y] = true;
                        parent[y] = Some((x, j));
                        queue.push_back(y);
                    }
                }
            }
        }
        let Some((mut x, mut j)) = sink else {
            // `start` cannot be placed; it stays in every output basis.
            continue;
        };
        loop {
            if let Some(prev) = owner[x] {
                blocks[prev].retain(|&z| z != x);
            }
            blocks[j].push(x);
            owner[x] = Some(j);
            if x == start {
                break;
            }
            let (px, pj) = parent[x].expect("augmenting path reaches the start");
            x = px;
            j = pj;
        }
        assigned += 1;
    }

    let result: Vec<ElementSet> = blocks
        .iter()
        .map(|b| ElementSet::from_ids(b.iter().map(|&i| ground[i])))
        .collect();
    for (j, y) in result.iter().enumerate() {
        if y.len() != parts[j].len() {
            return Err(Error::input(
                "no block exchange exists; the independence oracle is not a matroid",
            ));
        }
    }
    Ok(result)
}
