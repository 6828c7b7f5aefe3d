//! Size constraints, matroids and the dummy-element extension.

mod basis;
mod exchange;
mod io;

use std::cell::Cell;

pub use basis::{max_gain_basis, pad_with_dummies};
pub(crate) use basis::rank_by_gain;
pub use exchange::{exchange_bijection, partition_exchange, ExchangeMap};
pub use io::read_partition_matroid;

use crate::element::{ElementId, ElementSet};
use crate::error::{Error, Result};

/// Feasible sets are those with at most `k` real elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SizeConstraint {
    pub k: usize,
}

impl SizeConstraint {
    pub fn new(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::input("size budget k must be positive"));
        }
        Ok(Self { k })
    }

    pub fn is_feasible(&self, s: &ElementSet, n: usize) -> bool {
        s.real_len(n) <= self.k
    }
}

/// A matroid given by its independence oracle over real elements `0..ground_size()`.
pub trait Matroid: Send + Sync {
    fn ground_size(&self) -> usize;

    /// Size of every basis.
    fn rank(&self) -> usize;

    /// `set` is sorted, duplicate-free and contains only real ids.
    fn is_independent(&self, set: &[ElementId]) -> bool;

    fn describe(&self) -> String;
}

/// Independent sets are those with at most `k` elements.
#[derive(Clone, Debug)]
pub struct UniformMatroid {
    n: usize,
    k: usize,
}

impl UniformMatroid {
    pub fn new(n: usize, k: usize) -> Self {
        Self { n, k }
    }
}

impl Matroid for UniformMatroid {
    fn ground_size(&self) -> usize {
        self.n
    }

    fn rank(&self) -> usize {
        self.k.min(self.n)
    }

    fn is_independent(&self, set: &[ElementId]) -> bool {
        set.len() <= self.k
    }

    fn describe(&self) -> String {
        format!("uniform(n={}, k={})", self.n, self.k)
    }
}

/// Elements are split into blocks; a set is independent iff it holds at most
/// `capacities[b]` elements of every block `b`.
#[derive(Clone, Debug)]
pub struct PartitionMatroid {
    block_of: Vec<usize>,
    capacities: Vec<usize>,
    rank: usize,
}

impl PartitionMatroid {
    pub fn new(block_of: Vec<usize>, capacities: Vec<usize>) -> Result<Self> {
        let mut sizes = vec![0usize; capacities.len()];
        for (e, &b) in block_of.iter().enumerate() {
            if b >= capacities.len() {
                return Err(Error::input(format!("element {e} assigned to unknown block {b}")));
            }
            sizes[b] += 1;
        }
        let rank = sizes.iter().zip(&capacities).map(|(s, c)| s.min(c)).sum();
        Ok(Self {
            block_of,
            capacities,
            rank,
        })
    }

    /// Blocks given as explicit member lists; every element `0..n` must appear once.
    pub fn from_blocks(n: usize, blocks: &[Vec<usize>], capacities: Vec<usize>) -> Result<Self> {
        if blocks.len() != capacities.len() {
            return Err(Error::input("one capacity per block required"));
        }
        let mut block_of = vec![usize::MAX; n];
        for (b, members) in blocks.iter().enumerate() {
            for &e in members {
                if e >= n || block_of[e] != usize::MAX {
                    return Err(Error::input(format!("element {e} missing from range or repeated")));
                }
                block_of[e] = b;
            }
        }
        if let Some(e) = block_of.iter().position(|&b| b == usize::MAX) {
            return Err(Error::input(format!("element {e} belongs to no block")));
        }
        Self::new(block_of, capacities)
    }

    pub fn block_of(&self, e: ElementId) -> usize {
        self.block_of[e.0]
    }

    pub fn capacities(&self) -> &[usize] {
        &self.capacities
    }
}

impl Matroid for PartitionMatroid {
    fn ground_size(&self) -> usize {
        self.block_of.len()
    }

    fn rank(&self) -> usize {
        self.rank
    }

    fn is_independent(&self, set: &[ElementId]) -> bool {
        let mut used = vec![0usize; self.capacities.len()];
        for e in set {
            let b = self.block_of[e.0];
            used[b] += 1;
            if used[b] > self.capacities[b] {
                return false;
            }
        }
        true
    }

    fn describe(&self) -> String {
        format!(
            "partition(n={}, blocks={}, rank={})",
            self.block_of.len(),
            self.capacities.len(),
            self.rank
        )
    }
}

/// Anything that answers independence queries on element sets.
pub trait Independence {
    fn independent(&self, s: &ElementSet) -> bool;

    fn rank(&self) -> usize;

    fn is_basis(&self, s: &ElementSet) -> bool {
        s.len() == self.rank() && self.independent(s)
    }
}

/// A matroid with a per-run counter of independence calls.
pub struct MatroidView<'a> {
    matroid: &'a dyn Matroid,
    calls: Cell<u64>,
}

impl<'a> MatroidView<'a> {
    pub fn new(matroid: &'a dyn Matroid) -> Self {
        Self {
            matroid,
            calls: Cell::new(0),
        }
    }

    pub fn matroid(&self) -> &'a dyn Matroid {
        self.matroid
    }

    pub fn n(&self) -> usize {
        self.matroid.ground_size()
    }

    pub fn independence_calls(&self) -> u64 {
        self.calls.get()
    }

    pub fn reset_calls(&self) {
        self.calls.set(0);
    }

    fn check_real(&self, ids: &[ElementId]) -> bool {
        self.calls.set(self.calls.get() + 1);
        self.matroid.is_independent(ids)
    }
}

impl Independence for MatroidView<'_> {
    /// Sets containing ids outside the ground set are never independent.
    fn independent(&self, s: &ElementSet) -> bool {
        let n = self.n();
        if s.real_len(n) != s.len() {
            self.calls.set(self.calls.get() + 1);
            return false;
        }
        self.check_real(s.ids())
    }

    fn rank(&self) -> usize {
        self.matroid.rank()
    }
}

/// The base matroid extended with `k = rank` dummy elements `n..n + k`:
/// a set is independent iff its real part is independent in the base matroid
/// and it has at most `k` elements.
pub struct ExtendedMatroid<'a> {
    base: MatroidView<'a>,
    n: usize,
    k: usize,
}

impl<'a> ExtendedMatroid<'a> {
    pub fn new(matroid: &'a dyn Matroid) -> Result<Self> {
        let k = matroid.rank();
        if k == 0 {
            return Err(Error::input("matroid has rank 0"));
        }
        Ok(Self {
            n: matroid.ground_size(),
            k,
            base: MatroidView::new(matroid),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn base(&self) -> &MatroidView<'a> {
        &self.base
    }

    pub fn independence_calls(&self) -> u64 {
        self.base.independence_calls()
    }

    pub fn is_dummy(&self, e: ElementId) -> bool {
        e.0 >= self.n
    }

    pub fn dummy_ids(&self) -> impl Iterator<Item = ElementId> {
        (self.n..self.n + self.k).map(ElementId)
    }

    /// Independent in the base matroid after stripping dummies (and in range).
    pub fn feasible(&self, s: &ElementSet) -> bool {
        s.max_id().is_none_or(|m| m.0 < self.n + self.k) && self.base.check_real(s.real_ids(self.n))
    }
}

impl Independence for ExtendedMatroid<'_> {
    fn independent(&self, s: &ElementSet) -> bool {
        if s.len() > self.k || s.max_id().is_some_and(|m| m.0 >= self.n + self.k) {
            self.base.calls.set(self.base.calls.get() + 1);
            return false;
        }
        self.base.check_real(s.real_ids(self.n))
    }

    fn rank(&self) -> usize {
        self.k
    }
}

/// The constraint an algorithm runs under.
pub enum Constraint<'a> {
    Size(SizeConstraint),
    Matroid(ExtendedMatroid<'a>),
}

impl Constraint<'_> {
    /// Budget `k` (size) or rank `k` (matroid).
    pub fn k(&self) -> usize {
        match self {
            Constraint::Size(s) => s.k,
            Constraint::Matroid(m) => m.k(),
        }
    }

    pub fn is_feasible(&self, s: &ElementSet, n: usize) -> bool {
        match self {
            Constraint::Size(c) => c.is_feasible(s, n) && s.max_id().is_none_or(|m| m.0 < n + c.k),
            Constraint::Matroid(m) => m.feasible(s),
        }
    }

    pub fn independence_calls(&self) -> u64 {
        match self {
            Constraint::Size(_) => 0,
            Constraint::Matroid(m) => m.independence_calls(),
        }
    }

    pub fn is_size(&self) -> bool {
        matches!(self, Constraint::Size(_))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(ids: &[usize]) -> ElementSet {
        ElementSet::from_ids(ids.iter().copied())
    }

    #[test]
    fn independence_examples() {
        let u = UniformMatroid::new(4, 2);
        let v = MatroidView::new(&u);
        assert!(!v.independent(&set(&[0, 1, 2])));
        let p = PartitionMatroid::from_blocks(4, &[vec![0, 1], vec![2, 3]], vec![1, 1]).unwrap();
        let v = MatroidView::new(&p);
        assert!(v.independent(&set(&[0, 2])));
        assert!(!v.independent(&set(&[0, 1])));
        assert_eq!(v.independence_calls(), 2);
    }

    #[test]
    fn partition_rank_counts_small_blocks() {
        let p = PartitionMatroid::from_blocks(3, &[vec![0], vec![1, 2]], vec![2, 1]).unwrap();
        assert_eq!(p.rank(), 2);
        assert!(PartitionMatroid::from_blocks(3, &[vec![0], vec![1]], vec![1, 1]).is_err());
        assert!(PartitionMatroid::from_blocks(2, &[vec![0, 0], vec![1]], vec![1, 1]).is_err());
    }

    #[test]
    fn extended_matroid_counts_dummies_against_rank() {
        let p = PartitionMatroid::from_blocks(4, &[vec![0, 1], vec![2, 3]], vec![1, 1]).unwrap();
        let m = ExtendedMatroid::new(&p).unwrap();
        assert_eq!(m.k(), 2);
        assert!(m.independent(&set(&[0, 4])));
        assert!(m.independent(&set(&[4, 5])));
        assert!(!m.independent(&set(&[0, 4, 5])));
        assert!(!m.independent(&set(&[0, 1])));
        assert!(!m.independent(&set(&[6])));
        assert!(m.is_basis(&set(&[0, 3])));
        assert!(!m.is_basis(&set(&[0])));
    }

    #[test]
    fn size_constraint_feasibility() {
        assert!(SizeConstraint::new(0).is_err());
        let c = SizeConstraint::new(2).unwrap();
        assert!(c.is_feasible(&set(&[0, 1, 5, 6]), 4));
        assert!(!c.is_feasible(&set(&[0, 1, 2]), 4));
    }
}
