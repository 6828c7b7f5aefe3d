//! Element ids and sorted element sets.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Index of a ground-set element. Ids in `[0, n)` are real elements; ids in
/// `[n, n + k)` are dummy elements that never contribute to the objective.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ElementId(pub usize);

impl ElementId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }

    #[inline]
    pub fn is_dummy(self, n: usize) -> bool {
        self.0 >= n
    }
}

impl From<usize> for ElementId {
    fn from(i: usize) -> Self {
        ElementId(i)
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A duplicate-free set of elements kept in ascending id order, with an
/// optional cached objective value.
///
/// Because dummies carry the largest ids, the real members of a set always
/// form a prefix of [`ElementSet::ids`].
#[derive(Clone, Debug, Default)]
pub struct ElementSet {
    members: Vec<ElementId>,
    cached_value: Option<f64>,
}

impl PartialEq for ElementSet {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for ElementSet {}

impl std::hash::Hash for ElementSet {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.members.hash(state);
    }
}

impl PartialOrd for ElementSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ElementSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.members.cmp(&other.members)
    }
}

impl ElementSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a set from arbitrary ids; duplicates are collapsed.
    pub fn from_ids<I, T>(ids: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<ElementId>,
    {
        let mut members: Vec<ElementId> = ids.into_iter().map(Into::into).collect();
        members.sort_unstable();
        members.dedup();
        Self {
            members,
            cached_value: None,
        }
    }

    /// `k` dummy elements with ids `n..n + k`.
    pub fn dummies(n: usize, k: usize) -> Self {
        Self::from_ids(n..n + k)
    }

    pub fn ids(&self) -> &[ElementId] {
        &self.members
    }

    pub fn iter(&self) -> impl Iterator<Item = ElementId> + '_ {
        self.members.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, id: ElementId) -> bool {
        self.members.binary_search(&id).is_ok()
    }

    /// Members with id below `n`, i.e. the set with dummies stripped.
    pub fn real_ids(&self, n: usize) -> &[ElementId] {
        let end = self.members.partition_point(|e| e.0 < n);
        &self.members[..end]
    }

    pub fn real_len(&self, n: usize) -> usize {
        self.real_ids(n).len()
    }

    pub fn dummy_count(&self, n: usize) -> usize {
        self.len() - self.real_len(n)
    }

    /// The same set without dummy members. The cached value carries over,
    /// since dummies never change the objective.
    pub fn strip_dummies(&self, n: usize) -> ElementSet {
        ElementSet {
            members: self.real_ids(n).to_vec(),
            cached_value: self.cached_value,
        }
    }

    pub fn cached_value(&self) -> Option<f64> {
        self.cached_value
    }

    pub fn set_cached_value(&mut self, value: f64) {
        self.cached_value = Some(value);
    }

    pub fn with_value(mut self, value: f64) -> Self {
        self.cached_value = Some(value);
        self
    }

    /// Inserts `id`; returns false if it was already present. Clears the cache.
    pub fn insert(&mut self, id: ElementId) -> bool {
        match self.members.binary_search(&id) {
            Ok(_) => false,
            Err(pos) => {
                self.members.insert(pos, id);
                self.cached_value = None;
                true
            }
        }
    }

    /// Removes `id`; returns false if it was absent. Clears the cache.
    pub fn remove(&mut self, id: ElementId) -> bool {
        match self.members.binary_search(&id) {
            Ok(pos) => {
                self.members.remove(pos);
                self.cached_value = None;
                true
            }
            Err(_) => false,
        }
    }

    pub fn with(&self, id: ElementId) -> ElementSet {
        let mut s = self.clone();
        s.insert(id);
        s
    }

    pub fn without(&self, id: ElementId) -> ElementSet {
        let mut s = self.clone();
        s.remove(id);
        s
    }

    /// `self - out + inn`.
    pub fn swapped(&self, out: ElementId, inn: ElementId) -> ElementSet {
        let mut s = self.clone();
        s.remove(out);
        s.insert(inn);
        s
    }

    pub fn union(&self, other: &ElementSet) -> ElementSet {
        ElementSet::from_ids(self.iter().chain(other.iter()))
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        ElementSet::from_ids(self.iter().filter(|e| other.contains(*e)))
    }

    pub fn difference(&self, other: &ElementSet) -> ElementSet {
        ElementSet::from_ids(self.iter().filter(|e| !other.contains(*e)))
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.iter().all(|e| other.contains(e))
    }

    pub fn is_disjoint(&self, other: &ElementSet) -> bool {
        self.iter().all(|e| !other.contains(e))
    }

    pub fn max_id(&self) -> Option<ElementId> {
        self.members.last().copied()
    }

    /// Raw indices, convenient for printing and serialization.
    pub fn indices(&self) -> Vec<usize> {
        self.members.iter().map(|e| e.0).collect()
    }
}

impl FromIterator<ElementId> for ElementSet {
    fn from_iter<I: IntoIterator<Item = ElementId>>(iter: I) -> Self {
        ElementSet::from_ids(iter)
    }
}

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.members.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", e.0)?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_ids_sorts_and_dedups() {
        let s = ElementSet::from_ids([3usize, 1, 3, 2]);
        assert_eq!(s.indices(), vec![1, 2, 3]);
    }

    #[test]
    fn real_prefix_excludes_dummies() {
        let s = ElementSet::from_ids([0usize, 4, 5, 2]);
        assert_eq!(s.real_ids(4), &[ElementId(0), ElementId(2)]);
        assert_eq!(s.dummy_count(4), 2);
    }

    #[test]
    fn mutation_clears_cache() {
        let mut s = ElementSet::from_ids([1usize]).with_value(2.0);
        assert_eq!(s.cached_value(), Some(2.0));
        assert!(!s.insert(ElementId(1)));
        assert_eq!(s.cached_value(), Some(2.0));
        s.insert(ElementId(0));
        assert_eq!(s.cached_value(), None);
    }
}
