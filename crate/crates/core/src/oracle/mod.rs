//! Objective instances and the query-counting value oracle.

mod gram;
mod graphs;
mod io;
mod maxcut;
mod modular;

use std::cell::Cell;

pub use gram::{log_det_plus_one, GramInstance};
pub use graphs::{gen_graph, GraphModel};
pub use io::{read_edge_list, read_gram_csv, read_matrix_csv, write_edge_list};
pub use maxcut::MaxCutInstance;
pub use modular::ModularInstance;

use crate::element::{ElementId, ElementSet};
use crate::error::{Error, Result};

/// A nonnegative set function over the real elements `0..ground_size()`.
///
/// `set` arguments are always sorted, duplicate-free and free of dummies.
/// Implementations must be pure: the same set yields the same value.
pub trait Objective: Send + Sync {
    fn ground_size(&self) -> usize;

    fn value(&self, set: &[ElementId]) -> f64;

    /// `f(set + x)` given `set_value = f(set)`, with `x` not in `set`.
    fn value_with(&self, set: &[ElementId], x: ElementId, set_value: f64) -> f64 {
        let _ = set_value;
        let mut v = Vec::with_capacity(set.len() + 1);
        let pos = set.partition_point(|e| *e < x);
        v.extend_from_slice(&set[..pos]);
        v.push(x);
        v.extend_from_slice(&set[pos..]);
        self.value(&v)
    }

    /// `f(set - x)` given `set_value = f(set)`, with `x` in `set`.
    fn value_without(&self, set: &[ElementId], x: ElementId, set_value: f64) -> f64 {
        let _ = set_value;
        let v: Vec<ElementId> = set.iter().copied().filter(|e| *e != x).collect();
        self.value(&v)
    }

    /// Short identifier written to run metadata.
    fn kind(&self) -> &'static str;
}

/// Value oracle that counts every evaluation.
///
/// The ground set is extended with `dummies` null elements carrying ids
/// `n..n + dummies`; they are stripped before the objective sees a set.
/// Each call of [`eval`](Self::eval), [`value`](Self::value),
/// [`value_with`](Self::value_with) or [`value_without`](Self::value_without)
/// on a set with real members costs exactly one query. Gains of dummies are
/// zero and free.
pub struct CountedOracle<'a> {
    objective: &'a dyn Objective,
    n: usize,
    dummies: usize,
    queries: Cell<u64>,
}

impl<'a> CountedOracle<'a> {
    pub fn new(objective: &'a dyn Objective, dummies: usize) -> Self {
        Self {
            objective,
            n: objective.ground_size(),
            dummies,
            queries: Cell::new(0),
        }
    }

    /// Number of real elements.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dummy_count(&self) -> usize {
        self.dummies
    }

    pub fn objective(&self) -> &'a dyn Objective {
        self.objective
    }

    pub fn queries(&self) -> u64 {
        self.queries.get()
    }

    pub fn reset_queries(&self) {
        self.queries.set(0);
    }

    pub fn real_elements(&self) -> impl Iterator<Item = ElementId> {
        (0..self.n).map(ElementId)
    }

    pub fn is_dummy(&self, x: ElementId) -> bool {
        x.0 >= self.n
    }

    fn check(&self, s: &ElementSet) -> Result<()> {
        match s.max_id() {
            Some(id) if id.0 >= self.n + self.dummies => Err(Error::input(format!(
                "element {} outside extended ground set of size {}",
                id,
                self.n + self.dummies
            ))),
            _ => Ok(()),
        }
    }

    fn check_id(&self, x: ElementId) -> Result<()> {
        if x.0 >= self.n + self.dummies {
            return Err(Error::input(format!(
                "element {} outside extended ground set of size {}",
                x,
                self.n + self.dummies
            )));
        }
        Ok(())
    }

    #[inline]
    fn tick(&self) {
        self.queries.set(self.queries.get() + 1);
    }

    /// `f(S)` with dummies stripped; one query.
    pub fn eval(&self, s: &ElementSet) -> Result<f64> {
        self.check(s)?;
        Ok(self.value(s))
    }

    /// `f(S + x) - f(S)`; two queries, or one when `S` carries a cached value.
    pub fn gain(&self, x: ElementId, s: &ElementSet) -> Result<f64> {
        self.check(s)?;
        self.check_id(x)?;
        if self.is_dummy(x) || s.contains(x) {
            return Ok(0.0);
        }
        let fs = match s.cached_value() {
            Some(v) => v,
            None => self.value(s),
        };
        Ok(self.value_with(s, x, fs) - fs)
    }

    /// Unchecked evaluation; ids must lie in the extended ground set.
    pub fn value(&self, s: &ElementSet) -> f64 {
        self.tick();
        self.objective.value(s.real_ids(self.n))
    }

    /// Returns the cached value of `s`, evaluating and caching it if absent.
    pub fn value_cached(&self, s: &mut ElementSet) -> f64 {
        match s.cached_value() {
            Some(v) => v,
            None => {
                let v = self.value(s);
                s.set_cached_value(v);
                v
            }
        }
    }

    /// `f(S + x)` given `fs = f(S)`. Free when `x` is a dummy or already in `S`.
    pub fn value_with(&self, s: &ElementSet, x: ElementId, fs: f64) -> f64 {
        if self.is_dummy(x) || s.contains(x) {
            return fs;
        }
        self.tick();
        self.objective.value_with(s.real_ids(self.n), x, fs)
    }

    /// `f(S - x)` given `fs = f(S)`. Free when `x` is a dummy or not in `S`.
    pub fn value_without(&self, s: &ElementSet, x: ElementId, fs: f64) -> f64 {
        if self.is_dummy(x) || !s.contains(x) {
            return fs;
        }
        self.tick();
        self.objective.value_without(s.real_ids(self.n), x, fs)
    }

    /// `Δ(x | S) = f(S + x) - f(S)` given `fs = f(S)`.
    pub fn marginal(&self, x: ElementId, s: &ElementSet, fs: f64) -> f64 {
        self.value_with(s, x, fs) - fs
    }

    /// `Δ(x | S - x) = f(S) - f(S - x)` given `fs = f(S)`.
    pub fn contribution(&self, x: ElementId, s: &ElementSet, fs: f64) -> f64 {
        fs - self.value_without(s, x, fs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> MaxCutInstance {
        MaxCutInstance::unit(3, &[(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn eval_examples() {
        let g = triangle();
        let o = CountedOracle::new(&g, 0);
        assert_eq!(o.eval(&ElementSet::new()).unwrap(), 0.0);
        assert_eq!(o.eval(&ElementSet::from_ids([0usize])).unwrap(), 2.0);
        assert_eq!(o.queries(), 2);

        let x = GramInstance::new(1, vec![1.0]).unwrap();
        let o = CountedOracle::new(&x, 0);
        let v = o.eval(&ElementSet::from_ids([0usize])).unwrap();
        assert!((v - 2f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn eval_rejects_out_of_range() {
        let g = triangle();
        let o = CountedOracle::new(&g, 2);
        assert!(o.eval(&ElementSet::from_ids([4usize])).is_ok());
        assert!(matches!(
            o.eval(&ElementSet::from_ids([5usize])),
            Err(Error::Input(_))
        ));
        assert!(o.gain(ElementId(7), &ElementSet::new()).is_err());
    }

    #[test]
    fn gain_examples_and_costs() {
        let g = triangle();
        let o = CountedOracle::new(&g, 3);
        let s = ElementSet::from_ids([0usize, 1]);
        assert_eq!(o.gain(ElementId(2), &s).unwrap(), -2.0);
        assert_eq!(o.queries(), 2);
        let cached = s.clone().with_value(2.0);
        assert_eq!(o.gain(ElementId(2), &cached).unwrap(), -2.0);
        assert_eq!(o.queries(), 3);
        // dummy gain is zero and free
        assert_eq!(o.gain(ElementId(4), &s).unwrap(), 0.0);
        assert_eq!(o.queries(), 3);

        let m = ModularInstance::new(vec![5.0, 4.0, 3.0]).unwrap();
        let o = CountedOracle::new(&m, 0);
        assert_eq!(o.gain(ElementId(1), &ElementSet::from_ids([0usize])).unwrap(), 4.0);
    }

    #[test]
    fn dummies_are_stripped() {
        let g = triangle();
        let o = CountedOracle::new(&g, 2);
        let a = o.eval(&ElementSet::from_ids([0usize, 3, 4])).unwrap();
        let b = o.eval(&ElementSet::from_ids([0usize])).unwrap();
        assert_eq!(a, b);
    }
}
