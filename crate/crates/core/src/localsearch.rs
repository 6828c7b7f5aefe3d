//! Swap local search producing guidance sets, and the prune subroutine.
//!
//! [`fast_local_search`] keeps a basis `Z` (padded with dummies) and repeatedly
//! performs the best swap `Z - a + e` whose estimated improvement
//! `Δ(e | Z) - Δ(a | Z - a)` is at least `(ε/k)·f(Z)`. Each executed swap
//! multiplies `f(Z)` by at least `1 + ε/k`, so the number of rounds is
//! logarithmic in the approximation ratio of the warm start.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::io::Write;

use crate::constraint::{pad_with_dummies, ExtendedMatroid, Independence};
use crate::element::{ElementId, ElementSet};
use crate::error::{Error, Result};
use crate::oracle::CountedOracle;

/// One executed swap: `removed` left the solution, `added` entered it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SwapEvent {
    pub removed: ElementId,
    pub added: ElementId,
    pub value_before: f64,
    pub value_after: f64,
}

#[derive(Clone, Debug)]
pub struct LocalSearchOutcome {
    /// Final solution with dummies stripped; carries its cached value.
    pub solution: ElementSet,
    pub swaps: Vec<SwapEvent>,
}

impl LocalSearchOutcome {
    pub fn value(&self) -> f64 {
        self.solution.cached_value().unwrap_or(0.0)
    }
}

/// Writes a swap log as CSV with header `step,removed,added,value`.
pub fn write_swap_log<W: Write>(swaps: &[SwapEvent], mut out: W) -> Result<()> {
    writeln!(out, "step,removed,added,value")?;
    for (i, s) in swaps.iter().enumerate() {
        writeln!(out, "{},{},{},{}", i + 1, s.removed, s.added, s.value_after)?;
    }
    Ok(())
}

#[derive(Clone, Copy, Debug)]
struct PairCandidate {
    score: f64,
    a_rank: usize,
    e_rank: usize,
    a: ElementId,
    e: ElementId,
}

impl PartialEq for PairCandidate {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for PairCandidate {}

impl PartialOrd for PairCandidate {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PairCandidate {
    // max-heap order: larger score first, then smaller (a, e)
    fn cmp(&self, other: &Self) -> Ordering {
        self.score
            .total_cmp(&other.score)
            .then_with(|| other.a.cmp(&self.a))
            .then_with(|| other.e.cmp(&self.e))
    }
}

/// Best-swap local search over `ground` (real elements) starting from `z0`.
pub fn fast_local_search(
    oracle: &CountedOracle,
    matroid: &ExtendedMatroid,
    ground: &ElementSet,
    z0: &ElementSet,
    eps: f64,
) -> Result<LocalSearchOutcome> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::input(format!("eps must be positive, got {eps}")));
    }
    let n = matroid.n();
    let k = matroid.k();
    let start = z0.strip_dummies(n);
    if !matroid.feasible(&start) {
        return Err(Error::input("initial solution is not independent"));
    }
    if ground.real_len(n) != ground.len() {
        return Err(Error::input("local-search ground set must contain only real elements"));
    }
    let mut z = pad_with_dummies(&start, n, k)?;
    z.set_cached_value(oracle.value(&z));
    let f0 = z.cached_value().unwrap();
    if f0 <= 0.0 {
        return Err(Error::input(format!(
            "initial solution must have positive value, got {f0}"
        )));
    }

    let mut swaps = Vec::new();
    loop {
        let fz = z.cached_value().expect("cached");
        let threshold = eps / k as f64 * fz;

        // Δ(a | Z - a) for each member; dummies contribute nothing.
        let mut losses: Vec<(f64, ElementId)> = z
            .iter()
            .map(|a| (oracle.contribution(a, &z, fz), a))
            .collect();
        losses.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)));

        // Δ(e | Z) for candidate entries; one spare dummy stands for all of them.
        let mut gains: Vec<(f64, ElementId)> = ground
            .iter()
            .filter(|e| !z.contains(*e))
            .map(|e| (oracle.marginal(e, &z, fz), e))
            .collect();
        if let Some(d) = matroid.dummy_ids().find(|d| !z.contains(*d)) {
            gains.push((0.0, d));
        }
        gains.sort_by(|x, y| y.0.total_cmp(&x.0).then(x.1.cmp(&y.1)));
        if gains.is_empty() || losses.is_empty() {
            break;
        }

        let mut heap: BinaryHeap<PairCandidate> = losses
            .iter()
            .enumerate()
            .map(|(ai, &(loss, a))| PairCandidate {
                score: gains[0].0 - loss,
                a_rank: ai,
                e_rank: 0,
                a,
                e: gains[0].1,
            })
            .collect();

        let mut chosen = None;
        while let Some(c) = heap.pop() {
            if c.score < threshold {
                break;
            }
            let candidate = z.swapped(c.a, c.e);
            if matroid.independent(&candidate) {
                chosen = Some((c, candidate));
                break;
            }
            if c.e_rank + 1 < gains.len() {
                let (g, e) = gains[c.e_rank + 1];
                heap.push(PairCandidate {
                    score: g - losses[c.a_rank].0,
                    e_rank: c.e_rank + 1,
                    e,
                    ..c
                });
            }
        }
        let Some((c, mut next)) = chosen else {
            break;
        };
        let value_after = oracle.value(&next);
        next.set_cached_value(value_after);
        swaps.push(SwapEvent {
            removed: c.a,
            added: c.e,
            value_before: fz,
            value_after,
        });
        z = next;
    }
    Ok(LocalSearchOutcome {
        solution: z.strip_dummies(n),
        swaps,
    })
}

/// Exhaustively checks `f(S ∪ Z) + f(S ∩ Z) ≤ (2 + ε)·f(Z) + 1e-7` for every
/// independent set `S` of real elements.
///
/// Fails with a resource error when more than `limit` subsets would be enumerated.
pub fn certify_local_optimum(
    oracle: &CountedOracle,
    matroid: &ExtendedMatroid,
    z: &ElementSet,
    eps: f64,
    limit: u64,
) -> Result<bool> {
    let n = matroid.n();
    let k = matroid.k();
    let count = subsets_up_to(n, k);
    if count > limit {
        return Err(Error::resource(format!(
            "certificate needs {count} subsets, limit is {limit}"
        )));
    }
    let z = z.strip_dummies(n);
    let fz = oracle.value(&z);
    let bound = (2.0 + eps) * fz + 1e-7;
    let mut ok = true;
    for_each_subset(n, k, |s| {
        if !ok || !matroid.base().independent(s) {
            return;
        }
        let lhs = oracle.value(&s.union(&z)) + oracle.value(&s.intersection(&z));
        if lhs > bound {
            ok = false;
        }
    });
    Ok(ok)
}

/// `Σ_{i ≤ k} C(n, i)`, saturating.
pub fn subsets_up_to(n: usize, k: usize) -> u64 {
    let mut total: u64 = 0;
    let mut c: u64 = 1;
    for i in 0..=k.min(n) {
        total = total.saturating_add(c);
        c = c.saturating_mul((n - i) as u64) / (i as u64 + 1);
    }
    total
}

/// Calls `visit` on every subset of `0..n` with at most `k` elements, in
/// lexicographic order of their sorted member lists.
pub fn for_each_subset(n: usize, k: usize, mut visit: impl FnMut(&ElementSet)) {
    fn rec(
        next: usize,
        n: usize,
        k: usize,
        cur: &mut Vec<usize>,
        visit: &mut dyn FnMut(&ElementSet),
    ) {
        visit(&ElementSet::from_ids(cur.iter().copied()));
        if cur.len() == k {
            return;
        }
        for x in next..n {
            cur.push(x);
            rec(x + 1, n, k, cur, visit);
            cur.pop();
        }
    }
    rec(0, n, k, &mut Vec::new(), &mut visit);
}

/// The quantities behind an `(α, β)`-guidance set check against a known optimum `O`.
#[derive(Clone, Copy, Debug)]
pub struct GuidanceCertificate {
    pub alpha: f64,
    pub beta: f64,
    pub epsilon: f64,
    pub f_o: f64,
    pub f_z: f64,
    pub f_o_cap_z: f64,
    pub f_o_cup_z: f64,
}

impl GuidanceCertificate {
    pub fn evaluate(
        oracle: &CountedOracle,
        z: &ElementSet,
        optimum: &ElementSet,
        alpha: f64,
        beta: f64,
        epsilon: f64,
    ) -> Self {
        Self {
            alpha,
            beta,
            epsilon,
            f_o: oracle.value(optimum),
            f_z: oracle.value(z),
            f_o_cap_z: oracle.value(&optimum.intersection(z)),
            f_o_cup_z: oracle.value(&optimum.union(z)),
        }
    }

    fn slack(&self) -> f64 {
        crate::tol(self.f_o, 0.0)
    }

    /// `f(Z) < α·f(O)`
    pub fn value_condition(&self) -> bool {
        self.f_z < self.alpha * self.f_o
    }

    /// `f(O ∩ Z) ≤ α·f(O)`
    pub fn intersection_condition(&self) -> bool {
        self.f_o_cap_z <= self.alpha * self.f_o + self.slack()
    }

    /// `f(O ∪ Z) ≤ β·f(O)`
    pub fn union_condition(&self) -> bool {
        self.f_o_cup_z <= self.beta * self.f_o + self.slack()
    }

    /// `f(O ∩ Z) + f(O ∪ Z) ≤ (α + β)·f(O)`
    pub fn combined_condition(&self) -> bool {
        self.f_o_cap_z + self.f_o_cup_z <= (self.alpha + self.beta) * self.f_o + self.slack()
    }

    /// Conditions 1 and 2, plus condition 3 or its combined alternative.
    pub fn is_guidance_set(&self) -> bool {
        self.value_condition()
            && self.intersection_condition()
            && (self.union_condition() || self.combined_condition())
    }
}

/// Two local searches, the second restricted to elements outside the first
/// result; returns the better of the two (the first on ties).
///
/// The second pass starts from `z0` minus the first result when that still
/// has positive value, and otherwise from a greedy basis over the restricted
/// ground set.
pub fn fastls_quarter(
    oracle: &CountedOracle,
    matroid: &ExtendedMatroid,
    z0: &ElementSet,
    eps: f64,
) -> Result<ElementSet> {
    let n = matroid.n();
    let full = ElementSet::from_ids(0..n);
    let first = fast_local_search(oracle, matroid, &full, z0, eps)?.solution;
    let ground2 = full.difference(&first);

    let mut start = z0.strip_dummies(n).difference(&first);
    let mut f_start = oracle.value(&start);
    if f_start <= 0.0 {
        start = crate::greedy::standard_greedy_matroid(oracle, matroid, &ground2);
        f_start = oracle.value_cached(&mut start);
    }
    if f_start <= 0.0 {
        return Ok(first);
    }
    let second = fast_local_search(oracle, matroid, &ground2, &start, eps)?.solution;
    let (f1, f2) = (first.cached_value().unwrap(), second.cached_value().unwrap());
    Ok(if f2 > f1 { second } else { first })
}

/// Single pass over a snapshot of `a` in ascending id order, deleting each
/// element whose marginal contribution to the current set is negative.
pub fn prune(oracle: &CountedOracle, a: &ElementSet) -> ElementSet {
    let mut current = a.strip_dummies(oracle.n());
    let mut fcur = oracle.value_cached(&mut current);
    let snapshot: Vec<ElementId> = current.iter().collect();
    for x in snapshot {
        let without = oracle.value_without(&current, x, fcur);
        if fcur - without < 0.0 {
            current.remove(x);
            fcur = without;
            current.set_cached_value(fcur);
        }
    }
    current
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constraint::{PartitionMatroid, UniformMatroid};
    use crate::oracle::{MaxCutInstance, ModularInstance};

    fn set(ids: &[usize]) -> ElementSet {
        ElementSet::from_ids(ids.iter().copied())
    }

    #[test]
    fn modular_climbs_to_top_pair() {
        let f = ModularInstance::new(vec![5.0, 4.0, 3.0, 2.0, 1.0]).unwrap();
        let u = UniformMatroid::new(5, 2);
        let m = ExtendedMatroid::new(&u).unwrap();
        let o = CountedOracle::new(&f, 2);
        let out = fast_local_search(&o, &m, &set(&[0, 1, 2, 3, 4]), &set(&[3, 4]), 0.01).unwrap();
        assert_eq!(out.solution, set(&[0, 1]));
        assert_eq!(out.value(), 9.0);
        // best swap first: 4 (loss 1) out, 0 (gain 5) in; then 3 out, 1 in
        assert_eq!(out.swaps.len(), 2);
        assert_eq!((out.swaps[0].removed, out.swaps[0].added), (ElementId(4), ElementId(0)));
    }

    #[test]
    fn optimum_start_makes_no_swaps() {
        let f = ModularInstance::new(vec![5.0, 4.0, 3.0]).unwrap();
        let u = UniformMatroid::new(3, 2);
        let m = ExtendedMatroid::new(&u).unwrap();
        let o = CountedOracle::new(&f, 2);
        let out = fast_local_search(&o, &m, &set(&[0, 1, 2]), &set(&[0, 1]), 0.1).unwrap();
        assert!(out.swaps.is_empty());
        assert_eq!(out.solution, set(&[0, 1]));
    }

    #[test]
    fn path_graph_estimate_blocks_swap() {
        // Δ(2|{0}) - Δ(0|∅) = 1 - 1 = 0 and Δ(1|{0}) - 1 = -1: no pair reaches 0.1
        let g = MaxCutInstance::unit(3, &[(0, 1), (1, 2)]).unwrap();
        let u = UniformMatroid::new(3, 1);
        let m = ExtendedMatroid::new(&u).unwrap();
        let o = CountedOracle::new(&g, 1);
        let out = fast_local_search(&o, &m, &set(&[0, 1, 2]), &set(&[0]), 0.1).unwrap();
        assert_eq!(out.solution, set(&[0]));
        assert!(out.swaps.is_empty());
        assert!(certify_local_optimum(&o, &m, &out.solution, 0.1, 100).unwrap());
        // from a dummy-padded start with more room the optimum is reached
        let u2 = UniformMatroid::new(3, 2);
        let m2 = ExtendedMatroid::new(&u2).unwrap();
        let o2 = CountedOracle::new(&g, 2);
        let out = fast_local_search(&o2, &m2, &set(&[0, 1, 2]), &set(&[0]), 0.1).unwrap();
        assert_eq!(out.value(), 2.0);
    }

    #[test]
    fn zero_value_start_is_rejected() {
        let g = MaxCutInstance::unit(3, &[(0, 1)]).unwrap();
        let u = UniformMatroid::new(3, 1);
        let m = ExtendedMatroid::new(&u).unwrap();
        let o = CountedOracle::new(&g, 1);
        assert!(matches!(
            fast_local_search(&o, &m, &set(&[0, 1, 2]), &set(&[2]), 0.1),
            Err(Error::Input(_))
        ));
        assert!(fast_local_search(&o, &m, &set(&[0, 1, 2]), &set(&[0]), 0.0).is_err());
    }

    #[test]
    fn harmful_members_are_swapped_for_dummies() {
        // triangle with k = 3: {0,1,2} has value 0 after adding; start {0,1} (value 2)
        let g = MaxCutInstance::unit(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
        let u = UniformMatroid::new(4, 3);
        let m = ExtendedMatroid::new(&u).unwrap();
        let o = CountedOracle::new(&g, 3);
        let out = fast_local_search(&o, &m, &set(&[0, 1, 2, 3]), &set(&[0, 1, 2]), 0.1).unwrap();
        assert!(out.value() >= 3.0);
        assert!(certify_local_optimum(&o, &m, &out.solution, 0.1, 10_000).unwrap());
    }

    #[test]
    fn matroid_swaps_respect_blocks() {
        let f = ModularInstance::new(vec![1.0, 9.0, 2.0, 8.0]).unwrap();
        let p = PartitionMatroid::from_blocks(4, &[vec![0, 1], vec![2, 3]], vec![1, 1]).unwrap();
        let m = ExtendedMatroid::new(&p).unwrap();
        let o = CountedOracle::new(&f, 2);
        let out = fast_local_search(&o, &m, &set(&[0, 1, 2, 3]), &set(&[0, 2]), 0.1).unwrap();
        assert_eq!(out.solution, set(&[1, 3]));
    }

    #[test]
    fn certificate_examples() {
        let f = ModularInstance::new(vec![10.0, 1.0]).unwrap();
        let u = UniformMatroid::new(2, 1);
        let m = ExtendedMatroid::new(&u).unwrap();
        let o = CountedOracle::new(&f, 1);
        assert!(certify_local_optimum(&o, &m, &set(&[0]), 0.1, 100).unwrap());
        assert!(!certify_local_optimum(&o, &m, &set(&[1]), 0.1, 100).unwrap());
        assert!(matches!(
            certify_local_optimum(&o, &m, &set(&[0]), 0.1, 2),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn subset_counts() {
        assert_eq!(subsets_up_to(4, 2), 1 + 4 + 6);
        assert_eq!(subsets_up_to(3, 5), 8);
        let mut seen = Vec::new();
        for_each_subset(3, 2, |s| seen.push(s.indices()));
        assert_eq!(seen.len(), 7);
        assert_eq!(seen[0], Vec::<usize>::new());
        assert_eq!(seen[1], vec![0]);
        assert_eq!(seen[2], vec![0, 1]);
    }

    #[test]
    fn quarter_on_modular_and_four_cycle() {
        let f = ModularInstance::new(vec![5.0, 4.0, 3.0, 2.0]).unwrap();
        let u = UniformMatroid::new(4, 2);
        let m = ExtendedMatroid::new(&u).unwrap();
        let o = CountedOracle::new(&f, 2);
        assert_eq!(fastls_quarter(&o, &m, &set(&[2, 3]), 0.05).unwrap(), set(&[0, 1]));

        let c4 = MaxCutInstance::unit(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let o = CountedOracle::new(&c4, 2);
        let z = fastls_quarter(&o, &m, &set(&[0]), 0.05).unwrap();
        assert_eq!(o.value(&z), 4.0);
    }

    #[test]
    fn prune_examples() {
        let g = MaxCutInstance::unit(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let o = CountedOracle::new(&g, 0);
        let p = prune(&o, &set(&[0, 1, 2]));
        assert_eq!(p, set(&[1, 2]));
        assert_eq!(p.cached_value(), Some(2.0));
        assert_eq!(prune(&o, &set(&[])), set(&[]));

        let f = ModularInstance::new(vec![1.0, 0.0, 2.0]).unwrap();
        let o = CountedOracle::new(&f, 0);
        assert_eq!(prune(&o, &set(&[0, 1, 2])), set(&[0, 1, 2]));
    }

    #[test]
    fn swap_log_csv() {
        let swaps = [SwapEvent {
            removed: ElementId(3),
            added: ElementId(0),
            value_before: 1.0,
            value_after: 2.5,
        }];
        let mut buf = Vec::new();
        write_swap_log(&swaps, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "step,removed,added,value\n1,3,0,2.5\n");
    }
}
