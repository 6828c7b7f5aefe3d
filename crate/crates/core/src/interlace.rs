//! Guided interlaced greedy subroutines.
//!
//! Under a size constraint the dummy elements are never materialised: a dummy
//! pick leaves the set unchanged but still consumes one unit of budget, and a
//! real element wins every tie against a dummy at gain 0. Matroid candidates
//! are bases of the extended matroid and may contain dummy ids.

use crate::constraint::{partition_exchange, ExtendedMatroid, Independence};
use crate::element::{ElementId, ElementSet};
use crate::error::{Error, Result};
use crate::oracle::CountedOracle;

/// Which branch of a subroutine produced a candidate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BranchLabel {
    /// Branch `u ∈ 0..=ℓ`, set `i ∈ 1..=ℓ`.
    Interlaced { u: usize, i: usize },
    /// Bucket `j ∈ 1..=ℓ` of the matroid subroutine.
    Bucket { j: usize },
}

/// Candidate sets in `(u, i)` or `j` order. Each set carries its cached value.
#[derive(Clone, Debug, Default)]
pub struct CandidateFamily {
    pub sets: Vec<ElementSet>,
    pub labels: Vec<BranchLabel>,
}

impl CandidateFamily {
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    fn push(&mut self, set: ElementSet, label: BranchLabel) {
        self.sets.push(set);
        self.labels.push(label);
    }

    /// Index of the first candidate of maximum cached value.
    pub fn best_index(&self) -> Option<usize> {
        let mut best: Option<(usize, f64)> = None;
        for (i, s) in self.sets.iter().enumerate() {
            let v = s.cached_value().unwrap_or(f64::NEG_INFINITY);
            if best.is_none_or(|(_, bv)| v > bv) {
                best = Some((i, v));
            }
        }
        best.map(|b| b.0)
    }
}

/// `ℓ = ⌈10 / (9ε)⌉`, robust to `10/(9ε)` landing a hair above an integer.
pub fn ell_for_eps(eps: f64) -> Result<usize> {
    ceil_ratio(10.0 / (9.0 * eps), eps)
}

pub fn ceil_ratio(x: f64, eps: f64) -> Result<usize> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::input(format!("eps must lie in (0, 1), got {eps}")));
    }
    Ok(((x - 1e-9).ceil() as usize).max(1))
}

/// Per-round budgets summing to `k`: `⌈k/ℓ⌉` for the first `k mod ℓ` rounds, then `⌊k/ℓ⌋`.
pub fn round_budgets(k: usize, ell: usize) -> Vec<usize> {
    assert!(ell > 0, "ell must be positive");
    let (q, r) = (k / ell, k % ell);
    (0..ell).map(|i| q + usize::from(i < r)).collect()
}

// Anchors: the top-ℓ real elements of U \ (G ∪ Z) by gain on G with gain ≥ 0;
// missing slots are dummies (`None`, gain 0).
fn anchors(
    oracle: &CountedOracle,
    g: &ElementSet,
    fg: f64,
    z: &ElementSet,
    ell: usize,
) -> Vec<(Option<ElementId>, f64)> {
    let mut cand: Vec<(f64, ElementId)> = oracle
        .real_elements()
        .filter(|x| !g.contains(*x) && !z.contains(*x))
        .map(|x| (oracle.marginal(x, g, fg), x))
        .filter(|(gain, _)| *gain >= 0.0)
        .collect();
    crate::constraint::rank_by_gain(&mut cand);
    let mut out: Vec<(Option<ElementId>, f64)> =
        cand.into_iter().take(ell).map(|(gain, x)| (Some(x), gain)).collect();
    out.resize(ell, (None, 0.0));
    out
}

fn seeded_set(g: &ElementSet, fg: f64, anchor: (Option<ElementId>, f64)) -> ElementSet {
    match anchor.0 {
        Some(a) => g.with(a).with_value(fg + anchor.1),
        None => g.clone().with_value(fg),
    }
}

fn validate_size_inputs(oracle: &CountedOracle, g: &ElementSet, ell: usize, budget: usize) -> Result<()> {
    if ell == 0 {
        return Err(Error::input("ell must be at least 1"));
    }
    if budget == 0 {
        return Err(Error::input("per-round budget must be at least 1"));
    }
    if g.max_id().is_some_and(|m| m.0 >= oracle.n()) {
        return Err(Error::input("starting set must contain only real elements"));
    }
    Ok(())
}

/// GuidedIG-S: `ℓ + 1` interlaced branches of `ℓ` sets, each set growing by
/// `budget` elements (the anchor included) from `G`, never using `Z`.
pub fn guided_ig_size(
    oracle: &CountedOracle,
    z: &ElementSet,
    g: &ElementSet,
    ell: usize,
    budget: usize,
) -> Result<CandidateFamily> {
    validate_size_inputs(oracle, g, ell, budget)?;
    let n = oracle.n();
    let z = z.strip_dummies(n);
    let mut g = g.clone();
    let fg = oracle.value_cached(&mut g);
    let anchor = anchors(oracle, &g, fg, &z, ell);

    let mut family = CandidateFamily::default();
    for u in 0..=ell {
        let mut sets: Vec<ElementSet> = (0..ell)
            .map(|l| seeded_set(&g, fg, if u == 0 { anchor[l] } else { anchor[u - 1] }))
            .collect();
        let mut claimed = sets.iter().fold(z.clone(), |acc, s| acc.union(s));
        for _ in 1..budget {
            for set in sets.iter_mut() {
                let fs = set.cached_value().expect("cached");
                let mut best: Option<(f64, ElementId)> = None;
                for x in oracle.real_elements().filter(|x| !claimed.contains(*x)) {
                    let gain = oracle.marginal(x, set, fs);
                    if best.is_none_or(|(bg, _)| gain > bg) {
                        best = Some((gain, x));
                    }
                }
                if let Some((gain, x)) = best.filter(|b| b.0 >= 0.0) {
                    set.insert(x);
                    set.set_cached_value(fs + gain);
                    claimed.insert(x);
                }
            }
        }
        for (i, s) in sets.into_iter().enumerate() {
            family.push(s, BranchLabel::Interlaced { u, i: i + 1 });
        }
    }
    Ok(family)
}

/// ADD: scans `pool` in ascending id at threshold `τ` and adopts the first
/// element whose gain reaches it; after a full unsuccessful pass `τ` decays by
/// `1 − ε`. Returns once an element is adopted or `τ < τ_min`.
pub fn threshold_add(
    oracle: &CountedOracle,
    pool: &[ElementId],
    a: &ElementSet,
    eps: f64,
    tau: f64,
    tau_min: f64,
) -> (ElementSet, f64) {
    let (a, tau, _) = threshold_add_from(oracle, pool, a, eps, tau, tau_min, ElementId(0));
    (a, tau)
}

// ADD whose first pass at `tau` starts at id `resume`. Pool elements below
// `resume` were rejected at `tau` against a subset of `a`, so under
// submodularity skipping them leaves the adopted element unchanged. The
// returned id is the cursor for the next call at the returned threshold.
fn threshold_add_from(
    oracle: &CountedOracle,
    pool: &[ElementId],
    a: &ElementSet,
    eps: f64,
    tau: f64,
    tau_min: f64,
    resume: ElementId,
) -> (ElementSet, f64, ElementId) {
    let mut a = a.clone();
    let fa = oracle.value_cached(&mut a);
    let mut tau = tau;
    let mut start = pool.partition_point(|x| *x < resume);
    while tau >= tau_min && tau > 0.0 {
        for &x in &pool[start..] {
            let gain = oracle.marginal(x, &a, fa);
            if gain >= tau {
                let mut next = a.with(x);
                next.set_cached_value(fa + gain);
                return (next, tau, x);
            }
        }
        tau *= 1.0 - eps;
        start = 0;
    }
    (a, tau, ElementId(0))
}

/// Threshold state of one interlaced branch.
#[derive(Clone, Debug, PartialEq)]
pub struct ThresholdState {
    /// Anchor gain the thresholds start from.
    pub m: f64,
    pub tau_min: f64,
    pub tau: Vec<f64>,
    pub active: Vec<bool>,
    /// Per-set scan position at the current threshold.
    pub cursor: Vec<ElementId>,
}

impl ThresholdState {
    fn new(m: f64, eps: f64, k: usize, ell: usize) -> Self {
        // a non-positive anchor gain leaves no admissible threshold
        let live = m > 0.0;
        Self {
            m,
            tau_min: eps * m / k as f64,
            tau: vec![m; ell],
            active: vec![live; ell],
            cursor: vec![ElementId(0); ell],
        }
    }
}

/// ThreshGuidedIG: the branch structure of [`guided_ig_size`] with each set
/// grown by [`threshold_add`] until it holds `budget` elements beyond `G` or
/// its threshold drops below `ε·M/k`.
pub fn thresh_guided_ig(
    oracle: &CountedOracle,
    k: usize,
    z: &ElementSet,
    g: &ElementSet,
    ell: usize,
    budget: usize,
    eps: f64,
) -> Result<CandidateFamily> {
    validate_size_inputs(oracle, g, ell, budget)?;
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::input(format!("eps must lie in (0, 1), got {eps}")));
    }
    if k == 0 {
        return Err(Error::input("k must be at least 1"));
    }
    let n = oracle.n();
    let z = z.strip_dummies(n);
    let mut g = g.clone();
    let fg = oracle.value_cached(&mut g);
    let anchor = anchors(oracle, &g, fg, &z, ell);

    let mut family = CandidateFamily::default();
    for u in 0..=ell {
        let (m, mut sets): (f64, Vec<ElementSet>) = if u == 0 {
            (anchor[ell - 1].1, anchor.iter().map(|&a| seeded_set(&g, fg, a)).collect())
        } else {
            (anchor[u - 1].1, vec![seeded_set(&g, fg, anchor[u - 1]); ell])
        };
        let mut state = ThresholdState::new(m, eps, k, ell);
        // each set starts with its anchor counted against the budget
        let mut added = vec![1usize; ell];
        if budget <= 1 {
            state.active.fill(false);
        }
        while state.active.iter().any(|&b| b) {
            for i in 0..ell {
                if !state.active[i] {
                    continue;
                }
                let claimed = sets.iter().fold(z.clone(), |acc, s| acc.union(s));
                let pool: Vec<ElementId> =
                    oracle.real_elements().filter(|x| !claimed.contains(*x)).collect();
                let before = sets[i].len();
                let (next, tau, cursor) = threshold_add_from(
                    oracle,
                    &pool,
                    &sets[i],
                    eps,
                    state.tau[i],
                    state.tau_min,
                    state.cursor[i],
                );
                state.cursor[i] = cursor;
                if next.len() > before {
                    added[i] += 1;
                }
                sets[i] = next;
                state.tau[i] = tau;
                if added[i] >= budget || tau < state.tau_min {
                    state.active[i] = false;
                }
            }
        }
        for (i, s) in sets.into_iter().enumerate() {
            family.push(s, BranchLabel::Interlaced { u, i: i + 1 });
        }
    }
    Ok(family)
}

/// GuidedIG-M: grows one independent set `A` of size `k` over `ℓ` buckets,
/// each round adding the `(bucket, element)` pair of largest gain
/// `Δ(x | G ∪ A_j)`; then exchanges each bucket into `G` along a block
/// exchange so that every output is a basis.
///
/// Ties prefer the bucket with fewer elements, then the smaller bucket index,
/// then the smaller element id. When `U \ (G ∪ A ∪ Z)` has no element that
/// keeps `A` independent, elements of `Z` are admitted for that round.
pub fn guided_ig_matroid(
    oracle: &CountedOracle,
    matroid: &ExtendedMatroid,
    z: &ElementSet,
    g: &ElementSet,
    ell: usize,
) -> Result<CandidateFamily> {
    if ell == 0 {
        return Err(Error::input("ell must be at least 1"));
    }
    if !matroid.is_basis(g) {
        return Err(Error::input("starting set must be a basis of the extended matroid"));
    }
    let n = matroid.n();
    let k = matroid.k();
    let z = z.strip_dummies(n);
    let mut g = g.clone();
    let fg = oracle.value_cached(&mut g);

    // gains[j][x]: Δ(x | G ∪ A_j), refreshed only for the bucket that changed
    let extended: Vec<ElementId> = (0..n + k).map(ElementId).collect();
    let mut buckets: Vec<ElementSet> = vec![ElementSet::new(); ell];
    let mut bases: Vec<ElementSet> = vec![g.clone().with_value(fg); ell];
    let gain_row = |base: &ElementSet| -> Vec<f64> {
        let fb = base.cached_value().expect("cached");
        extended
            .iter()
            .map(|&x| if g.contains(x) { f64::NEG_INFINITY } else { oracle.marginal(x, base, fb) })
            .collect()
    };
    let mut gains: Vec<Vec<f64>> = Vec::with_capacity(ell);
    if let Some(first) = bases.first() {
        let row = gain_row(first);
        gains.resize(ell, row);
    }

    let mut a = ElementSet::new();
    for _ in 0..k {
        let mut pick = best_pair(matroid, &extended, &gains, &buckets, &g, &a, Some(&z));
        if pick.is_none() {
            pick = best_pair(matroid, &extended, &gains, &buckets, &g, &a, None);
        }
        let Some((j, x)) = pick else {
            break;
        };
        a.insert(x);
        buckets[j].insert(x);
        let gain = gains[j][x.0];
        let fb = bases[j].cached_value().expect("cached");
        bases[j].insert(x);
        bases[j].set_cached_value(fb + gain);
        gains[j] = gain_row(&bases[j]);
    }

    let removed = partition_exchange(matroid, &g, &buckets)?;
    let mut family = CandidateFamily::default();
    for (j, (part, y)) in buckets.iter().zip(&removed).enumerate() {
        let mut out = g.difference(y).union(part);
        oracle.value_cached(&mut out);
        family.push(out, BranchLabel::Bucket { j: j + 1 });
    }
    Ok(family)
}

fn best_pair(
    matroid: &ExtendedMatroid,
    extended: &[ElementId],
    gains: &[Vec<f64>],
    buckets: &[ElementSet],
    g: &ElementSet,
    a: &ElementSet,
    avoid: Option<&ElementSet>,
) -> Option<(usize, ElementId)> {
    let mut best: Option<(f64, usize, usize, ElementId)> = None;
    for &x in extended {
        if g.contains(x) || a.contains(x) || avoid.is_some_and(|z| z.contains(x)) {
            continue;
        }
        let mut row_best: Option<(f64, usize, usize)> = None;
        for (j, row) in gains.iter().enumerate() {
            let key = (row[x.0], buckets[j].len(), j);
            if row_best.is_none_or(|b| key.0 > b.0 || (key.0 == b.0 && (key.1, key.2) < (b.1, b.2))) {
                row_best = Some(key);
            }
        }
        let Some((gain, size, j)) = row_best else {
            continue;
        };
        let better = best.is_none_or(|b| gain > b.0 || (gain == b.0 && (size, j) < (b.1, b.2)));
        if better && matroid.independent(&a.with(x)) {
            best = Some((gain, size, j, x));
        }
    }
    best.map(|b| (b.2, b.3))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constraint::{pad_with_dummies, PartitionMatroid, UniformMatroid};
    use crate::oracle::{MaxCutInstance, ModularInstance};

    fn set(ids: &[usize]) -> ElementSet {
        ElementSet::from_ids(ids.iter().copied())
    }

    fn six() -> ModularInstance {
        ModularInstance::new(vec![9.0, 8.0, 7.0, 6.0, 5.0, 4.0]).unwrap()
    }

    #[test]
    fn ell_and_budgets() {
        assert_eq!(ell_for_eps(10.0 / 27.0).unwrap(), 3);
        assert_eq!(ell_for_eps(0.5).unwrap(), 3);
        assert_eq!(ell_for_eps(0.1).unwrap(), 12);
        assert!(ell_for_eps(0.0).is_err());
        assert_eq!(round_budgets(10, 3), vec![4, 3, 3]);
        assert_eq!(round_budgets(4, 2), vec![2, 2]);
        assert_eq!(round_budgets(2, 3), vec![1, 1, 0]);
    }

    #[test]
    fn size_family_example() {
        let f = six();
        let o = CountedOracle::new(&f, 4);
        let fam = guided_ig_size(&o, &set(&[]), &set(&[]), 2, 2).unwrap();
        assert_eq!(fam.len(), 6);
        let sets: Vec<Vec<usize>> = fam.sets.iter().map(ElementSet::indices).collect();
        assert_eq!(
            sets,
            vec![vec![0, 2], vec![1, 3], vec![0, 1], vec![0, 2], vec![0, 1], vec![1, 2]]
        );
        assert_eq!(fam.labels[3], BranchLabel::Interlaced { u: 1, i: 2 });
        assert_eq!(fam.sets[0].cached_value(), Some(16.0));
        assert_eq!(fam.best_index(), Some(2));
    }

    #[test]
    fn single_interlace_is_best_element() {
        let f = six();
        let o = CountedOracle::new(&f, 2);
        let fam = guided_ig_size(&o, &set(&[]), &set(&[5]), 1, 1).unwrap();
        assert_eq!(fam.len(), 2);
        for s in &fam.sets {
            assert_eq!(*s, set(&[0, 5]));
        }
    }

    #[test]
    fn guidance_blocking_everything_leaves_g() {
        let f = six();
        let o = CountedOracle::new(&f, 4);
        let g = set(&[5]);
        let fam = guided_ig_size(&o, &set(&[0, 1, 2, 3, 4]), &g, 2, 2).unwrap();
        for s in &fam.sets {
            assert_eq!(*s, g);
            assert_eq!(s.cached_value(), Some(4.0));
        }
        let fam = thresh_guided_ig(&o, 4, &set(&[0, 1, 2, 3, 4]), &g, 2, 2, 0.5).unwrap();
        assert!(fam.sets.iter().all(|s| *s == g));
    }

    #[test]
    fn size_query_bound() {
        let g = crate::oracle::gen_graph(crate::oracle::GraphModel::Er { p: 0.3 }, 30, 4).unwrap();
        let o = CountedOracle::new(&g, 6);
        let (ell, budget, n) = (3u64, 2u64, 30u64);
        guided_ig_size(&o, &set(&[1]), &set(&[]), 3, 2).unwrap();
        assert!(o.queries() <= (ell + 1) * ell * budget * (n + 1) + n + 1);
    }

    #[test]
    fn threshold_add_examples() {
        let f = ModularInstance::new(vec![3.0, 1.0]).unwrap();
        let o = CountedOracle::new(&f, 0);
        let pool = [ElementId(0), ElementId(1)];
        let (a, tau) = threshold_add(&o, &pool, &set(&[]), 0.5, 2.0, 0.4);
        assert_eq!(a, set(&[0]));
        assert_eq!(tau, 2.0);
        assert_eq!(a.cached_value(), Some(3.0));

        let (a, tau) = threshold_add(&o, &[], &set(&[1]), 0.5, 2.0, 0.4);
        assert_eq!(a, set(&[1]));
        assert!(tau < 0.4);

        // decays 2 → 1, then adopts element 1
        let (a, tau) = threshold_add(&o, &[ElementId(1)], &set(&[0]), 0.5, 2.0, 0.4);
        assert_eq!(a, set(&[0, 1]));
        assert_eq!(tau, 1.0);
    }

    #[test]
    fn coarse_thresholds_match_exact_interlacing() {
        let f = six();
        let o = CountedOracle::new(&f, 4);
        let exact = guided_ig_size(&o, &set(&[]), &set(&[]), 2, 2).unwrap();
        let thresh = thresh_guided_ig(&o, 4, &set(&[]), &set(&[]), 2, 2, 0.05).unwrap();
        assert_eq!(exact.sets, thresh.sets);
        assert_eq!(exact.labels, thresh.labels);
    }

    #[test]
    fn single_branch_threshold_fill_is_top_set() {
        let f = six();
        let o = CountedOracle::new(&f, 3);
        let fam = thresh_guided_ig(&o, 3, &set(&[]), &set(&[]), 1, 3, 0.01).unwrap();
        assert_eq!(fam.len(), 2);
        for s in &fam.sets {
            assert_eq!(*s, set(&[0, 1, 2]));
        }
    }

    #[test]
    fn low_gains_stop_at_seeds() {
        // after the anchor, all other gains sit below ε·M/k
        let f = ModularInstance::new(vec![100.0, 0.01, 0.01]).unwrap();
        let o = CountedOracle::new(&f, 3);
        let fam = thresh_guided_ig(&o, 3, &set(&[]), &set(&[]), 1, 3, 0.1).unwrap();
        assert!(fam.sets.iter().all(|s| *s == set(&[0])));
    }

    #[test]
    fn matroid_family_example() {
        let f = ModularInstance::new(vec![5.0, 4.0, 3.0, 2.0]).unwrap();
        let u = UniformMatroid::new(4, 2);
        let m = ExtendedMatroid::new(&u).unwrap();
        let o = CountedOracle::new(&f, 2);
        let g = set(&[2, 3]);
        let fam = guided_ig_matroid(&o, &m, &set(&[]), &g, 2).unwrap();
        assert_eq!(fam.len(), 2);
        let mut outs: Vec<Vec<usize>> = fam.sets.iter().map(ElementSet::indices).collect();
        outs.sort();
        // A_1 = {0}, A_2 = {1}; each swaps out one element of G
        let valid = [vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3]];
        for s in &outs {
            assert!(valid.contains(s));
        }
        assert!(outs.iter().any(|s| s.contains(&0)) && outs.iter().any(|s| s.contains(&1)));
        for s in &fam.sets {
            assert!(m.is_basis(s));
            assert!(s.cached_value().unwrap() >= 5.0);
        }
    }

    #[test]
    fn matroid_single_bucket_takes_greedy_basis() {
        let f = ModularInstance::new(vec![5.0, 4.0, 3.0, 2.0]).unwrap();
        let u = UniformMatroid::new(4, 2);
        let m = ExtendedMatroid::new(&u).unwrap();
        let o = CountedOracle::new(&f, 2);
        let fam = guided_ig_matroid(&o, &m, &set(&[]), &set(&[2, 3]), 1).unwrap();
        assert_eq!(fam.sets, vec![set(&[0, 1])]);
    }

    #[test]
    fn matroid_nonpositive_gains_use_dummies() {
        // triangle: every element of G = {0, 1} already sits in the basis; adding 2 loses value
        let g3 = MaxCutInstance::unit(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let u = UniformMatroid::new(3, 2);
        let m = ExtendedMatroid::new(&u).unwrap();
        let o = CountedOracle::new(&g3, 2);
        let g = set(&[0, 1]);
        let fam = guided_ig_matroid(&o, &m, &set(&[]), &g, 2).unwrap();
        for s in &fam.sets {
            assert!(m.is_basis(s));
            assert!(s.cached_value().unwrap() >= 0.0);
            assert!(!s.contains(ElementId(2)));
        }
    }

    #[test]
    fn matroid_partition_outputs_are_bases() {
        let g = crate::oracle::gen_graph(crate::oracle::GraphModel::Er { p: 0.4 }, 10, 8).unwrap();
        let p = PartitionMatroid::from_blocks(10, &[(0..5).collect(), (5..10).collect()], vec![2, 1]).unwrap();
        let m = ExtendedMatroid::new(&p).unwrap();
        let o = CountedOracle::new(&g, 3);
        let start = pad_with_dummies(&set(&[0, 5]), 10, 3).unwrap();
        let z = set(&[1, 6]);
        let fam = guided_ig_matroid(&o, &m, &z, &start, 3).unwrap();
        assert_eq!(fam.len(), 3);
        for s in &fam.sets {
            assert!(m.is_basis(s));
            assert!(s.difference(&start).is_disjoint(&z));
        }
        assert!(guided_ig_matroid(&o, &m, &z, &set(&[0]), 3).is_err());
    }

    #[test]
    fn interlaced_sets_are_disjoint_beyond_seeds() {
        let g = crate::oracle::gen_graph(crate::oracle::GraphModel::Er { p: 0.3 }, 25, 6).unwrap();
        let o = CountedOracle::new(&g, 8);
        let gset = set(&[3]);
        let z = set(&[0, 1, 2]);
        for fam in [
            guided_ig_size(&o, &z, &gset, 3, 3).unwrap(),
            thresh_guided_ig(&o, 9, &z, &gset, 3, 3, 0.2).unwrap(),
        ] {
            assert_eq!(fam.len(), 12);
            for u in 0..=3 {
                let branch = &fam.sets[u * 3..u * 3 + 3];
                for s in branch {
                    assert!(s.difference(&gset).len() <= 3);
                    assert!(gset.is_subset(s));
                    assert!(s.difference(&gset).is_disjoint(&z));
                }
                let seed = if u == 0 { gset.clone() } else { branch[0].intersection(&branch[1]).intersection(&branch[2]) };
                for i1 in 0..3 {
                    for i2 in i1 + 1..3 {
                        let common = branch[i1].intersection(&branch[i2]);
                        assert!(common.is_subset(&seed.union(&gset)), "u={u}");
                    }
                }
            }
        }
    }

    #[test]
    fn resumed_scan_matches_full_rescans_on_submodular_objectives() {
        for seed in 0..5 {
            let g = crate::oracle::gen_graph(crate::oracle::GraphModel::Er { p: 0.2 }, 60, seed).unwrap();
            let o = CountedOracle::new(&g, 0);
            let pool: Vec<ElementId> = o.real_elements().collect();
            let (eps, tau_min) = (0.2, 0.05);
            let (mut a, mut tau) = (ElementSet::new(), 20.0);
            let (mut b, mut tau_b, mut cursor) = (ElementSet::new(), 20.0, ElementId(0));
            while tau >= tau_min {
                let left: Vec<ElementId> = pool.iter().copied().filter(|x| !a.contains(*x)).collect();
                (a, tau) = threshold_add(&o, &left, &a, eps, tau, tau_min);
                (b, tau_b, cursor) = threshold_add_from(&o, &left, &b, eps, tau_b, tau_min, cursor);
                assert_eq!(a, b);
                assert_eq!(tau.to_bits(), tau_b.to_bits());
            }
        }
    }
}
