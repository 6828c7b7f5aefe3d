use super::{ExtendedMatroid, Independence};
use crate::element::{ElementId, ElementSet};
use crate::error::{Error, Result};
use crate::oracle::CountedOracle;

/// Pads `s` with unused dummy ids `n, n+1, ...` until it has `k` members.
pub fn pad_with_dummies(s: &ElementSet, n: usize, k: usize) -> Result<ElementSet> {
    if s.len() > k {
        return Err(Error::input(format!("set of size {} exceeds k = {k}", s.len())));
    }
    let mut out = s.clone();
    let mut next = n;
    while out.len() < k {
        out.insert(ElementId(next));
        next += 1;
    }
    if let Some(v) = s.cached_value() {
        out.set_cached_value(v);
    }
    Ok(out)
}

/// Sorts `(gain, id)` pairs by gain descending, ties by smallest id.
pub(crate) fn rank_by_gain(items: &mut [(f64, ElementId)]) {
    items.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
}

/// A basis of the extended matroid maximizing `Σ_{x ∈ B} Δ(x | A)` over
/// elements outside `A ∪ excluded`, by the matroid greedy rule.
///
/// Candidates are the real elements outside `A ∪ excluded` and the dummies not
/// in `A` (gain 0), scanned by gain descending with ties to the smallest id.
/// If these cannot complete a basis (possible only when `excluded` blocks too
/// much), excluded real elements outside `A` are scanned the same way to fill
/// the remainder.
pub fn max_gain_basis(
    oracle: &CountedOracle,
    matroid: &ExtendedMatroid,
    a: &ElementSet,
    excluded: &ElementSet,
) -> ElementSet {
    let n = matroid.n();
    let k = matroid.k();
    let mut base_set = a.clone();
    let fa = oracle.value_cached(&mut base_set);

    let mut primary: Vec<(f64, ElementId)> = Vec::with_capacity(n + k);
    let mut reserve: Vec<ElementId> = Vec::new();
    for x in oracle.real_elements() {
        if a.contains(x) {
            continue;
        }
        if excluded.contains(x) {
            reserve.push(x);
        } else {
            primary.push((oracle.marginal(x, &base_set, fa), x));
        }
    }
    primary.extend(matroid.dummy_ids().filter(|d| !a.contains(*d)).map(|d| (0.0, d)));
    rank_by_gain(&mut primary);

    let mut basis = ElementSet::new();
    greedy_fill(matroid, &mut basis, primary.iter().map(|p| p.1), k);
    if basis.len() < k && !reserve.is_empty() {
        let mut extra: Vec<(f64, ElementId)> = reserve
            .into_iter()
            .map(|x| (oracle.marginal(x, &base_set, fa), x))
            .collect();
        rank_by_gain(&mut extra);
        greedy_fill(matroid, &mut basis, extra.iter().map(|p| p.1), k);
    }
    basis
}

fn greedy_fill(
    matroid: &ExtendedMatroid,
    basis: &mut ElementSet,
    candidates: impl Iterator<Item = ElementId>,
    k: usize,
) {
    for x in candidates {
        if basis.len() == k {
            break;
        }
        let trial = basis.with(x);
        if matroid.independent(&trial) {
            *basis = trial;
        }
    }
}
