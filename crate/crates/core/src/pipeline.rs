//! End-to-end algorithms built from the local search, random greedy and
//! interlaced greedy subroutines.

use std::collections::{HashMap, HashSet};

use crate::constraint::{Constraint, ExtendedMatroid, UniformMatroid};
use crate::element::ElementSet;
use crate::error::{Error, Result};
use crate::greedy::{guided_rg, standard_greedy, standard_greedy_matroid};
use crate::interlace::{
    ceil_ratio, ell_for_eps, guided_ig_matroid, guided_ig_size, round_budgets, thresh_guided_ig,
    CandidateFamily,
};
use crate::localsearch::{fast_local_search, prune};
use crate::oracle::CountedOracle;
use crate::rng::{seeded, uniform_index};

/// Default cap on the number of sets held in one enumeration level.
pub const DEFAULT_MAX_LEVEL_SIZE: usize = 250_000;

/// Switch time used by the nearly linear pipeline.
pub const NEARLY_LINEAR_T: f64 = 0.3;

#[derive(Clone, Debug, PartialEq)]
pub struct PipelineParams {
    pub eps: f64,
    pub t: f64,
    /// Overrides `ℓ = ⌈10/(9ε)⌉`.
    pub ell: Option<usize>,
    /// Overrides `ℓ₁ = ⌈10/(3ε)⌉`.
    pub ell1: Option<usize>,
    /// Overrides `ℓ₂ = ⌈5/ε⌉`.
    pub ell2: Option<usize>,
    /// Keep only this many best sets per enumeration level (uncertified mode).
    pub pool_cap: Option<usize>,
    /// Resource limit on an uncapped enumeration level.
    pub max_level_size: usize,
}

impl PipelineParams {
    pub fn new(eps: f64, t: f64) -> Self {
        Self {
            eps,
            t,
            ell: None,
            ell1: None,
            ell2: None,
            pool_cap: None,
            max_level_size: DEFAULT_MAX_LEVEL_SIZE,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.eps > 0.0 && self.eps < 1.0) {
            return Err(Error::input(format!("eps must lie in (0, 1), got {}", self.eps)));
        }
        if !(0.0..=1.0).contains(&self.t) {
            return Err(Error::input(format!("t must lie in [0, 1], got {}", self.t)));
        }
        if [self.ell, self.ell1, self.ell2].contains(&Some(0)) || self.pool_cap == Some(0) {
            return Err(Error::input("round counts and pool_cap must be positive"));
        }
        Ok(())
    }

    pub fn ell(&self) -> Result<usize> {
        self.ell.map_or_else(|| ell_for_eps(self.eps), Ok)
    }

    pub fn ell1(&self) -> Result<usize> {
        self.ell1.map_or_else(|| ceil_ratio(10.0 / (3.0 * self.eps), self.eps), Ok)
    }

    pub fn ell2(&self) -> Result<usize> {
        self.ell2.map_or_else(|| ceil_ratio(5.0 / self.eps, self.eps), Ok)
    }
}

/// Result of a pipeline run.
#[derive(Clone, Debug)]
pub struct PipelineOutcome {
    /// Output with dummies stripped; carries its cached value.
    pub solution: ElementSet,
    /// The local-search guidance set, when the pipeline computes one.
    pub guidance: Option<ElementSet>,
    /// False when a pool cap discarded candidates.
    pub certified: bool,
}

impl PipelineOutcome {
    pub fn value(&self) -> f64 {
        self.solution.cached_value().unwrap_or(0.0)
    }
}

/// `StandardGreedy` warm start: cardinality greedy, or matroid greedy over all elements.
pub fn warm_start(oracle: &CountedOracle, constraint: &Constraint) -> ElementSet {
    match constraint {
        Constraint::Size(c) => standard_greedy(oracle, c.k),
        Constraint::Matroid(m) => {
            standard_greedy_matroid(oracle, m, &ElementSet::from_ids(0..oracle.n()))
        }
    }
}

/// FastLS from `z0` (or the warm start); a start of value ≤ 0 is returned as is.
pub fn local_search_guidance(
    oracle: &CountedOracle,
    constraint: &Constraint,
    eps: f64,
    z0: Option<&ElementSet>,
) -> Result<ElementSet> {
    let n = oracle.n();
    let mut start = match z0 {
        Some(z) => z.strip_dummies(n),
        None => warm_start(oracle, constraint),
    };
    if !constraint.is_feasible(&start, n) {
        return Err(Error::input("initial solution is not feasible"));
    }
    if oracle.value_cached(&mut start) <= 0.0 {
        return Ok(start);
    }
    let ground = ElementSet::from_ids(0..n);
    let out = match constraint {
        Constraint::Size(c) => {
            let u = UniformMatroid::new(n, c.k);
            let m = ExtendedMatroid::new(&u)?;
            fast_local_search(oracle, &m, &ground, &start, eps)?
        }
        Constraint::Matroid(m) => fast_local_search(oracle, m, &ground, &start, eps)?,
    };
    Ok(out.solution)
}

fn better(a: ElementSet, b: ElementSet) -> ElementSet {
    let (fa, fb) = (a.cached_value().unwrap_or(f64::NEG_INFINITY), b.cached_value().unwrap_or(f64::NEG_INFINITY));
    if fb > fa {
        b
    } else {
        a
    }
}

/// FastLS from the warm start, then the guided random greedy with switch time
/// `t`; returns the better of the two.
pub fn run_randomized(
    oracle: &CountedOracle,
    constraint: &Constraint,
    eps: f64,
    t: f64,
    seed: u64,
    z0: Option<&ElementSet>,
) -> Result<PipelineOutcome> {
    PipelineParams::new(eps, t).validate()?;
    let z = local_search_guidance(oracle, constraint, eps, z0)?;
    let a = guided_rg(oracle, constraint, &z, t, seed)?.solution;
    Ok(PipelineOutcome {
        solution: better(z.clone(), a),
        guidance: Some(z),
        certified: true,
    })
}

// One subroutine call expanding `parent` at round `round` (1-based).
fn expand(
    oracle: &CountedOracle,
    constraint: &Constraint,
    z: &ElementSet,
    parent: &ElementSet,
    ell: usize,
    round: usize,
    guided: bool,
) -> Result<CandidateFamily> {
    let empty = ElementSet::new();
    let guide = if guided { z } else { &empty };
    match constraint {
        Constraint::Size(c) => {
            let budget = round_budgets(c.k, ell)[round - 1];
            guided_ig_size(oracle, guide, parent, ell, budget)
        }
        Constraint::Matroid(m) => guided_ig_matroid(oracle, m, guide, parent, ell),
    }
}

fn root(constraint: &Constraint, n: usize) -> ElementSet {
    match constraint {
        Constraint::Size(_) => ElementSet::new(),
        Constraint::Matroid(m) => ElementSet::dummies(n, m.k()),
    }
}

fn check_rounds(constraint: &Constraint, ell: usize) -> Result<()> {
    if constraint.k() < ell {
        return Err(Error::input(format!(
            "k = {} is smaller than the number of rounds {ell}",
            constraint.k()
        )));
    }
    Ok(())
}

fn is_guided_round(round: usize, t: f64, ell: usize) -> bool {
    (round as f64) <= t * ell as f64 + 1e-12
}

/// Randomized variant of the enumeration: `ℓ` rounds, each advancing one
/// uniformly random candidate of the subroutine family.
pub fn run_determ_random(
    oracle: &CountedOracle,
    constraint: &Constraint,
    params: &PipelineParams,
    seed: u64,
    z0: Option<&ElementSet>,
) -> Result<PipelineOutcome> {
    params.validate()?;
    let ell = params.ell()?;
    check_rounds(constraint, ell)?;
    let n = oracle.n();
    let z = local_search_guidance(oracle, constraint, params.eps, z0)?;
    let mut rng = seeded(seed);
    let mut a = root(constraint, n);
    for round in 1..=ell {
        let fam = expand(oracle, constraint, &z, &a, ell, round, is_guided_round(round, params.t, ell))?;
        a = fam.sets[uniform_index(&mut rng, fam.len())].clone();
    }
    let fa = oracle.value_cached(&mut a);
    let a = a.strip_dummies(n).with_value(fa);
    Ok(PipelineOutcome {
        solution: better(z.clone(), a),
        guidance: Some(z),
        certified: true,
    })
}

// Dedups a level by member set (first occurrence wins), then applies the cap
// or the resource limit.
fn finish_level(
    mut level: Vec<ElementSet>,
    pool_cap: Option<usize>,
    certified: &mut bool,
) -> Vec<ElementSet> {
    let mut seen = HashSet::with_capacity(level.len());
    level.retain(|s| seen.insert(s.ids().to_vec()));
    if let Some(cap) = pool_cap {
        if level.len() > cap {
            level.sort_by(|a, b| {
                b.cached_value()
                    .unwrap_or(f64::NEG_INFINITY)
                    .total_cmp(&a.cached_value().unwrap_or(f64::NEG_INFINITY))
                    .then_with(|| a.cmp(b))
            });
            level.truncate(cap);
            *certified = false;
        }
    }
    level
}

fn check_level_size(parents: usize, family: usize, params: &PipelineParams) -> Result<()> {
    let projected = parents.saturating_mul(family);
    if params.pool_cap.is_none() && projected > params.max_level_size {
        return Err(Error::resource(format!(
            "enumeration level would hold up to {projected} sets (limit {}); set pool_cap to run heuristically",
            params.max_level_size
        )));
    }
    Ok(())
}

/// Deterministic enumeration: every candidate of every parent advances for
/// `ℓ` rounds; returns the best of `Z` and the final level.
pub fn run_determ(
    oracle: &CountedOracle,
    constraint: &Constraint,
    params: &PipelineParams,
    z0: Option<&ElementSet>,
) -> Result<PipelineOutcome> {
    params.validate()?;
    let ell = params.ell()?;
    check_rounds(constraint, ell)?;
    let n = oracle.n();
    let family_size = if constraint.is_size() { ell * (ell + 1) } else { ell };
    let z = local_search_guidance(oracle, constraint, params.eps, z0)?;
    let mut certified = true;
    let mut level = vec![root(constraint, n)];
    for round in 1..=ell {
        check_level_size(level.len(), family_size, params)?;
        let guided = is_guided_round(round, params.t, ell);
        let mut next = Vec::with_capacity(level.len() * family_size);
        for parent in &level {
            next.extend(expand(oracle, constraint, &z, parent, ell, round, guided)?.sets);
        }
        level = finish_level(next, params.pool_cap, &mut certified);
    }
    let mut best = z.clone();
    for mut leaf in level {
        let v = oracle.value_cached(&mut leaf);
        best = better(best, leaf.strip_dummies(n).with_value(v));
    }
    Ok(PipelineOutcome { solution: best, guidance: Some(z), certified })
}

/// Nearly linear deterministic pipeline (size constraint).
///
/// Phase 1 grows `ℓ₁` levels of pruned unguided ThreshGuidedIG candidates from
/// `{∅}`; every pruned set joins the guidance pool. Phase 2 grows, for each
/// pool member `A`, `ℓ₂` levels from `{∅}` guided by `A` in rounds
/// `i ≤ t·ℓ₂` (`t = 0.3`). Both phases use `ε' = ε/2`. Returns the best set of
/// size at most `k` among the pool and all phase-2 leaves.
pub fn run_nearly_linear(oracle: &CountedOracle, k: usize, params: &PipelineParams) -> Result<PipelineOutcome> {
    params.validate()?;
    if k == 0 {
        return Err(Error::input("k must be at least 1"));
    }
    let ell1 = params.ell1()?;
    let ell2 = params.ell2()?;
    if k < ell2 || k < ell1 {
        return Err(Error::input(format!("k = {k} is smaller than the round counts ({ell1}, {ell2})")));
    }
    let eps_p = params.eps / 2.0;
    let b1 = round_budgets(k, ell1);
    let b2 = round_budgets(k, ell2);
    let fam1 = ell1 * (ell1 + 1);
    let fam2 = ell2 * (ell2 + 1);
    let mut certified = true;

    let empty = ElementSet::new();
    let mut pool: Vec<ElementSet> = Vec::new();
    let mut level = vec![ElementSet::new()];
    for round in 1..=ell1 {
        check_level_size(level.len(), fam1, params)?;
        let mut next = Vec::with_capacity(level.len() * fam1);
        for parent in &level {
            let fam = thresh_guided_ig(oracle, k, &empty, parent, ell1, b1[round - 1], eps_p)?;
            next.extend(fam.sets.iter().map(|s| prune(oracle, s)));
        }
        level = finish_level(next, params.pool_cap, &mut certified);
        pool.extend(level.iter().cloned());
    }
    let pool = finish_level(pool, None, &mut certified);

    // expansions depend only on (guide, parent, round); unguided ones are shared
    let mut memo: HashMap<(Option<usize>, ElementSet, usize), Vec<ElementSet>> = HashMap::new();
    let mut best: Option<ElementSet> = None;
    let consider = |c: &ElementSet, best: &mut Option<ElementSet>| {
        if c.len() <= k {
            *best = Some(match best.take() {
                Some(b) => better(b, c.clone()),
                None => c.clone(),
            });
        }
    };
    for c in &pool {
        consider(c, &mut best);
    }
    for (gi, guide) in pool.iter().enumerate() {
        let mut level = vec![ElementSet::new()];
        for round in 1..=ell2 {
            check_level_size(level.len(), fam2, params)?;
            let guided = is_guided_round(round, NEARLY_LINEAR_T, ell2);
            let key_guide = guided.then_some(gi);
            let mut next = Vec::with_capacity(level.len() * fam2);
            for parent in &level {
                let key = (key_guide, parent.clone(), round);
                if let Some(sets) = memo.get(&key) {
                    next.extend(sets.iter().cloned());
                    continue;
                }
                let z = if guided { guide } else { &empty };
                let sets = thresh_guided_ig(oracle, k, z, parent, ell2, b2[round - 1], eps_p)?.sets;
                next.extend(sets.iter().cloned());
                memo.insert(key, sets);
            }
            level = finish_level(next, params.pool_cap, &mut certified);
        }
        for leaf in &level {
            consider(leaf, &mut best);
        }
    }
    let solution = best.unwrap_or_else(|| ElementSet::new().with_value(oracle.value(&ElementSet::new())));
    Ok(PipelineOutcome { solution, guidance: None, certified })
}
