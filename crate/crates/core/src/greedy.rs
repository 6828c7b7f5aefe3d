//! StandardGreedy, RandomGreedy and the guided random greedy with switch time `t`.
//!
//! Both constraint branches run on the ground set extended with `k` dummy
//! elements of gain 0. The size branch grows `A` by one element per round (a
//! dummy pick is a no-op); the matroid branch keeps `A` a basis of the
//! extended matroid and swaps along an exchange bijection.

use std::io::{BufRead, Write};

use crate::constraint::{exchange_bijection, max_gain_basis, Constraint, ExtendedMatroid, Independence};
use crate::element::{ElementId, ElementSet};
use crate::error::{Error, Result};
use crate::oracle::CountedOracle;
use crate::rng::{seeded, uniform_index};

/// Switch time recommended for size constraints.
pub const DEFAULT_T_SIZE: f64 = 0.372;
/// Switch time recommended for matroid constraints.
pub const DEFAULT_T_MATROID: f64 = 0.559;

/// Rounds `1..=boundary` are guided (avoid `Z`); `boundary = ⌊t·k⌋`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SwitchSchedule {
    pub t: f64,
    pub boundary: usize,
}

impl SwitchSchedule {
    pub fn new(t: f64, k: usize) -> Result<Self> {
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::input(format!("switch time t must lie in [0, 1], got {t}")));
        }
        let boundary = ((t * k as f64) + 1e-12).floor() as usize;
        Ok(Self { t, boundary: boundary.min(k) })
    }

    pub fn is_guided(&self, round: usize) -> bool {
        round <= self.boundary
    }
}

/// One round of a randomized greedy run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub iteration: usize,
    pub picked: ElementId,
    /// Element removed from the basis (matroid branch); `None` in the size branch.
    pub displaced: Option<ElementId>,
}

/// Record of a randomized greedy run, sufficient to rebuild its output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunTrace {
    pub n: usize,
    pub k: usize,
    pub matroid: bool,
    pub rng_seed: u64,
    pub chosen: Vec<TraceStep>,
}

impl RunTrace {
    /// Rebuilds the final set (dummies stripped) from the recorded steps.
    pub fn replay(&self) -> ElementSet {
        let mut a = if self.matroid {
            ElementSet::dummies(self.n, self.k)
        } else {
            ElementSet::new()
        };
        for step in &self.chosen {
            match step.displaced {
                Some(d) => a = a.swapped(d, step.picked),
                None => {
                    a.insert(step.picked);
                }
            }
        }
        a.strip_dummies(self.n)
    }

    /// CSV with a `# n,k,matroid,seed` preamble and header `iteration,picked,displaced`.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "# {},{},{},{}", self.n, self.k, self.matroid, self.rng_seed)?;
        writeln!(out, "iteration,picked,displaced")?;
        for s in &self.chosen {
            let d = s.displaced.map(|d| d.to_string()).unwrap_or_default();
            writeln!(out, "{},{},{}", s.iteration, s.picked, d)?;
        }
        Ok(())
    }

    pub fn read_csv<R: BufRead>(reader: R) -> Result<Self> {
        let mut lines = reader.lines();
        let bad = |what: &str| Error::input(format!("malformed trace: {what}"));
        let pre = lines.next().ok_or_else(|| bad("empty"))??;
        let fields: Vec<&str> = pre.trim_start_matches('#').trim().split(',').collect();
        if fields.len() != 4 {
            return Err(bad("preamble"));
        }
        let parse_u = |s: &str| s.trim().parse::<usize>().map_err(|_| bad(s));
        let n = parse_u(fields[0])?;
        let k = parse_u(fields[1])?;
        let matroid = fields[2].trim().parse::<bool>().map_err(|_| bad(fields[2]))?;
        let rng_seed = fields[3].trim().parse::<u64>().map_err(|_| bad(fields[3]))?;
        lines.next().ok_or_else(|| bad("missing header"))??;
        let mut chosen = Vec::new();
        for line in lines {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let parts: Vec<&str> = line.split(',').collect();
            if parts.len() != 3 {
                return Err(bad(&line));
            }
            chosen.push(TraceStep {
                iteration: parse_u(parts[0])?,
                picked: ElementId(parse_u(parts[1])?),
                displaced: if parts[2].trim().is_empty() {
                    None
                } else {
                    Some(ElementId(parse_u(parts[2])?))
                },
            });
        }
        Ok(Self { n, k, matroid, rng_seed, chosen })
    }
}

#[derive(Clone, Debug)]
pub struct RandomizedRun {
    /// Output with dummies stripped; carries its cached value.
    pub solution: ElementSet,
    pub trace: RunTrace,
}

impl RandomizedRun {
    pub fn value(&self) -> f64 {
        self.solution.cached_value().unwrap_or(0.0)
    }
}

/// Adds the max-gain element (ties to the smallest id) for up to `k` rounds,
/// stopping once the best gain is negative.
pub fn standard_greedy(oracle: &CountedOracle, k: usize) -> ElementSet {
    let mut s = ElementSet::new();
    let mut fs = oracle.value_cached(&mut s);
    for _ in 0..k {
        let Some((g, e)) = best_addition(oracle, &s, fs, oracle.real_elements(), |_| true) else {
            break;
        };
        if g < 0.0 {
            break;
        }
        s.insert(e);
        fs += g;
        s.set_cached_value(fs);
    }
    s.with_value(fs)
}

/// Matroid greedy over `ground`: the max-gain element keeping independence,
/// while the best gain is nonnegative.
pub fn standard_greedy_matroid(
    oracle: &CountedOracle,
    matroid: &ExtendedMatroid,
    ground: &ElementSet,
) -> ElementSet {
    let mut s = ElementSet::new();
    let mut fs = oracle.value_cached(&mut s);
    while s.len() < matroid.k() {
        let Some((g, e)) = best_addition(oracle, &s, fs, ground.iter(), |x| {
            matroid.independent(&s.with(x))
        }) else {
            break;
        };
        if g < 0.0 {
            break;
        }
        s.insert(e);
        fs += g;
        s.set_cached_value(fs);
    }
    s.with_value(fs)
}

fn best_addition(
    oracle: &CountedOracle,
    s: &ElementSet,
    fs: f64,
    candidates: impl Iterator<Item = ElementId>,
    mut allowed: impl FnMut(ElementId) -> bool,
) -> Option<(f64, ElementId)> {
    let mut best: Option<(f64, ElementId)> = None;
    for e in candidates {
        if s.contains(e) || !allowed(e) {
            continue;
        }
        let g = oracle.marginal(e, s, fs);
        if best.is_none_or(|(bg, _)| g > bg) {
            best = Some((g, e));
        }
    }
    best
}

/// RandomGreedy under a size constraint: each round picks uniformly from the
/// top-`k` elements by gain, dummies included.
pub fn random_greedy_size(oracle: &CountedOracle, k: usize, seed: u64) -> Result<RandomizedRun> {
    run_size(oracle, k, &ElementSet::new(), SwitchSchedule::new(0.0, k)?, seed)
}

/// RandomGreedy under a matroid: starts from the all-dummy basis; each round
/// swaps a uniform element of the max-gain basis in along an exchange bijection.
pub fn random_greedy_matroid(
    oracle: &CountedOracle,
    matroid: &ExtendedMatroid,
    seed: u64,
) -> Result<RandomizedRun> {
    run_matroid(oracle, matroid, &ElementSet::new(), SwitchSchedule::new(0.0, matroid.k())?, seed)
}

/// Random greedy guided by `z`: rounds `i ≤ ⌊t·k⌋` never select elements of `z`.
pub fn guided_rg(
    oracle: &CountedOracle,
    constraint: &Constraint,
    z: &ElementSet,
    t: f64,
    seed: u64,
) -> Result<RandomizedRun> {
    let n = oracle.n();
    let k = constraint.k();
    let z = z.strip_dummies(n);
    if !constraint.is_feasible(&z, n) {
        return Err(Error::input("guidance set is not feasible"));
    }
    if z.max_id().is_some_and(|m| m.0 >= n) {
        return Err(Error::input("guidance set has out-of-range ids"));
    }
    let schedule = SwitchSchedule::new(t, k)?;
    match constraint {
        Constraint::Size(c) => run_size(oracle, c.k, &z, schedule, seed),
        Constraint::Matroid(m) => run_matroid(oracle, m, &z, schedule, seed),
    }
}

fn run_size(
    oracle: &CountedOracle,
    k: usize,
    z: &ElementSet,
    schedule: SwitchSchedule,
    seed: u64,
) -> Result<RandomizedRun> {
    if k == 0 {
        return Err(Error::input("k must be at least 1"));
    }
    let n = oracle.n();
    let mut rng = seeded(seed);
    let mut a = ElementSet::new();
    let mut fa = oracle.value_cached(&mut a);
    let mut chosen = Vec::with_capacity(k);
    let empty = ElementSet::new();
    for i in 1..=k {
        let excluded = if schedule.is_guided(i) { z } else { &empty };
        let top = top_k_by_gain(oracle, &a, fa, k, excluded);
        let picks: Vec<(f64, ElementId)> = {
            let mut v = top;
            v.sort_by_key(|p| p.1);
            v
        };
        let (g, u) = picks[uniform_index(&mut rng, picks.len())];
        a.insert(u);
        fa += g;
        a.set_cached_value(fa);
        chosen.push(TraceStep { iteration: i, picked: u, displaced: None });
    }
    Ok(RandomizedRun {
        solution: a.strip_dummies(n).with_value(fa),
        trace: RunTrace { n, k, matroid: false, rng_seed: seed, chosen },
    })
}

// Top-k of {reals ∉ A ∪ excluded} ∪ {dummies ∉ A} by gain (ties to the smallest
// id); excluded reals fill any shortfall.
fn top_k_by_gain(
    oracle: &CountedOracle,
    a: &ElementSet,
    fa: f64,
    k: usize,
    excluded: &ElementSet,
) -> Vec<(f64, ElementId)> {
    let n = oracle.n();
    let mut cand: Vec<(f64, ElementId)> = oracle
        .real_elements()
        .filter(|x| !a.contains(*x) && !excluded.contains(*x))
        .map(|x| (oracle.marginal(x, a, fa), x))
        .collect();
    cand.extend(
        (n..n + k)
            .map(ElementId)
            .filter(|d| !a.contains(*d))
            .map(|d| (0.0, d)),
    );
    crate::constraint::rank_by_gain(&mut cand);
    cand.truncate(k);
    if cand.len() < k {
        let mut extra: Vec<(f64, ElementId)> = excluded
            .iter()
            .filter(|x| !a.contains(*x))
            .map(|x| (oracle.marginal(x, a, fa), x))
            .collect();
        crate::constraint::rank_by_gain(&mut extra);
        extra.truncate(k - cand.len());
        cand.extend(extra);
    }
    cand
}

fn run_matroid(
    oracle: &CountedOracle,
    matroid: &ExtendedMatroid,
    z: &ElementSet,
    schedule: SwitchSchedule,
    seed: u64,
) -> Result<RandomizedRun> {
    let n = matroid.n();
    let k = matroid.k();
    let mut rng = seeded(seed);
    let mut a = ElementSet::dummies(n, k);
    oracle.value_cached(&mut a);
    let mut chosen = Vec::with_capacity(k);
    let empty = ElementSet::new();
    for i in 1..=k {
        let excluded = if schedule.is_guided(i) { z } else { &empty };
        let m = max_gain_basis(oracle, matroid, &a, excluded);
        let sigma = exchange_bijection(matroid, &m, &a)?;
        let u = m.ids()[uniform_index(&mut rng, m.len())];
        let out = sigma.get(u).ok_or_else(|| Error::input("exchange map is missing an element"))?;
        let mut next = a.swapped(out, u);
        oracle.value_cached(&mut next);
        a = next;
        chosen.push(TraceStep { iteration: i, picked: u, displaced: Some(out) });
    }
    let fa = a.cached_value().expect("cached");
    Ok(RandomizedRun {
        solution: a.strip_dummies(n).with_value(fa),
        trace: RunTrace { n, k, matroid: true, rng_seed: seed, chosen },
    })
}
