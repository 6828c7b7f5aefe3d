//! Brute-force optimum, trial records and the experiment runner.

mod config;
mod report;

pub mod certify;

pub use config::{load_config, ConstraintSpec, ExperimentConfig, Instance, InstanceSpec};
pub use report::{summarize, write_summary_csv, write_trials_csv, SummaryRow, TRIALS_HEADER};

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use serde::Serialize;

use crate::constraint::{Constraint, ExtendedMatroid, Matroid, SizeConstraint};
use crate::element::ElementSet;
use crate::error::{Error, Result};
use crate::greedy::{
    random_greedy_matroid, random_greedy_size,
    DEFAULT_T_MATROID, DEFAULT_T_SIZE,
};
use crate::localsearch::{fastls_quarter, for_each_subset, subsets_up_to};
use crate::oracle::{CountedOracle, Objective};
use crate::pipeline::{
    local_search_guidance, run_determ, run_determ_random, run_nearly_linear, run_randomized, warm_start,
    PipelineParams,
    NEARLY_LINEAR_T,
};
use crate::rng::derive_seed;

/// Exact maximizer over all feasible sets (ties to the lexicographically
/// smallest member list). Fails when more than `limit` sets would be enumerated.
pub fn brute_force_opt(
    oracle: &CountedOracle,
    constraint: &Constraint,
    limit: u64,
) -> Result<(ElementSet, f64)> {
    let n = oracle.n();
    let k = constraint.k().min(n);
    let count = subsets_up_to(n, k);
    if count > limit {
        return Err(Error::resource(format!("{count} subsets exceed the limit {limit}")));
    }
    let mut best: Option<(ElementSet, f64)> = None;
    for_each_subset(n, k, |s| {
        if !constraint.is_feasible(s, n) {
            return;
        }
        let v = oracle.value(s);
        if best.as_ref().is_none_or(|(bs, bv)| v > *bv || (v == *bv && s.ids() < bs.ids())) {
            best = Some((s.clone().with_value(v), v));
        }
    });
    Ok(best.expect("the empty set is always feasible"))
}

/// Algorithms runnable from an experiment config.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    StandardGreedy,
    RandomGreedy,
    FastLs,
    FastLsQuarter,
    FastLsGuidedRg,
    DetermRandom,
    Determ,
    NearlyLinear,
}

impl Algorithm {
    pub const ALL: [Algorithm; 8] = [
        Algorithm::StandardGreedy,
        Algorithm::RandomGreedy,
        Algorithm::FastLs,
        Algorithm::FastLsQuarter,
        Algorithm::FastLsGuidedRg,
        Algorithm::DetermRandom,
        Algorithm::Determ,
        Algorithm::NearlyLinear,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Algorithm::StandardGreedy => "standard-greedy",
            Algorithm::RandomGreedy => "random-greedy",
            Algorithm::FastLs => "fastls",
            Algorithm::FastLsQuarter => "fastls-quarter",
            Algorithm::FastLsGuidedRg => "fastls-guidedrg",
            Algorithm::DetermRandom => "determ-random",
            Algorithm::Determ => "determ",
            Algorithm::NearlyLinear => "nearly-linear",
        }
    }

    pub fn parse(id: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|a| a.id() == id)
            .ok_or_else(|| {
                let known: Vec<&str> = Self::ALL.iter().map(|a| a.id()).collect();
                Error::input(format!("unknown algorithm `{id}` (known: {})", known.join(", ")))
            })
    }
}

/// One row of the trials CSV.
#[derive(Clone, Debug, Serialize)]
pub struct TrialRecord {
    pub algorithm: String,
    pub n: usize,
    pub k: usize,
    pub eps: f64,
    pub t: f64,
    pub seed: u64,
    pub value: f64,
    pub value_queries: u64,
    pub independence_calls: u64,
    pub wall_ms: f64,
    /// Output set; not part of the CSV.
    #[serde(skip)]
    pub solution: Vec<usize>,
    /// False for pool-capped enumeration runs.
    #[serde(skip)]
    pub certified: bool,
    #[serde(skip)]
    pub error: Option<String>,
}

/// Shared parameters of one trial.
#[derive(Clone, Debug)]
pub struct TrialParams {
    pub eps: f64,
    /// `None` picks the constraint's default switch time.
    pub t: Option<f64>,
    pub ell: Option<usize>,
    pub ell1: Option<usize>,
    pub ell2: Option<usize>,
    pub pool_cap: Option<usize>,
}

impl TrialParams {
    pub fn new(eps: f64) -> Self {
        Self { eps, t: None, ell: None, ell1: None, ell2: None, pool_cap: None }
    }

    fn pipeline(&self, t: f64) -> PipelineParams {
        let mut p = PipelineParams::new(self.eps, t);
        p.ell = self.ell;
        p.ell1 = self.ell1;
        p.ell2 = self.ell2;
        p.pool_cap = self.pool_cap;
        p
    }
}

/// Runs `algorithm` once on a fresh counter and records the outcome.
///
/// `matroid` selects the matroid branch; otherwise a size constraint `k` applies.
pub fn run_trial(
    algorithm: Algorithm,
    objective: &dyn Objective,
    matroid: Option<&dyn Matroid>,
    k: usize,
    params: &TrialParams,
    seed: u64,
) -> TrialRecord {
    let n = objective.ground_size();
    let constraint_k = matroid.map_or(k, |m| m.rank());
    let default_t = if matroid.is_some() { DEFAULT_T_MATROID } else { DEFAULT_T_SIZE };
    let t = match algorithm {
        Algorithm::NearlyLinear => NEARLY_LINEAR_T,
        _ => params.t.unwrap_or(default_t),
    };
    let mut record = TrialRecord {
        algorithm: algorithm.id().to_string(),
        n,
        k: constraint_k,
        eps: params.eps,
        t,
        seed,
        value: f64::NAN,
        value_queries: 0,
        independence_calls: 0,
        wall_ms: 0.0,
        solution: Vec::new(),
        certified: true,
        error: None,
    };
    let constraint = match matroid {
        Some(m) => ExtendedMatroid::new(m).map(Constraint::Matroid),
        None => SizeConstraint::new(k).map(Constraint::Size),
    };
    let constraint = match constraint {
        Ok(c) => c,
        Err(e) => {
            record.error = Some(e.to_string());
            return record;
        }
    };
    let oracle = CountedOracle::new(objective, constraint_k);
    let start = Instant::now();
    let outcome = execute(algorithm, &oracle, &constraint, params, t, seed);
    record.wall_ms = start.elapsed().as_secs_f64() * 1e3;
    record.value_queries = oracle.queries();
    record.independence_calls = constraint.independence_calls();
    match outcome {
        Ok((solution, certified)) => {
            record.value = solution.cached_value().unwrap_or_else(|| oracle.value(&solution));
            record.solution = solution.indices();
            record.certified = certified;
        }
        Err(e) => record.error = Some(e.to_string()),
    }
    record
}

fn execute(
    algorithm: Algorithm,
    oracle: &CountedOracle,
    constraint: &Constraint,
    params: &TrialParams,
    t: f64,
    seed: u64,
) -> Result<(ElementSet, bool)> {
    let certified = |s: ElementSet| Ok((s, true));
    match algorithm {
        Algorithm::StandardGreedy => certified(warm_start(oracle, constraint)),
        Algorithm::RandomGreedy => match constraint {
            Constraint::Size(c) => certified(random_greedy_size(oracle, c.k, seed)?.solution),
            Constraint::Matroid(m) => certified(random_greedy_matroid(oracle, m, seed)?.solution),
        },
        Algorithm::FastLs => {
            let mut z = local_search_guidance(oracle, constraint, params.eps, None)?;
            oracle.value_cached(&mut z);
            certified(z)
        }
        Algorithm::FastLsQuarter => {
            let z0 = warm_start(oracle, constraint);
            if z0.cached_value().unwrap_or(0.0) <= 0.0 {
                return certified(z0);
            }
            let mut z = match constraint {
                Constraint::Size(c) => {
                    let u = crate::constraint::UniformMatroid::new(oracle.n(), c.k);
                    let m = ExtendedMatroid::new(&u)?;
                    fastls_quarter(oracle, &m, &z0, params.eps)?
                }
                Constraint::Matroid(m) => fastls_quarter(oracle, m, &z0, params.eps)?,
            };
            oracle.value_cached(&mut z);
            certified(z)
        }
        Algorithm::FastLsGuidedRg => {
            certified(run_randomized(oracle, constraint, params.eps, t, seed, None)?.solution)
        }
        Algorithm::DetermRandom => {
            certified(run_determ_random(oracle, constraint, &params.pipeline(t), seed, None)?.solution)
        }
        Algorithm::Determ => {
            let out = run_determ(oracle, constraint, &params.pipeline(t), None)?;
            Ok((out.solution, out.certified))
        }
        Algorithm::NearlyLinear => match constraint {
            Constraint::Size(c) => {
                let out = run_nearly_linear(oracle, c.k, &params.pipeline(t))?;
                Ok((out.solution, out.certified))
            }
            Constraint::Matroid(_) => Err(Error::input("nearly-linear supports size constraints only")),
        },
    }
}

/// Output of [`run_experiment`]: trial rows in grid order.
#[derive(Clone, Debug)]
pub struct ExperimentReport {
    pub records: Vec<TrialRecord>,
}

impl ExperimentReport {
    pub fn errors(&self) -> impl Iterator<Item = &TrialRecord> {
        self.records.iter().filter(|r| r.error.is_some())
    }
}

/// Runs the full `(algorithm, k, seed)` grid of `config` on a bounded pool of
/// worker threads. Rows come back in grid order regardless of scheduling.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentReport> {
    let instance = config.instance.load()?;
    let objective = instance.objective();
    let n = objective.ground_size();
    let algorithms: Vec<Algorithm> =
        config.algorithms.iter().map(|a| Algorithm::parse(a)).collect::<Result<_>>()?;

    let mut jobs = Vec::new();
    for &alg in &algorithms {
        for &k in &config.k {
            for s in 0..config.seeds {
                jobs.push((alg, k, derive_seed(config.master_seed, s as u64)));
            }
        }
    }
    let matroids: Vec<Option<Box<dyn Matroid>>> = config
        .k
        .iter()
        .map(|&k| config.constraint.build(n, k))
        .collect::<Result<_>>()?;
    let k_index = |k: usize| config.k.iter().position(|&x| x == k).expect("k in grid");

    let params = config.trial_params();
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<Option<TrialRecord>>> = Mutex::new(vec![None; jobs.len()]);
    let workers = config.threads().min(jobs.len()).max(1);
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(&(alg, k, seed)) = jobs.get(i) else {
                    break;
                };
                let matroid = matroids[k_index(k)].as_deref();
                let record = run_trial(alg, objective, matroid, k, &params, seed);
                results.lock().expect("results lock")[i] = Some(record);
            });
        }
    });
    let records = results
        .into_inner()
        .expect("results lock")
        .into_iter()
        .map(|r| r.expect("every job ran"))
        .collect();
    Ok(ExperimentReport { records })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{MaxCutInstance, ModularInstance};

    fn size(k: usize) -> Constraint<'static> {
        Constraint::Size(SizeConstraint::new(k).unwrap())
    }

    // independent enumeration over bitmasks
    fn masks_best(obj: &dyn Objective, k: usize) -> f64 {
        let n = obj.ground_size();
        (0u32..1 << n)
            .filter(|m| m.count_ones() as usize <= k)
            .map(|m| {
                let ids: Vec<_> = (0..n).filter(|i| m >> i & 1 == 1).map(crate::ElementId).collect();
                obj.value(&ids)
            })
            .fold(f64::NEG_INFINITY, f64::max)
    }

    #[test]
    fn brute_force_examples() {
        let tri = MaxCutInstance::unit(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let o = CountedOracle::new(&tri, 0);
        assert_eq!(brute_force_opt(&o, &size(2), 100).unwrap().1, 2.0);
        assert_eq!(masks_best(&tri, 2), 2.0);

        let f = ModularInstance::new(vec![5.0, 4.0, 3.0]).unwrap();
        let o = CountedOracle::new(&f, 0);
        let (s, v) = brute_force_opt(&o, &size(2), 100).unwrap();
        assert_eq!((s.indices(), v), (vec![0, 1], 9.0));

        let k4 = MaxCutInstance::unit(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let o = CountedOracle::new(&k4, 0);
        let (s, v) = brute_force_opt(&o, &size(2), 100).unwrap();
        assert_eq!(v, 4.0);
        assert_eq!(s.indices(), vec![0, 1]);
        assert!(matches!(brute_force_opt(&o, &size(2), 5), Err(Error::Resource(_))));
    }

    #[test]
    fn brute_force_matches_mask_enumeration() {
        for seed in 0..5 {
            let g = crate::oracle::gen_graph(crate::oracle::GraphModel::Er { p: 0.4 }, 10, seed).unwrap();
            let o = CountedOracle::new(&g, 0);
            assert_eq!(brute_force_opt(&o, &size(4), 1 << 20).unwrap().1, masks_best(&g, 4));
        }
    }

    #[test]
    fn algorithm_ids_round_trip() {
        for a in Algorithm::ALL {
            assert_eq!(Algorithm::parse(a.id()).unwrap(), a);
        }
        assert!(Algorithm::parse("nope").is_err());
    }

    #[test]
    fn trial_records_re_evaluate() {
        let g = crate::oracle::gen_graph(crate::oracle::GraphModel::Er { p: 0.3 }, 20, 1).unwrap();
        let params = TrialParams { ell: Some(2), ell1: Some(1), ell2: Some(1), ..TrialParams::new(0.3) };
        for a in Algorithm::ALL {
            let r = run_trial(a, &g, None, 4, &params, 5);
            assert!(r.error.is_none(), "{}: {:?}", a.id(), r.error);
            let ids: Vec<_> = r.solution.iter().map(|&i| crate::ElementId(i)).collect();
            assert_eq!(g.value(&ids), r.value, "{}", a.id());
            assert!(r.solution.len() <= 4);
            assert!(r.value_queries > 0);
        }
    }

    #[test]
    fn trial_errors_are_recorded() {
        let g = crate::oracle::gen_graph(crate::oracle::GraphModel::Er { p: 0.3 }, 20, 1).unwrap();
        let r = run_trial(Algorithm::Determ, &g, None, 2, &TrialParams::new(0.1), 0);
        assert!(r.error.is_some());
        assert!(r.value.is_nan());
    }
}
