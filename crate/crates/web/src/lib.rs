//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Every exported function takes plain numbers and returns a JSON string;
//! errors surface as JavaScript exceptions carrying the message.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use guided::bench::brute_force_opt;
use guided::constraint::{Constraint, SizeConstraint};
use guided::greedy::{random_greedy_size, standard_greedy, DEFAULT_T_SIZE};
use guided::oracle::{gen_graph, CountedOracle, GraphModel, MaxCutInstance};
use guided::pipeline::run_randomized;
use guided::rng::derive_seed;
use guided::Result;

/// Largest graph the brute-force check accepts.
pub const MAX_BRUTE_FORCE_N: usize = 20;
/// Largest graph the interactive operations accept.
pub const MAX_N: usize = 3000;

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct AlgorithmStats {
    pub algorithm: &'static str,
    pub mean_value: f64,
    pub min_value: f64,
    pub max_value: f64,
    pub mean_queries: f64,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Comparison {
    pub n: usize,
    pub edges: usize,
    pub k: usize,
    pub runs: usize,
    pub algorithms: Vec<AlgorithmStats>,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct SweepPoint {
    pub t: f64,
    pub mean_value: f64,
    pub mean_queries: f64,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct BruteForceCheck {
    pub n: usize,
    pub edges: usize,
    pub k: usize,
    pub opt_value: f64,
    pub opt_set: Vec<usize>,
    pub greedy_value: f64,
    pub guided_value: f64,
    pub guided_set: Vec<usize>,
}

fn graph(n: usize, p: f64, seed: u64, cap: usize) -> Result<MaxCutInstance> {
    if n > cap {
        return Err(guided::Error::input(format!("n = {n} exceeds the demo limit {cap}")));
    }
    gen_graph(GraphModel::Er { p }, n, seed)
}

fn size(k: usize) -> Result<Constraint<'static>> {
    Ok(Constraint::Size(SizeConstraint::new(k)?))
}

fn stats(algorithm: &'static str, samples: &[(f64, u64)]) -> AlgorithmStats {
    let len = samples.len().max(1) as f64;
    AlgorithmStats {
        algorithm,
        mean_value: samples.iter().map(|s| s.0).sum::<f64>() / len,
        min_value: samples.iter().map(|s| s.0).fold(f64::INFINITY, f64::min),
        max_value: samples.iter().map(|s| s.0).fold(f64::NEG_INFINITY, f64::max),
        mean_queries: samples.iter().map(|s| s.1 as f64).sum::<f64>() / len,
    }
}

/// StandardGreedy, RandomGreedy and FastLS+GuidedRG on one ER graph;
/// the randomized algorithms run `runs` times with derived seeds.
pub fn compare(n: usize, p: f64, k: usize, seed: u64, runs: usize, eps: f64) -> Result<Comparison> {
    let g = graph(n, p, seed, MAX_N)?;
    let c = size(k)?;
    let o = CountedOracle::new(&g, k);
    let runs = runs.max(1);

    let sg = standard_greedy(&o, k);
    let sg_sample = [(o.value(&sg), o.queries())];

    let mut rg = Vec::with_capacity(runs);
    let mut ours = Vec::with_capacity(runs);
    for r in 0..runs as u64 {
        let s = derive_seed(seed, r);
        o.reset_queries();
        let v = random_greedy_size(&o, k, s)?.value();
        rg.push((v, o.queries()));
        o.reset_queries();
        let v = run_randomized(&o, &c, eps, DEFAULT_T_SIZE, s, None)?.value();
        ours.push((v, o.queries()));
    }
    Ok(Comparison {
        n,
        edges: g.edges().len(),
        k,
        runs,
        algorithms: vec![
            stats("standard-greedy", &sg_sample),
            stats("random-greedy", &rg),
            stats("fastls-guidedrg", &ours),
        ],
    })
}

/// Mean FastLS+GuidedRG value at `steps + 1` evenly spaced switch times in [0, 1].
pub fn sweep(n: usize, p: f64, k: usize, seed: u64, runs: usize, steps: usize, eps: f64) -> Result<Vec<SweepPoint>> {
    let g = graph(n, p, seed, MAX_N)?;
    let c = size(k)?;
    let o = CountedOracle::new(&g, k);
    let (runs, steps) = (runs.max(1), steps.max(1));
    (0..=steps)
        .map(|i| {
            let t = i as f64 / steps as f64;
            let mut samples = Vec::with_capacity(runs);
            for r in 0..runs as u64 {
                o.reset_queries();
                let v = run_randomized(&o, &c, eps, t, derive_seed(seed, r), None)?.value();
                samples.push((v, o.queries()));
            }
            let s = stats("fastls-guidedrg", &samples);
            Ok(SweepPoint { t, mean_value: s.mean_value, mean_queries: s.mean_queries })
        })
        .collect()
}

/// Exact optimum against StandardGreedy and one FastLS+GuidedRG run on a small graph.
pub fn check(n: usize, p: f64, k: usize, seed: u64, eps: f64) -> Result<BruteForceCheck> {
    let g = graph(n, p, seed, MAX_BRUTE_FORCE_N)?;
    let c = size(k)?;
    let o = CountedOracle::new(&g, k);
    let (opt_set, opt_value) = brute_force_opt(&o, &c, 1 << 22)?;
    let greedy_value = o.value(&standard_greedy(&o, k));
    let guided = run_randomized(&o, &c, eps, DEFAULT_T_SIZE, seed, None)?;
    Ok(BruteForceCheck {
        n,
        edges: g.edges().len(),
        k,
        opt_value,
        opt_set: opt_set.strip_dummies(n).indices(),
        greedy_value,
        guided_value: guided.value(),
        guided_set: guided.solution.strip_dummies(n).indices(),
    })
}

fn to_js<T: Serialize>(r: Result<T>) -> std::result::Result<String, JsError> {
    let v = r.map_err(|e| JsError::new(&e.to_string()))?;
    serde_json::to_string(&v).map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen(js_name = compareAlgorithms)]
pub fn compare_algorithms(n: usize, p: f64, k: usize, seed: u64, runs: usize, eps: f64) -> std::result::Result<String, JsError> {
    to_js(compare(n, p, k, seed, runs, eps))
}

#[wasm_bindgen(js_name = sweepSwitchTime)]
pub fn sweep_switch_time(
    n: usize,
    p: f64,
    k: usize,
    seed: u64,
    runs: usize,
    steps: usize,
    eps: f64,
) -> std::result::Result<String, JsError> {
    to_js(sweep(n, p, k, seed, runs, steps, eps))
}

#[wasm_bindgen(js_name = bruteForceCheck)]
pub fn brute_force_check(n: usize, p: f64, k: usize, seed: u64, eps: f64) -> std::result::Result<String, JsError> {
    to_js(check(n, p, k, seed, eps))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comparison_lists_three_algorithms() {
        let c = compare(80, 0.1, 8, 1, 3, 0.1).unwrap();
        let ids: Vec<_> = c.algorithms.iter().map(|a| a.algorithm).collect();
        assert_eq!(ids, ["standard-greedy", "random-greedy", "fastls-guidedrg"]);
        assert!(c.algorithms.iter().all(|a| a.min_value <= a.mean_value && a.mean_value <= a.max_value));
    }

    #[test]
    fn sweep_covers_unit_interval() {
        let pts = sweep(40, 0.2, 5, 2, 2, 4, 0.1).unwrap();
        let ts: Vec<f64> = pts.iter().map(|p| p.t).collect();
        assert_eq!(ts, [0.0, 0.25, 0.5, 0.75, 1.0]);
    }

    #[test]
    fn brute_force_dominates() {
        let r = check(12, 0.4, 4, 5, 0.1).unwrap();
        assert!(r.opt_value >= r.greedy_value && r.opt_value >= r.guided_value);
        assert!(r.opt_set.len() <= 4 && r.guided_set.len() <= 4);
    }

    #[test]
    fn limits_are_input_errors() {
        assert!(check(MAX_BRUTE_FORCE_N + 1, 0.2, 3, 0, 0.1).is_err());
        assert!(compare(MAX_N + 1, 0.2, 3, 0, 1, 0.1).is_err());
        assert!(compare(10, 0.2, 0, 0, 1, 0.1).is_err());
    }
}
