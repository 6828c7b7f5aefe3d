//! Library results checked against independent reimplementations.

use std::path::Path;

use guided::bench::{brute_force_opt, run_experiment, summarize, ExperimentConfig};
use guided::constraint::{Constraint, SizeConstraint};
use guided::oracle::{gen_graph, CountedOracle, GraphModel, Objective};
use guided::ElementId;

// Cut weight counted edge by edge, without the library's incremental path.
fn cut(edges: &[(usize, usize, f64)], members: &[bool]) -> f64 {
    edges.iter().filter(|(u, v, _)| members[*u] != members[*v]).map(|e| e.2).sum()
}

#[test]
fn brute_force_agrees_with_naive_enumeration() {
    for seed in 0..20 {
        let n = 6 + (seed as usize % 8);
        let g = gen_graph(GraphModel::Er { p: 0.35 }, n, seed).unwrap();
        for k in 1..=4 {
            let o = CountedOracle::new(&g, k);
            let (set, value) = brute_force_opt(&o, &Constraint::Size(SizeConstraint::new(k).unwrap()), 1 << 20).unwrap();
            let mut best = 0.0f64;
            for mask in 0u32..1 << n {
                if (mask.count_ones() as usize) <= k {
                    let members: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 1).collect();
                    best = best.max(cut(g.edges(), &members));
                }
            }
            assert_eq!(value, best, "seed {seed}, k {k}");
            let members: Vec<bool> = (0..n).map(|i| set.contains(ElementId(i))).collect();
            assert_eq!(cut(g.edges(), &members), value);
        }
    }
}

const CONFIG: &str = r#"
model = "er"
n = 60
p = 0.15
instance_seed = 4
k = [5, 10]
algorithms = ["standard-greedy", "random-greedy", "fastls", "fastls-guidedrg", "nearly-linear"]
seeds = 4
master_seed = 11
ell1 = 2
ell2 = 2
threads = 3
output = "unused.csv"
"#;

#[test]
fn experiment_rows_reevaluate_and_reproduce() {
    let config = ExperimentConfig::from_toml_str(CONFIG, Path::new(".")).unwrap();
    let a = run_experiment(&config).unwrap();
    let b = run_experiment(&config).unwrap();
    assert_eq!(a.records.len(), 5 * 2 * 4);
    assert_eq!(a.errors().count(), 0);
    let g = gen_graph(GraphModel::Er { p: 0.15 }, 60, 4).unwrap();
    for (x, y) in a.records.iter().zip(&b.records) {
        assert_eq!(
            (&x.algorithm, x.k, x.seed, x.value.to_bits(), x.value_queries, &x.solution),
            (&y.algorithm, y.k, y.seed, y.value.to_bits(), y.value_queries, &y.solution)
        );
        let ids: Vec<ElementId> = x.solution.iter().map(|&i| ElementId(i)).collect();
        assert!((g.value(&ids) - x.value).abs() <= 1e-9);
        assert!(x.solution.len() <= x.k);
    }
}

#[test]
fn summary_matches_independent_statistics() {
    let config = ExperimentConfig::from_toml_str(CONFIG, Path::new(".")).unwrap();
    let report = run_experiment(&config).unwrap();
    for row in summarize(&report.records) {
        let values: Vec<f64> = report
            .records
            .iter()
            .filter(|r| r.algorithm == row.algorithm && r.k == row.k)
            .map(|r| r.value)
            .collect();
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let std = (values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0)).sqrt();
        assert_eq!(row.trials, values.len());
        assert!((row.mean_value - mean).abs() <= 1e-9);
        assert!((row.std_value - std).abs() <= 1e-9);
        let sg: f64 = report
            .records
            .iter()
            .filter(|r| r.algorithm == "standard-greedy" && r.k == row.k)
            .map(|r| r.value)
            .sum::<f64>()
            / 4.0;
        assert!((row.normalized_value.unwrap() - mean / sg).abs() <= 1e-9);
    }
}
