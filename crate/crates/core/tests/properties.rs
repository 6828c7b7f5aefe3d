//! Randomized invariants across modules.

use proptest::prelude::*;

use guided::bench::brute_force_opt;
use guided::constraint::{exchange_bijection, Constraint, ExtendedMatroid, Independence, Matroid, PartitionMatroid, SizeConstraint, UniformMatroid};
use guided::greedy::guided_rg;
use guided::interlace::{guided_ig_size, round_budgets, thresh_guided_ig, BranchLabel};
use guided::localsearch::{certify_local_optimum, fast_local_search, prune};
use guided::oracle::{gen_graph, CountedOracle, GraphModel, MaxCutInstance, ModularInstance, Objective};
use guided::{ElementId, ElementSet};

fn er(n: usize, p: f64, seed: u64) -> MaxCutInstance {
    gen_graph(GraphModel::Er { p }, n, seed).unwrap()
}

fn mask_set(n: usize, mask: u32) -> ElementSet {
    ElementSet::from_ids((0..n).filter(|i| mask >> i & 1 == 1))
}

fn ids(s: &ElementSet) -> Vec<ElementId> {
    s.iter().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn max_cut_and_modular_have_diminishing_returns(
        n in 3usize..16, p in 0.05f64..0.95, seed in any::<u64>(),
        t_mask in any::<u32>(), s_mask in any::<u32>(), x in 0usize..16,
        weights in prop::collection::vec(0.0f64..10.0, 16),
    ) {
        let x = x % n;
        let t = mask_set(n, t_mask).without(ElementId(x));
        let s = t.intersection(&mask_set(n, s_mask));
        let g = er(n, p, seed);
        let m = ModularInstance::new(weights[..n].to_vec()).unwrap();
        for f in [&g as &dyn Objective, &m] {
            let gain = |a: &ElementSet| f.value(&ids(&a.with(ElementId(x)))) - f.value(&ids(a));
            prop_assert!(gain(&s) >= gain(&t) - 1e-9);
            prop_assert!(f.value(&ids(&s)) >= 0.0);
        }
    }

    #[test]
    fn partition_matroid_satisfies_axioms(
        block_of in prop::collection::vec(0usize..4, 2..12),
        caps in prop::collection::vec(0usize..3, 4),
        a_mask in any::<u32>(), b_mask in any::<u32>(),
    ) {
        let n = block_of.len();
        let pm = PartitionMatroid::new(block_of, caps).unwrap();
        let ind = |s: &ElementSet| pm.is_independent(&ids(s));
        let a = mask_set(n, a_mask);
        let b = mask_set(n, b_mask);
        // hereditary
        if ind(&a) {
            for x in a.iter() {
                prop_assert!(ind(&a.without(x)));
            }
        }
        // exchange
        if ind(&a) && ind(&b) && a.len() < b.len() {
            prop_assert!(b.difference(&a).iter().any(|x| ind(&a.with(x))));
        }
    }

    #[test]
    fn exchange_bijection_pairs_are_valid(n in 2usize..20, k in 1usize..8, s1 in any::<u64>(), s2 in any::<u64>()) {
        let u = UniformMatroid::new(n, k.min(n));
        let m = ExtendedMatroid::new(&u).unwrap();
        let basis = |seed: u64| {
            let mut ids: Vec<usize> = (0..n + m.k()).collect();
            ids.sort_by_key(|i| guided::rng::derive_seed(seed, *i as u64));
            let mut b = ElementSet::new();
            for i in ids {
                let c = b.with(ElementId(i));
                if m.independent(&c) {
                    b = c;
                }
            }
            b
        };
        let (from, to) = (basis(s1), basis(s2));
        prop_assert!(m.is_basis(&from) && m.is_basis(&to));
        let sigma = exchange_bijection(&m, &from, &to).unwrap();
        prop_assert_eq!(sigma.len(), from.difference(&to).len());
        for &(e, y) in &sigma.pairs {
            prop_assert!(m.independent(&to.swapped(y, e)));
        }
    }

    #[test]
    fn round_budgets_split_k(k in 0usize..500, ell in 1usize..40) {
        let b = round_budgets(k, ell);
        prop_assert_eq!(b.len(), ell);
        prop_assert_eq!(b.iter().sum::<usize>(), k);
        prop_assert!(b.windows(2).all(|w| w[0] >= w[1] && w[0] - w[1] <= 1));
    }

    #[test]
    fn interlaced_families_respect_structure(
        n in 8usize..30, p in 0.1f64..0.6, seed in any::<u64>(), ell in 1usize..4,
        budget in 1usize..4, z_mask in any::<u32>(), g_mask in any::<u32>(),
    ) {
        let g_inst = er(n, p, seed);
        let o = CountedOracle::new(&g_inst, 0);
        let z = mask_set(n, z_mask & 0x55);
        let g = mask_set(n, g_mask & 0x0F00);
        for fam in [
            guided_ig_size(&o, &z, &g, ell, budget).unwrap(),
            thresh_guided_ig(&o, 16, &z, &g, ell, budget, 0.2).unwrap(),
        ] {
            prop_assert_eq!(fam.len(), ell * (ell + 1));
            for (s, label) in fam.sets.iter().zip(&fam.labels) {
                prop_assert!(g.is_subset(s));
                prop_assert!(s.difference(&g).len() <= budget);
                prop_assert!(s.difference(&g).is_disjoint(&z.difference(&g)));
                let interlaced = matches!(label, BranchLabel::Interlaced { .. });
                prop_assert!(interlaced);
            }
            // sets within one u-branch overlap only in their common seed
            for u in 0..=ell {
                let branch = &fam.sets[u * ell..(u + 1) * ell];
                let seed_part = branch.iter().skip(1).fold(branch[0].clone(), |acc, s| acc.intersection(s));
                for i in 0..ell {
                    for j in i + 1..ell {
                        prop_assert_eq!(branch[i].intersection(&branch[j]), seed_part.clone());
                    }
                }
            }
        }
    }

    #[test]
    fn prune_keeps_value_and_dominates_subsets(n in 3usize..11, p in 0.1f64..0.9, seed in any::<u64>(), a_mask in any::<u32>()) {
        let g = er(n, p, seed);
        let o = CountedOracle::new(&g, 0);
        let a = mask_set(n, a_mask);
        let pa = prune(&o, &a);
        prop_assert!(pa.is_subset(&a));
        prop_assert!(o.value(&pa) >= o.value(&a) - 1e-9);
        let members = pa.indices();
        for mask in 0u32..(1 << members.len()) {
            let t = ElementSet::from_ids((0..members.len()).filter(|i| mask >> i & 1 == 1).map(|i| members[i]));
            prop_assert!(o.value(&t) <= o.value(&pa) + 1e-9);
        }
    }

    #[test]
    fn local_search_outputs_are_certified_bases(n in 4usize..11, k in 1usize..4, p in 0.2f64..0.8, seed in any::<u64>()) {
        let k = k.min(n);
        let g = er(n, p, seed);
        let u = UniformMatroid::new(n, k);
        let m = ExtendedMatroid::new(&u).unwrap();
        let o = CountedOracle::new(&g, k);
        let ground = ElementSet::from_ids(0..n);
        let start = guided::greedy::standard_greedy_matroid(&o, &m, &ground);
        prop_assume!(o.value(&start) > 0.0);
        let out = fast_local_search(&o, &m, &ground, &start, 0.1).unwrap();
        prop_assert!(m.feasible(&out.solution));
        prop_assert!(out.value() >= o.value(&start) - 1e-9);
        prop_assert!(certify_local_optimum(&o, &m, &out.solution, 0.1, 1_000_000).unwrap());
    }

    #[test]
    fn guided_random_greedy_is_feasible_and_avoids_guidance_early(
        n in 6usize..25, k in 1usize..8, seed in any::<u64>(), run_seed in any::<u64>(), z_mask in any::<u32>(), t in 0.0f64..1.0,
    ) {
        let k = k.min(n);
        let g = er(n, 0.3, seed);
        let o = CountedOracle::new(&g, k);
        let c = Constraint::Size(SizeConstraint::new(k).unwrap());
        let z = ElementSet::from_ids(mask_set(n, z_mask).indices().into_iter().take(k));
        let run = guided_rg(&o, &c, &z, t, run_seed).unwrap();
        prop_assert!(run.solution.strip_dummies(n).len() <= k);
        prop_assert!((o.value(&run.solution) - run.value()).abs() <= 1e-9);
        let boundary = (t * k as f64).floor() as usize;
        // with fewer than `boundary` elements outside Z the candidate pool
        // falls back to Z by design
        prop_assume!(n - z.len() >= boundary);
        for step in run.trace.chosen.iter().take(boundary) {
            prop_assert!(!z.contains(step.picked) || step.picked.index() >= n);
        }
    }

    #[test]
    fn brute_force_matches_partition_enumeration(n in 2usize..10, seed in any::<u64>(), blocks in 1usize..4, cap in 1usize..3) {
        let g = er(n, 0.5, seed);
        let pm = PartitionMatroid::new((0..n).map(|i| i % blocks).collect(), vec![cap; blocks]).unwrap();
        let m = ExtendedMatroid::new(&pm).unwrap();
        let o = CountedOracle::new(&g, m.k());
        let (set, value) = brute_force_opt(&o, &Constraint::Matroid(ExtendedMatroid::new(&pm).unwrap()), 1 << 20).unwrap();
        prop_assert!(pm.is_independent(&ids(&set.strip_dummies(n))));
        let best = (0u32..1 << n)
            .map(|mask| mask_set(n, mask))
            .filter(|s| pm.is_independent(&ids(s)))
            .map(|s| g.value(&ids(&s)))
            .fold(f64::NEG_INFINITY, f64::max);
        prop_assert!((best - value).abs() <= 1e-9);
    }
}
