mod common;

use common::weighted_instance;
use ecc_core::oracle::{brute_with, search_spaces, Route};
use ecc_core::problem::mistake_edges;
use ecc_core::*;
use proptest::prelude::*;

fn specs(h: &EdgeColoredHypergraph, b: u64, fill: bool) -> Vec<ProblemSpec> {
    vec![
        ProblemSpec::local_uniform(h.node_count(), b.max(1)).with_fill(fill),
        ProblemSpec::robust(b).with_fill(fill),
        ProblemSpec::global(b).with_fill(fill),
    ]
}

fn certified(h: &EdgeColoredHypergraph, spec: &ProblemSpec) -> (Solution, Rational) {
    let sol = solve(h, spec).unwrap();
    assert!(verify_dual(h, spec, &sol.certificate).unwrap().is_feasible());
    let mistakes = count_mistakes(h, spec, &sol.assignment).unwrap();
    (sol, mistakes)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn certificates_bound_the_cost(h in weighted_instance(8, 12, 4), b in 0u64..4, fill in any::<bool>()) {
        for spec in specs(&h, b, fill) {
            let (sol, mistakes) = certified(&h, &spec);
            let lb = dual_objective(&spec, &sol.certificate);
            prop_assert!(mistakes <= certified_ratio(&spec) * lb, "{:?}", spec.kind);
        }
    }

    #[test]
    fn mistakes_are_tight(h in weighted_instance(8, 12, 4), b in 0u64..3, fill in any::<bool>()) {
        for spec in specs(&h, b, fill) {
            let sol = solve(&h, &spec).unwrap();
            for e in mistake_edges(&h, &sol.assignment) {
                prop_assert_eq!(&sol.certificate.levels[e], h.weight(e));
            }
        }
    }

    #[test]
    fn fill_never_hurts(h in weighted_instance(8, 12, 4), b in 0u64..3) {
        for (on, off) in specs(&h, b, true).iter().zip(specs(&h, b, false)) {
            let a = solve(&h, on).unwrap();
            let z = solve(&h, &off).unwrap();
            prop_assert_eq!(&a.certificate, &z.certificate);
            prop_assert!(a.mistakes(&h) <= z.mistakes(&h));
        }
    }

    #[test]
    fn global_node_duals(h in weighted_instance(8, 12, 4), b in 0u64..3) {
        let spec = ProblemSpec::global(b);
        let sol = solve(&h, &spec).unwrap();
        let sums = sol.certificate.node_beta_sums(&h);
        for v in h.nodes() {
            let a = &sol.certificate.alpha[v];
            prop_assert!(a <= &sol.certificate.lambda);
            prop_assert!(a * &Rational::from(2i64) <= sums[v]);
        }
    }

    #[test]
    fn weak_duality_against_oracle(h in weighted_instance(5, 6, 3), b in 0u64..3) {
        for spec in specs(&h, b, true) {
            let opt = brute(&h, &spec).unwrap().cost;
            let (sol, mistakes) = certified(&h, &spec);
            prop_assert!(dual_objective(&spec, &sol.certificate) <= opt);
            prop_assert!(opt <= mistakes);
        }
    }

    #[test]
    fn oracle_routes_agree(h in weighted_instance(5, 7, 3), b in 0u64..3) {
        let limits = OracleLimits::default();
        for spec in specs(&h, b, true) {
            let a = brute_with(&h, &spec, &limits, Route::NodeOptions).unwrap();
            let e = brute_with(&h, &spec, &limits, Route::EdgeSubsets).unwrap();
            prop_assert_eq!(&a.cost, &e.cost);
            prop_assert_eq!(count_mistakes(&h, &spec, &a.assignment).unwrap(), a.cost.clone());
            prop_assert_eq!(count_mistakes(&h, &spec, &e.assignment).unwrap(), e.cost.clone());
            let (node_space, edge_space) = search_spaces(&h, &spec);
            prop_assert_eq!(a.search_space, node_space);
            prop_assert_eq!(e.search_space, edge_space);
        }
    }

    #[test]
    fn oracle_is_monotone_in_budget(h in weighted_instance(5, 6, 3), b in 0u64..3) {
        let n = h.node_count();
        let local = |b| brute_local(&h, &vec![b; n]).unwrap().cost;
        prop_assert!(local(b + 2) <= local(b + 1));
        prop_assert!(brute_robust(&h, b + 1).unwrap().cost <= brute_robust(&h, b).unwrap().cost);
        prop_assert!(brute_global(&h, b + 1).unwrap().cost <= brute_global(&h, b).unwrap().cost);
    }

    #[test]
    fn zero_budgets_collapse(h in weighted_instance(5, 6, 3)) {
        let plain = brute_local(&h, &vec![1; h.node_count()]).unwrap().cost;
        prop_assert_eq!(&brute_robust(&h, 0).unwrap().cost, &plain);
        prop_assert_eq!(&brute_global(&h, 0).unwrap().cost, &plain);
    }

    #[test]
    fn any_order_is_certified(h in weighted_instance(8, 12, 4), b in 1u64..3, seed in any::<u64>()) {
        let spec = ProblemSpec::local_uniform(h.node_count(), b);
        let sol = solve_local_shuffled(&h, &spec, seed).unwrap();
        prop_assert!(verify_dual(&h, &spec, &sol.certificate).unwrap().is_feasible());
        let mistakes = count_mistakes(&h, &spec, &sol.assignment).unwrap();
        prop_assert!(mistakes <= certified_ratio(&spec) * dual_objective(&spec, &sol.certificate));
    }

    #[test]
    fn bicriteria_bounds(h in weighted_instance(8, 12, 4), b in 1u64..4, num in 1i64..9, den in 1i64..5) {
        for base in specs(&h, b, true) {
            let scale = if base.kind == ProblemKind::Local { 1 } else { 2 };
            // Map num/den into (0, scale·b].
            let eps = Rational::new(num, den).min(Rational::from(scale * b));
            let tau = bicriteria_threshold(&base, &eps).unwrap();
            let spec = base.with_threshold(tau);
            let (sol, mistakes) = certified(&h, &spec);
            let lb = dual_objective(&spec, &sol.certificate);
            prop_assert!(mistakes <= bicriteria_ratio(spec.kind, &eps) * lb);
        }
    }

    #[test]
    fn adding_colors_never_adds_mistakes(h in weighted_instance(6, 10, 4), picks in prop::collection::vec((0usize..6, 0usize..4), 0..8)) {
        let mut colors = vec![Vec::new(); h.node_count()];
        let mut prev = mistake_weight(&h, &Assignment::multi(colors.clone()));
        for (v, c) in picks {
            if v < h.node_count() && c < h.color_count() {
                colors[v].push(c);
                let now = mistake_weight(&h, &Assignment::multi(colors.clone()));
                prop_assert!(now <= prev);
                prev = now;
            }
        }
    }

    #[test]
    fn removing_nodes_never_adds_mistakes(h in weighted_instance(6, 10, 4), seed in any::<u64>()) {
        let colors: Vec<Option<usize>> = h.nodes().map(|v| h.palette(v).nth(seed as usize % 3)).collect();
        let mut removed = Vec::new();
        let mut prev = mistake_weight(&h, &Assignment::robust(removed.clone(), colors.clone()));
        for v in h.nodes().filter(|v| (seed >> (v % 64)) & 1 == 1) {
            removed.push(v);
            let now = mistake_weight(&h, &Assignment::robust(removed.clone(), colors.clone()));
            prop_assert!(now <= prev);
            prev = now;
        }
    }

    #[test]
    fn full_palettes_are_free(h in weighted_instance(8, 12, 4)) {
        let colors = h.nodes().map(|v| h.palette(v).collect()).collect();
        prop_assert!(mistake_weight(&h, &Assignment::multi(colors)).is_zero());
        let stats = compute_stats(&h);
        prop_assert!(stats.max_color_degree as f64 >= stats.average_color_degree);
        prop_assert!((0.0..=1.0).contains(&stats.intersect_ratio));
        prop_assert!(stats.max_color_degree <= stats.color_count);
        prop_assert!(stats.rank <= stats.node_count);
    }
}

#[test]
fn random_generator_always_validates() {
    for seed in 0..1000u64 {
        let n = 1 + (seed % 17) as usize;
        let h = gen_random(n, 20, 1 + (seed % 5) as usize, 4, seed).unwrap();
        assert_eq!(h.edge_count(), 20);
        assert!(h.edges().all(|e| h.members(e).len() <= 4.min(n)));
    }
}
