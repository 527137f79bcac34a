use oblivious_dicut_core::graph::{brute_force_opt, expand_to_unweighted, monte_carlo_cut_weight};
use oblivious_dicut_core::rational::{int, ratio, to_f64, Rational};
use oblivious_dicut_core::twoand::{Literal, TwoAndInstance};
use oblivious_dicut_core::{StepFunction, WeightedDigraph};
use proptest::prelude::*;

fn weight() -> impl Strategy<Value = Rational> + Clone {
    (1i64..=12, 1i64..=4).prop_map(|(n, d)| ratio(n, d))
}

fn graph(max_vertices: usize) -> impl Strategy<Value = WeightedDigraph> {
    graph_with(max_vertices, weight())
}

fn graph_with(max_vertices: usize, weight: impl Strategy<Value = Rational> + Clone) -> impl Strategy<Value = WeightedDigraph> {
    (2..=max_vertices)
        .prop_flat_map(move |n| {
            let edge = (0..n, 0..n, weight.clone()).prop_filter("no loops", |(u, v, _)| u != v);
            (Just(n), prop::collection::vec(edge, 1..=2 * n))
        })
        .prop_map(|(n, edges)| WeightedDigraph::from_edges(n, edges).expect("valid edges"))
}

fn step_function() -> impl Strategy<Value = StepFunction> {
    prop::collection::btree_set(1i64..40, 0..=3)
        .prop_flat_map(|cuts| {
            let k = cuts.len();
            (Just(cuts), prop::collection::vec(0i64..=8, k + 1))
        })
        .prop_map(|(cuts, values)| {
            StepFunction::new(
                cuts.into_iter().map(|c| ratio(c, 40)).collect(),
                values.into_iter().map(|v| ratio(v, 8)).collect(),
            )
            .expect("valid step function")
        })
}

fn antisymmetric() -> impl Strategy<Value = StepFunction> {
    step_function().prop_map(|f| f.antisymmetrize())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reversal_leaves_antisymmetric_expectation_unchanged(g in graph(8), f in antisymmetric()) {
        prop_assert_eq!(g.expected_cut_weight(&f).unwrap(), g.invert().expected_cut_weight(&f).unwrap());
    }

    #[test]
    fn expectation_is_additive_over_disjoint_unions(a in graph(5), b in graph(5), f in step_function(), s in weight()) {
        let u = WeightedDigraph::disjoint_union(&[&a, &b], &[int(1), s.clone()]).unwrap();
        let lhs = u.expected_cut_weight(&f).unwrap();
        let rhs = a.expected_cut_weight(&f).unwrap() + b.expected_cut_weight(&f).unwrap() * s;
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn replication_scales_everything(g in graph(4), f in step_function(), k in 1usize..=3) {
        let r = g.replicate(k).unwrap();
        let kq = int(k as i64);
        prop_assert_eq!(r.expected_cut_weight(&f).unwrap(), g.expected_cut_weight(&f).unwrap() * &kq);
        prop_assert_eq!(r.total_weight(), g.total_weight() * kq);
    }

    #[test]
    fn expectation_never_exceeds_optimum(g in graph(8), f in step_function()) {
        let (_, opt) = brute_force_opt(&g).unwrap();
        prop_assert!(g.expected_cut_weight(&f).unwrap() <= opt);
    }

    #[test]
    fn antisymmetrize_is_antisymmetric_and_idempotent(f in step_function()) {
        let g = f.antisymmetrize();
        prop_assert!(g.is_antisymmetric(0.0));
        prop_assert_eq!(g.antisymmetrize(), g);
    }

    #[test]
    fn expansion_preserves_biases_and_scales_expectation(g in graph_with(4, (1i64..=6).prop_map(int)), f in antisymmetric()) {
        let ex = expand_to_unweighted(&g, 64).unwrap();
        let b0 = g.biases();
        let b1 = ex.graph.biases();
        for v in 0..g.vertex_count() {
            for j in 0..ex.copies {
                prop_assert_eq!(b1.get(ex.copy_of(v, j)), b0.get(v));
            }
        }
        let scaled = ex.integer_graph(&g).expected_cut_weight(&f).unwrap() * int(ex.copies as i64);
        prop_assert_eq!(ex.graph.expected_cut_weight(&f).unwrap(), scaled);
    }

    #[test]
    fn two_and_matches_reduction_for_antisymmetric_f(
        clauses in prop::collection::vec((0usize..5, 0usize..4, any::<bool>(), any::<bool>(), 1i64..=5), 1..=8),
        f in antisymmetric(),
    ) {
        let mut phi = TwoAndInstance::new(5);
        for (a, b, pa, pb, w) in clauses {
            let b = if b >= a { b + 1 } else { b };
            let lit = |v, p| if p { Literal::pos(v) } else { Literal::neg(v) };
            phi.add_clause(lit(a, pa), lit(b, pb), int(w)).unwrap();
        }
        let red = phi.reduce_to_dicut();
        prop_assert_eq!(phi.oblivious_expected_assignment(&f), red.graph.expected_cut_weight(&f).unwrap());
        let (_, best) = phi.brute_force_assignment().unwrap();
        let (_, cut) = brute_force_opt(&red.graph).unwrap();
        prop_assert!(cut >= best);
    }
}

proptest! {
    // A fixed seed keeps the sampled cases, and so the 4-sigma check, reproducible.
    #![proptest_config(ProptestConfig {
        cases: 6,
        rng_seed: proptest::test_runner::RngSeed::Fixed(4),
        ..ProptestConfig::default()
    })]

    #[test]
    fn monte_carlo_agrees_within_four_sigma(g in graph(6), f in antisymmetric(), seed in any::<u64>()) {
        let exact = to_f64(&g.expected_cut_weight(&f).unwrap());
        let est = monte_carlo_cut_weight(&g, &f, 100_000, seed).unwrap();
        let tolerance = 4.0 * est.std_error + 1e-12;
        prop_assert!((est.mean - exact).abs() <= tolerance, "mean {} exact {} se {}", est.mean, exact, est.std_error);
    }
}
