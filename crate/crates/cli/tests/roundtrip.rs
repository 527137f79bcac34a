use oblivious_dicut::formats::{
    parse_certificate, parse_graph, parse_stepfn, parse_twoand, write_certificate, write_graph, write_stepfn,
    write_twoand, CertificateFile,
};
use oblivious_dicut_core::rational::{int, ratio, Rational};
use oblivious_dicut_core::twoand::{Literal, TwoAndInstance};
use oblivious_dicut_core::{approximation_ratio, StepFunction, WeightedDigraph};
use proptest::prelude::*;

fn weight() -> impl Strategy<Value = Rational> {
    (1i64..=1000, 1i64..=97).prop_map(|(n, d)| ratio(n, d))
}

fn graph() -> impl Strategy<Value = WeightedDigraph> {
    (1usize..=9)
        .prop_flat_map(|n| (Just(n), prop::collection::vec((0..n, 0..n, weight()), 0..=20)))
        .prop_map(|(n, edges)| {
            let edges = edges.into_iter().filter(|(u, v, _)| u != v);
            WeightedDigraph::from_edges(n, edges).expect("valid edges")
        })
}

fn step_function() -> impl Strategy<Value = StepFunction> {
    prop::collection::btree_set(1i64..60, 0..=5)
        .prop_flat_map(|cuts| {
            let k = cuts.len();
            (Just(cuts), prop::collection::vec(0i64..=12, k + 1), any::<bool>())
        })
        .prop_map(|(cuts, values, mirror)| {
            let f = StepFunction::new(
                cuts.into_iter().map(|c| ratio(c, 60)).collect(),
                values.into_iter().map(|v| ratio(v, 12)).collect(),
            )
            .expect("valid step function");
            if mirror {
                f.antisymmetrize()
            } else {
                f
            }
        })
}

fn twoand() -> impl Strategy<Value = TwoAndInstance> {
    prop::collection::vec((0usize..6, 0usize..5, any::<bool>(), any::<bool>(), weight()), 0..=10).prop_map(|cs| {
        let mut phi = TwoAndInstance::new(6);
        for (a, b, pa, pb, w) in cs {
            let b = if b >= a { b + 1 } else { b };
            let lit = |v, p| if p { Literal::pos(v) } else { Literal::neg(v) };
            phi.add_clause(lit(a, pa), lit(b, pb), w).expect("distinct variables");
        }
        phi
    })
}

proptest! {
    #[test]
    fn graphs_round_trip(g in graph()) {
        let text = write_graph(&g);
        let back = parse_graph(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(write_graph(&back), text);
    }

    #[test]
    fn step_functions_round_trip(f in step_function()) {
        let text = write_stepfn(&f);
        let back = parse_stepfn(&text).unwrap();
        prop_assert_eq!(&back, &f);
        prop_assert_eq!(back.fingerprint(), f.fingerprint());
    }

    #[test]
    fn twoand_round_trips(phi in twoand()) {
        let text = write_twoand(&phi);
        let back = parse_twoand(&text).unwrap();
        prop_assert_eq!(write_twoand(&back), text);
        prop_assert_eq!(back.total_weight(), phi.total_weight());
    }

    #[test]
    fn parsers_never_panic(text in "[ -~\n]{0,200}") {
        let _ = parse_graph(&text);
        let _ = parse_stepfn(&text);
        let _ = parse_twoand(&text);
        let _ = parse_certificate(&text);
    }
}

#[test]
fn certificates_round_trip() {
    let f = StepFunction::f_delta(&ratio(2, 5)).unwrap();
    let c = approximation_ratio(&f).unwrap();
    let file = CertificateFile::from_certificate(&c);
    let text = write_certificate(&file);
    let back = parse_certificate(&text).unwrap();
    assert_eq!(back, file);
    assert_eq!(write_certificate(&back), text);
}

#[test]
fn errors_carry_positions() {
    let e = parse_graph("dicut-graph v1 2\n0 1 1\n0 5 1\n").unwrap_err();
    assert_eq!(e.line, 3);
    let e = parse_graph("dicut-graph v1 2\n0 1 -1\n").unwrap_err();
    assert_eq!(e.line, 2);
    assert!(parse_stepfn("stepfn v1\n0 1/2 0\n").is_err());
    assert!(parse_twoand("twoand v1 2\n+1 -1 1\n").is_err());
    assert!(parse_twoand("twoand v1 2\n+1 +3 1\n").is_err());
}

#[test]
fn comments_and_blank_lines_are_ignored() {
    let g = parse_graph("# two vertices\ndicut-graph v1 2\n\n0 1 2/3 # forward\n1 0 1/3\n").unwrap();
    assert_eq!(g.total_weight(), int(1));
}
