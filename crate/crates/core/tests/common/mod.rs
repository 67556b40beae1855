#![allow(dead_code)]

use ecc_core::{build_instance, EdgeColoredHypergraph, EdgeSpec, Rational};
use proptest::prelude::*;

/// Weighted instances with up to `max_n` nodes and `max_m` edges; weights
/// include 0 and non-integers.
pub fn weighted_instance(
    max_n: usize,
    max_m: usize,
    max_colors: usize,
) -> impl Strategy<Value = EdgeColoredHypergraph> {
    (1..=max_n, 1..=max_colors).prop_flat_map(move |(n, k)| {
        let edge = (
            prop::collection::btree_set(0..n, 1..=n.min(3)),
            0..k,
            prop::sample::select(vec![(0i64, 1i64), (1, 2), (1, 1), (1, 1), (2, 1), (3, 7), (5, 3)]),
        );
        prop::collection::vec(edge, 0..=max_m).prop_map(move |edges| {
            let specs = edges
                .into_iter()
                .map(|(mem, c, (p, q))| EdgeSpec::new(mem.into_iter().collect::<Vec<_>>(), c, Rational::new(p, q)))
                .collect();
            build_instance(n, k, specs).unwrap()
        })
    })
}
