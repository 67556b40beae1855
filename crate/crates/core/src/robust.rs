//! Primal-dual solver for Robust ECC.
//!
//! Dual variables grow on the candidate set `R` of nodes with two or more
//! loose colors until `|R| ≤ b + τ`. `R` is then removed and every survivor
//! takes its single remaining loose color.

use crate::fill::majority_color;
use crate::hypergraph::EdgeColoredHypergraph;
use crate::problem::{Assignment, ProblemKind, ProblemSpec};
use crate::rational::Rational;
use crate::solution::{threshold, SolveError, Solution, ThresholdError};
use crate::stepper::{Rule, Stepper};

pub fn solve_robust(h: &EdgeColoredHypergraph, spec: &ProblemSpec) -> Result<Solution, SolveError> {
    spec.expect_kind(ProblemKind::Robust)?;
    spec.validate(h)?;
    let mut st = Stepper::new(h, Rule::Robust);
    st.run(spec.budget.saturating_add(spec.threshold_extra));

    let removed: Vec<usize> = h.nodes().filter(|&v| st.in_r[v]).collect();
    let colors = h
        .nodes()
        .map(|v| {
            if st.in_r[v] {
                return None;
            }
            let mut palette = st.loose_palette(v);
            let color = palette.next();
            debug_assert!(palette.next().is_none());
            color.or_else(|| spec.fill_heuristic.then(|| majority_color(h, v)))
        })
        .collect();
    Ok(Solution {
        assignment: Assignment::robust(removed, colors),
        certificate: st.into_certificate(),
    })
}

/// `τ = ⌈2b/ε⌉ − 1` for `b ≥ 1` and `0 < ε ≤ 2b`.
pub fn robust_bicriteria_threshold(b: u64, epsilon: &Rational) -> Result<u64, ThresholdError> {
    threshold(b, 2, epsilon)
}
