//! Primal-dual solver for Global ECC.
//!
//! Dual variables grow on `R` until the extra colors it still demands,
//! `Σ_{v∈R}(|χ(δ(v)∩L)| − 1)`, fit within `b + τ`. Every node then keeps all
//! of its loose colors.

use crate::fill::majority_color;
use crate::hypergraph::EdgeColoredHypergraph;
use crate::problem::{Assignment, ProblemKind, ProblemSpec};
use crate::rational::Rational;
use crate::solution::{threshold, SolveError, Solution, ThresholdError};
use crate::stepper::{Rule, Stepper};

pub fn solve_global(h: &EdgeColoredHypergraph, spec: &ProblemSpec) -> Result<Solution, SolveError> {
    spec.expect_kind(ProblemKind::Global)?;
    spec.validate(h)?;
    let mut st = Stepper::new(h, Rule::Global);
    st.run(spec.budget.saturating_add(spec.threshold_extra));

    let colors = h
        .nodes()
        .map(|v| {
            let mut set: Vec<usize> = st.loose_palette(v).collect();
            debug_assert!(set.len() <= 1 || st.in_r[v]);
            if set.is_empty() && spec.fill_heuristic {
                set.push(majority_color(h, v));
            }
            set
        })
        .collect();
    Ok(Solution {
        assignment: Assignment::Multi { colors },
        certificate: st.into_certificate(),
    })
}

/// `τ = ⌈2b/ε⌉ − 1` for `b ≥ 1` and `0 < ε ≤ 2b`.
pub fn global_bicriteria_threshold(b: u64, epsilon: &Rational) -> Result<u64, ThresholdError> {
    threshold(b, 2, epsilon)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dual::{dual_objective, verify_dual};
    use crate::hypergraph::{build_instance, EdgeSpec};
    use crate::problem::count_mistakes;

    #[test]
    fn gap_trace() {
        let h = build_instance(2, 2, vec![EdgeSpec::unit(vec![0, 1], 0), EdgeSpec::unit(vec![0, 1], 1)]).unwrap();
        let half = Rational::new(1, 2);
        for (fill, expected) in [(false, 2), (true, 1)] {
            let spec = ProblemSpec::global(1).with_fill(fill);
            let sol = solve_global(&h, &spec).unwrap();
            assert!(verify_dual(&h, &spec, &sol.certificate).unwrap().is_feasible());
            assert_eq!(sol.certificate.lambda, half);
            assert_eq!(sol.certificate.alpha, vec![half.clone(), half.clone()]);
            assert_eq!(dual_objective(&spec, &sol.certificate), half);
            assert_eq!(count_mistakes(&h, &spec, &sol.assignment).unwrap(), Rational::from(expected));
        }
    }

    #[test]
    fn path_gives_middle_both_colors() {
        let h = build_instance(3, 2, vec![EdgeSpec::unit(vec![0, 1], 0), EdgeSpec::unit(vec![1, 2], 1)]).unwrap();
        let spec = ProblemSpec::global(1);
        let sol = solve_global(&h, &spec).unwrap();
        assert_eq!(sol.certificate.lambda, Rational::zero());
        assert_eq!(sol.assignment, Assignment::Multi { colors: vec![vec![0], vec![0, 1], vec![1]] });
        assert_eq!(count_mistakes(&h, &spec, &sol.assignment).unwrap(), Rational::zero());
    }

    #[test]
    fn isolated_node_gets_a_color_with_fill() {
        let h = build_instance(1, 1, vec![]).unwrap();
        let sol = solve_global(&h, &ProblemSpec::global(0)).unwrap();
        assert_eq!(sol.assignment, Assignment::Multi { colors: vec![vec![0]] });
        let sol = solve_global(&h, &ProblemSpec::global(0).with_fill(false)).unwrap();
        assert_eq!(sol.assignment, Assignment::Multi { colors: vec![vec![]] });
    }

    #[test]
    fn threshold_values() {
        let t = |b, e: &str| global_bicriteria_threshold(b, &e.parse().unwrap());
        assert_eq!(t(1, "2"), Ok(0));
        assert_eq!(t(2, "1"), Ok(3));
        assert_eq!(t(5, "10"), Ok(0));
        assert!(t(5, "21/2").is_err());
    }
}
