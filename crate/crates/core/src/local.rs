//! Primal-dual solver for Local ECC.
//!
//! Nodes are processed one at a time. A node `v` whose loose color-degree
//! exceeds `b_v + τ` raises `α_v` by the `(b_v+τ+1)`-th largest per-color
//! slack `s*`. Every loose color class with slack at most `s*` is tightened
//! completely; the others advance by the fraction `s*/slack(c)` of each
//! residual. After that `v` has at most `b_v + τ` loose colors, and since
//! edges never become loose again one pass over the nodes suffices.
//!
//! Each node performs `O(d_v)` rational operations (selection is linear), so
//! the solver runs in `O(Σ_v d_v)`.

use crate::dual::DualCertificate;
use crate::fill::fill_multi;
use crate::hypergraph::{EdgeColoredHypergraph, NodeId};
use crate::problem::{Assignment, ProblemKind, ProblemSpec};
use crate::rational::Rational;
use crate::select::kth_largest_in_place;
use crate::solution::{threshold, SolveError, Solution, ThresholdError};

/// Solves with nodes in ascending id order.
pub fn solve_local(h: &EdgeColoredHypergraph, spec: &ProblemSpec) -> Result<Solution, SolveError> {
    spec.expect_kind(ProblemKind::Local)?;
    spec.validate(h)?;
    Ok(run(h, spec, h.nodes()))
}

/// Solves with nodes visited in `order`, which must be a permutation of the
/// node ids. The guarantee does not depend on the order.
pub fn solve_local_ordered(
    h: &EdgeColoredHypergraph,
    spec: &ProblemSpec,
    order: &[NodeId],
) -> Result<Solution, SolveError> {
    spec.expect_kind(ProblemKind::Local)?;
    spec.validate(h)?;
    let n = h.node_count();
    let mut seen = vec![false; n];
    if order.len() != n || order.iter().any(|&v| v >= n || std::mem::replace(&mut seen[v], true)) {
        return Err(SolveError::BadOrder { node_count: n });
    }
    Ok(run(h, spec, order.iter().copied()))
}

/// Solves with a node order drawn from `seed`.
pub fn solve_local_shuffled(
    h: &EdgeColoredHypergraph,
    spec: &ProblemSpec,
    seed: u64,
) -> Result<Solution, SolveError> {
    let mut order: Vec<NodeId> = h.nodes().collect();
    crate::generators::shuffle(&mut order, seed);
    solve_local_ordered(h, spec, &order)
}

/// `τ = ⌈b/ε⌉ − 1` for `0 < ε ≤ b`.
pub fn local_bicriteria_threshold(b: u64, epsilon: &Rational) -> Result<u64, ThresholdError> {
    threshold(b, 1, epsilon)
}

fn run(h: &EdgeColoredHypergraph, spec: &ProblemSpec, order: impl Iterator<Item = NodeId>) -> Solution {
    let tau = spec.threshold_extra;
    // `w_e − level_e`; an edge is loose while this is positive.
    let mut residual: Vec<Rational> = h.edges().map(|e| h.weight(e).clone()).collect();
    let mut beta = vec![Rational::zero(); h.incidence_count()];
    let mut alpha = vec![Rational::zero(); h.node_count()];
    let mut slacks: Vec<(usize, Rational)> = Vec::new();
    let mut scratch: Vec<Rational> = Vec::new();

    for v in order {
        let cap = spec.local_budgets[v].saturating_add(tau);
        if (h.color_degree(v) as u64) <= cap {
            continue;
        }
        slacks.clear();
        for g in h.group_range(v) {
            let mut slack = Rational::zero();
            for &e in h.group_edges(g) {
                if residual[e].is_positive() {
                    slack += &residual[e];
                }
            }
            if slack.is_positive() {
                slacks.push((g, slack));
            }
        }
        if (slacks.len() as u64) <= cap {
            continue;
        }
        scratch.clear();
        scratch.extend(slacks.iter().map(|(_, s)| s.clone()));
        let s_star = kth_largest_in_place(&mut scratch, cap as usize + 1)
            .expect("more loose colors than the cap")
            .clone();

        for (g, slack) in &slacks {
            let grp = h.group(*g);
            let fraction = if slack <= &s_star { None } else { Some(&s_star / slack) };
            for k in grp.start..grp.end {
                let e = h.incidence_edge(k);
                if !residual[e].is_positive() {
                    continue;
                }
                let slot = h.incidence_slot(k);
                match &fraction {
                    None => beta[slot] += std::mem::take(&mut residual[e]),
                    Some(f) => {
                        let step = f * &residual[e];
                        residual[e] -= &step;
                        beta[slot] += step;
                    }
                }
            }
        }
        alpha[v] += s_star;
    }

    let loose: Vec<bool> = residual.iter().map(Rational::is_positive).collect();
    let levels: Vec<Rational> = h.edges().map(|e| h.weight(e) - &residual[e]).collect();
    drop(residual);
    let mut colors: Vec<Vec<usize>> = h
        .nodes()
        .map(|v| {
            let room = if spec.fill_heuristic {
                usize::try_from(spec.local_budgets[v].saturating_add(tau)).unwrap_or(usize::MAX)
            } else {
                0
            };
            let mut kept = Vec::with_capacity(h.color_degree(v).min(room));
            kept.extend(
                h.group_range(v)
                    .filter(|&g| h.group_edges(g).iter().any(|&e| loose[e]))
                    .map(|g| h.group(g).color),
            );
            kept
        })
        .collect();
    if spec.fill_heuristic {
        fill_multi(h, &mut colors, |v| spec.local_budgets[v].saturating_add(tau));
    }
    Solution {
        assignment: Assignment::Multi { colors },
        certificate: DualCertificate::from_slots(alpha, beta, Rational::zero(), levels),
    }
}
