//! Solver output, dispatch, and bicriteria thresholds.

use serde::{Deserialize, Serialize};

use crate::dual::{dual_objective, DualCertificate};
use crate::hypergraph::EdgeColoredHypergraph;
use crate::problem::{mistake_weight, Assignment, ProblemKind, ProblemSpec, SpecError};
use crate::rational::Rational;

/// An assignment together with the dual certificate that bounds its quality.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Solution {
    pub assignment: Assignment,
    pub certificate: DualCertificate,
}

impl Solution {
    pub fn mistakes(&self, h: &EdgeColoredHypergraph) -> Rational {
        mistake_weight(h, &self.assignment)
    }

    pub fn lower_bound(&self, spec: &ProblemSpec) -> Rational {
        dual_objective(spec, &self.certificate)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolveError {
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error("node order is not a permutation of 0..{node_count}")]
    BadOrder { node_count: usize },
}

/// Runs the primal-dual solver matching `spec.kind`.
pub fn solve(h: &EdgeColoredHypergraph, spec: &ProblemSpec) -> Result<Solution, SolveError> {
    match spec.kind {
        ProblemKind::Local => crate::local::solve_local(h, spec),
        ProblemKind::Robust => crate::robust::solve_robust(h, spec),
        ProblemKind::Global => crate::global::solve_global(h, spec),
    }
}

/// Approximation factor proven by a certificate: `b_max + 1` for Local and
/// `2(b + 1)` otherwise. With `τ > 0` the bicriteria factor `1 + ε` resp.
/// `2 + ε` applies instead; see [`bicriteria_ratio`].
pub fn certified_ratio(spec: &ProblemSpec) -> Rational {
    match spec.kind {
        ProblemKind::Local => Rational::from(spec.max_local_budget()) + Rational::one(),
        ProblemKind::Robust | ProblemKind::Global => {
            Rational::from(2u64) * (Rational::from(spec.budget) + Rational::one())
        }
    }
}

pub fn bicriteria_ratio(kind: ProblemKind, epsilon: &Rational) -> Rational {
    match kind {
        ProblemKind::Local => Rational::one() + epsilon,
        ProblemKind::Robust | ProblemKind::Global => Rational::from(2u64) + epsilon,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ThresholdError {
    #[error("budget must be at least 1 for a bicriteria run")]
    ZeroBudget,
    #[error("epsilon {epsilon} outside (0, {max}]")]
    EpsilonOutOfRange { epsilon: Rational, max: Rational },
    #[error("threshold does not fit in 64 bits")]
    Overflow,
}

/// `⌈scale·b / ε⌉ − 1` for `0 < ε ≤ scale·b`.
pub(crate) fn threshold(b: u64, scale: u64, epsilon: &Rational) -> Result<u64, ThresholdError> {
    if b == 0 {
        return Err(ThresholdError::ZeroBudget);
    }
    let max = Rational::from(b) * Rational::from(scale);
    if !epsilon.is_positive() || epsilon > &max {
        return Err(ThresholdError::EpsilonOutOfRange {
            epsilon: epsilon.clone(),
            max,
        });
    }
    let tau = (max / epsilon).ceil() - crate::rational::BigInt::from(1);
    u64::try_from(&tau).map_err(|_| ThresholdError::Overflow)
}

/// Bicriteria slack `τ` for `spec.kind` (Local uses `b = b_max`).
pub fn bicriteria_threshold(spec: &ProblemSpec, epsilon: &Rational) -> Result<u64, ThresholdError> {
    match spec.kind {
        ProblemKind::Local => crate::local::local_bicriteria_threshold(spec.max_local_budget(), epsilon),
        ProblemKind::Robust => crate::robust::robust_bicriteria_threshold(spec.budget, epsilon),
        ProblemKind::Global => crate::global::global_bicriteria_threshold(spec.budget, epsilon),
    }
}
