//! Instance statistics, triviality, and the relative error estimate.

use serde::{Deserialize, Serialize};

use crate::hypergraph::EdgeColoredHypergraph;
use crate::problem::{ProblemKind, ProblemSpec};
use crate::rational::Rational;

/// Summary statistics of an instance. Averages are 0 on an empty node set.
///
/// The integer totals are kept alongside the averages so that triviality
/// tests can be decided exactly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceStats {
    pub node_count: usize,
    pub edge_count: usize,
    pub color_count: usize,
    /// `r = max_e |e|`.
    pub rank: usize,
    /// `d̄ = Σ_v d_v / |V|`.
    pub average_degree: f64,
    /// `d̂ = max_v |χ(δ(v))|`.
    pub max_color_degree: usize,
    pub average_color_degree: f64,
    /// `ρ`, fraction of nodes with color-degree at least 2.
    pub intersect_ratio: f64,
    pub total_degree: usize,
    pub total_color_degree: usize,
    pub multi_color_nodes: usize,
}

pub fn compute_stats(h: &EdgeColoredHypergraph) -> InstanceStats {
    let n = h.node_count();
    let rank = h.edges().map(|e| h.members(e).len()).max().unwrap_or(0);
    let total_degree = h.incidence_count();
    let mut total_color_degree = 0;
    let mut max_color_degree = 0;
    let mut multi_color_nodes = 0;
    for v in h.nodes() {
        let cd = h.color_degree(v);
        total_color_degree += cd;
        max_color_degree = max_color_degree.max(cd);
        if cd >= 2 {
            multi_color_nodes += 1;
        }
    }
    let avg = |x: usize| if n == 0 { 0.0 } else { x as f64 / n as f64 };
    InstanceStats {
        node_count: n,
        edge_count: h.edge_count(),
        color_count: h.color_count(),
        rank,
        average_degree: avg(total_degree),
        max_color_degree,
        average_color_degree: avg(total_color_degree),
        intersect_ratio: avg(multi_color_nodes),
        total_degree,
        total_color_degree,
        multi_color_nodes,
    }
}

/// Whether the budget alone guarantees a zero-mistake solution:
///
/// * Local: `min_v b_v ≥ d̂`;
/// * Robust: `b ≥ ρ|V|`;
/// * Global: `b ≥ |V|(avg color-degree − 1)`.
pub fn is_trivial(stats: &InstanceStats, spec: &ProblemSpec) -> bool {
    match spec.kind {
        ProblemKind::Local => match spec.min_local_budget() {
            Some(b) => b >= stats.max_color_degree as u64,
            None => true,
        },
        ProblemKind::Robust => spec.budget >= stats.multi_color_nodes as u64,
        ProblemKind::Global => {
            spec.budget as u128 + stats.node_count as u128 >= stats.total_color_degree as u128
        }
    }
}

/// Per-node refinement of Local triviality: every `b_v ≥ |χ(δ(v))|`.
/// Coincides with [`is_trivial`] for uniform budgets.
pub fn is_trivial_per_node(h: &EdgeColoredHypergraph, spec: &ProblemSpec) -> bool {
    h.nodes()
        .all(|v| spec.local_budgets.get(v).copied().unwrap_or(0) >= h.color_degree(v) as u64)
}

/// `(A − L) / L`, or 0 when `L = 0`.
pub fn relative_error(alg_cost: &Rational, lower_bound: &Rational) -> Rational {
    if lower_bound.is_zero() {
        Rational::zero()
    } else {
        (alg_cost - lower_bound) / lower_bound
    }
}
