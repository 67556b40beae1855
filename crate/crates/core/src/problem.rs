//! Problem variants, budgets, and node colorings.

use serde::{Deserialize, Serialize};

use crate::hypergraph::{Color, EdgeColoredHypergraph, EdgeId, NodeId};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProblemKind {
    /// Each node may hold up to `b_v` colors.
    Local,
    /// Up to `b` nodes may be removed; survivors get one color each.
    Robust,
    /// At most `|V| + b` colors in total, at least one per node.
    Global,
}

impl ProblemKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ProblemKind::Local => "local",
            ProblemKind::Robust => "robust",
            ProblemKind::Global => "global",
        }
    }
}

impl std::fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for ProblemKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "local" => Ok(ProblemKind::Local),
            "robust" => Ok(ProblemKind::Robust),
            "global" => Ok(ProblemKind::Global),
            other => Err(format!("unknown problem `{other}` (expected local, robust or global)")),
        }
    }
}

/// Which problem to solve and with what budgets.
///
/// `threshold_extra` is the bicriteria slack `τ`: solvers stop as soon as the
/// budget plus `τ` is met, and feasibility checks accept usage up to `b + τ`.
/// Dual objectives are always computed against the unrelaxed budgets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProblemSpec {
    pub kind: ProblemKind,
    /// Per-node budgets `b_v` (Local only; empty otherwise).
    pub local_budgets: Vec<u64>,
    /// `b` for Robust and Global (0 for Local).
    pub budget: u64,
    pub threshold_extra: u64,
    pub fill_heuristic: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpecError {
    #[error("{expected} solver called with a {found} problem spec")]
    WrongKind {
        expected: ProblemKind,
        found: ProblemKind,
    },
    #[error("{found} local budgets given for {node_count} nodes")]
    BudgetCount { found: usize, node_count: usize },
    #[error("local budget of node {node} must be at least 1")]
    ZeroLocalBudget { node: NodeId },
}

impl ProblemSpec {
    /// Local ECC with every `b_v = b`.
    pub fn local_uniform(node_count: usize, b: u64) -> Self {
        Self::local(vec![b; node_count])
    }

    pub fn local(budgets: Vec<u64>) -> Self {
        ProblemSpec {
            kind: ProblemKind::Local,
            local_budgets: budgets,
            budget: 0,
            threshold_extra: 0,
            fill_heuristic: true,
        }
    }

    pub fn robust(b: u64) -> Self {
        ProblemSpec {
            kind: ProblemKind::Robust,
            local_budgets: Vec::new(),
            budget: b,
            threshold_extra: 0,
            fill_heuristic: true,
        }
    }

    pub fn global(b: u64) -> Self {
        ProblemSpec {
            kind: ProblemKind::Global,
            ..Self::robust(b)
        }
    }

    pub fn with_threshold(mut self, tau: u64) -> Self {
        self.threshold_extra = tau;
        self
    }

    pub fn with_fill(mut self, fill: bool) -> Self {
        self.fill_heuristic = fill;
        self
    }

    pub fn validate(&self, h: &EdgeColoredHypergraph) -> Result<(), SpecError> {
        if self.kind == ProblemKind::Local {
            if self.local_budgets.len() != h.node_count() {
                return Err(SpecError::BudgetCount {
                    found: self.local_budgets.len(),
                    node_count: h.node_count(),
                });
            }
            if let Some(node) = self.local_budgets.iter().position(|&b| b == 0) {
                return Err(SpecError::ZeroLocalBudget { node });
            }
        }
        Ok(())
    }

    pub(crate) fn expect_kind(&self, expected: ProblemKind) -> Result<(), SpecError> {
        if self.kind != expected {
            return Err(SpecError::WrongKind {
                expected,
                found: self.kind,
            });
        }
        Ok(())
    }

    /// `b_max`, or 0 when there are no nodes.
    pub fn max_local_budget(&self) -> u64 {
        self.local_budgets.iter().copied().max().unwrap_or(0)
    }

    pub fn min_local_budget(&self) -> Option<u64> {
        self.local_budgets.iter().copied().min()
    }
}

/// A solution: either a multi-coloring (Local, Global) or a removal set plus
/// single colors for the survivors (Robust).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Assignment {
    /// `colors[v]` is `σ(v)`, ascending without repeats.
    Multi { colors: Vec<Vec<Color>> },
    /// `removed` is `V_R`, ascending; `colors[v]` is `None` for removed nodes
    /// and for survivors left uncolored.
    RobustOut {
        removed: Vec<NodeId>,
        colors: Vec<Option<Color>>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AssignmentError {
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error("assignment shape does not match a {0} problem")]
    KindMismatch(ProblemKind),
    #[error("assignment covers {found} nodes, instance has {node_count}")]
    NodeCount { found: usize, node_count: usize },
    #[error("node {node} is assigned color {color}, but the instance has {colors} colors")]
    ColorOutOfRange { node: NodeId, color: Color, colors: usize },
    #[error("color set of node {node} is not strictly ascending")]
    UnsortedColors { node: NodeId },
    #[error("node {node} holds {used} colors, allowed {allowed}")]
    LocalBudget { node: NodeId, used: usize, allowed: u64 },
    #[error("{used} extra colors used, allowed {allowed}")]
    GlobalBudget { used: u64, allowed: u64 },
    #[error("{used} nodes removed, allowed {allowed}")]
    RemovalBudget { used: u64, allowed: u64 },
    #[error("removed set is not a strictly ascending list of node ids")]
    BadRemovedSet,
    #[error("removed node {node} must not carry a color")]
    RemovedNodeColored { node: NodeId },
}

impl Assignment {
    /// Builds a multi-coloring, sorting and deduplicating each set.
    pub fn multi(mut colors: Vec<Vec<Color>>) -> Self {
        for set in &mut colors {
            set.sort_unstable();
            set.dedup();
        }
        Assignment::Multi { colors }
    }

    pub fn robust(mut removed: Vec<NodeId>, mut colors: Vec<Option<Color>>) -> Self {
        removed.sort_unstable();
        removed.dedup();
        for &v in &removed {
            if let Some(c) = colors.get_mut(v) {
                *c = None;
            }
        }
        Assignment::RobustOut { removed, colors }
    }

    /// Number of extra colors `Σ_v max(|σ(v)| - 1, 0)` of a multi-coloring.
    pub fn extra_colors(&self) -> u64 {
        match self {
            Assignment::Multi { colors } => colors
                .iter()
                .map(|s| s.len().saturating_sub(1) as u64)
                .sum(),
            Assignment::RobustOut { .. } => 0,
        }
    }

    pub fn removed_count(&self) -> usize {
        match self {
            Assignment::Multi { .. } => 0,
            Assignment::RobustOut { removed, .. } => removed.len(),
        }
    }

    pub fn max_colors_per_node(&self) -> usize {
        match self {
            Assignment::Multi { colors } => colors.iter().map(Vec::len).max().unwrap_or(0),
            Assignment::RobustOut { .. } => 1,
        }
    }
}

/// Checks that `a` has the right shape for `spec` and respects every budget
/// (relaxed by `spec.threshold_extra`).
pub fn check_feasible(
    h: &EdgeColoredHypergraph,
    spec: &ProblemSpec,
    a: &Assignment,
) -> Result<(), AssignmentError> {
    spec.validate(h)?;
    let n = h.node_count();
    let tau = spec.threshold_extra;
    match (spec.kind, a) {
        (ProblemKind::Local | ProblemKind::Global, Assignment::Multi { colors }) => {
            if colors.len() != n {
                return Err(AssignmentError::NodeCount {
                    found: colors.len(),
                    node_count: n,
                });
            }
            for (v, set) in colors.iter().enumerate() {
                if set.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(AssignmentError::UnsortedColors { node: v });
                }
                if let Some(&c) = set.iter().find(|&&c| c >= h.color_count()) {
                    return Err(AssignmentError::ColorOutOfRange {
                        node: v,
                        color: c,
                        colors: h.color_count(),
                    });
                }
                if spec.kind == ProblemKind::Local {
                    let allowed = spec.local_budgets[v] + tau;
                    if set.len() as u64 > allowed {
                        return Err(AssignmentError::LocalBudget {
                            node: v,
                            used: set.len(),
                            allowed,
                        });
                    }
                }
            }
            if spec.kind == ProblemKind::Global {
                let used = a.extra_colors();
                if used > spec.budget + tau {
                    return Err(AssignmentError::GlobalBudget {
                        used,
                        allowed: spec.budget + tau,
                    });
                }
            }
            Ok(())
        }
        (ProblemKind::Robust, Assignment::RobustOut { removed, colors }) => {
            if colors.len() != n {
                return Err(AssignmentError::NodeCount {
                    found: colors.len(),
                    node_count: n,
                });
            }
            if removed.windows(2).any(|w| w[0] >= w[1]) || removed.iter().any(|&v| v >= n) {
                return Err(AssignmentError::BadRemovedSet);
            }
            if removed.len() as u64 > spec.budget + tau {
                return Err(AssignmentError::RemovalBudget {
                    used: removed.len() as u64,
                    allowed: spec.budget + tau,
                });
            }
            if let Some(&node) = removed.iter().find(|&&v| colors[v].is_some()) {
                return Err(AssignmentError::RemovedNodeColored { node });
            }
            for (v, c) in colors.iter().enumerate() {
                if let Some(c) = *c {
                    if c >= h.color_count() {
                        return Err(AssignmentError::ColorOutOfRange {
                            node: v,
                            color: c,
                            colors: h.color_count(),
                        });
                    }
                }
            }
            Ok(())
        }
        (kind, _) => Err(AssignmentError::KindMismatch(kind)),
    }
}

/// Edges that are mistakes under `a`, without any budget check.
///
/// For multi-colorings `e` is a mistake iff some `v ∈ e` lacks `c_e`. For
/// robust solutions removed nodes vanish from every edge first; an edge whose
/// members were all removed is satisfied.
pub fn mistake_edges(h: &EdgeColoredHypergraph, a: &Assignment) -> Vec<EdgeId> {
    match a {
        Assignment::Multi { colors } => h
            .edges()
            .filter(|&e| {
                let c = h.color(e);
                h.members(e)
                    .iter()
                    .any(|&v| colors[v].binary_search(&c).is_err())
            })
            .collect(),
        Assignment::RobustOut { removed, colors } => {
            let mut gone = vec![false; h.node_count()];
            for &v in removed {
                gone[v] = true;
            }
            h.edges()
                .filter(|&e| {
                    let c = h.color(e);
                    h.members(e)
                        .iter()
                        .any(|&v| !gone[v] && colors[v] != Some(c))
                })
                .collect()
        }
    }
}

/// Total weight of mistakes of a feasible assignment.
pub fn count_mistakes(
    h: &EdgeColoredHypergraph,
    spec: &ProblemSpec,
    a: &Assignment,
) -> Result<Rational, AssignmentError> {
    check_feasible(h, spec, a)?;
    Ok(mistake_weight(h, a))
}

/// Mistake weight without the feasibility check.
pub fn mistake_weight(h: &EdgeColoredHypergraph, a: &Assignment) -> Rational {
    mistake_edges(h, a).into_iter().map(|e| h.weight(e)).sum()
}
