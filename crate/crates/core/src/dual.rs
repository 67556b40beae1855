//! Dual certificates and fractional primal solutions, with exact feasibility
//! checks for the three LP relaxations.
//!
//! A feasible [`DualCertificate`] lower-bounds the optimum by weak duality:
//!
//! * Local: `Σ β − Σ_v b_v α_v`, subject to `Σ_{e∈δ_c(v)} β_{e,v} ≤ α_v` and
//!   `Σ_{v∈e} β_{e,v} ≤ w_e`;
//! * Robust: `Σ β − Σ_v α_v − λ b`, additionally `Σ_{e∈δ(v)} β_{e,v} − α_v ≤ λ`;
//! * Global: `Σ β − Σ_v α_v − λ b`, additionally `α_v ≤ λ`.
//!
//! All checks are exact; there is no tolerance.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::hypergraph::{Color, EdgeColoredHypergraph, EdgeId, NodeId};
use crate::problem::{ProblemKind, ProblemSpec};
use crate::rational::Rational;

/// Dual values `(α, β, λ)` plus the cached edge levels `ℓ_e = Σ_{u∈e} β_{e,u}`.
///
/// `beta` holds one entry per member slot of the hypergraph: edge `e` owns the
/// range `h.slots(e)`, members ascending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualCertificate {
    pub alpha: Vec<Rational>,
    pub beta: Vec<Rational>,
    pub lambda: Rational,
    pub levels: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DualError {
    #[error("{what}: expected length {expected}, found {found}")]
    DimensionMismatch {
        what: String,
        expected: usize,
        found: usize,
    },
}

fn check_len(what: impl Into<String>, expected: usize, found: usize) -> Result<(), DualError> {
    if expected != found {
        return Err(DualError::DimensionMismatch {
            what: what.into(),
            expected,
            found,
        });
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "constraint", rename_all = "snake_case")]
pub enum Violation {
    NegativeAlpha { node: NodeId, value: Rational },
    NegativeBeta { edge: EdgeId, node: NodeId, value: Rational },
    NegativeLambda { value: Rational },
    /// Local certificates carry no `λ`.
    UnexpectedLambda { value: Rational },
    LevelMismatch { edge: EdgeId, cached: Rational, actual: Rational },
    /// `Σ_{e∈δ_c(v)} β_{e,v} > α_v`.
    ColorClass { node: NodeId, color: Color, sum: Rational, alpha: Rational },
    /// `Σ_{v∈e} β_{e,v} > w_e`.
    EdgeCapacity { edge: EdgeId, level: Rational, weight: Rational },
    /// Robust: `Σ_{e∈δ(v)} β_{e,v} − α_v > λ`.
    RobustNode { node: NodeId, excess: Rational, lambda: Rational },
    /// Global: `α_v > λ`.
    GlobalNode { node: NodeId, alpha: Rational, lambda: Rational },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", content = "violations", rename_all = "snake_case")]
pub enum Verdict {
    Feasible,
    Infeasible(Vec<Violation>),
}

impl Verdict {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Verdict::Feasible)
    }
}

impl DualCertificate {
    /// The all-zero certificate, always feasible.
    pub fn zero(h: &EdgeColoredHypergraph) -> Self {
        DualCertificate {
            alpha: vec![Rational::zero(); h.node_count()],
            beta: vec![Rational::zero(); h.incidence_count()],
            lambda: Rational::zero(),
            levels: vec![Rational::zero(); h.edge_count()],
        }
    }

    /// Assembles a certificate from per-edge `β` lists (members ascending) and
    /// computes its levels.
    pub fn from_parts(alpha: Vec<Rational>, beta: Vec<Vec<Rational>>, lambda: Rational) -> Self {
        let levels = beta.iter().map(|b| b.iter().sum()).collect();
        DualCertificate {
            alpha,
            beta: beta.into_iter().flatten().collect(),
            lambda,
            levels,
        }
    }

    /// The `β` values of edge `e`, one per member.
    pub fn edge_beta(&self, h: &EdgeColoredHypergraph, e: EdgeId) -> &[Rational] {
        &self.beta[h.slots(e)]
    }

    pub(crate) fn from_slots(
        alpha: Vec<Rational>,
        beta: Vec<Rational>,
        lambda: Rational,
        levels: Vec<Rational>,
    ) -> Self {
        DualCertificate {
            alpha,
            beta,
            lambda,
            levels,
        }
    }

    pub fn beta_sum(&self) -> Rational {
        self.beta.iter().sum()
    }

    /// `B_v = Σ_{e∈δ(v)} β_{e,v}` for every node.
    pub fn node_beta_sums(&self, h: &EdgeColoredHypergraph) -> Vec<Rational> {
        let mut sums = vec![Rational::zero(); h.node_count()];
        for (slot, b) in self.beta.iter().enumerate() {
            sums[h.slot_node(slot)] += b;
        }
        sums
    }

    fn check_dimensions(&self, h: &EdgeColoredHypergraph) -> Result<(), DualError> {
        check_len("alpha", h.node_count(), self.alpha.len())?;
        check_len("beta", h.incidence_count(), self.beta.len())?;
        check_len("levels", h.edge_count(), self.levels.len())
    }
}

/// Checks every dual constraint of the LP selected by `spec.kind`.
pub fn verify_dual(
    h: &EdgeColoredHypergraph,
    spec: &ProblemSpec,
    cert: &DualCertificate,
) -> Result<Verdict, DualError> {
    cert.check_dimensions(h)?;
    let mut out = Vec::new();

    for (v, a) in cert.alpha.iter().enumerate() {
        if a.is_negative() {
            out.push(Violation::NegativeAlpha { node: v, value: a.clone() });
        }
    }
    for e in h.edges() {
        for slot in h.slots(e) {
            if cert.beta[slot].is_negative() {
                out.push(Violation::NegativeBeta {
                    edge: e,
                    node: h.slot_node(slot),
                    value: cert.beta[slot].clone(),
                });
            }
        }
    }
    match spec.kind {
        ProblemKind::Local if !cert.lambda.is_zero() => {
            out.push(Violation::UnexpectedLambda { value: cert.lambda.clone() })
        }
        _ if cert.lambda.is_negative() => {
            out.push(Violation::NegativeLambda { value: cert.lambda.clone() })
        }
        _ => {}
    }

    for e in h.edges() {
        let actual: Rational = cert.edge_beta(h, e).iter().sum();
        if actual != cert.levels[e] {
            out.push(Violation::LevelMismatch {
                edge: e,
                cached: cert.levels[e].clone(),
                actual: actual.clone(),
            });
        }
        if &actual > h.weight(e) {
            out.push(Violation::EdgeCapacity {
                edge: e,
                level: actual,
                weight: h.weight(e).clone(),
            });
        }
    }

    let beta_at = |k: usize| &cert.beta[h.incidence_slot(k)];
    for v in h.nodes() {
        let alpha = &cert.alpha[v];
        let mut node_sum = Rational::zero();
        for g in h.color_groups(v) {
            let sum: Rational = (g.start..g.end).map(beta_at).sum();
            if &sum > alpha {
                out.push(Violation::ColorClass {
                    node: v,
                    color: g.color,
                    sum: sum.clone(),
                    alpha: alpha.clone(),
                });
            }
            node_sum += sum;
        }
        match spec.kind {
            ProblemKind::Local => {}
            ProblemKind::Robust => {
                let excess = &node_sum - alpha;
                if excess > cert.lambda {
                    out.push(Violation::RobustNode {
                        node: v,
                        excess,
                        lambda: cert.lambda.clone(),
                    });
                }
            }
            ProblemKind::Global => {
                if alpha > &cert.lambda {
                    out.push(Violation::GlobalNode {
                        node: v,
                        alpha: alpha.clone(),
                        lambda: cert.lambda.clone(),
                    });
                }
            }
        }
    }

    Ok(if out.is_empty() {
        Verdict::Feasible
    } else {
        Verdict::Infeasible(out)
    })
}

/// Dual objective value; a lower bound on the optimum when `cert` is feasible.
/// Budgets are taken from `spec` without the bicriteria slack.
pub fn dual_objective(spec: &ProblemSpec, cert: &DualCertificate) -> Rational {
    let beta = cert.beta_sum();
    match spec.kind {
        ProblemKind::Local => {
            let charged: Rational = cert
                .alpha
                .iter()
                .zip(&spec.local_budgets)
                .filter(|(a, _)| !a.is_zero())
                .map(|(a, &b)| a * &Rational::from(b))
                .sum();
            beta - charged
        }
        ProblemKind::Robust | ProblemKind::Global => {
            let alpha: Rational = cert.alpha.iter().sum();
            beta - alpha - &cert.lambda * &Rational::from(spec.budget)
        }
    }
}

/// A fractional point of a primal LP: `x_{v,c}` (sparse, absent = 0), `y_e`,
/// and `z_v` (Robust/Global only; empty for Local).
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct FractionalSolution {
    pub x: Vec<BTreeMap<Color, Rational>>,
    pub y: Vec<Rational>,
    pub z: Vec<Rational>,
}

impl FractionalSolution {
    pub fn x(&self, v: NodeId, c: Color) -> Rational {
        self.x[v].get(&c).cloned().unwrap_or_default()
    }

    pub fn cost(&self, h: &EdgeColoredHypergraph) -> Rational {
        h.edges().map(|e| h.weight(e) * &self.y[e]).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "constraint", rename_all = "snake_case")]
pub enum FractionalViolation {
    OutOfRange { variable: String, value: Rational },
    /// Local `Σ_c x ≤ b_v`, Robust `z + Σ_c x ≤ 1`, Global `Σ_c x ≤ z + 1`.
    NodeCapacity { node: NodeId, lhs: Rational, rhs: Rational },
    /// `[z_v +] x_{v,c_e} + y_e ≥ 1`.
    Covering { edge: EdgeId, node: NodeId, lhs: Rational },
    /// `Σ_v z_v ≤ b`.
    RemovalBudget { total: Rational, budget: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FractionalCheck {
    pub violations: Vec<FractionalViolation>,
    /// `Σ_e w_e y_e`.
    pub cost: Rational,
}

impl FractionalCheck {
    pub fn is_feasible(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `frac` against the primal LP selected by `spec.kind`.
pub fn verify_fractional(
    h: &EdgeColoredHypergraph,
    spec: &ProblemSpec,
    frac: &FractionalSolution,
) -> Result<FractionalCheck, DualError> {
    check_len("x", h.node_count(), frac.x.len())?;
    check_len("y", h.edge_count(), frac.y.len())?;
    let with_z = spec.kind != ProblemKind::Local;
    if with_z {
        check_len("z", h.node_count(), frac.z.len())?;
    }
    let zero = Rational::zero();
    let one = Rational::one();
    let mut out = Vec::new();
    let mut range = |name: String, value: &Rational, upper: Option<&Rational>| {
        if value.is_negative() || upper.is_some_and(|u| value > u) {
            out.push(FractionalViolation::OutOfRange {
                variable: name,
                value: value.clone(),
            });
        }
    };
    for (v, row) in frac.x.iter().enumerate() {
        for (c, val) in row {
            if *c >= h.color_count() {
                range(format!("x[{v},{c}] (unknown color)"), &one, Some(&zero));
            }
            range(format!("x[{v},{c}]"), val, Some(&one));
        }
    }
    for (e, val) in frac.y.iter().enumerate() {
        range(format!("y[{e}]"), val, Some(&one));
    }
    if with_z {
        for (v, val) in frac.z.iter().enumerate() {
            range(format!("z[{v}]"), val, None);
        }
    }

    for v in h.nodes() {
        let xs: Rational = frac.x[v].values().sum();
        let z = if with_z { frac.z[v].clone() } else { zero.clone() };
        let (lhs, rhs) = match spec.kind {
            ProblemKind::Local => (xs, Rational::from(spec.local_budgets[v])),
            ProblemKind::Robust => (&z + &xs, one.clone()),
            ProblemKind::Global => (xs, &z + &one),
        };
        if lhs > rhs {
            out.push(FractionalViolation::NodeCapacity { node: v, lhs, rhs });
        }
    }
    for e in h.edges() {
        let c = h.color(e);
        for &v in h.members(e) {
            let mut lhs = frac.x(v, c) + &frac.y[e];
            if spec.kind == ProblemKind::Robust {
                lhs += &frac.z[v];
            }
            if lhs < one {
                out.push(FractionalViolation::Covering { edge: e, node: v, lhs });
            }
        }
    }
    if with_z {
        let total: Rational = frac.z.iter().sum();
        if total > Rational::from(spec.budget) {
            out.push(FractionalViolation::RemovalBudget {
                total,
                budget: spec.budget,
            });
        }
    }
    Ok(FractionalCheck {
        violations: out,
        cost: frac.cost(h),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{build_instance, EdgeSpec};

    fn parallel() -> EdgeColoredHypergraph {
        build_instance(
            2,
            2,
            vec![EdgeSpec::unit(vec![0, 1], 0), EdgeSpec::unit(vec![0, 1], 1)],
        )
        .unwrap()
    }

    #[test]
    fn zero_certificate_is_feasible_everywhere() {
        let h = parallel();
        let cert = DualCertificate::zero(&h);
        for spec in [
            ProblemSpec::local_uniform(2, 1),
            ProblemSpec::robust(1),
            ProblemSpec::global(1),
        ] {
            assert_eq!(verify_dual(&h, &spec, &cert).unwrap(), Verdict::Feasible);
            assert_eq!(dual_objective(&spec, &cert), Rational::zero());
        }
    }

    #[test]
    fn overfull_edge_is_reported() {
        let h = parallel();
        let mut cert = DualCertificate::zero(&h);
        cert.beta[1] = Rational::from(2i64);
        cert.alpha[1] = Rational::from(2i64);
        cert.levels[0] = Rational::from(2i64);
        let Verdict::Infeasible(v) = verify_dual(&h, &ProblemSpec::local_uniform(2, 1), &cert).unwrap()
        else {
            panic!("expected a violation");
        };
        assert_eq!(
            v,
            vec![Violation::EdgeCapacity {
                edge: 0,
                level: Rational::from(2i64),
                weight: Rational::one()
            }]
        );
    }

    #[test]
    fn robust_and_global_node_constraints() {
        let h = parallel();
        let half = Rational::new(1, 2);
        let beta = vec![vec![half.clone(), half.clone()], vec![half.clone(), half.clone()]];
        let cert = DualCertificate::from_parts(vec![half.clone(), half.clone()], beta.clone(), half.clone());
        assert!(verify_dual(&h, &ProblemSpec::robust(1), &cert).unwrap().is_feasible());
        assert!(verify_dual(&h, &ProblemSpec::global(1), &cert).unwrap().is_feasible());
        assert_eq!(dual_objective(&ProblemSpec::robust(1), &cert), half);

        let low_lambda = DualCertificate::from_parts(vec![half.clone(), half.clone()], beta, Rational::new(1, 4));
        let Verdict::Infeasible(v) = verify_dual(&h, &ProblemSpec::robust(1), &low_lambda).unwrap() else {
            panic!()
        };
        assert!(v.iter().all(|x| matches!(x, Violation::RobustNode { .. })));
        let Verdict::Infeasible(v) = verify_dual(&h, &ProblemSpec::global(1), &low_lambda).unwrap() else {
            panic!()
        };
        assert_eq!(v.len(), 2);
        assert!(matches!(v[0], Violation::GlobalNode { node: 0, .. }));
    }

    #[test]
    fn stale_levels_and_local_lambda_are_flagged() {
        let h = parallel();
        let mut cert = DualCertificate::zero(&h);
        cert.levels[1] = Rational::one();
        cert.lambda = Rational::one();
        let Verdict::Infeasible(v) = verify_dual(&h, &ProblemSpec::local_uniform(2, 1), &cert).unwrap() else {
            panic!()
        };
        assert!(v.contains(&Violation::UnexpectedLambda { value: Rational::one() }));
        assert!(v.iter().any(|x| matches!(x, Violation::LevelMismatch { edge: 1, .. })));
    }

    #[test]
    fn dimension_mismatch() {
        let h = parallel();
        let mut cert = DualCertificate::zero(&h);
        cert.alpha.pop();
        assert!(matches!(
            verify_dual(&h, &ProblemSpec::robust(0), &cert),
            Err(DualError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn zero_fractional_solution_fails_covering() {
        let h = build_instance(1, 1, vec![EdgeSpec::unit(vec![0], 0)]).unwrap();
        let frac = FractionalSolution {
            x: vec![BTreeMap::new()],
            y: vec![Rational::zero()],
            z: vec![],
        };
        let check = verify_fractional(&h, &ProblemSpec::local_uniform(1, 1), &frac).unwrap();
        assert!(!check.is_feasible());
        assert!(matches!(check.violations[0], FractionalViolation::Covering { edge: 0, node: 0, .. }));
    }

    #[test]
    fn fractional_ranges_and_budget() {
        let h = build_instance(1, 1, vec![EdgeSpec::unit(vec![0], 0)]).unwrap();
        let frac = FractionalSolution {
            x: vec![BTreeMap::new()],
            y: vec![Rational::zero()],
            z: vec![Rational::new(3, 2)],
        };
        let check = verify_fractional(&h, &ProblemSpec::robust(1), &frac).unwrap();
        assert!(check.violations.iter().any(|v| matches!(v, FractionalViolation::NodeCapacity { .. })));
        assert!(check.violations.iter().any(|v| matches!(v, FractionalViolation::RemovalBudget { .. })));
        let check = verify_fractional(&h, &ProblemSpec::global(1), &frac).unwrap();
        assert!(check.violations.iter().any(|v| matches!(v, FractionalViolation::Covering { .. })));
    }
}
