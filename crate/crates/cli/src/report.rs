//! Running one solver configuration and reporting the result.

use std::time::Instant;

use ecc_core::{
    bicriteria_ratio, brute, certified_ratio, compute_stats, count_mistakes, dual_objective, is_trivial,
    relative_error, solve, solve_local_shuffled, verify_dual, Assignment, DualCertificate,
    EdgeColoredHypergraph, ProblemKind, ProblemSpec, Rational, Verdict,
};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// Where the lower bound `L` comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundSource {
    DualCertificate,
    ExactOracle,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveOptions {
    pub fill_heuristic: bool,
    /// Seed of the shuffled node order (Local only); ascending order when absent.
    pub order_seed: Option<u64>,
}

/// What to run on an instance.
#[derive(Debug, Clone)]
pub struct RunRequest {
    pub instance_id: String,
    /// Budgets, `τ` and the fill flag.
    pub spec: ProblemSpec,
    pub epsilon: Option<Rational>,
    pub order_seed: Option<u64>,
    pub oracle: bool,
    pub timing: bool,
    /// Keep the assignment and certificate in the report.
    pub keep_solution: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub instance: String,
    pub problem: ProblemKind,
    /// `b` for Robust and Global, `b_max` for Local.
    pub budget: u64,
    /// Per-node Local budgets when they are not uniform.
    pub local_budgets: Option<Vec<u64>>,
    pub tau: u64,
    pub epsilon: Option<Rational>,
    /// Mistake weight `A`.
    pub mistakes: Rational,
    /// Lower bound `L`.
    pub lower_bound: Rational,
    pub lower_bound_source: BoundSource,
    pub dual_objective: Rational,
    /// `(A − L)/L`, 0 when `L = 0`.
    pub relative_error: Rational,
    pub relative_error_approx: f64,
    pub claimed_ratio: Rational,
    /// `A/L`, absent when `L = 0`.
    pub measured_ratio: Option<Rational>,
    pub trivial: bool,
    pub wall_time_us: Option<u64>,
    pub options: SolveOptions,
    pub assignment: Option<Assignment>,
    pub certificate: Option<DualCertificate>,
}

/// The scalar columns of a [`RunReport`], one CSV row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub instance: String,
    pub problem: ProblemKind,
    /// The grid value that produced the budget (benchmarks only).
    pub grid_value: Option<String>,
    pub budget: u64,
    pub per_node_budgets: bool,
    pub tau: u64,
    pub epsilon: Option<Rational>,
    pub mistakes: Option<Rational>,
    pub lower_bound: Option<Rational>,
    pub lower_bound_source: Option<BoundSource>,
    pub relative_error: Option<Rational>,
    pub relative_error_approx: Option<f64>,
    pub claimed_ratio: Option<Rational>,
    pub measured_ratio: Option<Rational>,
    pub trivial: Option<bool>,
    pub wall_time_us: Option<u64>,
    pub error: Option<String>,
}

impl ReportRow {
    pub fn from_report(r: &RunReport, grid_value: Option<String>) -> Self {
        ReportRow {
            instance: r.instance.clone(),
            problem: r.problem,
            grid_value,
            budget: r.budget,
            per_node_budgets: r.local_budgets.is_some(),
            tau: r.tau,
            epsilon: r.epsilon.clone(),
            mistakes: Some(r.mistakes.clone()),
            lower_bound: Some(r.lower_bound.clone()),
            lower_bound_source: Some(r.lower_bound_source),
            relative_error: Some(r.relative_error.clone()),
            relative_error_approx: Some(r.relative_error_approx),
            claimed_ratio: Some(r.claimed_ratio.clone()),
            measured_ratio: r.measured_ratio.clone(),
            trivial: Some(r.trivial),
            wall_time_us: r.wall_time_us,
            error: None,
        }
    }

    pub fn failed(instance: String, problem: ProblemKind, grid_value: Option<String>, budget: u64, error: String) -> Self {
        ReportRow {
            instance,
            problem,
            grid_value,
            budget,
            per_node_budgets: false,
            tau: 0,
            epsilon: None,
            mistakes: None,
            lower_bound: None,
            lower_bound_source: None,
            relative_error: None,
            relative_error_approx: None,
            claimed_ratio: None,
            measured_ratio: None,
            trivial: None,
            wall_time_us: None,
            error: Some(error),
        }
    }
}

fn describe(v: &Verdict) -> String {
    match v {
        Verdict::Feasible => "feasible".into(),
        Verdict::Infeasible(list) => format!("{} violated constraints, first: {:?}", list.len(), list[0]),
    }
}

/// Solves, checks the certificate, and assembles the report.
pub fn run_instance(h: &EdgeColoredHypergraph, req: &RunRequest) -> Result<RunReport, CliError> {
    let spec = &req.spec;
    spec.validate(h)?;
    let start = Instant::now();
    let sol = match (spec.kind, req.order_seed) {
        (ProblemKind::Local, Some(seed)) => solve_local_shuffled(h, spec, seed)?,
        _ => solve(h, spec)?,
    };
    let elapsed = start.elapsed();

    let verdict = verify_dual(h, spec, &sol.certificate)?;
    if !verdict.is_feasible() {
        return Err(CliError::Certificate(describe(&verdict)));
    }
    let mistakes = count_mistakes(h, spec, &sol.assignment)
        .map_err(|e| CliError::Certificate(format!("solver output infeasible: {e}")))?;
    let dual = dual_objective(spec, &sol.certificate);
    let claimed = match &req.epsilon {
        Some(eps) => bicriteria_ratio(spec.kind, eps),
        None => certified_ratio(spec),
    };
    if mistakes > &claimed * &dual {
        return Err(CliError::Certificate(format!(
            "mistakes {mistakes} exceed {claimed} × dual objective {dual}"
        )));
    }
    let (lower_bound, source) = if req.oracle {
        (brute(h, spec)?.cost, BoundSource::ExactOracle)
    } else {
        (dual.clone(), BoundSource::DualCertificate)
    };
    let rel = relative_error(&mistakes, &lower_bound);
    let uniform = spec.local_budgets.windows(2).all(|w| w[0] == w[1]);
    Ok(RunReport {
        instance: req.instance_id.clone(),
        problem: spec.kind,
        budget: match spec.kind {
            ProblemKind::Local => spec.max_local_budget(),
            _ => spec.budget,
        },
        local_budgets: (!uniform).then(|| spec.local_budgets.clone()),
        tau: spec.threshold_extra,
        epsilon: req.epsilon.clone(),
        measured_ratio: (!lower_bound.is_zero()).then(|| &mistakes / &lower_bound),
        mistakes,
        lower_bound,
        lower_bound_source: source,
        dual_objective: dual,
        relative_error_approx: rel.to_f64(),
        relative_error: rel,
        claimed_ratio: claimed,
        trivial: is_trivial(&compute_stats(h), spec),
        wall_time_us: req.timing.then(|| elapsed.as_micros().min(u64::MAX as u128) as u64),
        options: SolveOptions {
            fill_heuristic: spec.fill_heuristic,
            order_seed: req.order_seed.filter(|_| spec.kind == ProblemKind::Local),
        },
        assignment: req.keep_solution.then_some(sol.assignment),
        certificate: req.keep_solution.then_some(sol.certificate),
    })
}

/// Rebuilds the problem spec a report was produced with.
pub fn report_spec(h: &EdgeColoredHypergraph, r: &RunReport) -> ProblemSpec {
    let spec = match r.problem {
        ProblemKind::Local => match &r.local_budgets {
            Some(b) => ProblemSpec::local(b.clone()),
            None => ProblemSpec::local_uniform(h.node_count(), r.budget),
        },
        ProblemKind::Robust => ProblemSpec::robust(r.budget),
        ProblemKind::Global => ProblemSpec::global(r.budget),
    };
    spec.with_threshold(r.tau).with_fill(r.options.fill_heuristic)
}

/// Independently re-checks a saved report against its instance.
pub fn verify_report(h: &EdgeColoredHypergraph, r: &RunReport) -> Result<(), CliError> {
    let spec = report_spec(h, r);
    spec.validate(h)?;
    let (Some(assignment), Some(cert)) = (&r.assignment, &r.certificate) else {
        return Err(CliError::Certificate("report carries no assignment or certificate".into()));
    };
    let verdict = verify_dual(h, &spec, cert)?;
    if !verdict.is_feasible() {
        return Err(CliError::Certificate(describe(&verdict)));
    }
    let mistakes = count_mistakes(h, &spec, assignment)
        .map_err(|e| CliError::Certificate(format!("assignment infeasible: {e}")))?;
    let mismatch = |what: &str, a: &Rational, b: &Rational| {
        CliError::Certificate(format!("{what}: report says {a}, recomputed {b}"))
    };
    if mistakes != r.mistakes {
        return Err(mismatch("mistakes", &r.mistakes, &mistakes));
    }
    let dual = dual_objective(&spec, cert);
    if dual != r.dual_objective {
        return Err(mismatch("dual objective", &r.dual_objective, &dual));
    }
    if r.lower_bound_source == BoundSource::DualCertificate && r.lower_bound != dual {
        return Err(mismatch("lower bound", &r.lower_bound, &dual));
    }
    if r.lower_bound > mistakes {
        return Err(CliError::Certificate("lower bound exceeds the cost".into()));
    }
    if mistakes > &r.claimed_ratio * &dual {
        return Err(CliError::Certificate(format!(
            "mistakes {mistakes} exceed {} × dual objective {dual}",
            r.claimed_ratio
        )));
    }
    Ok(())
}

/// Parses `3`, `1/2` or a decimal such as `0.05` into an exact rational.
pub fn parse_rational_arg(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    if let Ok(r) = s.parse::<Rational>() {
        return Ok(r);
    }
    let bad = || format!("`{s}` is not a number");
    let (neg, body) = match s.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, s),
    };
    let (int, frac) = body.split_once('.').ok_or_else(bad)?;
    if (int.is_empty() && frac.is_empty())
        || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit())
        || frac.len() > 18
    {
        return Err(bad());
    }
    let digits = format!("{}{frac}", if int.is_empty() { "0" } else { int });
    let num: Rational = digits.parse().map_err(|_| bad())?;
    let value = num / Rational::from(10u64.pow(frac.len() as u32));
    Ok(if neg { -value } else { value })
}
