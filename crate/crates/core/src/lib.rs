//! Primal-dual approximation algorithms for edge-colored clustering on
//! hypergraphs.
//!
//! Every solver returns an assignment together with a [`DualCertificate`]:
//! a feasible dual solution whose objective is a lower bound on the optimum.
//! The ratio between the assignment's cost and that bound is therefore a
//! proven, per-run approximation factor.
//!
//! ```
//! use ecc_core::{build_instance, dual_objective, solve, verify_dual, EdgeSpec, ProblemSpec};
//!
//! // One node touching three unit edges of different colors.
//! let h = build_instance(1, 3, (0..3).map(|c| EdgeSpec::unit(vec![0], c)).collect())?;
//! let spec = ProblemSpec::local_uniform(1, 1);
//! let sol = solve(&h, &spec)?;
//! assert!(verify_dual(&h, &spec, &sol.certificate)?.is_feasible());
//! assert_eq!(sol.mistakes(&h), 2.into());
//! assert_eq!(dual_objective(&spec, &sol.certificate), 2.into());
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod dual;
pub mod fill;
pub mod generators;
pub mod global;
pub mod hypergraph;
pub mod local;
pub mod oracle;
pub mod problem;
pub mod rational;
pub mod robust;
pub mod select;
pub mod solution;
pub mod stats;
mod stepper;

pub use dual::{
    dual_objective, verify_dual, verify_fractional, DualCertificate, DualError, FractionalSolution,
    Verdict, Violation,
};
pub use generators::{
    gen_ig_global, gen_ig_local, gen_ig_robust, gen_random, gen_random_k_uniform, reduce_ekvc, GenError, KUniformHypergraph,
};
pub use global::{global_bicriteria_threshold, solve_global};
pub use hypergraph::{build_instance, Color, EdgeColoredHypergraph, EdgeId, EdgeSpec, InstanceError, NodeId};
pub use local::{local_bicriteria_threshold, solve_local, solve_local_ordered, solve_local_shuffled};
pub use oracle::{brute, brute_global, brute_local, brute_robust, OracleError, OracleLimits, OracleResult, Route};
pub use problem::{
    check_feasible, count_mistakes, mistake_weight, Assignment, AssignmentError, ProblemKind, ProblemSpec,
    SpecError,
};
pub use rational::Rational;
pub use robust::{robust_bicriteria_threshold, solve_robust};
pub use select::select_kth_largest;
pub use solution::{
    bicriteria_ratio, bicriteria_threshold, certified_ratio, solve, SolveError, Solution, ThresholdError,
};
pub use stats::{compute_stats, is_trivial, is_trivial_per_node, relative_error, InstanceStats};
