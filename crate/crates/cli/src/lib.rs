//! Command-line front end: instance formats, solve reports, certificate
//! re-verification and the benchmark harness.
//!
//! Exit codes: 0 success, 1 I/O or usage, 2 parse error, 3 invalid instance
//! or arguments, 4 certificate verification failure, 5 oracle limit exceeded.

pub mod bench;
pub mod error;
pub mod format;
pub mod report;

use std::io::Read as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use ecc_core::oracle::{brute_with, OracleLimits, Route};
use ecc_core::{
    bicriteria_threshold, compute_stats, gen_ig_global, gen_ig_local, gen_ig_robust, gen_random,
    gen_random_k_uniform, is_trivial, reduce_ekvc, EdgeColoredHypergraph, KUniformHypergraph, ProblemKind,
    ProblemSpec,
};
use serde::Serialize;

pub use error::CliError;

use bench::{run_benchmark, to_csv, BenchConfig};
use format::{import_simple, parse_instance, write_instance};
use report::{parse_rational_arg, run_instance, verify_report, ReportRow, RunReport, RunRequest};

#[derive(Debug, Parser)]
#[command(name = "ecc", version, about = "Edge-colored clustering with certified approximation bounds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a primal-dual solver and report its certified bound.
    Solve(SolveArgs),
    /// Solve exactly by exhaustive search (small instances only).
    Oracle(OracleArgs),
    /// Generate an instance.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
        #[arg(long, global = true)]
        output: Option<PathBuf>,
    },
    /// Print instance statistics.
    Stats(StatsArgs),
    /// Run every instance of a directory over budget grids.
    Bench(BenchArgs),
    /// Re-check a saved report against its instance.
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        report: PathBuf,
    },
    /// Convert `color<TAB>node,node,...` lines to the native format.
    Import {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        output: Option<PathBuf>,
        /// Also write `kind<TAB>id<TAB>label` lines for nodes and colors.
        #[arg(long)]
        labels: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Instance file; standard input when absent. `*.tsv` files are read in
    /// the simple import format.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Read the input in the simple import format regardless of its name.
    #[arg(long)]
    pub simple: bool,
}

#[derive(Debug, Args)]
pub struct BudgetArgs {
    /// `b` for Robust and Global; uniform `b_v` for Local.
    #[arg(long)]
    pub budget: Option<u64>,
    /// Per-node Local budgets, whitespace separated in node order.
    #[arg(long, conflicts_with = "budget")]
    pub budgets_file: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(value_parser = parse_kind)]
    pub problem: ProblemKind,
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub budget: BudgetArgs,
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Bicriteria run: relax the budget by the matching threshold.
    #[arg(long)]
    pub epsilon: Option<String>,
    /// Leave unused budget unspent.
    #[arg(long)]
    pub no_fill: bool,
    /// Visit nodes in an order shuffled by this seed (Local).
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Use the exact optimum as the lower bound.
    #[arg(long)]
    pub oracle: bool,
    /// Record wall time (makes the output run dependent).
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(value_parser = parse_kind)]
    pub problem: ProblemKind,
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub budget: BudgetArgs,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "auto")]
    pub route: RouteArg,
    #[arg(long)]
    pub max_search_space: Option<u128>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum RouteArg {
    Auto,
    NodeOptions,
    EdgeSubsets,
}

#[derive(Debug, Subcommand)]
pub enum GenKind {
    /// Local integrality-gap instance.
    IgLocal {
        #[arg(long)]
        budget: u64,
        #[arg(long)]
        edges: usize,
        /// Write the companion fractional solution as JSON.
        #[arg(long)]
        fractional: Option<PathBuf>,
    },
    /// Robust integrality-gap instance.
    IgRobust {
        #[arg(long)]
        budget: u64,
        #[arg(long)]
        fractional: Option<PathBuf>,
    },
    /// Global integrality-gap instance.
    IgGlobal {
        #[arg(long)]
        budget: u64,
        #[arg(long)]
        fractional: Option<PathBuf>,
    },
    /// Seeded random instance with unit weights.
    Random {
        #[arg(long)]
        nodes: usize,
        #[arg(long)]
        edges: usize,
        #[arg(long)]
        colors: usize,
        #[arg(long, default_value_t = 3)]
        max_rank: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Local instance from a k-uniform vertex cover instance.
    ///
    /// With `--input`, the file starts with `kvc <vertices> <k>` followed by
    /// one hyperedge per line; otherwise a random hypergraph is drawn.
    Ekvc {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 6)]
        vertices: usize,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 8)]
        hyperedges: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Also classify triviality for this budget under all three problems.
    #[arg(long)]
    pub budget: Option<u64>,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long)]
    pub dir: PathBuf,
    /// Comma-separated subset of local, robust, global.
    #[arg(long, value_delimiter = ',', value_parser = parse_kind)]
    pub problems: Option<Vec<ProblemKind>>,
    #[arg(long, value_delimiter = ',')]
    pub local_grid: Option<Vec<u64>>,
    /// Fractions of |V|.
    #[arg(long, value_delimiter = ',')]
    pub robust_grid: Option<Vec<String>>,
    /// Fractions of |V|.
    #[arg(long, value_delimiter = ',')]
    pub global_grid: Option<Vec<String>>,
    #[arg(long)]
    pub no_fill: bool,
    #[arg(long)]
    pub no_timing: bool,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Write the per-problem means as CSV here.
    #[arg(long)]
    pub summary: Option<PathBuf>,
}

fn parse_kind(s: &str) -> Result<ProblemKind, String> {
    s.parse()
}

fn read_text(path: Option<&Path>) -> Result<String, CliError> {
    match path {
        Some(p) => std::fs::read_to_string(p).map_err(|e| CliError::io(p, e)),
        None => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| CliError::io("<stdin>", e))?;
            Ok(s)
        }
    }
}

fn write_text(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::io(p, e)),
        None => {
            use std::io::Write as _;
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .map_err(|e| CliError::io("<stdout>", e))
        }
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn read_instance(args: &InputArgs) -> Result<(String, EdgeColoredHypergraph), CliError> {
    let path = args.input.as_deref();
    let text = read_text(path)?;
    let simple = args.simple || path.and_then(|p| p.extension()).is_some_and(|x| x == "tsv");
    let h = if simple {
        import_simple(&text)?.instance
    } else {
        parse_instance(&text)?
    };
    let id = path.map_or_else(
        || "<stdin>".to_string(),
        |p| p.file_name().map_or_else(|| p.display().to_string(), |f| f.to_string_lossy().into_owned()),
    );
    Ok((id, h))
}

fn read_budgets(path: &Path) -> Result<Vec<u64>, CliError> {
    let text = read_text(Some(path))?;
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let content = line.split('#').next().unwrap_or("");
        for tok in content.split_whitespace() {
            out.push(tok.parse().map_err(|_| {
                CliError::Parse(format!("{}: line {}: invalid budget `{tok}`", path.display(), i + 1))
            })?);
        }
    }
    Ok(out)
}

fn build_spec(kind: ProblemKind, h: &EdgeColoredHypergraph, args: &BudgetArgs) -> Result<ProblemSpec, CliError> {
    let need = || CliError::Usage(format!("{kind} needs --budget"));
    let spec = match kind {
        ProblemKind::Local => match (&args.budgets_file, args.budget) {
            (Some(p), _) => ProblemSpec::local(read_budgets(p)?),
            (None, Some(b)) => ProblemSpec::local_uniform(h.node_count(), b),
            (None, None) => return Err(CliError::Usage("local needs --budget or --budgets-file".into())),
        },
        ProblemKind::Robust | ProblemKind::Global => {
            if args.budgets_file.is_some() {
                return Err(CliError::Usage("--budgets-file applies to local only".into()));
            }
            let b = args.budget.ok_or_else(need)?;
            if kind == ProblemKind::Robust {
                ProblemSpec::robust(b)
            } else {
                ProblemSpec::global(b)
            }
        }
    };
    spec.validate(h)?;
    Ok(spec)
}

/// Builds the report for `ecc solve`.
pub fn run_solve(args: &SolveArgs) -> Result<RunReport, CliError> {
    let (id, h) = read_instance(&args.input)?;
    let mut spec = build_spec(args.problem, &h, &args.budget)?.with_fill(!args.no_fill);
    let epsilon = args
        .epsilon
        .as_deref()
        .map(parse_rational_arg)
        .transpose()
        .map_err(CliError::Usage)?;
    if let Some(eps) = &epsilon {
        let tau = bicriteria_threshold(&spec, eps)?;
        spec = spec.with_threshold(tau);
    }
    run_instance(
        &h,
        &RunRequest {
            instance_id: id,
            spec,
            epsilon,
            order_seed: args.seed,
            oracle: args.oracle,
            timing: args.timing,
            keep_solution: true,
        },
    )
}

#[derive(Serialize)]
struct OracleReport {
    instance: String,
    problem: ProblemKind,
    budget: u64,
    #[serde(flatten)]
    result: ecc_core::OracleResult,
}

#[derive(Serialize)]
struct StatsReport {
    instance: String,
    #[serde(flatten)]
    stats: ecc_core::InstanceStats,
    trivial: Option<Trivial>,
}

#[derive(Serialize)]
struct Trivial {
    budget: u64,
    local: bool,
    robust: bool,
    global: bool,
}

fn parse_kvc(text: &str) -> Result<KUniformHypergraph, CliError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let bad = |ln: usize, msg: &str| CliError::Parse(format!("line {ln}: {msg}"));
    let (ln, head) = lines.next().ok_or_else(|| bad(1, "expected `kvc <vertices> <k>`"))?;
    let head: Vec<&str> = head.split_whitespace().collect();
    let (n, k) = match head[..] {
        ["kvc", n, k] => (
            n.parse().map_err(|_| bad(ln, "invalid vertex count"))?,
            k.parse().map_err(|_| bad(ln, "invalid k"))?,
        ),
        _ => return Err(bad(ln, "expected `kvc <vertices> <k>`")),
    };
    let edges = lines
        .map(|(ln, l)| {
            l.split_whitespace()
                .map(|t| t.parse::<usize>().map_err(|_| bad(ln, &format!("invalid vertex `{t}`"))))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(KUniformHypergraph::new(n, k, edges)?)
}

fn write_fractional(path: Option<&PathBuf>, frac: &ecc_core::FractionalSolution) -> Result<(), CliError> {
    match path {
        Some(p) => write_text(Some(p), &json(frac)),
        None => Ok(()),
    }
}

fn run_gen(kind: &GenKind, output: Option<&Path>) -> Result<(), CliError> {
    let text = match kind {
        GenKind::IgLocal { budget, edges, fractional } => {
            let (h, frac) = gen_ig_local(*budget, *edges)?;
            write_fractional(fractional.as_ref(), &frac)?;
            format!("# local budget {budget}\n{}", write_instance(&h))
        }
        GenKind::IgRobust { budget, fractional } => {
            let (h, frac) = gen_ig_robust(*budget)?;
            write_fractional(fractional.as_ref(), &frac)?;
            format!("# robust budget {budget}\n{}", write_instance(&h))
        }
        GenKind::IgGlobal { budget, fractional } => {
            let (h, frac) = gen_ig_global(*budget)?;
            write_fractional(fractional.as_ref(), &frac)?;
            format!("# global budget {budget}\n{}", write_instance(&h))
        }
        GenKind::Random { nodes, edges, colors, max_rank, seed } => {
            write_instance(&gen_random(*nodes, *edges, *colors, *max_rank, *seed)?)
        }
        GenKind::Ekvc { input, vertices, k, hyperedges, seed } => {
            let kh = match input {
                Some(p) => parse_kvc(&read_text(Some(p))?)?,
                None => gen_random_k_uniform(*vertices, *k, *hyperedges, *seed)?,
            };
            let red = reduce_ekvc(&kh)?;
            format!("# local budget {}\n{}", kh.k() - 1, write_instance(&red.instance))
        }
    };
    write_text(output, &text)
}

fn run_bench(args: &BenchArgs) -> Result<(), CliError> {
    let mut config = BenchConfig::default();
    if let Some(p) = &args.problems {
        config.problems = p.clone();
    }
    if let Some(g) = &args.local_grid {
        config.local_grid = g.clone();
    }
    let fractions = |v: &[String]| {
        v.iter()
            .map(|s| parse_rational_arg(s))
            .collect::<Result<Vec<_>, _>>()
            .map_err(CliError::Usage)
    };
    if let Some(g) = &args.robust_grid {
        config.robust_grid = fractions(g)?;
    }
    if let Some(g) = &args.global_grid {
        config.global_grid = fractions(g)?;
    }
    if config.robust_grid.iter().chain(&config.global_grid).any(|f| f.is_negative()) {
        return Err(CliError::Usage("grid fractions must be nonnegative".into()));
    }
    config.fill_heuristic = !args.no_fill;
    config.timing = !args.no_timing;

    let out = run_benchmark(&args.dir, &config)?;
    let summary_csv = to_csv(&out.summary)?;
    eprint!("{summary_csv}");
    if let Some(p) = &args.summary {
        write_text(Some(p), &summary_csv)?;
    }
    let text = match args.format {
        Format::Csv => to_csv(&out.rows)?,
        Format::Json => json(&out),
    };
    write_text(args.output.as_deref(), &text)
}

/// Executes one parsed command line.
pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Solve(args) => {
            let report = run_solve(&args)?;
            let text = match args.format {
                Format::Json => json(&report),
                Format::Csv => to_csv(&[ReportRow::from_report(&report, None)])?,
            };
            write_text(args.output.as_deref(), &text)
        }
        Command::Oracle(args) => {
            let (id, h) = read_instance(&args.input)?;
            let spec = build_spec(args.problem, &h, &args.budget)?;
            let mut limits = OracleLimits::default();
            if let Some(s) = args.max_search_space {
                limits.max_search_space = s;
            }
            let route = match args.route {
                RouteArg::Auto => Route::Auto,
                RouteArg::NodeOptions => Route::NodeOptions,
                RouteArg::EdgeSubsets => Route::EdgeSubsets,
            };
            let result = brute_with(&h, &spec, &limits, route)?;
            let report = OracleReport {
                instance: id,
                problem: spec.kind,
                budget: match spec.kind {
                    ProblemKind::Local => spec.max_local_budget(),
                    _ => spec.budget,
                },
                result,
            };
            write_text(args.output.as_deref(), &json(&report))
        }
        Command::Gen { kind, output } => run_gen(&kind, output.as_deref()),
        Command::Stats(args) => {
            let (id, h) = read_instance(&args.input)?;
            let stats = compute_stats(&h);
            let trivial = args.budget.map(|b| Trivial {
                budget: b,
                local: is_trivial(&stats, &ProblemSpec::local_uniform(h.node_count(), b)),
                robust: is_trivial(&stats, &ProblemSpec::robust(b)),
                global: is_trivial(&stats, &ProblemSpec::global(b)),
            });
            write_text(args.output.as_deref(), &json(&StatsReport { instance: id, stats, trivial }))
        }
        Command::Bench(args) => run_bench(&args),
        Command::Verify { input, report } => {
            let (_, h) = read_instance(&InputArgs { input: Some(input), simple: false })?;
            let text = read_text(Some(&report))?;
            let r: RunReport = serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("report: {e}")))?;
            verify_report(&h, &r)?;
            write_text(None, &format!("ok: {} mistakes, lower bound {}\n", r.mistakes, r.lower_bound))
        }
        Command::Import { input, output, labels } => {
            let text = read_text(input.as_deref())?;
            let imp = import_simple(&text)?;
            if let Some(p) = labels {
                let mut s = String::new();
                for (i, l) in imp.node_labels.iter().enumerate() {
                    s.push_str(&format!("node\t{i}\t{l}\n"));
                }
                for (i, l) in imp.color_labels.iter().enumerate() {
                    s.push_str(&format!("color\t{i}\t{l}\n"));
                }
                write_text(Some(&p), &s)?;
            }
            write_text(output.as_deref(), &write_instance(&imp.instance))
        }
    }
}
