//! Benchmark harness: every instance of a directory under every problem and
//! budget of a grid.

use std::path::{Path, PathBuf};

use ecc_core::{EdgeColoredHypergraph, ProblemKind, ProblemSpec, Rational};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::format::{import_simple, parse_instance};
use crate::report::{run_instance, ReportRow, RunRequest};

pub const DEFAULT_LOCAL_GRID: [u64; 8] = [1, 2, 3, 4, 5, 8, 16, 32];
pub const DEFAULT_ROBUST_GRID: [&str; 7] = ["0", "0.01", "0.05", "0.1", "0.15", "0.2", "0.25"];
pub const DEFAULT_GLOBAL_GRID: [&str; 13] = [
    "0", "0.1", "0.2", "0.3", "0.4", "0.5", "1", "1.5", "2", "2.5", "3", "3.5", "4",
];

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub problems: Vec<ProblemKind>,
    /// Local budgets `b`.
    pub local_grid: Vec<u64>,
    /// Robust budgets as fractions `f` of `|V|`, `b = ⌊f·|V|⌋`.
    pub robust_grid: Vec<Rational>,
    /// Global budgets as fractions of `|V|`.
    pub global_grid: Vec<Rational>,
    pub fill_heuristic: bool,
    pub timing: bool,
}

impl Default for BenchConfig {
    fn default() -> Self {
        let parse = |v: &[&str]| v.iter().map(|s| crate::report::parse_rational_arg(s).unwrap()).collect();
        BenchConfig {
            problems: vec![ProblemKind::Local, ProblemKind::Robust, ProblemKind::Global],
            local_grid: DEFAULT_LOCAL_GRID.to_vec(),
            robust_grid: parse(&DEFAULT_ROBUST_GRID),
            global_grid: parse(&DEFAULT_GLOBAL_GRID),
            fill_heuristic: true,
            timing: true,
        }
    }
}

/// Means over one problem's rows; `None` when there is nothing to average.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub problem: ProblemKind,
    pub runs: usize,
    pub failures: usize,
    pub trivial: usize,
    pub mean_relative_error: Option<f64>,
    pub mean_relative_error_nontrivial: Option<f64>,
    pub mean_measured_ratio: Option<f64>,
    pub mean_measured_ratio_nontrivial: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchOutput {
    pub rows: Vec<ReportRow>,
    pub summary: Vec<SummaryRow>,
}

/// Instance files of `dir` in name order: `*.ecc` in the native format and
/// `*.tsv` in the simple import format.
pub fn instance_files(dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let mut files = Vec::new();
    for entry in std::fs::read_dir(dir).map_err(|e| CliError::io(dir, e))? {
        let path = entry.map_err(|e| CliError::io(dir, e))?.path();
        let ext = path.extension().and_then(|x| x.to_str());
        if path.is_file() && matches!(ext, Some("ecc" | "tsv")) {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

pub fn load_instance(path: &Path) -> Result<EdgeColoredHypergraph, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    if path.extension().and_then(|x| x.to_str()) == Some("tsv") {
        Ok(import_simple(&text)?.instance)
    } else {
        Ok(parse_instance(&text)?)
    }
}

fn grid(config: &BenchConfig, kind: ProblemKind, n: usize) -> Vec<(String, ProblemSpec)> {
    let spec = |kind, b| -> ProblemSpec {
        match kind {
            ProblemKind::Local => ProblemSpec::local_uniform(n, b),
            ProblemKind::Robust => ProblemSpec::robust(b),
            ProblemKind::Global => ProblemSpec::global(b),
        }
    };
    let fractional = |fs: &[Rational]| {
        fs.iter()
            .map(|f| {
                let b = u64::try_from(&(f * &Rational::from(n)).floor()).unwrap_or(u64::MAX);
                (f.to_string(), spec(kind, b))
            })
            .collect::<Vec<_>>()
    };
    let cells = match kind {
        ProblemKind::Local => config.local_grid.iter().map(|&b| (b.to_string(), spec(kind, b))).collect(),
        ProblemKind::Robust => fractional(&config.robust_grid),
        ProblemKind::Global => fractional(&config.global_grid),
    };
    cells
        .into_iter()
        .map(|(g, s)| (g, s.with_fill(config.fill_heuristic)))
        .collect()
}

/// Runs every cell. Failures become rows with an `error` entry; rows are in
/// file, problem, grid order regardless of scheduling.
pub fn run_benchmark(dir: &Path, config: &BenchConfig) -> Result<BenchOutput, CliError> {
    let files = instance_files(dir)?;
    let loaded: Vec<(String, Result<EdgeColoredHypergraph, CliError>)> = files
        .par_iter()
        .map(|p| {
            let id = p.file_name().map_or_else(|| p.display().to_string(), |f| f.to_string_lossy().into_owned());
            (id, load_instance(p))
        })
        .collect();

    enum Cell<'a> {
        Run(&'a EdgeColoredHypergraph, String, String, ProblemSpec),
        Failed(String, ProblemKind, String),
    }
    let mut cells = Vec::new();
    for (id, inst) in &loaded {
        for &kind in &config.problems {
            match inst {
                Ok(h) => {
                    for (g, spec) in grid(config, kind, h.node_count()) {
                        cells.push(Cell::Run(h, id.clone(), g, spec));
                    }
                }
                Err(e) => cells.push(Cell::Failed(id.clone(), kind, e.to_string())),
            }
        }
    }
    let rows: Vec<ReportRow> = cells
        .into_par_iter()
        .map(|cell| match cell {
            Cell::Failed(id, kind, msg) => ReportRow::failed(id, kind, None, 0, msg),
            Cell::Run(h, id, g, spec) => {
                let req = RunRequest {
                    instance_id: id.clone(),
                    spec: spec.clone(),
                    epsilon: None,
                    order_seed: None,
                    oracle: false,
                    timing: config.timing,
                    keep_solution: false,
                };
                match run_instance(h, &req) {
                    Ok(r) => ReportRow::from_report(&r, Some(g)),
                    Err(e) => {
                        let b = if spec.kind == ProblemKind::Local { spec.max_local_budget() } else { spec.budget };
                        ReportRow::failed(id, spec.kind, Some(g), b, e.to_string())
                    }
                }
            }
        })
        .collect();
    let summary = summarize(&rows, &config.problems);
    Ok(BenchOutput { rows, summary })
}

fn mean(values: impl Iterator<Item = f64>) -> Option<f64> {
    let (sum, count) = values.fold((0.0, 0usize), |(s, c), v| (s + v, c + 1));
    (count > 0).then(|| sum / count as f64)
}

pub fn summarize(rows: &[ReportRow], problems: &[ProblemKind]) -> Vec<SummaryRow> {
    problems
        .iter()
        .map(|&kind| {
            let mine: Vec<&ReportRow> = rows.iter().filter(|r| r.problem == kind).collect();
            let ok: Vec<&ReportRow> = mine.iter().copied().filter(|r| r.error.is_none()).collect();
            let nontrivial = || ok.iter().copied().filter(|r| r.trivial == Some(false));
            let ratio = |r: &&ReportRow| r.measured_ratio.as_ref().map(Rational::to_f64);
            SummaryRow {
                problem: kind,
                runs: ok.len(),
                failures: mine.len() - ok.len(),
                trivial: ok.iter().filter(|r| r.trivial == Some(true)).count(),
                mean_relative_error: mean(ok.iter().filter_map(|r| r.relative_error_approx)),
                mean_relative_error_nontrivial: mean(nontrivial().filter_map(|r| r.relative_error_approx)),
                mean_measured_ratio: mean(ok.iter().filter_map(ratio)),
                mean_measured_ratio_nontrivial: mean(nontrivial().filter_map(|r| ratio(&r))),
            }
        })
        .collect()
}

pub fn to_csv<T: Serialize>(rows: &[T]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| CliError::Usage(format!("csv: {e}")))?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Usage(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}
