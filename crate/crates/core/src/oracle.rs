//! Exact exponential-time solvers for small instances.
//!
//! Two independent search routes are available:
//!
//! * [`Route::NodeOptions`] assigns every node one of its options in a
//!   depth-first search. Only colors of the node's own palette are tried,
//!   which loses nothing because extra colors never create mistakes. The
//!   search space is `Π_v options(v)` with, for palette size `p_v`:
//!   Local `C(p_v, min(b_v, p_v))`, Robust `p_v + 1` (one color or removal),
//!   Global `2^{p_v} − 1` (a nonempty palette subset).
//! * [`Route::EdgeSubsets`] chooses the set `S` of satisfied edges, `2^{|E|}`
//!   candidates. `S` is achievable iff, with `k_v = |χ(S∩δ(v))|`,
//!   Local: `k_v ≤ b_v` for all `v`; Robust: at most `b` nodes have `k_v ≥ 2`;
//!   Global: `Σ_v max(k_v − 1, 0) ≤ b`.
//!
//! Both searches prune branches whose committed cost already reaches the best
//! found, and keep the first optimum in their enumeration order.
//! [`Route::Auto`] picks the route with the smaller search space.

use serde::{Deserialize, Serialize};

use crate::fill::majority_color;
use crate::generators::KUniformHypergraph;
use crate::hypergraph::{EdgeColoredHypergraph, NodeId};
use crate::problem::{mistake_weight, Assignment, ProblemKind, ProblemSpec, SpecError};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleLimits {
    pub max_nodes: usize,
    pub max_edges: usize,
    /// Also bounds color ids, since [`Route::NodeOptions`] keeps color sets as 64-bit masks.
    pub max_colors: usize,
    pub max_budget: u64,
    /// Cap on the search space of the chosen route.
    pub max_search_space: u128,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_nodes: 256,
            max_edges: 64,
            max_colors: 64,
            max_budget: 64,
            max_search_space: 100_000_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    #[default]
    Auto,
    NodeOptions,
    EdgeSubsets,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("{what} = {value} exceeds the oracle limit {limit}")]
    LimitExceeded {
        what: &'static str,
        value: u128,
        limit: u128,
    },
    #[error(transparent)]
    Spec(#[from] SpecError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleResult {
    /// Minimum total mistake weight.
    pub cost: Rational,
    pub assignment: Assignment,
    pub route: Route,
    pub search_space: u128,
}

/// Exact optimum for the problem in `spec` (its `τ` and fill flag are ignored).
pub fn brute(h: &EdgeColoredHypergraph, spec: &ProblemSpec) -> Result<OracleResult, OracleError> {
    brute_with(h, spec, &OracleLimits::default(), Route::Auto)
}

pub fn brute_local(h: &EdgeColoredHypergraph, budgets: &[u64]) -> Result<OracleResult, OracleError> {
    brute(h, &ProblemSpec::local(budgets.to_vec()))
}

pub fn brute_robust(h: &EdgeColoredHypergraph, b: u64) -> Result<OracleResult, OracleError> {
    brute(h, &ProblemSpec::robust(b))
}

pub fn brute_global(h: &EdgeColoredHypergraph, b: u64) -> Result<OracleResult, OracleError> {
    brute(h, &ProblemSpec::global(b))
}

fn check(what: &'static str, value: u128, limit: u128) -> Result<(), OracleError> {
    if value > limit {
        return Err(OracleError::LimitExceeded { what, value, limit });
    }
    Ok(())
}

fn binomial(n: u128, k: u128) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Search-space sizes `(node options, edge subsets)`.
pub fn search_spaces(h: &EdgeColoredHypergraph, spec: &ProblemSpec) -> (u128, u128) {
    let node = h.nodes().fold(1u128, |acc, v| {
        let p = h.color_degree(v) as u128;
        let options = match spec.kind {
            ProblemKind::Local => binomial(p, p.min(spec.local_budgets[v] as u128)),
            ProblemKind::Robust => p + 1,
            ProblemKind::Global if p == 0 => 1,
            ProblemKind::Global => 1u128.checked_shl(p as u32).map_or(u128::MAX, |x| x - 1),
        };
        acc.saturating_mul(options)
    });
    let edges = 1u128.checked_shl(h.edge_count() as u32).unwrap_or(u128::MAX);
    (node, edges)
}

pub fn brute_with(
    h: &EdgeColoredHypergraph,
    spec: &ProblemSpec,
    limits: &OracleLimits,
    route: Route,
) -> Result<OracleResult, OracleError> {
    spec.validate(h)?;
    check("nodes", h.node_count() as u128, limits.max_nodes as u128)?;
    check("edges", h.edge_count() as u128, limits.max_edges as u128)?;
    check("colors", h.color_count() as u128, limits.max_colors as u128)?;
    let budget = match spec.kind {
        ProblemKind::Local => spec.max_local_budget(),
        _ => spec.budget,
    };
    check("budget", budget as u128, limits.max_budget as u128)?;
    let (node_space, edge_space) = search_spaces(h, spec);
    let route = match route {
        Route::Auto if node_space < edge_space => Route::NodeOptions,
        Route::Auto => Route::EdgeSubsets,
        r => r,
    };
    let search_space = match route {
        Route::NodeOptions => node_space,
        _ => edge_space,
    };
    check("search space", search_space, limits.max_search_space)?;
    let assignment = match route {
        Route::NodeOptions => NodeSearch::new(h, spec).run(),
        _ => EdgeSearch::new(h, spec).run(),
    };
    Ok(OracleResult {
        cost: mistake_weight(h, &assignment),
        assignment,
        route,
        search_space,
    })
}

/// Removed nodes carry every color, so they satisfy any edge.
const REMOVED: u64 = u64::MAX;

struct NodeSearch<'a> {
    h: &'a EdgeColoredHypergraph,
    kind: ProblemKind,
    budget: u64,
    /// Per node: `(color mask, budget used)`.
    options: Vec<Vec<(u64, u64)>>,
    /// Edges whose largest member is `v`, decided once `v` is assigned.
    closing: Vec<Vec<usize>>,
    masks: Vec<u64>,
    best_cost: Option<Rational>,
    best: Vec<u64>,
}

fn combinations(items: &[usize], k: usize, out: &mut Vec<u64>) {
    fn rec(items: &[usize], k: usize, start: usize, mask: u64, out: &mut Vec<u64>) {
        if k == 0 {
            out.push(mask);
            return;
        }
        for i in start..=items.len() - k {
            rec(items, k - 1, i + 1, mask | 1 << items[i], out);
        }
    }
    rec(items, k, 0, 0, out);
}

impl<'a> NodeSearch<'a> {
    fn new(h: &'a EdgeColoredHypergraph, spec: &ProblemSpec) -> Self {
        let options = h
            .nodes()
            .map(|v| {
                let palette: Vec<usize> = h.palette(v).collect();
                let mut opts = Vec::new();
                match spec.kind {
                    ProblemKind::Local => {
                        let k = palette.len().min(spec.local_budgets[v] as usize);
                        let mut masks = Vec::new();
                        combinations(&palette, k, &mut masks);
                        opts.extend(masks.into_iter().map(|m| (m, 0)));
                    }
                    ProblemKind::Robust => {
                        opts.extend(palette.iter().map(|&c| (1u64 << c, 0)));
                        if opts.is_empty() {
                            opts.push((0, 0));
                        } else {
                            opts.push((REMOVED, 1));
                        }
                    }
                    ProblemKind::Global => {
                        for k in 1..=palette.len() {
                            let mut masks = Vec::new();
                            combinations(&palette, k, &mut masks);
                            opts.extend(masks.into_iter().map(|m| (m, k as u64 - 1)));
                        }
                        if opts.is_empty() {
                            opts.push((1, 0));
                        }
                    }
                }
                opts
            })
            .collect();
        let mut closing = vec![Vec::new(); h.node_count()];
        for e in h.edges() {
            closing[*h.members(e).last().expect("edges are nonempty")].push(e);
        }
        NodeSearch {
            h,
            kind: spec.kind,
            budget: spec.budget,
            options,
            closing,
            masks: vec![0; h.node_count()],
            best_cost: None,
            best: Vec::new(),
        }
    }

    fn run(mut self) -> Assignment {
        self.dfs(0, 0, Rational::zero());
        let h = self.h;
        match self.kind {
            ProblemKind::Robust => {
                let removed = h.nodes().filter(|&v| self.best[v] == REMOVED).collect();
                let colors = self
                    .best
                    .iter()
                    .map(|&m| (m != REMOVED && m != 0).then(|| m.trailing_zeros() as usize))
                    .collect();
                Assignment::robust(removed, colors)
            }
            _ => Assignment::multi(self.best.iter().map(|&m| mask_colors(m)).collect()),
        }
    }

    fn dfs(&mut self, v: NodeId, used: u64, cost: Rational) {
        if v == self.h.node_count() {
            self.best_cost = Some(cost);
            self.best = self.masks.clone();
            return;
        }
        for i in 0..self.options[v].len() {
            let (mask, extra) = self.options[v][i];
            if self.kind != ProblemKind::Local && used + extra > self.budget {
                continue;
            }
            self.masks[v] = mask;
            let mut next = cost.clone();
            for &e in &self.closing[v] {
                let bit = 1u64 << self.h.color(e);
                if self.h.members(e).iter().any(|&u| self.masks[u] & bit == 0) {
                    next += self.h.weight(e);
                }
            }
            if self.best_cost.as_ref().map_or(true, |b| &next < b) {
                self.dfs(v + 1, used + extra, next);
            }
        }
    }
}

fn mask_colors(mut m: u64) -> Vec<usize> {
    let mut out = Vec::new();
    while m != 0 {
        out.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    out
}

struct EdgeSearch<'a> {
    h: &'a EdgeColoredHypergraph,
    spec: &'a ProblemSpec,
    /// Satisfied edges per color group.
    group_count: Vec<u32>,
    /// `k_v`.
    colors_at: Vec<u64>,
    /// Robust: nodes with `k_v ≥ 2`; Global: `Σ max(k_v − 1, 0)`.
    usage: u64,
    chosen: Vec<bool>,
    best_cost: Option<Rational>,
    best: Vec<bool>,
}

impl<'a> EdgeSearch<'a> {
    fn new(h: &'a EdgeColoredHypergraph, spec: &'a ProblemSpec) -> Self {
        EdgeSearch {
            h,
            spec,
            group_count: vec![0; h.group_count()],
            colors_at: vec![0; h.node_count()],
            usage: 0,
            chosen: vec![false; h.edge_count()],
            best_cost: None,
            best: Vec::new(),
        }
    }

    fn run(mut self) -> Assignment {
        self.dfs(0, Rational::zero());
        let h = self.h;
        let sets: Vec<Vec<usize>> = h
            .nodes()
            .map(|v| {
                h.group_range(v)
                    .filter(|&g| h.group_edges(g).iter().any(|&e| self.best[e]))
                    .map(|g| h.group(g).color)
                    .collect()
            })
            .collect();
        match self.spec.kind {
            ProblemKind::Local => Assignment::multi(sets),
            ProblemKind::Robust => {
                let removed = h.nodes().filter(|&v| sets[v].len() >= 2).collect();
                let colors = sets.iter().map(|s| (s.len() == 1).then(|| s[0])).collect();
                Assignment::robust(removed, colors)
            }
            ProblemKind::Global => Assignment::multi(
                sets.into_iter()
                    .enumerate()
                    .map(|(v, s)| if s.is_empty() { vec![majority_color(h, v)] } else { s })
                    .collect(),
            ),
        }
    }

    fn usage_delta(&self, k_before: u64) -> u64 {
        match self.spec.kind {
            ProblemKind::Local => 0,
            ProblemKind::Robust => u64::from(k_before == 1),
            ProblemKind::Global => u64::from(k_before >= 1),
        }
    }

    /// Adds `e` to `S`; returns false (leaving the state unchanged) if that
    /// breaks a budget.
    fn include(&mut self, e: usize) -> bool {
        let h = self.h;
        let slots = h.slots(e);
        for (i, slot) in slots.clone().enumerate() {
            let v = h.slot_node(slot);
            let g = h.incidence_group(h.slot_incidence(slot));
            if self.group_count[g] == 0 {
                let k = self.colors_at[v];
                let over = match self.spec.kind {
                    ProblemKind::Local => k + 1 > self.spec.local_budgets[v],
                    _ => self.usage + self.usage_delta(k) > self.spec.budget,
                };
                if over {
                    for s in slots.clone().take(i) {
                        self.exclude_slot(s);
                    }
                    return false;
                }
                self.usage += self.usage_delta(k);
                self.colors_at[v] += 1;
            }
            self.group_count[g] += 1;
        }
        true
    }

    fn exclude_slot(&mut self, slot: usize) {
        let h = self.h;
        let v = h.slot_node(slot);
        let g = h.incidence_group(h.slot_incidence(slot));
        self.group_count[g] -= 1;
        if self.group_count[g] == 0 {
            self.colors_at[v] -= 1;
            self.usage -= self.usage_delta(self.colors_at[v]);
        }
    }

    fn dfs(&mut self, e: usize, cost: Rational) {
        if e == self.h.edge_count() {
            self.best_cost = Some(cost);
            self.best = self.chosen.clone();
            return;
        }
        if self.include(e) {
            self.chosen[e] = true;
            self.dfs(e + 1, cost.clone());
            self.chosen[e] = false;
            for slot in self.h.slots(e) {
                self.exclude_slot(slot);
            }
        }
        let next = cost + self.h.weight(e);
        if self.best_cost.as_ref().map_or(true, |b| &next < b) {
            self.dfs(e + 1, next);
        }
    }
}

/// Minimum vertex cover by exhaustive search over vertex subsets in order of
/// size. Returns the size and the lexicographically first minimum cover.
pub fn brute_vertex_cover(kh: &KUniformHypergraph, limits: &OracleLimits) -> Result<(usize, Vec<usize>), OracleError> {
    let n = kh.vertex_count();
    let space = 1u128.checked_shl(n as u32).unwrap_or(u128::MAX);
    check("search space", space, limits.max_search_space)?;
    let masks: Vec<u64> = kh
        .edges()
        .iter()
        .map(|f| f.iter().fold(0u64, |m, &w| m | 1 << w))
        .collect();
    let mut best: Option<u64> = None;
    for cover in 0..(1u64 << n) {
        if masks.iter().all(|&f| f & cover != 0)
            && best.map_or(true, |b| cover.count_ones() < b.count_ones())
        {
            best = Some(cover);
        }
    }
    let cover = best.expect("the full vertex set is a cover");
    Ok((cover.count_ones() as usize, mask_colors(cover)))
}
