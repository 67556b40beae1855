//! Simultaneous dual growth shared by the Robust and Global solvers.
//!
//! Every node of `R = {v : |χ(δ(v)∩L)| ≥ 2}` spreads its dual increase evenly
//! over its loose color classes and, within a class, evenly over the loose
//! edges. Each step advances time by the largest `t*` that keeps every edge
//! within its weight, so at least one edge becomes tight per step.

use crate::dual::DualCertificate;
use crate::hypergraph::EdgeColoredHypergraph;
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Rule {
    /// Share `1/((k_v−1)·n_{v,c})`, `α_v` grows at `1/(k_v−1)`; stop once `|R| ≤ limit`.
    Robust,
    /// Share `1/n_{v,c}`, `α_v` grows at rate 1; stop once `Σ_{v∈R}(k_v−1) ≤ limit`.
    Global,
}

pub(crate) struct Stepper<'a> {
    h: &'a EdgeColoredHypergraph,
    rule: Rule,
    pub loose: Vec<bool>,
    pub levels: Vec<Rational>,
    /// Per member slot; written when the edge tightens.
    beta: Vec<Rational>,
    /// `β` received so far by each loose edge of a group. Every loose edge of a
    /// group grows at the same share, so one value per group suffices.
    acc: Vec<Rational>,
    /// Sum of the frozen `β` of the group's tight edges.
    #[cfg(debug_assertions)]
    tight_sum: Vec<Rational>,
    alpha: Vec<Rational>,
    lambda: Rational,
    /// `n_{v,c} = |δ_c(v)∩L|` per global group index.
    group_loose: Vec<usize>,
    /// `k_v = |χ(δ(v)∩L)|`.
    pub loose_colors: Vec<usize>,
    pub in_r: Vec<bool>,
    r_size: usize,
    demand: u128,
    rate: Vec<Rational>,
    share: Vec<Rational>,
}

impl<'a> Stepper<'a> {
    pub fn new(h: &'a EdgeColoredHypergraph, rule: Rule) -> Self {
        let loose: Vec<bool> = h.edges().map(|e| h.weight(e).is_positive()).collect();
        let group_loose: Vec<usize> = (0..h.group_count())
            .map(|g| h.group_edges(g).iter().filter(|&&e| loose[e]).count())
            .collect();
        let loose_colors: Vec<usize> = h
            .nodes()
            .map(|v| h.group_range(v).filter(|&g| group_loose[g] > 0).count())
            .collect();
        let in_r: Vec<bool> = loose_colors.iter().map(|&k| k >= 2).collect();
        let r_size = in_r.iter().filter(|&&x| x).count();
        let demand = loose_colors
            .iter()
            .map(|&k| k.saturating_sub(1) as u128)
            .sum();
        Stepper {
            h,
            rule,
            loose,
            levels: vec![Rational::zero(); h.edge_count()],
            beta: vec![Rational::zero(); h.incidence_count()],
            acc: vec![Rational::zero(); h.group_count()],
            #[cfg(debug_assertions)]
            tight_sum: vec![Rational::zero(); h.group_count()],
            alpha: vec![Rational::zero(); h.node_count()],
            lambda: Rational::zero(),
            group_loose,
            loose_colors,
            in_r,
            r_size,
            demand,
            rate: vec![Rational::zero(); h.edge_count()],
            share: vec![Rational::zero(); h.group_count()],
        }
    }

    fn over(&self, limit: u64) -> bool {
        match self.rule {
            Rule::Robust => self.r_size as u64 > limit,
            Rule::Global => self.demand > limit as u128,
        }
    }

    /// Steps until the stop condition holds for `limit`.
    pub fn run(&mut self, limit: u64) {
        while self.over(limit) {
            self.step();
        }
    }

    fn step(&mut self) {
        let h = self.h;
        for r in self.rate.iter_mut() {
            if !r.is_zero() {
                *r = Rational::zero();
            }
        }
        for v in h.nodes().filter(|&v| self.in_r[v]) {
            let k = self.loose_colors[v];
            for g in h.group_range(v) {
                let n = self.group_loose[g];
                if n == 0 {
                    continue;
                }
                let denom = match self.rule {
                    Rule::Robust => (k as i64 - 1) * n as i64,
                    Rule::Global => n as i64,
                };
                let share = Rational::new(1, denom);
                for &e in h.group_edges(g) {
                    if self.loose[e] {
                        self.rate[e] += &share;
                    }
                }
                self.share[g] = share;
            }
        }

        let t = h
            .edges()
            .filter(|&e| self.loose[e] && self.rate[e].is_positive())
            .map(|e| (h.weight(e) - &self.levels[e]) / &self.rate[e])
            .min()
            .expect("every node of R has a loose edge with positive rate");

        let stepped: Vec<usize> = h.nodes().filter(|&v| self.in_r[v]).collect();
        for &v in &stepped {
            for g in h.group_range(v) {
                if self.group_loose[g] == 0 {
                    continue;
                }
                self.acc[g] += &t * &self.share[g];
            }
            self.alpha[v] += match self.rule {
                Rule::Robust => &t / &Rational::from(self.loose_colors[v] - 1),
                Rule::Global => t.clone(),
            };
        }
        self.lambda += &t;

        let mut tightened = Vec::new();
        for e in h.edges() {
            if self.loose[e] && self.rate[e].is_positive() {
                self.levels[e] += &t * &self.rate[e];
                debug_assert!(&self.levels[e] <= h.weight(e));
                if &self.levels[e] == h.weight(e) {
                    tightened.push(e);
                }
            }
        }
        debug_assert!(!tightened.is_empty());
        for e in tightened {
            self.tighten(e);
        }

        #[cfg(debug_assertions)]
        self.check_nodes(&stepped);
    }

    fn tighten(&mut self, e: usize) {
        let h = self.h;
        self.loose[e] = false;
        for slot in h.slots(e) {
            let u = h.slot_node(slot);
            let g = h.incidence_group(h.slot_incidence(slot));
            self.beta[slot] = self.acc[g].clone();
            #[cfg(debug_assertions)]
            {
                self.tight_sum[g] += &self.acc[g];
            }
            self.group_loose[g] -= 1;
            if self.group_loose[g] > 0 {
                continue;
            }
            self.loose_colors[u] -= 1;
            if self.in_r[u] {
                self.demand -= 1;
                if self.loose_colors[u] <= 1 {
                    self.in_r[u] = false;
                    self.r_size -= 1;
                }
            }
        }
    }

    /// Dual constraints at the nodes that grew in the last step.
    #[cfg(debug_assertions)]
    fn check_nodes(&self, nodes: &[usize]) {
        let h = self.h;
        for &v in nodes {
            let mut total = Rational::zero();
            for g in h.group_range(v) {
                let sum = &self.tight_sum[g] + &self.acc[g] * &Rational::from(self.group_loose[g] as u64);
                assert!(sum <= self.alpha[v], "color class constraint at node {v}");
                total += sum;
            }
            match self.rule {
                Rule::Robust => assert!(total - &self.alpha[v] <= self.lambda, "node constraint at {v}"),
                Rule::Global => assert!(self.alpha[v] <= self.lambda, "node constraint at {v}"),
            }
        }
    }

    /// `χ(δ(v)∩L)`, ascending.
    pub fn loose_palette(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.h
            .group_range(v)
            .filter(|&g| self.group_loose[g] > 0)
            .map(|g| self.h.group(g).color)
    }

    pub fn into_certificate(mut self) -> DualCertificate {
        let h = self.h;
        for e in h.edges().filter(|&e| self.loose[e]) {
            for slot in h.slots(e) {
                let g = h.incidence_group(h.slot_incidence(slot));
                self.beta[slot] = self.acc[g].clone();
            }
        }
        DualCertificate::from_slots(self.alpha, self.beta, self.lambda, self.levels)
    }
}
