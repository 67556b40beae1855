//! Instance generators: integrality-gap families, the vertex-cover
//! reduction, and seeded random instances.
//!
//! # Random instances
//!
//! [`gen_random`] draws from ChaCha8 (`rand_chacha::ChaCha8Rng::seed_from_u64`).
//! A draw below `n` takes the next 64-bit output `x` and returns
//! `⌊x·n / 2^64⌋`. For each edge, in order:
//!
//! 1. size `s = 1 + draw(min(max_rank, n))`;
//! 2. `s` distinct members by Floyd's sampling: for `j` in `n−s .. n`,
//!    `t = draw(j+1)`; take `j` if `t` was already taken, else `t`;
//! 3. color `draw(colors)`; weight 1.
//!
//! Any implementation following these steps reproduces the same instances.

use std::collections::BTreeMap;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dual::FractionalSolution;
use crate::hypergraph::{build_instance, EdgeColoredHypergraph, EdgeId, EdgeSpec, NodeId};
use crate::problem::ProblemSpec;
use crate::rational::Rational;

/// Upper bound on incidences created by [`gen_ig_local`].
pub const MAX_GENERATED_INCIDENCES: u128 = 50_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GenError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("instance would have {incidences} incidences (limit {limit})")]
    TooLarge { incidences: u128, limit: u128 },
}

fn invalid(msg: impl Into<String>) -> GenError {
    GenError::InvalidParameters(msg.into())
}

fn draw(rng: &mut ChaCha8Rng, n: usize) -> usize {
    ((rng.next_u64() as u128 * n as u128) >> 64) as usize
}

/// Fisher-Yates shuffle driven by the same draws as [`gen_random`].
pub fn shuffle<T>(items: &mut [T], seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in (1..items.len()).rev() {
        let j = draw(&mut rng, i + 1);
        items.swap(i, j);
    }
}

/// A seeded random instance with unit weights.
pub fn gen_random(
    n: usize,
    m: usize,
    colors: usize,
    max_rank: usize,
    seed: u64,
) -> Result<EdgeColoredHypergraph, GenError> {
    if colors == 0 {
        return Err(invalid("colors must be positive"));
    }
    if m > 0 && (n == 0 || max_rank == 0) {
        return Err(invalid("edges need at least one node and max_rank ≥ 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let size = 1 + draw(&mut rng, max_rank.min(n));
        let mut members: Vec<NodeId> = Vec::with_capacity(size);
        for j in n - size..n {
            let t = draw(&mut rng, j + 1);
            members.push(if members.contains(&t) { j } else { t });
        }
        let color = draw(&mut rng, colors);
        edges.push(EdgeSpec::unit(members, color));
    }
    Ok(build_instance(n, colors, edges).expect("generated edges are valid"))
}

/// A seeded random `k`-uniform hypergraph with `m` hyperedges, members drawn
/// as in [`gen_random`]. Hyperedges may repeat.
pub fn gen_random_k_uniform(n: usize, k: usize, m: usize, seed: u64) -> Result<KUniformHypergraph, GenError> {
    if k == 0 || k > n {
        return Err(invalid(format!("need 1 ≤ k ≤ n, got k = {k}, n = {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges = (0..m)
        .map(|_| {
            let mut f = Vec::with_capacity(k);
            for j in n - k..n {
                let t = draw(&mut rng, j + 1);
                f.push(if f.contains(&t) { j } else { t });
            }
            f
        })
        .collect();
    KUniformHypergraph::new(n, k, edges)
}

fn binomial(n: u128, k: u128) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// The Local integrality-gap family: `m` unit edges with distinct colors and
/// one node per `(b+1)`-subset `S` of the edges, incident exactly to `S`.
/// Nodes are numbered in colexicographic order of their subsets.
///
/// The companion solution sets `x = b/(b+1)` on every incidence and
/// `y_e = 1/(b+1)`, for cost `m/(b+1)`; the integral optimum is `m − b`.
pub fn gen_ig_local(b: u64, m: usize) -> Result<(EdgeColoredHypergraph, FractionalSolution), GenError> {
    if b == 0 {
        return Err(invalid("b must be at least 1"));
    }
    let k = usize::try_from(b + 1).map_err(|_| invalid("b too large"))?;
    if m < k {
        return Err(invalid(format!("m = {m} must be at least b + 1 = {k}")));
    }
    let incidences = binomial(m as u128, k as u128).saturating_mul(k as u128);
    if incidences > MAX_GENERATED_INCIDENCES {
        return Err(GenError::TooLarge {
            incidences,
            limit: MAX_GENERATED_INCIDENCES,
        });
    }
    let mut members: Vec<Vec<NodeId>> = vec![Vec::new(); m];
    let mut subsets: Vec<Vec<EdgeId>> = Vec::new();
    let mut c: Vec<usize> = (0..k).collect();
    loop {
        let v = subsets.len();
        for &e in &c {
            members[e].push(v);
        }
        subsets.push(c.clone());
        // Next subset in colex order.
        let Some(i) = (0..k).find(|&i| c[i] + 1 != if i + 1 < k { c[i + 1] } else { m }) else {
            break;
        };
        c[i] += 1;
        for (j, x) in c.iter_mut().enumerate().take(i) {
            *x = j;
        }
    }
    let n = subsets.len();
    let edges = members
        .into_iter()
        .enumerate()
        .map(|(e, mem)| EdgeSpec::unit(mem, e))
        .collect();
    let h = build_instance(n, m, edges).expect("gap instance is valid");
    let xv = Rational::new(b as i64, b as i64 + 1);
    let frac = FractionalSolution {
        x: subsets
            .iter()
            .map(|s| s.iter().map(|&e| (e, xv.clone())).collect())
            .collect(),
        y: vec![Rational::new(1, b as i64 + 1); m],
        z: Vec::new(),
    };
    Ok((h, frac))
}

fn parallel_pair(b: u64) -> Result<EdgeColoredHypergraph, GenError> {
    let n = usize::try_from(b)
        .ok()
        .and_then(|b| b.checked_add(1))
        .filter(|&n| n as u128 * 2 <= MAX_GENERATED_INCIDENCES)
        .ok_or_else(|| invalid("b too large"))?;
    let all: Vec<NodeId> = (0..n).collect();
    Ok(build_instance(n, 2, vec![EdgeSpec::unit(all.clone(), 0), EdgeSpec::unit(all, 1)])
        .expect("gap instance is valid"))
}

fn pair_companion(n: usize, b: u64, x: Rational) -> FractionalSolution {
    let d = 2 * (b as i64 + 1);
    let row: BTreeMap<usize, Rational> = [(0, x.clone()), (1, x)].into_iter().collect();
    FractionalSolution {
        x: vec![row; n],
        y: vec![Rational::new(1, d); 2],
        z: vec![Rational::new(b as i64, b as i64 + 1); n],
    }
}

/// The Robust gap instance: `b + 1` nodes and two parallel full edges of
/// distinct colors. Companion `z = b/(b+1)`, `x = y = 1/(2(b+1))`, cost
/// `1/(b+1)`; the integral optimum is 1.
pub fn gen_ig_robust(b: u64) -> Result<(EdgeColoredHypergraph, FractionalSolution), GenError> {
    let h = parallel_pair(b)?;
    let x = Rational::new(1, 2 * (b as i64 + 1));
    let frac = pair_companion(h.node_count(), b, x);
    Ok((h, frac))
}

/// The Global gap instance: the Robust one with `x = (2b+1)/(2(b+1))`.
pub fn gen_ig_global(b: u64) -> Result<(EdgeColoredHypergraph, FractionalSolution), GenError> {
    let h = parallel_pair(b)?;
    let x = Rational::new(2 * b as i64 + 1, 2 * (b as i64 + 1));
    let frac = pair_companion(h.node_count(), b, x);
    Ok((h, frac))
}

/// A hypergraph whose edges all have exactly `k` distinct vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KUniformHypergraph {
    vertex_count: usize,
    k: usize,
    edges: Vec<Vec<usize>>,
}

impl KUniformHypergraph {
    pub fn new(vertex_count: usize, k: usize, edges: Vec<Vec<usize>>) -> Result<Self, GenError> {
        let mut edges = edges;
        for (i, f) in edges.iter_mut().enumerate() {
            f.sort_unstable();
            if f.len() != k {
                return Err(invalid(format!("hyperedge {i} has {} vertices, expected {k}", f.len())));
            }
            if f.windows(2).any(|w| w[0] == w[1]) {
                return Err(invalid(format!("hyperedge {i} repeats a vertex")));
            }
            if f.last().is_some_and(|&w| w >= vertex_count) {
                return Err(invalid(format!("hyperedge {i} has a vertex out of range")));
            }
        }
        Ok(KUniformHypergraph { vertex_count, k, edges })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }
}

/// Output of [`reduce_ekvc`].
#[derive(Debug, Clone)]
pub struct EkvcReduction {
    pub instance: EdgeColoredHypergraph,
    /// Local budgets `b_v = k − 1`.
    pub spec: ProblemSpec,
    /// ECC node `f` stands for hyperedge `f`.
    /// `edge_of_vertex[w]` is the ECC edge of vertex `w`, `None` if `w` is isolated.
    pub edge_of_vertex: Vec<Option<EdgeId>>,
    pub vertex_of_edge: Vec<usize>,
}

/// Maps vertex cover on a `k`-uniform hypergraph to Local ECC with budget
/// `k − 1`: one node per hyperedge, one edge of its own color per vertex,
/// spanning the hyperedges that contain it. Minimum mistakes equal the
/// minimum vertex cover size.
pub fn reduce_ekvc(kh: &KUniformHypergraph) -> Result<EkvcReduction, GenError> {
    if kh.k < 2 {
        return Err(invalid("k must be at least 2"));
    }
    let mut members: Vec<Vec<NodeId>> = vec![Vec::new(); kh.vertex_count];
    for (f, verts) in kh.edges.iter().enumerate() {
        for &w in verts {
            members[w].push(f);
        }
    }
    let mut edge_of_vertex = vec![None; kh.vertex_count];
    let mut vertex_of_edge = Vec::new();
    let mut edges = Vec::new();
    for (w, mem) in members.into_iter().enumerate() {
        if mem.is_empty() {
            continue;
        }
        edge_of_vertex[w] = Some(edges.len());
        vertex_of_edge.push(w);
        edges.push(EdgeSpec::unit(mem, edges.len()));
    }
    let n = kh.edges.len();
    let colors = edges.len().max(1);
    let instance = build_instance(n, colors, edges).expect("reduction is valid");
    Ok(EkvcReduction {
        instance,
        spec: ProblemSpec::local_uniform(n, kh.k as u64 - 1),
        edge_of_vertex,
        vertex_of_edge,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dual::verify_fractional;

    #[test]
    fn random_is_deterministic_and_valid() {
        let a = gen_random(5, 5, 3, 3, 7).unwrap();
        let b = gen_random(5, 5, 3, 3, 7).unwrap();
        assert_eq!(a, b);
        assert!(a.edges().all(|e| (1..=3).contains(&a.members(e).len())));
        assert_ne!(gen_random(20, 30, 3, 3, 1).unwrap(), gen_random(20, 30, 3, 3, 2).unwrap());
        assert!(gen_random(0, 0, 1, 0, 0).unwrap().edge_count() == 0);
        assert!(gen_random(0, 1, 1, 1, 0).is_err());
    }

    #[test]
    fn colex_node_order() {
        let (h, _) = gen_ig_local(1, 3).unwrap();
        // Subsets {0,1}, {0,2}, {1,2}.
        assert_eq!(h.node_count(), 3);
        assert_eq!(h.members(0), &[0, 1]);
        assert_eq!(h.members(1), &[0, 2]);
        assert_eq!(h.members(2), &[1, 2]);
        let (h, _) = gen_ig_local(2, 3).unwrap();
        assert_eq!(h.node_count(), 1);
        assert_eq!(h.degree(0), 3);
    }

    #[test]
    fn gap_companions_are_feasible() {
        let (h, frac) = gen_ig_local(1, 2).unwrap();
        assert_eq!(h.node_count(), 1);
        let spec = ProblemSpec::local_uniform(h.node_count(), 1);
        let check = verify_fractional(&h, &spec, &frac).unwrap();
        assert!(check.is_feasible());
        assert_eq!(check.cost, Rational::one());

        let (h, frac) = gen_ig_robust(3).unwrap();
        let check = verify_fractional(&h, &ProblemSpec::robust(3), &frac).unwrap();
        assert!(check.is_feasible());
        assert_eq!(check.cost, Rational::new(1, 4));

        let (h, frac) = gen_ig_global(4).unwrap();
        let check = verify_fractional(&h, &ProblemSpec::global(4), &frac).unwrap();
        assert!(check.is_feasible());
        assert_eq!(check.cost, Rational::new(1, 5));
    }

    #[test]
    fn gap_parameter_errors() {
        assert!(gen_ig_local(0, 3).is_err());
        assert!(gen_ig_local(3, 3).is_err());
        assert!(matches!(gen_ig_local(10, 60), Err(GenError::TooLarge { .. })));
    }

    #[test]
    fn ekvc_triangle() {
        let k = KUniformHypergraph::new(3, 2, vec![vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        let red = reduce_ekvc(&k).unwrap();
        assert_eq!(red.instance.node_count(), 3);
        assert_eq!(red.instance.edge_count(), 3);
        assert_eq!(red.spec.local_budgets, vec![1, 1, 1]);
        // Vertex 0 lies in hyperedges 0 and 2.
        assert_eq!(red.instance.members(0), &[0, 2]);
    }

    #[test]
    fn ekvc_isolated_vertices_are_dropped() {
        let k = KUniformHypergraph::new(4, 2, vec![vec![1, 3]]).unwrap();
        let red = reduce_ekvc(&k).unwrap();
        assert_eq!(red.edge_of_vertex, vec![None, Some(0), None, Some(1)]);
        assert_eq!(red.vertex_of_edge, vec![1, 3]);
        let empty = reduce_ekvc(&KUniformHypergraph::new(3, 2, vec![]).unwrap()).unwrap();
        assert_eq!(empty.instance.node_count(), 0);
        assert_eq!(empty.instance.edge_count(), 0);
    }

    #[test]
    fn k_uniform_validation() {
        assert!(KUniformHypergraph::new(3, 2, vec![vec![0, 1, 2]]).is_err());
        assert!(KUniformHypergraph::new(3, 2, vec![vec![1, 1]]).is_err());
        assert!(KUniformHypergraph::new(3, 2, vec![vec![1, 3]]).is_err());
        assert!(reduce_ekvc(&KUniformHypergraph::new(3, 1, vec![vec![0]]).unwrap()).is_err());
    }

    #[test]
    fn random_k_uniform() {
        let k = gen_random_k_uniform(6, 3, 10, 5).unwrap();
        assert_eq!(k.edges().len(), 10);
        assert!(k.edges().iter().all(|f| f.len() == 3));
        assert_eq!(k, gen_random_k_uniform(6, 3, 10, 5).unwrap());
        assert!(gen_random_k_uniform(2, 3, 1, 0).is_err());
    }

    #[test]
    fn shuffle_is_a_permutation() {
        let mut v: Vec<usize> = (0..50).collect();
        shuffle(&mut v, 3);
        let mut s = v.clone();
        s.sort_unstable();
        assert_eq!(s, (0..50).collect::<Vec<_>>());
        assert_ne!(v, s);
    }
}
