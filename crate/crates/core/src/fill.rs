//! Post-processing that spends unused budget. None of it touches a
//! certificate, and none of it can add mistakes.

use crate::hypergraph::{Color, EdgeColoredHypergraph, NodeId};
use crate::rational::Rational;

/// The color of largest total weight among the edges incident to `v`, the
/// smallest such color on ties, and color 0 for an isolated node.
pub fn majority_color(h: &EdgeColoredHypergraph, v: NodeId) -> Color {
    let mut best: Option<(Rational, Color)> = None;
    for g in h.group_range(v) {
        let w: Rational = h.group_edges(g).iter().map(|&e| h.weight(e)).sum();
        if best.as_ref().map_or(true, |(bw, _)| &w > bw) {
            best = Some((w, h.group(g).color));
        }
    }
    best.map_or(0, |(_, c)| c)
}

/// Tops up every `σ(v)` below `cap(v)` with colors of `χ(δ(v))`.
///
/// Colors are ranked by the weight of mistaken edges that adding them at `v`
/// would satisfy outright (edges whose only member lacking `c_e` is `v`), then
/// by color id. Nodes are visited in ascending order and the counts are kept
/// current, so the pass is linear apart from one sort per node.
pub fn fill_multi(h: &EdgeColoredHypergraph, colors: &mut [Vec<Color>], cap: impl Fn(NodeId) -> u64) {
    // Members of each edge that lack its color.
    let mut missing = vec![0u32; h.edge_count()];
    for v in h.nodes() {
        for g in h.group_range(v) {
            if colors[v].binary_search(&h.group(g).color).is_err() {
                for &e in h.group_edges(g) {
                    missing[e] += 1;
                }
            }
        }
    }
    let mut candidates: Vec<(Rational, Color, usize)> = Vec::new();
    for v in h.nodes() {
        let room = cap(v).saturating_sub(colors[v].len() as u64);
        if room == 0 {
            continue;
        }
        candidates.clear();
        candidates.extend(
            h.group_range(v)
                .filter(|&g| colors[v].binary_search(&h.group(g).color).is_err())
                .map(|g| {
                    let score = h
                        .group_edges(g)
                        .iter()
                        .filter(|&&e| missing[e] == 1)
                        .map(|&e| h.weight(e))
                        .sum();
                    (score, h.group(g).color, g)
                }),
        );
        candidates.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        for (_, c, g) in candidates.drain(..).take(usize::try_from(room).unwrap_or(usize::MAX)) {
            colors[v].push(c);
            for &e in h.group_edges(g) {
                missing[e] -= 1;
            }
        }
        colors[v].sort_unstable();
    }
}
