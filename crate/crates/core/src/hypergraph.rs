//! Edge-colored hypergraphs with a color-grouped incidence index.
//!
//! Edges are stored in compressed form (offsets into one member array). For
//! every node the incident edges are laid out sorted by `(color, edge id)`, so
//! each per-color list `δ_c(v)` is a contiguous [`ColorGroup`]. The solvers
//! rely on this layout to aggregate per-color quantities in `O(d_v)`.

use crate::rational::Rational;

pub type NodeId = usize;
pub type EdgeId = usize;
pub type Color = usize;

/// One edge as supplied to [`EdgeColoredHypergraph::new`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeSpec {
    pub members: Vec<NodeId>,
    pub color: Color,
    pub weight: Rational,
}

impl EdgeSpec {
    pub fn new(members: impl Into<Vec<NodeId>>, color: Color, weight: impl Into<Rational>) -> Self {
        EdgeSpec {
            members: members.into(),
            color,
            weight: weight.into(),
        }
    }

    pub fn unit(members: impl Into<Vec<NodeId>>, color: Color) -> Self {
        Self::new(members, color, Rational::one())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InstanceError {
    #[error("instance needs at least one color")]
    NoColors,
    #[error("edge {edge} has no members")]
    EmptyEdge { edge: EdgeId },
    #[error("edge {edge} references node {node}, but the instance has {node_count} nodes")]
    NodeOutOfRange {
        edge: EdgeId,
        node: NodeId,
        node_count: usize,
    },
    #[error("edge {edge} has color {color}, but the instance has {colors} colors")]
    ColorOutOfRange { edge: EdgeId, color: Color, colors: usize },
    #[error("edge {edge} has negative weight {weight}")]
    NegativeWeight { edge: EdgeId, weight: Rational },
    #[error("edge {edge} lists node {node} more than once")]
    DuplicateMember { edge: EdgeId, node: NodeId },
}

impl InstanceError {
    /// Index of the offending edge, if the error concerns one.
    pub fn edge(&self) -> Option<EdgeId> {
        match self {
            InstanceError::NoColors => None,
            InstanceError::EmptyEdge { edge }
            | InstanceError::NodeOutOfRange { edge, .. }
            | InstanceError::ColorOutOfRange { edge, .. }
            | InstanceError::NegativeWeight { edge, .. }
            | InstanceError::DuplicateMember { edge, .. } => Some(*edge),
        }
    }
}

/// A maximal run of a node's incidences sharing one color, i.e. `δ_c(v)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ColorGroup {
    pub color: Color,
    /// Half-open range into the node-major incidence arrays.
    pub start: usize,
    pub end: usize,
}

impl ColorGroup {
    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }
}

/// An immutable edge-colored hypergraph `H = (V, E)` with colors `c_e` and
/// nonnegative rational weights `w_e`. Parallel edges are allowed; an edge is
/// identified by its index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeColoredHypergraph {
    node_count: usize,
    color_count: usize,
    edge_offsets: Vec<usize>,
    edge_members: Vec<NodeId>,
    edge_colors: Vec<Color>,
    edge_weights: Vec<Rational>,
    node_offsets: Vec<usize>,
    inc_edges: Vec<EdgeId>,
    inc_slot: Vec<usize>,
    slot_inc: Vec<usize>,
    group_offsets: Vec<usize>,
    groups: Vec<ColorGroup>,
    inc_group: Vec<usize>,
}

/// Validates `edges` and builds the incidence index.
pub fn build_instance(
    node_count: usize,
    colors: usize,
    edges: Vec<EdgeSpec>,
) -> Result<EdgeColoredHypergraph, InstanceError> {
    EdgeColoredHypergraph::new(node_count, colors, edges)
}

impl EdgeColoredHypergraph {
    pub fn new(
        node_count: usize,
        colors: usize,
        edges: Vec<EdgeSpec>,
    ) -> Result<Self, InstanceError> {
        if colors == 0 {
            return Err(InstanceError::NoColors);
        }
        let m = edges.len();
        let mut edge_offsets = Vec::with_capacity(m + 1);
        edge_offsets.push(0);
        let mut edge_members = Vec::with_capacity(edges.iter().map(|e| e.members.len()).sum());
        let mut edge_colors = Vec::with_capacity(m);
        let mut edge_weights = Vec::with_capacity(m);

        for (id, spec) in edges.into_iter().enumerate() {
            let EdgeSpec {
                mut members,
                color,
                weight,
            } = spec;
            if members.is_empty() {
                return Err(InstanceError::EmptyEdge { edge: id });
            }
            if color >= colors {
                return Err(InstanceError::ColorOutOfRange {
                    edge: id,
                    color,
                    colors,
                });
            }
            if weight.is_negative() {
                return Err(InstanceError::NegativeWeight { edge: id, weight });
            }
            members.sort_unstable();
            if let Some(&node) = members.iter().find(|&&v| v >= node_count) {
                return Err(InstanceError::NodeOutOfRange {
                    edge: id,
                    node,
                    node_count,
                });
            }
            if let Some(w) = members.windows(2).find(|w| w[0] == w[1]) {
                return Err(InstanceError::DuplicateMember { edge: id, node: w[0] });
            }
            edge_members.extend_from_slice(&members);
            edge_offsets.push(edge_members.len());
            edge_colors.push(color);
            edge_weights.push(weight);
        }

        // Counting sort of edges by color (stable in edge id), then scatter
        // members so every node's incidence list comes out color-sorted.
        let mut color_start = vec![0usize; colors + 1];
        for &c in &edge_colors {
            color_start[c + 1] += 1;
        }
        for c in 0..colors {
            color_start[c + 1] += color_start[c];
        }
        let mut by_color = vec![0usize; m];
        let mut cursor = color_start.clone();
        for (e, &c) in edge_colors.iter().enumerate() {
            by_color[cursor[c]] = e;
            cursor[c] += 1;
        }

        let mut node_offsets = vec![0usize; node_count + 1];
        for &v in &edge_members {
            node_offsets[v + 1] += 1;
        }
        for v in 0..node_count {
            node_offsets[v + 1] += node_offsets[v];
        }
        let total = edge_members.len();
        let mut inc_edges = vec![0usize; total];
        let mut inc_slot = vec![0usize; total];
        let mut slot_inc = vec![0usize; total];
        let mut fill = node_offsets.clone();
        for &e in &by_color {
            for slot in edge_offsets[e]..edge_offsets[e + 1] {
                let v = edge_members[slot];
                let k = fill[v];
                fill[v] += 1;
                inc_edges[k] = e;
                inc_slot[k] = slot;
                slot_inc[slot] = k;
            }
        }

        let mut group_offsets = Vec::with_capacity(node_count + 1);
        group_offsets.push(0);
        let mut groups = Vec::new();
        let mut inc_group = vec![0usize; total];
        for v in 0..node_count {
            let (lo, hi) = (node_offsets[v], node_offsets[v + 1]);
            let mut k = lo;
            while k < hi {
                let color = edge_colors[inc_edges[k]];
                let start = k;
                while k < hi && edge_colors[inc_edges[k]] == color {
                    inc_group[k] = groups.len();
                    k += 1;
                }
                groups.push(ColorGroup {
                    color,
                    start,
                    end: k,
                });
            }
            group_offsets.push(groups.len());
        }

        Ok(EdgeColoredHypergraph {
            node_count,
            color_count: colors,
            edge_offsets,
            edge_members,
            edge_colors,
            edge_weights,
            node_offsets,
            inc_edges,
            inc_slot,
            slot_inc,
            group_offsets,
            groups,
            inc_group,
        })
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn color_count(&self) -> usize {
        self.color_count
    }

    pub fn edge_count(&self) -> usize {
        self.edge_colors.len()
    }

    /// `Σ_v d_v`, the size of the instance.
    pub fn incidence_count(&self) -> usize {
        self.edge_members.len()
    }

    pub fn nodes(&self) -> std::ops::Range<NodeId> {
        0..self.node_count
    }

    pub fn edges(&self) -> std::ops::Range<EdgeId> {
        0..self.edge_count()
    }

    /// Members of `e`, ascending.
    pub fn members(&self, e: EdgeId) -> &[NodeId] {
        &self.edge_members[self.edge_offsets[e]..self.edge_offsets[e + 1]]
    }

    pub fn color(&self, e: EdgeId) -> Color {
        self.edge_colors[e]
    }

    pub fn weight(&self, e: EdgeId) -> &Rational {
        &self.edge_weights[e]
    }

    pub fn weights(&self) -> &[Rational] {
        &self.edge_weights
    }

    pub fn total_weight(&self) -> Rational {
        self.edge_weights.iter().sum()
    }

    /// Range of member slots of `e`; slot `s` holds node `edge_members[s]`.
    /// Per-incidence data attached to edges (such as `β_{e,v}`) is indexed by
    /// slot.
    pub fn slots(&self, e: EdgeId) -> std::ops::Range<usize> {
        self.edge_offsets[e]..self.edge_offsets[e + 1]
    }

    pub fn slot_node(&self, slot: usize) -> NodeId {
        self.edge_members[slot]
    }

    /// `δ(v)`, sorted by `(color, edge id)`.
    pub fn incident(&self, v: NodeId) -> &[EdgeId] {
        &self.inc_edges[self.node_offsets[v]..self.node_offsets[v + 1]]
    }

    /// Range of node-major incidence indices belonging to `v`.
    pub fn incidence_range(&self, v: NodeId) -> std::ops::Range<usize> {
        self.node_offsets[v]..self.node_offsets[v + 1]
    }

    pub fn incidence_edge(&self, k: usize) -> EdgeId {
        self.inc_edges[k]
    }

    /// Member slot of incidence `k`.
    pub fn incidence_slot(&self, k: usize) -> usize {
        self.inc_slot[k]
    }

    /// Incidence index of member slot `slot`.
    pub fn slot_incidence(&self, slot: usize) -> usize {
        self.slot_inc[slot]
    }

    /// Global index of the color group containing incidence `k`.
    pub fn incidence_group(&self, k: usize) -> usize {
        self.inc_group[k]
    }

    pub fn degree(&self, v: NodeId) -> usize {
        self.node_offsets[v + 1] - self.node_offsets[v]
    }

    /// The groups `δ_c(v)` for every `c ∈ χ(δ(v))`, ascending by color.
    pub fn color_groups(&self, v: NodeId) -> &[ColorGroup] {
        &self.groups[self.group_offsets[v]..self.group_offsets[v + 1]]
    }

    /// Global group indices of node `v`.
    pub fn group_range(&self, v: NodeId) -> std::ops::Range<usize> {
        self.group_offsets[v]..self.group_offsets[v + 1]
    }

    pub fn group(&self, g: usize) -> &ColorGroup {
        &self.groups[g]
    }

    pub fn group_count(&self) -> usize {
        self.groups.len()
    }

    pub fn group_edges(&self, g: usize) -> &[EdgeId] {
        let grp = &self.groups[g];
        &self.inc_edges[grp.start..grp.end]
    }

    /// `|χ(δ(v))|`.
    pub fn color_degree(&self, v: NodeId) -> usize {
        self.group_offsets[v + 1] - self.group_offsets[v]
    }

    /// `χ(δ(v))`, ascending.
    pub fn palette(&self, v: NodeId) -> impl Iterator<Item = Color> + '_ {
        self.color_groups(v).iter().map(|g| g.color)
    }

    /// `δ_c(v)`; empty when `v` has no edge of color `c`.
    pub fn edges_of_color(&self, v: NodeId, c: Color) -> &[EdgeId] {
        let groups = self.color_groups(v);
        match groups.binary_search_by_key(&c, |g| g.color) {
            Ok(i) => &self.inc_edges[groups[i].start..groups[i].end],
            Err(_) => &[],
        }
    }

    /// Reconstructs the edge list in the form accepted by [`Self::new`].
    pub fn edge_specs(&self) -> Vec<EdgeSpec> {
        self.edges()
            .map(|e| EdgeSpec::new(self.members(e).to_vec(), self.color(e), self.weight(e).clone()))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parallel() -> EdgeColoredHypergraph {
        build_instance(
            2,
            2,
            vec![EdgeSpec::unit(vec![0, 1], 0), EdgeSpec::unit(vec![0, 1], 1)],
        )
        .unwrap()
    }

    #[test]
    fn parallel_edges_are_kept() {
        let h = parallel();
        assert_eq!(h.edge_count(), 2);
        assert_eq!(h.members(0), h.members(1));
        assert_eq!(h.color_degree(0), 2);
        assert_eq!(h.incident(1), &[0, 1]);
    }

    #[test]
    fn empty_instance_is_valid() {
        let h = build_instance(0, 1, vec![]).unwrap();
        assert_eq!(h.node_count(), 0);
        assert_eq!(h.edge_count(), 0);
        assert_eq!(h.incidence_count(), 0);
    }

    #[test]
    fn validation_errors_carry_edge_index() {
        let err = build_instance(1, 1, vec![EdgeSpec::unit(vec![0, 5], 0)]).unwrap_err();
        assert_eq!(
            err,
            InstanceError::NodeOutOfRange {
                edge: 0,
                node: 5,
                node_count: 1
            }
        );
        let err = build_instance(2, 1, vec![EdgeSpec::unit(vec![0], 0), EdgeSpec::unit(vec![], 0)])
            .unwrap_err();
        assert_eq!(err, InstanceError::EmptyEdge { edge: 1 });
        let err = build_instance(2, 1, vec![EdgeSpec::new(vec![0], 0, -1i64)]).unwrap_err();
        assert_eq!(err.edge(), Some(0));
        assert!(matches!(err, InstanceError::NegativeWeight { .. }));
        let err = build_instance(2, 1, vec![EdgeSpec::unit(vec![0], 3)]).unwrap_err();
        assert!(matches!(err, InstanceError::ColorOutOfRange { color: 3, .. }));
        let err = build_instance(2, 1, vec![EdgeSpec::unit(vec![1, 1], 0)]).unwrap_err();
        assert!(matches!(err, InstanceError::DuplicateMember { node: 1, .. }));
        assert_eq!(build_instance(2, 0, vec![]).unwrap_err(), InstanceError::NoColors);
    }

    #[test]
    fn incidence_is_color_grouped_and_consistent() {
        let h = build_instance(
            3,
            3,
            vec![
                EdgeSpec::unit(vec![0, 1], 2),
                EdgeSpec::unit(vec![0], 0),
                EdgeSpec::unit(vec![2, 0], 2),
                EdgeSpec::unit(vec![1, 2], 1),
            ],
        )
        .unwrap();
        assert_eq!(h.incident(0), &[1, 0, 2]);
        assert_eq!(h.palette(0).collect::<Vec<_>>(), vec![0, 2]);
        assert_eq!(h.edges_of_color(0, 2), &[0, 2]);
        assert!(h.edges_of_color(0, 1).is_empty());
        for v in h.nodes() {
            for k in h.incidence_range(v) {
                let e = h.incidence_edge(k);
                assert!(h.members(e).contains(&v));
                assert_eq!(h.slot_node(h.incidence_slot(k)), v);
                assert_eq!(h.slot_incidence(h.incidence_slot(k)), k);
                assert_eq!(h.group(h.incidence_group(k)).color, h.color(e));
            }
        }
        for e in h.edges() {
            for &v in h.members(e) {
                assert!(h.incident(v).contains(&e));
            }
        }
        assert_eq!(h.members(2), &[0, 2]);
    }
}
