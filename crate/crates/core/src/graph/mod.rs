//! The frame graph: vertices are frame vectors, edges join vectors with a
//! nonzero inner product.

mod dot;
mod search;
mod stats;

use thiserror::Error;

pub use dot::export_dot;
pub use search::{longest_induced_path, maximum_independent_set};
pub use stats::{compute_stats, GraphStats, StatsConfig, DEFAULT_VERTEX_CAP};
pub(crate) use stats::{bfs, bipartition_part_sizes};

use crate::linalg::Frame;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {count} vertices")]
    VertexOutOfRange { vertex: usize, count: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("adjacency matrix is not symmetric at ({0}, {1})")]
    Asymmetric(usize, usize),
    #[error("adjacency matrix is not square")]
    NotSquare,
    #[error("graphs have different vertex counts ({0} vs {1})")]
    SizeMismatch(usize, usize),
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("induced subgraph needs at least one vertex")]
    EmptySelection,
    #[error("graph must have at least one vertex")]
    NoVertices,
}

/// Per-vertex warnings carried by a frame graph.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct VertexFlags {
    pub zero_vector: bool,
    pub isolated: bool,
}

/// Simple undirected graph on vertices `0..m`.
///
/// Each vertex keeps the label of the frame vector it came from, so
/// induced subgraphs still report original indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameGraph {
    adjacency: Vec<Vec<bool>>,
    labels: Vec<usize>,
    zero_vector: Vec<bool>,
}

impl FrameGraph {
    pub fn empty(m: usize) -> Self {
        FrameGraph {
            adjacency: vec![vec![false; m]; m],
            labels: (0..m).collect(),
            zero_vector: vec![false; m],
        }
    }

    pub fn from_edges(m: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Self::empty(m);
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= m {
                    return Err(GraphError::VertexOutOfRange { vertex: w, count: m });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            g.adjacency[u][v] = true;
            g.adjacency[v][u] = true;
        }
        Ok(g)
    }

    pub fn from_adjacency(rows: Vec<Vec<bool>>) -> Result<Self, GraphError> {
        let m = rows.len();
        if rows.iter().any(|r| r.len() != m) {
            return Err(GraphError::NotSquare);
        }
        for i in 0..m {
            if rows[i][i] {
                return Err(GraphError::SelfLoop(i));
            }
            for j in 0..i {
                if rows[i][j] != rows[j][i] {
                    return Err(GraphError::Asymmetric(j, i));
                }
            }
        }
        Ok(FrameGraph {
            adjacency: rows,
            labels: (0..m).collect(),
            zero_vector: vec![false; m],
        })
    }

    pub fn complete(m: usize) -> Self {
        let edges: Vec<_> = (0..m)
            .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
            .collect();
        Self::from_edges(m, &edges).expect("valid edges")
    }

    /// Path `0 - 1 - ... - (m-1)`.
    pub fn path(m: usize) -> Self {
        let edges: Vec<_> = (1..m).map(|i| (i - 1, i)).collect();
        Self::from_edges(m, &edges).expect("valid edges")
    }

    /// Cycle `0 - 1 - ... - (m-1) - 0`, for `m >= 3`.
    pub fn cycle(m: usize) -> Self {
        let mut edges: Vec<_> = (1..m).map(|i| (i - 1, i)).collect();
        if m >= 3 {
            edges.push((m - 1, 0));
        }
        Self::from_edges(m, &edges).expect("valid edges")
    }

    /// `K_{1,leaves}` with centre 0.
    pub fn star(leaves: usize) -> Self {
        Self::complete_bipartite(1, leaves)
    }

    /// `K_{a,b}` with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let edges: Vec<_> = (0..a)
            .flat_map(|i| (a..a + b).map(move |j| (i, j)))
            .collect();
        Self::from_edges(a + b, &edges).expect("valid edges")
    }

    /// Vertices of `other` are appended after those of `self`.
    pub fn disjoint_union(&self, other: &FrameGraph) -> FrameGraph {
        let (a, b) = (self.vertex_count(), other.vertex_count());
        let mut g = Self::empty(a + b);
        for (u, v) in self.edges() {
            g.add_edge(u, v);
        }
        for (u, v) in other.edges() {
            g.add_edge(a + u, a + v);
        }
        g
    }

    /// Disjoint union plus every edge between the two vertex sets.
    pub fn join(&self, other: &FrameGraph) -> FrameGraph {
        let a = self.vertex_count();
        let mut g = self.disjoint_union(other);
        for u in 0..a {
            for v in a..g.vertex_count() {
                g.add_edge(u, v);
            }
        }
        g
    }

    fn add_edge(&mut self, u: usize, v: usize) {
        self.adjacency[u][v] = true;
        self.adjacency[v][u] = true;
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u][v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adjacency[v]
            .iter()
            .enumerate()
            .filter_map(|(u, &e)| e.then_some(u))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].iter().filter(|&&e| e).count()
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let m = self.vertex_count();
        (0..m)
            .flat_map(|u| (u + 1..m).filter(move |&v| self.adjacency[u][v]).map(move |v| (u, v)))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }

    pub fn adjacency(&self) -> &[Vec<bool>] {
        &self.adjacency
    }

    /// Original frame index of vertex `v`.
    pub fn label(&self, v: usize) -> usize {
        self.labels[v]
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn is_isolated(&self, v: usize) -> bool {
        self.degree(v) == 0
    }

    pub fn is_zero_vector(&self, v: usize) -> bool {
        self.zero_vector[v]
    }

    pub fn flags(&self, v: usize) -> VertexFlags {
        VertexFlags {
            zero_vector: self.zero_vector[v],
            isolated: self.is_isolated(v),
        }
    }

    /// Marks vertices as zero vectors (graph-only inputs never are).
    pub fn with_zero_vectors(mut self, zero: &[usize]) -> Result<Self, GraphError> {
        for &v in zero {
            if v >= self.vertex_count() {
                return Err(GraphError::VertexOutOfRange {
                    vertex: v,
                    count: self.vertex_count(),
                });
            }
            self.zero_vector[v] = true;
        }
        Ok(self)
    }

    /// Neighbourhood bitmasks, when the graph has at most 64 vertices.
    pub fn masks(&self) -> Option<Vec<u64>> {
        (self.vertex_count() <= 64).then(|| {
            self.adjacency
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .fold(0u64, |acc, (j, &e)| if e { acc | 1 << j } else { acc })
                })
                .collect()
        })
    }
}

/// Frame graph with edge `(i, j)` iff `|<f_i, f_j>| > tol_zero`; vectors with
/// `‖f_i‖² <= tol_zero` are flagged as zero vectors. Exact frames ignore the
/// tolerance.
pub fn build_graph<T: Scalar>(frame: &Frame<T>, tol_zero: f64) -> FrameGraph {
    let m = frame.len();
    let mut g = FrameGraph::empty(m);
    for i in 0..m {
        g.zero_vector[i] = frame.norm_squared(i).negligible(tol_zero);
        for j in i + 1..m {
            if !frame.inner(i, j).negligible(tol_zero) {
                g.add_edge(i, j);
            }
        }
    }
    g
}

/// Whether signs `±1` exist making `sum ε_c d_c = 0`.
pub fn signed_sum_can_vanish(differences: &[i64]) -> bool {
    let mut reachable = std::collections::BTreeSet::from([0i64]);
    for &d in differences {
        reachable = reachable.iter().flat_map(|s| [s + d, s - d]).collect();
    }
    reachable.contains(&0)
}

/// Whether some bipartition `(X, Y)` of a bipartite graph has `|X| = |Y|`,
/// choosing the orientation of each component freely.
pub fn balanced_bipartition_exists(g: &FrameGraph) -> Result<bool, GraphError> {
    let parts = stats::bipartition_part_sizes(g).ok_or(GraphError::NotBipartite)?;
    let diffs: Vec<i64> = parts.iter().map(|&(x, y)| x as i64 - y as i64).collect();
    Ok(signed_sum_can_vanish(&diffs))
}

/// All non-adjacent pairs `u < v` with exactly one common neighbour `w`,
/// as `(u, v, w)`.
pub fn unique_common_neighbor_pairs(g: &FrameGraph) -> Vec<(usize, usize, usize)> {
    let m = g.vertex_count();
    let mut out = Vec::new();
    for u in 0..m {
        for v in u + 1..m {
            if g.has_edge(u, v) {
                continue;
            }
            let mut common = (0..m).filter(|&w| g.has_edge(u, w) && g.has_edge(v, w));
            if let (Some(w), None) = (common.next(), common.next()) {
                out.push((u, v, w));
            }
        }
    }
    out
}

/// First pair `u < v` with `N[u] = N[v]`, if any.
pub fn duplicate_closed_neighborhood(g: &FrameGraph) -> Option<(usize, usize)> {
    let m = g.vertex_count();
    let closed = |v: usize, w: usize| w == v || g.has_edge(v, w);
    (0..m)
        .flat_map(|u| (u + 1..m).map(move |v| (u, v)))
        .find(|&(u, v)| (0..m).all(|w| closed(u, w) == closed(v, w)))
}

pub fn closed_neighborhoods_distinct(g: &FrameGraph) -> bool {
    duplicate_closed_neighborhood(g).is_none()
}

/// Index-aligned equality of the two edge sets.
pub fn zero_pattern_equal(a: &FrameGraph, b: &FrameGraph) -> Result<bool, GraphError> {
    if a.vertex_count() != b.vertex_count() {
        return Err(GraphError::SizeMismatch(a.vertex_count(), b.vertex_count()));
    }
    Ok(a.adjacency == b.adjacency)
}

/// Subgraph on `keep` (in the given order) with inherited edges and labels.
pub fn induced_subgraph(g: &FrameGraph, keep: &[usize]) -> Result<FrameGraph, GraphError> {
    if keep.is_empty() {
        return Err(GraphError::EmptySelection);
    }
    if let Some(&v) = keep.iter().find(|&&v| v >= g.vertex_count()) {
        return Err(GraphError::VertexOutOfRange {
            vertex: v,
            count: g.vertex_count(),
        });
    }
    Ok(FrameGraph {
        adjacency: keep
            .iter()
            .map(|&u| keep.iter().map(|&v| g.adjacency[u][v]).collect())
            .collect(),
        labels: keep.iter().map(|&v| g.labels[v]).collect(),
        zero_vector: keep.iter().map(|&v| g.zero_vector[v]).collect(),
    })
}
