use crate::graph::{compute_stats, induced_subgraph, FrameGraph, GraphStats, StatsConfig};

use super::{FilterConfig, Warning};

/// How the instance shrank before filtering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    /// Surviving vertices (original indices).
    pub kept: Vec<usize>,
    pub zero_vectors: Vec<usize>,
    /// Isolated vertices that are not zero vectors.
    pub isolated: Vec<usize>,
    pub m: usize,
    /// May be negative for graph-only inputs that no frame realizes.
    pub n: i64,
}

impl Reduction {
    /// Whether the reduced instance can come from a frame.
    pub fn consistent(&self) -> bool {
        self.n >= 0 && (self.m as i64) >= self.n && (self.m == 0 || self.n >= 1)
    }

    pub(crate) fn warnings(&self, g: &FrameGraph) -> Vec<Warning> {
        let mut out: Vec<Warning> = self
            .zero_vectors
            .iter()
            .map(|&v| Warning::ZeroVector { vertex: g.label(v) })
            .collect();
        out.extend(
            self.isolated
                .iter()
                .map(|&v| Warning::IsolatedVertex { vertex: g.label(v) }),
        );
        if !self.consistent() {
            out.push(Warning::InconsistentReduction {
                m: self.m,
                n: self.n,
            });
        }
        out
    }

    pub(crate) fn note(&self) -> &'static str {
        if self.consistent() {
            "no vertices remain after removing zero and isolated vectors"
        } else {
            "reduced instance has fewer vectors than dimensions"
        }
    }
}

/// Reduced graph plus the shared statistics the filters read.
pub(crate) struct Context {
    pub h: FrameGraph,
    pub m: usize,
    pub n: usize,
    pub stats: GraphStats,
    pub cap: usize,
}

impl Context {
    pub fn cap_warning(&self) -> Option<Warning> {
        self.stats.search_cap_exceeded.then_some(Warning::SearchCapExceeded {
            vertices: self.m,
            cap: self.cap,
        })
    }

    /// Original label of reduced vertex `v`.
    pub fn label(&self, v: usize) -> usize {
        self.h.label(v)
    }

    pub fn index_of(&self, label: usize) -> Option<usize> {
        self.h.labels().iter().position(|&l| l == label)
    }
}

/// Drops zero vectors and isolated vertices; `n` loses one per isolated
/// nonzero vector.
pub fn reduce(g: &FrameGraph, n: usize) -> Reduction {
    let m = g.vertex_count();
    let zero_vectors: Vec<usize> = (0..m).filter(|&v| g.is_zero_vector(v)).collect();
    let isolated: Vec<usize> = (0..m)
        .filter(|&v| !g.is_zero_vector(v) && g.is_isolated(v))
        .collect();
    let kept: Vec<usize> = (0..m)
        .filter(|&v| !g.is_zero_vector(v) && !g.is_isolated(v))
        .collect();
    Reduction {
        m: kept.len(),
        n: n as i64 - isolated.len() as i64,
        kept,
        zero_vectors,
        isolated,
    }
}

pub(crate) fn prepare(g: &FrameGraph, n: usize, config: &FilterConfig) -> (Reduction, Option<Context>) {
    let r = reduce(g, n);
    if r.m == 0 || !r.consistent() {
        return (r, None);
    }
    let h = induced_subgraph(g, &r.kept).expect("nonempty selection");
    let stats = compute_stats(
        &h,
        &StatsConfig {
            vertex_cap: config.vertex_cap,
        },
    );
    let ctx = Context {
        m: r.m,
        n: r.n as usize,
        h,
        stats,
        cap: config.vertex_cap,
    };
    (r, Some(ctx))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isolated_nonzero_vectors_reduce_dimension() {
        // e1, e2, e3/√2, e3/√2 in R^3: graph is a single edge plus two isolated
        let g = FrameGraph::from_edges(4, &[(2, 3)]).unwrap();
        let r = reduce(&g, 3);
        assert_eq!(r.kept, vec![2, 3]);
        assert_eq!(r.isolated, vec![0, 1]);
        assert_eq!((r.m, r.n), (2, 1));
        assert!(r.consistent());
    }

    #[test]
    fn zero_vectors_keep_dimension() {
        let g = FrameGraph::from_edges(3, &[(0, 1)])
            .unwrap()
            .with_zero_vectors(&[2])
            .unwrap();
        let r = reduce(&g, 2);
        assert_eq!(r.zero_vectors, vec![2]);
        assert_eq!((r.m, r.n), (2, 2));
    }

    #[test]
    fn orthonormal_basis_reduces_to_nothing() {
        let r = reduce(&FrameGraph::empty(4), 4);
        assert_eq!((r.m, r.n), (0, 0));
        assert!(r.consistent());
    }

    #[test]
    fn impossible_graph_only_instances_are_flagged() {
        let r = reduce(&FrameGraph::empty(4), 2);
        assert!(!r.consistent());
        let r = reduce(&FrameGraph::complete(3), 5);
        assert!(!r.consistent());
    }
}
