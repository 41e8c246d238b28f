//! Necessary conditions for (strict) scalability read off the frame graph.
//!
//! A filter can only prove non-scalability. Every filter runs on the
//! reduced instance: zero vectors and isolated vertices are dropped first,
//! since those are fixed by any scaling (an isolated vector spans its own
//! orthogonal summand, a zero vector takes any weight).

mod checks;
mod reduce;
mod replay;

use serde::Serialize;

use crate::graph::{build_graph, FrameGraph, DEFAULT_VERTEX_CAP};
use crate::linalg::Frame;
use crate::scalar::Scalar;

pub use checks::{
    filter_adjacent_dependence, filter_alpha, filter_bipartite_balance, filter_complete_codim1,
    filter_cycle, filter_diameter_codim2, filter_induced_path, filter_leaf_bridge,
    filter_orthogonal_set_codim2, filter_square_nonempty, filter_tree,
    filter_unique_common_neighbor,
};
pub use reduce::{reduce, Reduction};
pub use replay::recheck;

/// Ordered so that `max` picks the strongest conclusion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Inconclusive,
    NotStrictlyScalable,
    NotScalable,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Inconclusive => "inconclusive",
            Verdict::NotStrictlyScalable => "not_strictly_scalable",
            Verdict::NotScalable => "not_scalable",
        }
    }

    pub fn rules_out_strict(self) -> bool {
        self >= Verdict::NotStrictlyScalable
    }

    pub fn rules_out_nonneg(self) -> bool {
        self == Verdict::NotScalable
    }
}

/// Filter identifiers in report order.
pub const FILTER_ORDER: [&str; 11] = [
    "filter_square_nonempty",
    "filter_complete_codim1",
    "filter_alpha",
    "filter_diameter_codim2",
    "filter_orthogonal_set_codim2",
    "filter_bipartite_balance",
    "filter_unique_common_neighbor",
    "filter_leaf_bridge",
    "filter_tree",
    "filter_induced_path",
    "filter_cycle",
];

/// Witness for a verdict. Vertices are original frame indices (0-based);
/// serialization shifts them to 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(into = "CertificateRepr")]
pub enum Certificate {
    Edge { u: usize, v: usize },
    MissingEdge { u: usize, v: usize },
    IndependentSet { vertices: Vec<usize>, bound: usize },
    DistantPair { u: usize, v: usize, distance: usize },
    PartSizes { parts: Vec<(usize, usize)> },
    CommonNeighbor { u: usize, v: usize, w: usize },
    Leaf { vertex: usize, neighbor: usize },
    Bridge { u: usize, v: usize },
    Tree { vertices: usize, edges: usize },
    InducedPath { vertices: Vec<usize>, threshold: usize },
    Cycle { vertices: Vec<usize> },
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum CertificateRepr {
    Edge { u: usize, v: usize },
    MissingEdge { u: usize, v: usize },
    IndependentSet { vertices: Vec<usize>, bound: usize },
    DistantPair { u: usize, v: usize, distance: usize },
    PartSizes { parts: Vec<(usize, usize)> },
    CommonNeighbor { u: usize, v: usize, w: usize },
    Leaf { vertex: usize, neighbor: usize },
    Bridge { u: usize, v: usize },
    Tree { vertices: usize, edges: usize },
    InducedPath { vertices: Vec<usize>, threshold: usize },
    Cycle { vertices: Vec<usize> },
}

impl From<Certificate> for CertificateRepr {
    fn from(c: Certificate) -> Self {
        let one = |v: usize| v + 1;
        let all = |vs: Vec<usize>| vs.into_iter().map(one).collect();
        match c {
            Certificate::Edge { u, v } => CertificateRepr::Edge { u: one(u), v: one(v) },
            Certificate::MissingEdge { u, v } => CertificateRepr::MissingEdge { u: one(u), v: one(v) },
            Certificate::IndependentSet { vertices, bound } => CertificateRepr::IndependentSet {
                vertices: all(vertices),
                bound,
            },
            Certificate::DistantPair { u, v, distance } => CertificateRepr::DistantPair {
                u: one(u),
                v: one(v),
                distance,
            },
            Certificate::PartSizes { parts } => CertificateRepr::PartSizes { parts },
            Certificate::CommonNeighbor { u, v, w } => CertificateRepr::CommonNeighbor {
                u: one(u),
                v: one(v),
                w: one(w),
            },
            Certificate::Leaf { vertex, neighbor } => CertificateRepr::Leaf {
                vertex: one(vertex),
                neighbor: one(neighbor),
            },
            Certificate::Bridge { u, v } => CertificateRepr::Bridge { u: one(u), v: one(v) },
            Certificate::Tree { vertices, edges } => CertificateRepr::Tree { vertices, edges },
            Certificate::InducedPath { vertices, threshold } => CertificateRepr::InducedPath {
                vertices: all(vertices),
                threshold,
            },
            Certificate::Cycle { vertices } => CertificateRepr::Cycle { vertices: all(vertices) },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FilterReport {
    pub filter_id: &'static str,
    pub citation: &'static str,
    pub verdict: Verdict,
    pub certificate: Option<Certificate>,
    pub applicable: bool,
    pub experimental: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl FilterReport {
    pub(crate) fn new(filter_id: &'static str, citation: &'static str) -> Self {
        FilterReport {
            filter_id,
            citation,
            verdict: Verdict::Inconclusive,
            certificate: None,
            applicable: false,
            experimental: false,
            note: None,
        }
    }
}

/// Data-quality and hypothesis warnings attached to a filter run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Warning {
    ZeroVector { vertex: usize },
    IsolatedVertex { vertex: usize },
    /// Adjacent parallel vectors whose closed neighbourhoods differ.
    DependenceMismatch { u: usize, v: usize },
    /// The reduced instance cannot come from a frame (too few vectors for
    /// the remaining dimension).
    InconsistentReduction { m: usize, n: i64 },
    /// Exponential searches were skipped on a large graph.
    SearchCapExceeded { vertices: usize, cap: usize },
}

impl Warning {
    /// Copy with vertex indices shifted to 1-based, for reports.
    pub fn for_report(&self) -> Warning {
        match *self {
            Warning::ZeroVector { vertex } => Warning::ZeroVector { vertex: vertex + 1 },
            Warning::IsolatedVertex { vertex } => Warning::IsolatedVertex { vertex: vertex + 1 },
            Warning::DependenceMismatch { u, v } => Warning::DependenceMismatch { u: u + 1, v: v + 1 },
            ref w => w.clone(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FilterConfig {
    /// Include experimental filters in the combined verdict.
    pub enable_experimental: bool,
    /// The induced-path filter fires above `floor(n/2) + offset` vertices.
    pub induced_path_offset: usize,
    pub vertex_cap: usize,
    /// Relative tolerance for detecting parallel vectors.
    pub parallel_tol: f64,
}

impl Default for FilterConfig {
    fn default() -> Self {
        FilterConfig {
            enable_experimental: false,
            induced_path_offset: 2,
            vertex_cap: DEFAULT_VERTEX_CAP,
            parallel_tol: 1e-10,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilterRun {
    pub reports: Vec<FilterReport>,
    pub verdict: Verdict,
    pub reduction: Reduction,
    pub warnings: Vec<Warning>,
}

impl FilterRun {
    pub fn report(&self, filter_id: &str) -> Option<&FilterReport> {
        self.reports.iter().find(|r| r.filter_id == filter_id)
    }

    /// Reports whose verdict counts toward the combined verdict.
    pub fn decisive(&self) -> impl Iterator<Item = &FilterReport> {
        self.reports.iter().filter(|r| r.verdict != Verdict::Inconclusive)
    }
}

/// Runs every filter on a frame graph for vectors in `R^n`.
pub fn run_all_filters(g: &FrameGraph, n: usize, config: &FilterConfig) -> FilterRun {
    let (reduction, ctx) = reduce::prepare(g, n, config);
    let mut warnings = reduction.warnings(g);
    if let Some(w) = ctx.as_ref().and_then(|c| c.cap_warning()) {
        warnings.push(w);
    }
    let reports: Vec<FilterReport> = match &ctx {
        Some(ctx) => checks::all(ctx, config),
        None => checks::all_inapplicable(config, reduction.note()),
    };
    let verdict = reports
        .iter()
        .filter(|r| config.enable_experimental || !r.experimental)
        .map(|r| r.verdict)
        .max()
        .unwrap_or(Verdict::Inconclusive);
    FilterRun {
        reports,
        verdict,
        reduction,
        warnings,
    }
}

/// Builds the frame graph, runs the graph filters and adds the
/// parallel-vector consistency check.
pub fn run_frame_filters<T: Scalar>(
    frame: &Frame<T>,
    tol_zero: f64,
    config: &FilterConfig,
) -> FilterRun {
    let g = build_graph(frame, tol_zero);
    let mut run = run_all_filters(&g, frame.dim(), config);
    run.warnings
        .extend(filter_adjacent_dependence(frame, &g, config.parallel_tol));
    run
}

#[cfg(test)]
mod tests;
