//! End-to-end analysis of one frame: graph, filters and both oracles.

use serde::Serialize;

use crate::filters::{run_frame_filters, FilterConfig, FilterRun, Verdict};
use crate::graph::{build_graph, compute_stats, FrameGraph, GraphStats, StatsConfig};
use crate::linalg::Frame;
use crate::scalar::Scalar;
use crate::scaler::{build_lp, solve_scalable, solve_strict, OracleResult, ScalerError, SolverOptions, StrictResult};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalysisConfig {
    pub tol_zero: f64,
    pub solver: SolverOptions,
    pub filters: FilterConfig,
    /// Skip both oracles.
    pub filters_only: bool,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            tol_zero: 1e-10,
            solver: SolverOptions::default(),
            filters: FilterConfig::default(),
            filters_only: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Conclusion {
    StrictlyScalable,
    /// Scalable, but only with some zero weight.
    Scalable,
    NotScalable,
    NotStrictlyScalable,
    Inconclusive,
}

impl Conclusion {
    pub fn as_str(self) -> &'static str {
        match self {
            Conclusion::StrictlyScalable => "strictly_scalable",
            Conclusion::Scalable => "scalable",
            Conclusion::NotScalable => "not_scalable",
            Conclusion::NotStrictlyScalable => "not_strictly_scalable",
            Conclusion::Inconclusive => "inconclusive",
        }
    }
}

/// Which evidence settled the conclusion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Evidence {
    Oracle,
    Filters,
    None,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Oracles<T: Scalar> {
    pub nonneg: OracleResult<T>,
    pub strict: StrictResult<T>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Analysis<T: Scalar> {
    pub graph: FrameGraph,
    pub stats: GraphStats,
    pub filters: FilterRun,
    pub oracles: Option<Oracles<T>>,
    pub conclusion: Conclusion,
    pub evidence: Evidence,
    /// Set when a filter verdict disagrees with the oracle.
    pub conflict: bool,
}

fn from_filters(v: Verdict) -> (Conclusion, Evidence) {
    match v {
        Verdict::NotScalable => (Conclusion::NotScalable, Evidence::Filters),
        Verdict::NotStrictlyScalable => (Conclusion::NotStrictlyScalable, Evidence::Filters),
        Verdict::Inconclusive => (Conclusion::Inconclusive, Evidence::None),
    }
}

/// Combines the filter verdict with oracle results; exact oracle answers
/// take precedence, ambiguous ones defer to the filters.
pub fn conclude<T: Scalar>(filters: Verdict, oracles: Option<&Oracles<T>>) -> (Conclusion, Evidence, bool) {
    let Some(o) = oracles else {
        let (c, e) = from_filters(filters);
        return (c, e, false);
    };
    let (c, e) = match (&o.strict, &o.nonneg) {
        (StrictResult::StrictlyFeasible { .. }, _) => (Conclusion::StrictlyScalable, Evidence::Oracle),
        (StrictResult::Boundary { .. }, _) => (Conclusion::Scalable, Evidence::Oracle),
        (StrictResult::Infeasible { .. }, _) | (_, OracleResult::Infeasible { .. }) => {
            (Conclusion::NotScalable, Evidence::Oracle)
        }
        (_, OracleResult::Feasible(_)) if filters.rules_out_strict() => {
            (Conclusion::Scalable, Evidence::Oracle)
        }
        _ => from_filters(filters),
    };
    let conflict = match c {
        Conclusion::StrictlyScalable => filters.rules_out_strict(),
        Conclusion::Scalable => filters.rules_out_nonneg(),
        _ => false,
    };
    (c, e, conflict)
}

pub fn analyze<T: Scalar>(frame: &Frame<T>, config: &AnalysisConfig) -> Result<Analysis<T>, ScalerError> {
    let graph = build_graph(frame, config.tol_zero);
    let stats = compute_stats(
        &graph,
        &StatsConfig {
            vertex_cap: config.filters.vertex_cap,
        },
    );
    let filters = run_frame_filters(frame, config.tol_zero, &config.filters);
    let oracles = if config.filters_only {
        None
    } else {
        let lp = build_lp(frame);
        Some(Oracles {
            nonneg: solve_scalable(&lp, &config.solver)?,
            strict: solve_strict(&lp, &config.solver)?,
        })
    };
    let (conclusion, evidence, conflict) = conclude(filters.verdict, oracles.as_ref());
    Ok(Analysis {
        graph,
        stats,
        filters,
        oracles,
        conclusion,
        evidence,
        conflict,
    })
}
