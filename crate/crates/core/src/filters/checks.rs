use crate::graph::{bfs, signed_sum_can_vanish, FrameGraph};
use crate::linalg::Frame;
use crate::scalar::Scalar;

use super::reduce::{prepare, Context};
use super::{Certificate, FilterConfig, FilterReport, Verdict, Warning, FILTER_ORDER};

type Check = fn(&Context, &FilterConfig) -> FilterReport;

const CITATIONS: [&str; 11] = [
    "m = n: a scalable frame is a rescaled orthonormal basis (no weight can vanish without losing the span), so its graph has no edges",
    "a Parseval frame of n + 1 vectors in R^n has a complete graph",
    "an independent set in the graph of a Parseval frame of m vectors in R^n has at most m - n (k = m - n) and at most m/2 vertices",
    "a connected graph of a Parseval frame of n + 2 vectors in R^n has diameter at most 2",
    "a Parseval frame of n + 2 vectors in R^n contains no three pairwise orthogonal vectors",
    "a bipartite graph of a Parseval frame has partite sets of equal size",
    "no two non-adjacent vertices of a Parseval frame graph have exactly one common neighbor",
    "a component with at least 3 vertices of a Parseval frame graph has neither a leaf nor a bridge",
    "the graph of a Parseval frame with at least 3 vectors is not a tree",
    "an induced path in the graph of a Parseval frame in R^n has at most floor(n/2) + offset vertices",
    "a frame of m >= 7 vectors in R^l, l in {m-2, m-1, m}, whose graph is the cycle C_m is not scalable",
];

const CHECKS: [Check; 11] = [
    square_nonempty,
    complete_codim1,
    alpha,
    diameter_codim2,
    orthogonal_set_codim2,
    bipartite_balance,
    unique_common_neighbor,
    leaf_bridge,
    tree,
    induced_path,
    cycle,
];

fn blank(slot: usize) -> FilterReport {
    let mut r = FilterReport::new(FILTER_ORDER[slot], CITATIONS[slot]);
    r.experimental = FILTER_ORDER[slot] == "filter_induced_path";
    r
}

fn fire(mut r: FilterReport, verdict: Verdict, certificate: Certificate) -> FilterReport {
    r.verdict = verdict;
    r.certificate = Some(certificate);
    r
}

pub(crate) fn all(ctx: &Context, config: &FilterConfig) -> Vec<FilterReport> {
    CHECKS.iter().map(|check| check(ctx, config)).collect()
}

pub(crate) fn all_inapplicable(_config: &FilterConfig, note: &str) -> Vec<FilterReport> {
    (0..FILTER_ORDER.len())
        .map(|slot| {
            let mut r = blank(slot);
            r.note = Some(note.to_string());
            r
        })
        .collect()
}

fn single(slot: usize, g: &FrameGraph, n: usize, config: &FilterConfig) -> FilterReport {
    let (reduction, ctx) = prepare(g, n, config);
    match ctx {
        Some(ctx) => CHECKS[slot](&ctx, config),
        None => all_inapplicable(config, reduction.note()).swap_remove(slot),
    }
}

macro_rules! public_filter {
    ($(#[$doc:meta])* $name:ident, $slot:expr) => {
        $(#[$doc])*
        pub fn $name(g: &FrameGraph, n: usize) -> FilterReport {
            single($slot, g, n, &FilterConfig::default())
        }
    };
}

public_filter!(
    /// `m = n` and some edge: not scalable.
    filter_square_nonempty, 0
);
public_filter!(
    /// `m = n + 1` and a missing edge: not strictly scalable.
    filter_complete_codim1, 1
);
public_filter!(
    /// Independence number above `m - n` (when `m > n`) or `m/2`.
    filter_alpha, 2
);
public_filter!(
    /// `m = n + 2`, connected, diameter at least 3.
    filter_diameter_codim2, 3
);
public_filter!(
    /// `m = n + 2` and three pairwise orthogonal vectors.
    filter_orthogonal_set_codim2, 4
);
public_filter!(
    /// Bipartite with no balanced bipartition.
    filter_bipartite_balance, 5
);
public_filter!(
    /// A non-adjacent pair with exactly one common neighbor.
    filter_unique_common_neighbor, 6
);
public_filter!(
    /// A leaf or bridge in a component with at least 3 vertices.
    filter_leaf_bridge, 7
);
public_filter!(
    /// The graph is a tree on at least 3 vertices.
    filter_tree, 8
);
public_filter!(
    /// Long induced path (experimental, default offset).
    filter_induced_path, 9
);
public_filter!(
    /// `C_m` with `m >= 7` in `R^l`, `l` in `{m-2, m-1, m}`: not scalable.
    filter_cycle, 10
);

fn square_nonempty(ctx: &Context, _: &FilterConfig) -> FilterReport {
    let mut r = blank(0);
    r.applicable = ctx.m == ctx.n;
    if !r.applicable {
        return r;
    }
    match ctx.h.edges().first() {
        Some(&(u, v)) => fire(
            r,
            Verdict::NotScalable,
            Certificate::Edge {
                u: ctx.label(u),
                v: ctx.label(v),
            },
        ),
        None => r,
    }
}

fn complete_codim1(ctx: &Context, _: &FilterConfig) -> FilterReport {
    let mut r = blank(1);
    r.applicable = ctx.m == ctx.n + 1;
    if !r.applicable {
        return r;
    }
    let missing = (0..ctx.m)
        .flat_map(|u| (u + 1..ctx.m).map(move |v| (u, v)))
        .find(|&(u, v)| !ctx.h.has_edge(u, v));
    match missing {
        Some((u, v)) => fire(
            r,
            Verdict::NotStrictlyScalable,
            Certificate::MissingEdge {
                u: ctx.label(u),
                v: ctx.label(v),
            },
        ),
        None => r,
    }
}

/// Largest independent set size allowed for a reduced instance.
pub(crate) fn alpha_bound(m: usize, n: usize) -> usize {
    if m > n {
        (m - n).min(m / 2)
    } else {
        m / 2
    }
}

fn alpha(ctx: &Context, _: &FilterConfig) -> FilterReport {
    let mut r = blank(2);
    let Some(set) = &ctx.stats.maximum_independent_set else {
        r.note = Some("independence number not computed (vertex cap)".into());
        return r;
    };
    r.applicable = true;
    let bound = alpha_bound(ctx.m, ctx.n);
    if set.len() <= bound {
        return r;
    }
    fire(
        r,
        Verdict::NotStrictlyScalable,
        Certificate::IndependentSet {
            vertices: set.iter().map(|&v| ctx.label(v)).collect(),
            bound,
        },
    )
}

fn diameter_codim2(ctx: &Context, _: &FilterConfig) -> FilterReport {
    let mut r = blank(3);
    r.applicable = ctx.m == ctx.n + 2 && ctx.stats.is_connected;
    if !r.applicable || ctx.stats.diameter.is_some_and(|d| d <= 2) {
        return r;
    }
    for u in 0..ctx.m {
        let dist = bfs(&ctx.h, u);
        if let Some(v) = (u + 1..ctx.m).find(|&v| dist[v].is_some_and(|d| d >= 3)) {
            return fire(
                r,
                Verdict::NotStrictlyScalable,
                Certificate::DistantPair {
                    u: ctx.label(u),
                    v: ctx.label(v),
                    distance: dist[v].unwrap(),
                },
            );
        }
    }
    r
}

fn orthogonal_set_codim2(ctx: &Context, _: &FilterConfig) -> FilterReport {
    let mut r = blank(4);
    if ctx.m != ctx.n + 2 {
        return r;
    }
    let Some(set) = &ctx.stats.maximum_independent_set else {
        r.note = Some("independence number not computed (vertex cap)".into());
        return r;
    };
    r.applicable = true;
    if set.len() < 3 {
        return r;
    }
    fire(
        r,
        Verdict::NotStrictlyScalable,
        Certificate::IndependentSet {
            vertices: set[..3].iter().map(|&v| ctx.label(v)).collect(),
            bound: 2,
        },
    )
}

fn bipartite_balance(ctx: &Context, _: &FilterConfig) -> FilterReport {
    let mut r = blank(5);
    let Some(parts) = &ctx.stats.part_sizes else {
        return r;
    };
    r.applicable = true;
    let diffs: Vec<i64> = parts.iter().map(|&(x, y)| x as i64 - y as i64).collect();
    if signed_sum_can_vanish(&diffs) {
        return r;
    }
    fire(
        r,
        Verdict::NotStrictlyScalable,
        Certificate::PartSizes {
            parts: parts.clone(),
        },
    )
}

fn component_of(ctx: &Context) -> Vec<usize> {
    let mut comp = vec![0; ctx.m];
    for (c, vs) in ctx.stats.components.iter().enumerate() {
        for &v in vs {
            comp[v] = c;
        }
    }
    comp
}

fn has_large_component(ctx: &Context) -> bool {
    ctx.stats.components.iter().any(|c| c.len() >= 3)
}

fn unique_common_neighbor(ctx: &Context, _: &FilterConfig) -> FilterReport {
    let mut r = blank(6);
    r.applicable = has_large_component(ctx);
    if !r.applicable {
        return r;
    }
    match crate::graph::unique_common_neighbor_pairs(&ctx.h).first() {
        Some(&(u, v, w)) => fire(
            r,
            Verdict::NotStrictlyScalable,
            Certificate::CommonNeighbor {
                u: ctx.label(u),
                v: ctx.label(v),
                w: ctx.label(w),
            },
        ),
        None => r,
    }
}

fn leaf_bridge(ctx: &Context, _: &FilterConfig) -> FilterReport {
    let mut r = blank(7);
    r.applicable = has_large_component(ctx);
    if !r.applicable {
        return r;
    }
    let comp = component_of(ctx);
    let large = |v: usize| ctx.stats.components[comp[v]].len() >= 3;
    if let Some(&leaf) = ctx.stats.leaves.iter().find(|&&v| large(v)) {
        let neighbor = ctx.h.neighbors(leaf).next().expect("leaf has a neighbor");
        return fire(
            r,
            Verdict::NotStrictlyScalable,
            Certificate::Leaf {
                vertex: ctx.label(leaf),
                neighbor: ctx.label(neighbor),
            },
        );
    }
    match ctx.stats.bridges.iter().find(|&&(u, _)| large(u)) {
        Some(&(u, v)) => fire(
            r,
            Verdict::NotStrictlyScalable,
            Certificate::Bridge {
                u: ctx.label(u),
                v: ctx.label(v),
            },
        ),
        None => r,
    }
}

fn tree(ctx: &Context, _: &FilterConfig) -> FilterReport {
    let mut r = blank(8);
    r.applicable = ctx.m >= 3;
    if !r.applicable || !ctx.stats.is_connected || ctx.stats.edge_count != ctx.m - 1 {
        return r;
    }
    fire(
        r,
        Verdict::NotStrictlyScalable,
        Certificate::Tree {
            vertices: ctx.m,
            edges: ctx.stats.edge_count,
        },
    )
}

fn induced_path(ctx: &Context, config: &FilterConfig) -> FilterReport {
    let mut r = blank(9);
    let Some(path) = &ctx.stats.longest_induced_path else {
        r.note = Some("longest induced path not computed (vertex cap)".into());
        return r;
    };
    r.applicable = true;
    let threshold = ctx.n / 2 + config.induced_path_offset;
    if path.len() <= threshold {
        return r;
    }
    fire(
        r,
        Verdict::NotStrictlyScalable,
        Certificate::InducedPath {
            vertices: path.iter().map(|&v| ctx.label(v)).collect(),
            threshold,
        },
    )
}

/// Vertices of a cycle graph in traversal order, starting at vertex 0
/// towards its smaller neighbor.
pub(crate) fn cycle_order(h: &FrameGraph) -> Vec<usize> {
    let m = h.vertex_count();
    let mut order = vec![0];
    let mut prev = usize::MAX;
    let mut cur = 0;
    while order.len() < m {
        let next = h.neighbors(cur).find(|&u| u != prev).expect("cycle vertex");
        prev = cur;
        cur = next;
        order.push(cur);
    }
    order
}

fn cycle(ctx: &Context, _: &FilterConfig) -> FilterReport {
    let mut r = blank(10);
    let (m, n) = (ctx.m, ctx.n);
    r.applicable = ctx.stats.is_cycle && m >= 7 && n + 2 >= m && n <= m;
    if !r.applicable {
        return r;
    }
    fire(
        r,
        Verdict::NotScalable,
        Certificate::Cycle {
            vertices: cycle_order(&ctx.h).into_iter().map(|v| ctx.label(v)).collect(),
        },
    )
}

/// Adjacent parallel vectors must have equal closed neighbourhoods; a
/// mismatch means `tol_zero` splits a pair of nearly equal inner products.
pub fn filter_adjacent_dependence<T: Scalar>(
    frame: &Frame<T>,
    g: &FrameGraph,
    parallel_tol: f64,
) -> Vec<Warning> {
    let mut out = Vec::new();
    for (u, v) in g.edges() {
        let nu = frame.norm_squared(u);
        let nv = frame.norm_squared(v);
        let ip = frame.inner(u, v);
        let scale = (nu.clone() * nv.clone()).to_f64();
        let det = nu * nv - ip.clone() * ip;
        if !det.negligible(parallel_tol * scale) {
            continue;
        }
        let same = (0..g.vertex_count())
            .all(|w| (w == u || g.has_edge(u, w)) == (w == v || g.has_edge(v, w)));
        if !same {
            out.push(Warning::DependenceMismatch { u, v });
        }
    }
    out
}
