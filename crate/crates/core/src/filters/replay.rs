use crate::graph::{bfs, bipartition_part_sizes, induced_subgraph, signed_sum_can_vanish};
use crate::graph::FrameGraph;

use super::checks::{alpha_bound, cycle_order};
use super::reduce::{prepare, Context};
use super::{Certificate, FilterConfig, FilterReport, Verdict};

/// Re-derives a report's verdict from its certificate alone, using only the
/// graph and dimension. Inconclusive reports carry nothing to check and
/// always pass.
pub fn recheck(report: &FilterReport, g: &FrameGraph, n: usize) -> bool {
    if report.verdict == Verdict::Inconclusive {
        return report.certificate.is_none();
    }
    let Some(cert) = &report.certificate else {
        return false;
    };
    let (_, ctx) = prepare(g, n, &FilterConfig::default());
    let Some(ctx) = ctx else {
        return false;
    };
    let expected = match report.filter_id {
        "filter_square_nonempty" | "filter_cycle" => Verdict::NotScalable,
        _ => Verdict::NotStrictlyScalable,
    };
    report.verdict == expected && check(report.filter_id, cert, &ctx)
}

fn idx(ctx: &Context, labels: &[usize]) -> Option<Vec<usize>> {
    labels.iter().map(|&l| ctx.index_of(l)).collect()
}

fn component_size(ctx: &Context, v: usize) -> usize {
    bfs(&ctx.h, v).iter().flatten().count()
}

fn independent(ctx: &Context, vs: &[usize]) -> bool {
    vs.iter().enumerate().all(|(i, &a)| {
        vs[i + 1..].iter().all(|&b| a != b && !ctx.h.has_edge(a, b))
    })
}

fn check(filter_id: &str, cert: &Certificate, ctx: &Context) -> bool {
    let (m, n) = (ctx.m, ctx.n);
    match (filter_id, cert) {
        ("filter_square_nonempty", Certificate::Edge { u, v }) => {
            let Some(p) = idx(ctx, &[*u, *v]) else { return false };
            m == n && ctx.h.has_edge(p[0], p[1])
        }
        ("filter_complete_codim1", Certificate::MissingEdge { u, v }) => {
            let Some(p) = idx(ctx, &[*u, *v]) else { return false };
            m == n + 1 && p[0] != p[1] && !ctx.h.has_edge(p[0], p[1])
        }
        ("filter_alpha", Certificate::IndependentSet { vertices, bound }) => {
            let Some(p) = idx(ctx, vertices) else { return false };
            *bound == alpha_bound(m, n) && p.len() > *bound && independent(ctx, &p)
        }
        ("filter_orthogonal_set_codim2", Certificate::IndependentSet { vertices, bound }) => {
            let Some(p) = idx(ctx, vertices) else { return false };
            m == n + 2 && *bound == 2 && p.len() >= 3 && independent(ctx, &p)
        }
        ("filter_diameter_codim2", Certificate::DistantPair { u, v, distance }) => {
            let Some(p) = idx(ctx, &[*u, *v]) else { return false };
            let dist = bfs(&ctx.h, p[0]);
            m == n + 2
                && dist.iter().all(Option::is_some)
                && dist[p[1]] == Some(*distance)
                && *distance >= 3
        }
        ("filter_bipartite_balance", Certificate::PartSizes { parts }) => {
            let diffs: Vec<i64> = parts.iter().map(|&(x, y)| x as i64 - y as i64).collect();
            bipartition_part_sizes(&ctx.h).as_ref() == Some(parts) && !signed_sum_can_vanish(&diffs)
        }
        ("filter_unique_common_neighbor", Certificate::CommonNeighbor { u, v, w }) => {
            let Some(p) = idx(ctx, &[*u, *v, *w]) else { return false };
            let (a, b, c) = (p[0], p[1], p[2]);
            let common: Vec<usize> = (0..m)
                .filter(|&x| ctx.h.has_edge(a, x) && ctx.h.has_edge(b, x))
                .collect();
            a != b && !ctx.h.has_edge(a, b) && common == [c]
        }
        ("filter_leaf_bridge", Certificate::Leaf { vertex, neighbor }) => {
            let Some(p) = idx(ctx, &[*vertex, *neighbor]) else { return false };
            ctx.h.degree(p[0]) == 1 && ctx.h.has_edge(p[0], p[1]) && component_size(ctx, p[0]) >= 3
        }
        ("filter_leaf_bridge", Certificate::Bridge { u, v }) => {
            let Some(p) = idx(ctx, &[*u, *v]) else { return false };
            if !ctx.h.has_edge(p[0], p[1]) || component_size(ctx, p[0]) < 3 {
                return false;
            }
            let mut cut = ctx.h.adjacency().to_vec();
            cut[p[0]][p[1]] = false;
            cut[p[1]][p[0]] = false;
            let cut = FrameGraph::from_adjacency(cut).expect("still symmetric");
            bfs(&cut, p[0])[p[1]].is_none()
        }
        ("filter_tree", Certificate::Tree { vertices, edges }) => {
            *vertices == m
                && m >= 3
                && *edges == ctx.h.edge_count()
                && *edges == m - 1
                && bfs(&ctx.h, 0).iter().all(Option::is_some)
        }
        ("filter_induced_path", Certificate::InducedPath { vertices, threshold }) => {
            let Some(p) = idx(ctx, vertices) else { return false };
            let Ok(sub) = induced_subgraph(&ctx.h, &p) else { return false };
            let is_path = (0..p.len()).all(|i| {
                (0..p.len()).all(|j| sub.has_edge(i, j) == (i.abs_diff(j) == 1))
            });
            is_path && p.len() > *threshold && *threshold >= n / 2
        }
        ("filter_cycle", Certificate::Cycle { vertices }) => {
            let Some(p) = idx(ctx, vertices) else { return false };
            let closes = (0..m).all(|i| ctx.h.has_edge(p[i], p[(i + 1) % m]));
            let mut sorted = p.clone();
            sorted.sort_unstable();
            sorted.dedup();
            p.len() == m
                && sorted.len() == m
                && closes
                && ctx.h.edge_count() == m
                && m >= 7
                && n + 2 >= m
                && n <= m
                && cycle_order(&ctx.h).len() == m
        }
        _ => false,
    }
}
