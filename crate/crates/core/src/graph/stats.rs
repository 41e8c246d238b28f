use std::collections::VecDeque;

use serde::Serialize;

use super::search::{longest_induced_path, maximum_independent_set};
use super::FrameGraph;

/// Vertex count above which exponential searches are skipped.
pub const DEFAULT_VERTEX_CAP: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StatsConfig {
    pub vertex_cap: usize,
}

impl Default for StatsConfig {
    fn default() -> Self {
        StatsConfig {
            vertex_cap: DEFAULT_VERTEX_CAP,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphStats {
    pub vertex_count: usize,
    pub edge_count: usize,
    /// Components as sorted vertex lists, ordered by smallest vertex.
    pub components: Vec<Vec<usize>>,
    pub is_connected: bool,
    /// `None` when disconnected.
    pub diameter: Option<usize>,
    pub is_bipartite: bool,
    /// Per-component `(|X|, |Y|)`, where `X` holds the component's
    /// smallest vertex.
    pub part_sizes: Option<Vec<(usize, usize)>>,
    pub alpha: Option<usize>,
    pub maximum_independent_set: Option<Vec<usize>>,
    pub bridges: Vec<(usize, usize)>,
    pub leaves: Vec<usize>,
    pub is_complete: bool,
    pub is_empty: bool,
    pub is_cycle: bool,
    pub longest_induced_path: Option<Vec<usize>>,
    /// Set when the vertex cap suppressed the exponential searches.
    pub search_cap_exceeded: bool,
}

pub fn compute_stats(g: &FrameGraph, config: &StatsConfig) -> GraphStats {
    let m = g.vertex_count();
    let edge_count = g.edge_count();
    let components = components(g);
    let is_connected = components.len() == 1;
    let part_sizes = bipartition_part_sizes(g);
    let masks = (m <= config.vertex_cap.min(64)).then(|| g.masks()).flatten();
    let mis = masks.as_deref().map(maximum_independent_set);
    let lip = masks.as_deref().map(longest_induced_path);
    GraphStats {
        vertex_count: m,
        edge_count,
        diameter: if is_connected { Some(diameter(g)) } else { None },
        is_connected,
        is_bipartite: part_sizes.is_some(),
        part_sizes,
        alpha: mis.as_ref().map(Vec::len),
        maximum_independent_set: mis,
        bridges: bridges(g),
        leaves: (0..m).filter(|&v| g.degree(v) == 1).collect(),
        is_complete: 2 * edge_count == m * m.saturating_sub(1),
        is_empty: edge_count == 0,
        is_cycle: is_connected && m >= 3 && (0..m).all(|v| g.degree(v) == 2),
        longest_induced_path: lip,
        search_cap_exceeded: masks.is_none(),
        components,
    }
}

pub(crate) fn bfs(g: &FrameGraph, source: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.vertex_count()];
    dist[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(v) = queue.pop_front() {
        let d = dist[v].expect("visited");
        for u in g.neighbors(v) {
            if dist[u].is_none() {
                dist[u] = Some(d + 1);
                queue.push_back(u);
            }
        }
    }
    dist
}

pub(crate) fn components(g: &FrameGraph) -> Vec<Vec<usize>> {
    let mut seen = vec![false; g.vertex_count()];
    let mut out = Vec::new();
    for s in 0..g.vertex_count() {
        if seen[s] {
            continue;
        }
        let comp: Vec<usize> = bfs(g, s)
            .iter()
            .enumerate()
            .filter_map(|(v, d)| d.map(|_| v))
            .collect();
        for &v in &comp {
            seen[v] = true;
        }
        out.push(comp);
    }
    out
}

fn diameter(g: &FrameGraph) -> usize {
    (0..g.vertex_count())
        .map(|s| bfs(g, s).into_iter().flatten().max().unwrap_or(0))
        .max()
        .unwrap_or(0)
}

/// Per-component part sizes, or `None` if some component has an odd cycle.
pub(crate) fn bipartition_part_sizes(g: &FrameGraph) -> Option<Vec<(usize, usize)>> {
    let mut sizes = Vec::new();
    for comp in components(g) {
        let dist = bfs(g, comp[0]);
        for &v in &comp {
            if g.neighbors(v).any(|u| dist[u].unwrap() % 2 == dist[v].unwrap() % 2) {
                return None;
            }
        }
        let x = comp.iter().filter(|&&v| dist[v].unwrap() % 2 == 0).count();
        sizes.push((x, comp.len() - x));
    }
    Some(sizes)
}

/// Bridges `(u, v)` with `u < v`, sorted, by the low-link method.
fn bridges(g: &FrameGraph) -> Vec<(usize, usize)> {
    let m = g.vertex_count();
    let mut disc = vec![usize::MAX; m];
    let mut low = vec![0; m];
    let mut timer = 0;
    let mut out = Vec::new();
    for s in 0..m {
        if disc[s] == usize::MAX {
            bridge_dfs(g, s, usize::MAX, &mut disc, &mut low, &mut timer, &mut out);
        }
    }
    out.sort_unstable();
    out
}

fn bridge_dfs(
    g: &FrameGraph,
    v: usize,
    parent: usize,
    disc: &mut [usize],
    low: &mut [usize],
    timer: &mut usize,
    out: &mut Vec<(usize, usize)>,
) {
    disc[v] = *timer;
    low[v] = *timer;
    *timer += 1;
    for u in g.neighbors(v) {
        if u == parent {
            continue;
        }
        if disc[u] == usize::MAX {
            bridge_dfs(g, u, v, disc, low, timer, out);
            low[v] = low[v].min(low[u]);
            if low[u] > disc[v] {
                out.push((v.min(u), v.max(u)));
            }
        } else {
            low[v] = low[v].min(disc[u]);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn stats(g: &FrameGraph) -> GraphStats {
        compute_stats(g, &StatsConfig::default())
    }

    #[test]
    fn k2_union_k2() {
        let s = stats(&FrameGraph::complete(2).disjoint_union(&FrameGraph::complete(2)));
        assert_eq!(s.components, vec![vec![0, 1], vec![2, 3]]);
        assert!(!s.is_connected);
        assert_eq!(s.diameter, None);
        assert_eq!(s.part_sizes, Some(vec![(1, 1), (1, 1)]));
        assert_eq!(s.alpha, Some(2));
        assert_eq!(s.bridges, vec![(0, 1), (2, 3)]);
        assert_eq!(s.leaves, vec![0, 1, 2, 3]);
    }

    #[test]
    fn star_k13() {
        let s = stats(&FrameGraph::star(3));
        assert!(s.is_connected);
        assert_eq!(s.diameter, Some(2));
        assert_eq!(s.part_sizes, Some(vec![(1, 3)]));
        assert_eq!(s.alpha, Some(3));
        assert_eq!(s.bridges.len(), 3);
        assert_eq!(s.leaves, vec![1, 2, 3]);
        assert!(!s.is_cycle);
    }

    #[test]
    fn cycles() {
        let s = stats(&FrameGraph::cycle(7));
        assert!(s.is_cycle);
        assert!(!s.is_bipartite);
        assert_eq!(s.diameter, Some(3));
        assert_eq!(s.alpha, Some(3));
        assert!(s.bridges.is_empty());
        assert_eq!(s.longest_induced_path.as_ref().map(Vec::len), Some(6));
        let c4 = stats(&FrameGraph::cycle(4));
        assert_eq!(c4.part_sizes, Some(vec![(2, 2)]));
    }

    #[test]
    fn complete_and_trivial_graphs() {
        let k5 = stats(&FrameGraph::complete(5));
        assert!(k5.is_complete && !k5.is_empty);
        assert_eq!(k5.diameter, Some(1));
        let k1 = stats(&FrameGraph::empty(1));
        assert!(k1.is_complete && k1.is_empty && k1.is_connected);
        assert_eq!(k1.diameter, Some(0));
        let e3 = stats(&FrameGraph::empty(3));
        assert_eq!(e3.part_sizes, Some(vec![(1, 0), (1, 0), (1, 0)]));
    }

    #[test]
    fn vertex_cap_skips_searches() {
        let s = compute_stats(&FrameGraph::cycle(9), &StatsConfig { vertex_cap: 8 });
        assert!(s.search_cap_exceeded);
        assert_eq!(s.alpha, None);
        assert!(s.is_cycle);
    }

    #[test]
    fn path_diameter_and_bridges() {
        let s = stats(&FrameGraph::path(5));
        assert_eq!(s.diameter, Some(4));
        assert_eq!(s.bridges, vec![(0, 1), (1, 2), (2, 3), (3, 4)]);
        assert_eq!(s.leaves, vec![0, 4]);
    }
}
