//! Exponential searches on neighbourhood bitmasks (graphs with <= 64 vertices).

fn bit(v: usize) -> u64 {
    1u64 << v
}

fn full(m: usize) -> u64 {
    if m == 64 {
        u64::MAX
    } else {
        (1u64 << m) - 1
    }
}

fn vertices(mask: u64) -> impl Iterator<Item = usize> {
    let mut rest = mask;
    std::iter::from_fn(move || {
        (rest != 0).then(|| {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            v
        })
    })
}

/// A maximum independent set, as sorted vertex indices.
///
/// Branch and bound: a vertex of degree at most one in the remaining
/// candidates is always taken; otherwise branch on a vertex of largest
/// degree.
pub fn maximum_independent_set(adj: &[u64]) -> Vec<usize> {
    let mut best = 0u64;
    mis_search(adj, full(adj.len()), 0, &mut best);
    vertices(best).collect()
}

fn mis_search(adj: &[u64], cand: u64, current: u64, best: &mut u64) {
    if current.count_ones() + cand.count_ones() <= best.count_ones() {
        return;
    }
    let mut pick = None;
    let mut max_deg = 0;
    for v in vertices(cand) {
        let d = (adj[v] & cand).count_ones();
        if d <= 1 {
            mis_search(adj, cand & !(adj[v] | bit(v)), current | bit(v), best);
            return;
        }
        if d > max_deg {
            max_deg = d;
            pick = Some(v);
        }
    }
    let Some(v) = pick else {
        if current.count_ones() > best.count_ones() {
            *best = current;
        }
        return;
    };
    mis_search(adj, cand & !(adj[v] | bit(v)), current | bit(v), best);
    mis_search(adj, cand & !bit(v), current, best);
}

/// A longest induced path (vertex sequence). Empty only for the empty graph.
pub fn longest_induced_path(adj: &[u64]) -> Vec<usize> {
    let m = adj.len();
    let mut best = Vec::new();
    let mut path = Vec::with_capacity(m);
    for s in 0..m {
        path.clear();
        path.push(s);
        extend_path(adj, full(m), &mut path, bit(s), &mut best);
        if best.len() == m {
            break;
        }
    }
    best
}

// `blocked` holds the path and every neighbour of a non-final path vertex.
fn extend_path(adj: &[u64], all: u64, path: &mut Vec<usize>, blocked: u64, best: &mut Vec<usize>) {
    if path.len() > best.len() {
        *best = path.clone();
    }
    let last = *path.last().expect("nonempty path");
    let next_blocked = blocked | adj[last] | bit(last);
    let cand = adj[last] & !blocked;
    // later vertices are reachable from a candidate through unblocked ones
    let allowed = (all & !next_blocked) | cand;
    let mut reach = cand;
    let mut frontier = reach;
    while frontier != 0 {
        let grown = vertices(frontier).fold(0, |acc, v| acc | adj[v]) & allowed & !reach;
        reach |= grown;
        frontier = grown;
    }
    if path.len() + reach.count_ones() as usize <= best.len() {
        return;
    }
    for u in vertices(cand) {
        path.push(u);
        extend_path(adj, all, path, next_blocked | bit(u), best);
        path.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::FrameGraph;

    fn masks(g: &FrameGraph) -> Vec<u64> {
        g.masks().unwrap()
    }

    #[test]
    fn independence_numbers_of_families() {
        assert_eq!(maximum_independent_set(&masks(&FrameGraph::cycle(5))).len(), 2);
        assert_eq!(maximum_independent_set(&masks(&FrameGraph::cycle(8))).len(), 4);
        assert_eq!(maximum_independent_set(&masks(&FrameGraph::complete(6))).len(), 1);
        assert_eq!(maximum_independent_set(&masks(&FrameGraph::empty(6))).len(), 6);
        assert_eq!(
            maximum_independent_set(&masks(&FrameGraph::star(3))),
            vec![1, 2, 3]
        );
    }

    #[test]
    fn returned_set_is_independent() {
        let g = FrameGraph::complete(2)
            .disjoint_union(&FrameGraph::complete(2))
            .join(&FrameGraph::star(3));
        let adj = masks(&g);
        let s = maximum_independent_set(&adj);
        assert_eq!(s.len(), 3);
        for &a in &s {
            for &b in &s {
                assert!(!g.has_edge(a, b));
            }
        }
    }

    #[test]
    fn longest_induced_paths() {
        assert_eq!(longest_induced_path(&masks(&FrameGraph::path(6))).len(), 6);
        assert_eq!(longest_induced_path(&masks(&FrameGraph::cycle(7))).len(), 6);
        assert_eq!(longest_induced_path(&masks(&FrameGraph::complete(5))).len(), 2);
        assert_eq!(longest_induced_path(&masks(&FrameGraph::star(4))).len(), 3);
        assert_eq!(longest_induced_path(&masks(&FrameGraph::empty(3))).len(), 1);
        assert!(longest_induced_path(&[]).is_empty());
    }
}
