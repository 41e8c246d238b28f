//! Definition-level graph oracles on adjacency bitmasks (at most 64
//! vertices, meant for 7 or fewer). Every function enumerates subsets or
//! orderings directly; none shares code with the library searches.
#![allow(dead_code)]

pub type Adj = Vec<u64>;

/// All labelled graphs on `m` vertices, indexed by an edge bitcode over the
/// pairs `(i, j)`, `i < j`, in lexicographic order.
pub fn graph_from_code(m: usize, code: u64) -> Adj {
    let mut adj = vec![0u64; m];
    let mut bit = 0;
    for i in 0..m {
        for j in i + 1..m {
            if code >> bit & 1 == 1 {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
            bit += 1;
        }
    }
    adj
}

pub fn edges(adj: &Adj) -> Vec<(usize, usize)> {
    let m = adj.len();
    let mut out = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            if adj[i] >> j & 1 == 1 {
                out.push((i, j));
            }
        }
    }
    out
}

fn subsets(m: usize) -> impl Iterator<Item = u64> {
    0..(1u64 << m)
}

pub fn is_independent(adj: &Adj, set: u64) -> bool {
    (0..adj.len()).all(|v| set >> v & 1 == 0 || adj[v] & set == 0)
}

pub fn alpha(adj: &Adj) -> usize {
    subsets(adj.len())
        .filter(|&s| is_independent(adj, s))
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// Connected within `set` (the empty set counts as connected).
pub fn connected_within(adj: &Adj, set: u64) -> bool {
    if set == 0 {
        return true;
    }
    let mut seen = 1u64 << set.trailing_zeros();
    loop {
        let mut next = seen;
        for v in 0..adj.len() {
            if seen >> v & 1 == 1 {
                next |= adj[v] & set;
            }
        }
        if next == seen {
            return seen == set;
        }
        seen = next;
    }
}

pub fn component_count(adj: &Adj) -> usize {
    let all = if adj.len() == 64 { u64::MAX } else { (1u64 << adj.len()) - 1 };
    let mut unseen = all;
    let mut count = 0;
    while unseen != 0 {
        let mut comp = 1u64 << unseen.trailing_zeros();
        loop {
            let mut next = comp;
            for v in 0..adj.len() {
                if comp >> v & 1 == 1 {
                    next |= adj[v];
                }
            }
            if next == comp {
                break;
            }
            comp = next;
        }
        unseen &= !comp;
        count += 1;
    }
    count
}

/// Floyd–Warshall; `None` when disconnected.
pub fn diameter(adj: &Adj) -> Option<usize> {
    let m = adj.len();
    const INF: usize = usize::MAX / 4;
    let mut d = vec![vec![INF; m]; m];
    for i in 0..m {
        d[i][i] = 0;
        for j in 0..m {
            if adj[i] >> j & 1 == 1 {
                d[i][j] = 1;
            }
        }
    }
    for k in 0..m {
        for i in 0..m {
            for j in 0..m {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    let worst = d.iter().flatten().copied().max().unwrap_or(0);
    (worst < INF).then_some(worst)
}

/// Edges whose deletion increases the number of components.
pub fn bridges(adj: &Adj) -> Vec<(usize, usize)> {
    let base = component_count(adj);
    edges(adj)
        .into_iter()
        .filter(|&(u, v)| {
            let mut cut = adj.clone();
            cut[u] &= !(1 << v);
            cut[v] &= !(1 << u);
            component_count(&cut) > base
        })
        .collect()
}

/// Some 2-colouring has no monochromatic edge.
pub fn is_bipartite(adj: &Adj) -> bool {
    let m = adj.len();
    subsets(m).any(|red| {
        (0..m).all(|v| {
            let same = if red >> v & 1 == 1 { red } else { !red };
            adj[v] & same == 0
        })
    })
}

fn permutations(items: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    if k == items.len() {
        return f(items);
    }
    for i in k..items.len() {
        items.swap(k, i);
        if permutations(items, k + 1, f) {
            return true;
        }
        items.swap(k, i);
    }
    false
}

/// The whole graph is a single cycle through all `m >= 3` vertices.
pub fn is_cycle(adj: &Adj) -> bool {
    let m = adj.len();
    if m < 3 || edges(adj).len() != m {
        return false;
    }
    let mut rest: Vec<usize> = (1..m).collect();
    permutations(&mut rest, 0, &mut |order| {
        let mut prev = 0;
        for &v in order {
            if adj[prev] >> v & 1 == 0 {
                return false;
            }
            prev = v;
        }
        adj[prev] & 1 == 1
    })
}

/// The induced subgraph on `set` is a path (one vertex counts).
pub fn induces_path(adj: &Adj, set: u64) -> bool {
    if set == 0 {
        return false;
    }
    let k = set.count_ones();
    let mut degree_sum = 0;
    for v in 0..adj.len() {
        if set >> v & 1 == 1 {
            let d = (adj[v] & set).count_ones();
            if d > 2 {
                return false;
            }
            degree_sum += d;
        }
    }
    degree_sum == 2 * (k - 1) && connected_within(adj, set)
}

/// Vertex count of a longest induced path.
pub fn longest_induced_path_len(adj: &Adj) -> usize {
    subsets(adj.len())
        .filter(|&s| induces_path(adj, s))
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// `seq` lists distinct vertices, consecutive ones adjacent and all other
/// pairs non-adjacent.
pub fn is_induced_path_sequence(adj: &Adj, seq: &[usize]) -> bool {
    for (i, &a) in seq.iter().enumerate() {
        for (j, &b) in seq.iter().enumerate().skip(i + 1) {
            if a == b {
                return false;
            }
            let adjacent = adj[a] >> b & 1 == 1;
            if adjacent != (j == i + 1) {
                return false;
            }
        }
    }
    !seq.is_empty()
}

pub fn mask(vertices: &[usize]) -> u64 {
    vertices.iter().fold(0, |acc, &v| acc | 1 << v)
}
