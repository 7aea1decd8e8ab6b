use serde::{Deserialize, Serialize};

use super::{bits, Graph};

/// Cheap structural invariants used by the early classification stages.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InvariantRecord {
    pub n: usize,
    pub m: usize,
    /// Sorted descending.
    pub degree_sequence: Vec<usize>,
    pub triangle_count: usize,
    pub edge_connectivity: usize,
    /// 0 for forests.
    pub girth: usize,
    pub is_bipartite: bool,
    /// Sorted ascending.
    pub component_sizes: Vec<usize>,
}

pub fn basic_invariants(g: &Graph) -> InvariantRecord {
    let mut degree_sequence: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    degree_sequence.sort_unstable_by(|a, b| b.cmp(a));
    let mut component_sizes: Vec<usize> = g.components().iter().map(|c| c.count_ones() as usize).collect();
    component_sizes.sort_unstable();
    InvariantRecord {
        n: g.n(),
        m: g.m(),
        degree_sequence,
        triangle_count: triangle_count(g),
        edge_connectivity: edge_connectivity(g),
        girth: girth(g),
        is_bipartite: is_bipartite(g),
        component_sizes,
    }
}

pub(crate) fn triangle_count(g: &Graph) -> usize {
    g.edges()
        .iter()
        .map(|&(u, v)| (g.adj(u) & g.adj(v)).count_ones() as usize)
        .sum::<usize>()
        / 3
}

/// Global minimum edge cut by scanning every bipartition with vertex 0 on one
/// side. Zero for disconnected graphs and for `K_1`.
pub(crate) fn edge_connectivity(g: &Graph) -> usize {
    let n = g.n();
    if n == 1 || !g.is_connected() {
        return 0;
    }
    let all = g.vertex_mask();
    let mut best = usize::MAX;
    // S ranges over sets containing vertex 0 but not all vertices.
    for rest in 0..(1u32 << (n - 1)) - 1 {
        let s = rest << 1 | 1;
        let cut: usize = bits(s).map(|v| (g.adj(v) & all & !s).count_ones() as usize).sum();
        best = best.min(cut);
    }
    best
}

pub(crate) fn girth(g: &Graph) -> usize {
    let n = g.n();
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut queue = std::collections::VecDeque::with_capacity(n);
    for root in 0..n {
        dist.fill(usize::MAX);
        dist[root] = 0;
        parent[root] = usize::MAX;
        queue.clear();
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            for w in bits(g.adj(u)) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if parent[u] != w {
                    best = best.min(dist[u] + dist[w] + 1);
                }
            }
        }
    }
    if best == usize::MAX {
        0
    } else {
        best
    }
}

pub(crate) fn is_bipartite(g: &Graph) -> bool {
    let n = g.n();
    let mut side = vec![u8::MAX; n];
    for root in 0..n {
        if side[root] != u8::MAX {
            continue;
        }
        side[root] = 0;
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            for w in bits(g.adj(u)) {
                if side[w] == u8::MAX {
                    side[w] = 1 - side[u];
                    stack.push(w);
                } else if side[w] == side[u] {
                    return false;
                }
            }
        }
    }
    true
}
