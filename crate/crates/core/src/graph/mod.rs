//! Simple undirected graphs on at most 31 vertices, stored as one adjacency
//! bitset per vertex.

pub(crate) mod canon;
mod enumerate;
mod graph6;
pub(crate) mod invariants;

pub use canon::{canonical_form, CanonicalGraph};
pub use enumerate::{enumerate_graphs, extend_by_vertex, graphs_on};
pub use graph6::{parse_graph6, read_graph6_lines};
pub use invariants::{basic_invariants, InvariantRecord};

use crate::error::{Error, Result};

/// Largest supported vertex count; a vertex set fits in one `u32`.
pub const MAX_VERTICES: usize = 31;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Graph {
    n: usize,
    adj: Vec<u32>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Graph> {
        if n == 0 || n > MAX_VERTICES {
            return Err(Error::VertexCount(n));
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    pub fn complete(n: usize) -> Result<Graph> {
        let mut g = Graph::empty(n)?;
        let all = g.vertex_mask();
        for v in 0..n {
            g.adj[v] = all & !(1 << v);
        }
        Ok(g)
    }

    pub fn path(n: usize) -> Result<Graph> {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Graph::from_edges(n, &edges)
    }

    pub fn cycle(n: usize) -> Result<Graph> {
        if n < 3 {
            return Err(Error::Invalid(format!("a cycle needs at least 3 vertices, got {n}")));
        }
        let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        edges.push((n - 1, 0));
        Graph::from_edges(n, &edges)
    }

    /// Builds a graph from an edge list. Loops and out-of-range endpoints are
    /// rejected; repeated edges collapse.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            if u >= n || v >= n || u == v {
                return Err(Error::Invalid(format!("bad edge ({u}, {v}) for n = {n}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Builds a graph from raw adjacency rows, checking symmetry and loops.
    pub fn from_adjacency(adj: Vec<u32>) -> Result<Graph> {
        let n = adj.len();
        let g = Graph::empty(n)?;
        let mask = g.vertex_mask();
        for (i, &row) in adj.iter().enumerate() {
            if row & !mask != 0 || row & (1 << i) != 0 {
                return Err(Error::Invalid(format!("row {i} has a loop or stray bits")));
            }
            for j in bits(row) {
                if adj[j] & (1 << i) == 0 {
                    return Err(Error::Invalid(format!("adjacency not symmetric at ({i}, {j})")));
                }
            }
        }
        Ok(Graph { n, adj })
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) {
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    pub(crate) fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u] &= !(1 << v);
        self.adj[v] &= !(1 << u);
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Neighbourhood bitset of `v`.
    #[inline]
    pub fn adj(&self, v: usize) -> u32 {
        self.adj[v]
    }

    pub fn rows(&self) -> &[u32] {
        &self.adj
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    /// Bitset with the low `n` bits set.
    #[inline]
    pub fn vertex_mask(&self) -> u32 {
        low_mask(self.n)
    }

    /// Edges `(u, v)` with `u < v`, ordered by `u` then `v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m());
        for u in 0..self.n {
            for v in bits(self.adj[u] >> (u + 1)) {
                out.push((u, u + 1 + v));
            }
        }
        out
    }

    /// Number of edges with both ends in `set`.
    pub fn induced_edge_count(&self, set: u32) -> usize {
        bits(set)
            .map(|v| (self.adj[v] & set).count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    pub fn complement(&self) -> Graph {
        let all = self.vertex_mask();
        let adj = (0..self.n).map(|v| !self.adj[v] & all & !(1 << v)).collect();
        Graph { n: self.n, adj }
    }

    /// Vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let n = self.n + other.n;
        if n > MAX_VERTICES {
            return Err(Error::VertexCount(n));
        }
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|r| r << self.n));
        Ok(Graph { n, adj })
    }

    /// Disjoint union plus every edge between the two parts.
    pub fn join(&self, other: &Graph) -> Result<Graph> {
        let mut g = self.disjoint_union(other)?;
        let left = self.vertex_mask();
        let right = other.vertex_mask() << self.n;
        for v in 0..g.n {
            g.adj[v] |= if v < self.n { right } else { left };
        }
        Ok(g)
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n, "permutation length must equal n");
        let mut adj = vec![0u32; self.n];
        for u in 0..self.n {
            for v in bits(self.adj[u]) {
                adj[perm[u]] |= 1 << perm[v];
            }
        }
        Graph { n: self.n, adj }
    }

    /// Subgraph induced by `set`, vertices renumbered in increasing order.
    pub fn induced(&self, set: u32) -> Result<Graph> {
        let keep: Vec<usize> = bits(set & self.vertex_mask()).collect();
        let mut g = Graph::empty(keep.len())?;
        for (i, &u) in keep.iter().enumerate() {
            for (j, &v) in keep.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        Ok(g)
    }

    /// Vertex sets of the connected components, ordered by smallest vertex.
    pub fn components(&self) -> Vec<u32> {
        let mut seen = 0u32;
        let mut out = Vec::new();
        for v in 0..self.n {
            if seen >> v & 1 == 1 {
                continue;
            }
            let comp = self.reach(v, self.vertex_mask());
            seen |= comp;
            out.push(comp);
        }
        out
    }

    /// Vertices reachable from `start` using only vertices of `within`.
    pub fn reach(&self, start: usize, within: u32) -> u32 {
        let mut comp = 1u32 << start;
        let mut frontier = comp;
        while frontier != 0 {
            let mut next = 0;
            for v in bits(frontier) {
                next |= self.adj[v];
            }
            next &= within & !comp;
            comp |= next;
            frontier = next;
        }
        comp
    }

    pub fn is_connected(&self) -> bool {
        self.reach(0, self.vertex_mask()) == self.vertex_mask()
    }

    /// Removes vertex `v`, renumbering the vertices above it.
    pub fn delete_vertex(&self, v: usize) -> Result<Graph> {
        self.induced(self.vertex_mask() & !(1 << v))
    }

    /// Identifies the endpoints of edge `{u, v}` (the merged vertex keeps
    /// `min(u, v)`), dropping the loop and any parallel edges.
    pub fn contract_edge(&self, u: usize, v: usize) -> Result<Graph> {
        let (keep, gone) = (u.min(v), u.max(v));
        let mut g = self.clone();
        let merged = (g.adj[keep] | g.adj[gone]) & !(1 << keep) & !(1 << gone);
        for w in bits(merged) {
            g.add_edge(keep, w);
        }
        g.delete_vertex(gone)
    }

    /// Line graph: one vertex per edge (in `edges()` order), adjacent when the
    /// edges share an endpoint.
    pub fn line_graph(&self) -> Result<Graph> {
        let edges = self.edges();
        if edges.is_empty() || edges.len() > MAX_VERTICES {
            return Err(Error::VertexCount(edges.len()));
        }
        let mut g = Graph::empty(edges.len())?;
        for i in 0..edges.len() {
            for j in i + 1..edges.len() {
                let (a, b) = edges[i];
                let (c, d) = edges[j];
                if a == c || a == d || b == c || b == d {
                    g.add_edge(i, j);
                }
            }
        }
        Ok(g)
    }

    pub fn to_graph6(&self) -> String {
        graph6::write_graph6(self)
    }
}

impl std::fmt::Display for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_graph6())
    }
}

impl std::str::FromStr for Graph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Graph> {
        parse_graph6(s)
    }
}

#[inline]
pub(crate) fn low_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// Iterates the set bits of `mask` from least significant upward.
#[inline]
pub fn bits(mut mask: u32) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let b = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(b)
        }
    })
}
