//! Canonical labelling by equitable partition refinement and backtracking.
//!
//! Each leaf of the search tree is a discrete ordered partition, read as a
//! labelling; the canonical form is the labelling whose upper-triangle bit
//! string (graph6 order) is lexicographically smallest. Children whose
//! individualised vertices are twins are explored once, since the swap of two
//! twins is an automorphism fixing everything else on the path.

use super::{bits, Graph};

/// Largest vertex count accepted by [`canonical_form`].
pub const CANON_MAX_VERTICES: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CanonicalGraph {
    /// graph6 encoding of the canonically relabelled graph.
    pub graph6: String,
    /// `perm[v]` is the canonical label of vertex `v`.
    pub perm: Vec<usize>,
}

pub fn canonical_form(g: &Graph) -> CanonicalGraph {
    let (_, perm) = canonical_code(g);
    CanonicalGraph {
        graph6: g.relabel(&perm).to_graph6(),
        perm,
    }
}

/// Canonical upper-triangle code (graph6 bit order, first bit most
/// significant) together with the labelling that achieves it.
pub(crate) fn canonical_code(g: &Graph) -> (u128, Vec<usize>) {
    let n = g.n();
    assert!(
        n <= CANON_MAX_VERTICES,
        "canonical labelling supports at most {CANON_MAX_VERTICES} vertices, got {n}"
    );
    let mut search = Search {
        g,
        best_code: u128::MAX,
        best_lab: Vec::new(),
        found: false,
    };
    search.descend(vec![g.vertex_mask()]);
    let mut perm = vec![0; n];
    for (pos, &v) in search.best_lab.iter().enumerate() {
        perm[v] = pos;
    }
    (search.best_code, perm)
}

/// Code of the graph under its current labelling.
#[cfg(test)]
pub(crate) fn identity_code(g: &Graph) -> u128 {
    let lab: Vec<usize> = (0..g.n()).collect();
    code_of(g, &lab)
}

fn code_of(g: &Graph, lab: &[usize]) -> u128 {
    let mut code = 0u128;
    for j in 1..lab.len() {
        let row = g.adj(lab[j]);
        for &u in &lab[..j] {
            code = code << 1 | (row >> u & 1) as u128;
        }
    }
    code
}

struct Search<'a> {
    g: &'a Graph,
    best_code: u128,
    best_lab: Vec<usize>,
    found: bool,
}

impl Search<'_> {
    fn descend(&mut self, cells: Vec<u32>) {
        let cells = refine(self.g, cells);
        let Some(target) = cells.iter().position(|c| c.count_ones() > 1) else {
            let lab: Vec<usize> = cells.iter().map(|c| c.trailing_zeros() as usize).collect();
            let code = code_of(self.g, &lab);
            if !self.found || code < self.best_code {
                self.best_code = code;
                self.best_lab = lab;
                self.found = true;
            }
            return;
        };
        let cell = cells[target];
        let mut tried = 0u32;
        for v in bits(cell) {
            let twin_tried = bits(tried).any(|u| (self.g.adj(u) ^ self.g.adj(v)) & !(1 << u | 1 << v) == 0);
            if twin_tried {
                continue;
            }
            tried |= 1 << v;
            let mut next = Vec::with_capacity(cells.len() + 1);
            next.extend_from_slice(&cells[..target]);
            next.push(1 << v);
            next.push(cell & !(1 << v));
            next.extend_from_slice(&cells[target + 1..]);
            self.descend(next);
        }
    }
}

/// Splits cells by neighbour counts into every cell until stable. Subcells
/// are ordered by their count vector, so the result is label-independent.
fn refine(g: &Graph, mut cells: Vec<u32>) -> Vec<u32> {
    let mut sig: Vec<(u64, usize)> = Vec::with_capacity(g.n());
    loop {
        let mut next = Vec::with_capacity(cells.len());
        for &cell in &cells {
            if cell.count_ones() == 1 {
                next.push(cell);
                continue;
            }
            sig.clear();
            for v in bits(cell) {
                let row = g.adj(v);
                let mut s = 0u64;
                for (k, &other) in cells.iter().enumerate() {
                    s |= ((row & other).count_ones() as u64) << (4 * (15 - k));
                }
                sig.push((s, v));
            }
            sig.sort_unstable();
            let mut i = 0;
            while i < sig.len() {
                let mut sub = 0u32;
                let key = sig[i].0;
                while i < sig.len() && sig[i].0 == key {
                    sub |= 1 << sig[i].1;
                    i += 1;
                }
                next.push(sub);
            }
        }
        if next.len() == cells.len() {
            return next;
        }
        cells = next;
    }
}
