//! Isomorphism-class enumeration for small vertex counts.

use rustc_hash::FxHashSet;

use super::canon::{canonical_code, CANON_MAX_VERTICES};
use super::{bits, Graph};
use crate::error::{Error, Result};

/// One representative per isomorphism class on `n <= 7` vertices, found by
/// scanning all labelled graphs and deduplicating canonical codes.
///
/// Only labelled graphs whose degrees are non-increasing in vertex order are
/// canonicalised; every class has such a labelling.
pub fn enumerate_graphs(n: usize) -> Result<Vec<Graph>> {
    if !(1..=7).contains(&n) {
        return Err(Error::Invalid(format!("enumerate_graphs needs 1 <= n <= 7, got {n}")));
    }
    let pairs: Vec<(usize, usize)> = (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    let mut seen = FxHashSet::default();
    let mut adj = vec![0u32; n];
    for mask in 0u32..1 << pairs.len() {
        adj.fill(0);
        for k in bits(mask) {
            let (i, j) = pairs[k];
            adj[i] |= 1 << j;
            adj[j] |= 1 << i;
        }
        if adj.windows(2).any(|w| w[0].count_ones() < w[1].count_ones()) {
            continue;
        }
        let g = Graph { n, adj: adj.clone() };
        seen.insert(canonical_code(&g).0);
    }
    Ok(decode_sorted(n, seen))
}

/// All graphs on `n + 1` vertices, given one representative of every class
/// on `n` vertices.
///
/// Every graph arises from deleting a vertex of maximum degree, so only
/// extensions whose new vertex has maximum degree are generated.
pub fn extend_by_vertex(graphs: &[Graph]) -> Result<Vec<Graph>> {
    let Some(first) = graphs.first() else {
        return Ok(Vec::new());
    };
    let n = first.n();
    if n + 1 > CANON_MAX_VERTICES {
        return Err(Error::VertexCount(n + 1));
    }
    let mut seen = FxHashSet::default();
    for g in graphs {
        if g.n() != n {
            return Err(Error::Invalid("mixed vertex counts in extension input".into()));
        }
        let degrees: Vec<u32> = g.adj.iter().map(|r| r.count_ones()).collect();
        for nbrs in 0u32..1 << n {
            let d = nbrs.count_ones();
            let exceeds = (0..n).any(|u| degrees[u] + (nbrs >> u & 1) > d);
            if exceeds {
                continue;
            }
            let mut adj = g.adj.clone();
            for u in bits(nbrs) {
                adj[u] |= 1 << n;
            }
            adj.push(nbrs);
            let h = Graph { n: n + 1, adj };
            seen.insert(canonical_code(&h).0);
        }
    }
    Ok(decode_sorted(n + 1, seen))
}

/// All non-isomorphic graphs on `n` vertices: direct enumeration up to 7,
/// vertex extension beyond.
pub fn graphs_on(n: usize) -> Result<Vec<Graph>> {
    if n <= 7 {
        return enumerate_graphs(n);
    }
    let mut graphs = enumerate_graphs(7)?;
    for _ in 7..n {
        graphs = extend_by_vertex(&graphs)?;
    }
    Ok(graphs)
}

fn decode_sorted(n: usize, codes: FxHashSet<u128>) -> Vec<Graph> {
    let mut codes: Vec<u128> = codes.into_iter().collect();
    codes.sort_unstable();
    codes.into_iter().map(|c| decode(n, c)).collect()
}

fn decode(n: usize, code: u128) -> Graph {
    let nbits = n * (n - 1) / 2;
    let mut g = Graph { n, adj: vec![0; n] };
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if code >> (nbits - 1 - k) & 1 == 1 {
                g.add_edge(i, j);
            }
            k += 1;
        }
    }
    g
}
