use num_bigint::BigInt;
use rustc_hash::FxHashMap;

use crate::graph::{bits, Graph};
use crate::poly::Polynomial;

/// Matching polynomial `sum m_i x^i`.
///
/// Uses `m(G) = m(G - e) + x m(G - u - v)` applied to every edge at the
/// lowest remaining vertex `v` in turn, which collapses to
/// `m(S) = m(S - v) + x * sum over neighbours u of m(S - v - u)`, memoised
/// on the remaining vertex set.
pub fn matching_polynomial(g: &Graph) -> Polynomial {
    let mut memo: FxHashMap<u32, Vec<u64>> = FxHashMap::default();
    let coeffs = matchings(g, g.vertex_mask(), &mut memo);
    Polynomial::univariate("x", coeffs.into_iter().map(BigInt::from))
}

fn matchings(g: &Graph, set: u32, memo: &mut FxHashMap<u32, Vec<u64>>) -> Vec<u64> {
    let mut rest = set;
    // isolated vertices do not matter
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        if g.adj(v) & rest != 0 {
            break;
        }
        rest &= !(1 << v);
    }
    if rest == 0 {
        return vec![1];
    }
    if let Some(c) = memo.get(&rest) {
        return c.clone();
    }
    let v = rest.trailing_zeros() as usize;
    let without_v = rest & !(1 << v);
    let mut out = matchings(g, without_v, memo);
    for u in bits(g.adj(v) & rest) {
        let sub = matchings(g, without_v & !(1 << u), memo);
        if out.len() < sub.len() + 1 {
            out.resize(sub.len() + 1, 0);
        }
        for (i, c) in sub.iter().enumerate() {
            out[i + 1] += c;
        }
    }
    memo.insert(rest, out.clone());
    out
}
