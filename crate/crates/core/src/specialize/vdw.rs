//! van der Waerden polynomial `W(G, t, u) = sum b_{ij} u^i t^j`, where
//! `b_{ij}` counts edge subsets with `i` edges and `j` odd-degree vertices.
//! Variables are `["u", "t"]`.

use num_bigint::BigInt;
use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::poly::{Polynomial, VarSpace};

const MAX_VDW_VERTICES: usize = 25;
// Counts are bounded by 2^m and accumulate in u128.
const MAX_VDW_EDGES: usize = 127;
const MAX_BRUTE_EDGES: usize = 20;

fn vdw_space() -> VarSpace {
    VarSpace::new(["u", "t"])
}

/// Edge-by-edge dynamic program over the parity mask of the chosen subset.
pub fn vdw_polynomial(g: &Graph) -> Result<Polynomial> {
    let m = g.m();
    if g.n() > MAX_VDW_VERTICES || m > MAX_VDW_EDGES {
        return Err(Error::Budget {
            what: "van der Waerden parity DP".into(),
            needed: format!("n = {}, m = {m}", g.n()),
            budget: MAX_VDW_EDGES as u64,
        });
    }
    let mut states: FxHashMap<u32, Vec<u128>> = FxHashMap::default();
    states.insert(0, vec![1]);
    for (a, b) in g.edges() {
        let flip = 1u32 << a | 1 << b;
        let mut next: FxHashMap<u32, Vec<u128>> = FxHashMap::default();
        for (mask, counts) in states {
            let keep = next.entry(mask).or_default();
            add_shifted(keep, &counts, 0);
            let take = next.entry(mask ^ flip).or_default();
            add_shifted(take, &counts, 1);
        }
        states = next;
    }
    let mut terms = Vec::new();
    for (mask, counts) in states {
        let odd = mask.count_ones() as i32;
        for (i, c) in counts.into_iter().enumerate() {
            if c > 0 {
                terms.push((vec![i as i32, odd], BigInt::from(c)));
            }
        }
    }
    Ok(Polynomial::from_terms(&vdw_space(), terms))
}

fn add_shifted(acc: &mut Vec<u128>, src: &[u128], shift: usize) {
    if acc.len() < src.len() + shift {
        acc.resize(src.len() + shift, 0);
    }
    for (i, c) in src.iter().enumerate() {
        acc[i + shift] += c;
    }
}

/// Enumerates all `2^m` edge subsets; for `m <= 20`.
pub fn vdw_polynomial_brute(g: &Graph) -> Result<Polynomial> {
    let edges = g.edges();
    if edges.len() > MAX_BRUTE_EDGES {
        return Err(Error::Budget {
            what: "edge subset enumeration".into(),
            needed: format!("2^{}", edges.len()),
            budget: 1 << MAX_BRUTE_EDGES,
        });
    }
    let mut terms = Vec::with_capacity(1 << edges.len());
    for subset in 0u32..1 << edges.len() {
        let mut parity = 0u32;
        for (k, &(a, b)) in edges.iter().enumerate() {
            if subset >> k & 1 == 1 {
                parity ^= 1 << a | 1 << b;
            }
        }
        terms.push((vec![subset.count_ones() as i32, parity.count_ones() as i32], 1));
    }
    Ok(Polynomial::from_terms(&vdw_space(), terms))
}
