//! Bivariate Ising polynomial `Z(G, x, y) = sum over spin states of
//! x^{energy} y^{magnetisation}`, a Laurent polynomial over `["x", "y"]`.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::poly::{Polynomial, Substitution, VarSpace};

const MAX_ISING_VERTICES: usize = 25;

pub(crate) fn ising_space() -> VarSpace {
    VarSpace::new(["x", "y"])
}

/// Sum over all `2^n` states, visited in Gray-code order so that each step
/// flips one spin.
pub fn ising_direct(g: &Graph) -> Result<Polynomial> {
    let n = g.n();
    if n > MAX_ISING_VERTICES {
        return Err(Error::Budget {
            what: "Ising state sum".into(),
            needed: format!("2^{n}"),
            budget: 1 << MAX_ISING_VERTICES,
        });
    }
    let m = g.m();
    // counts[cut][minus]
    let mut counts = vec![vec![0u64; n + 1]; m + 1];
    let mut minus_set = 0u32;
    let mut cut = 0usize;
    counts[0][0] = 1;
    for step in 1u64..1 << n {
        let v = step.trailing_zeros() as usize;
        let same_side = if minus_set >> v & 1 == 1 { minus_set } else { !minus_set };
        let cut_at_v = (g.adj(v) & !same_side).count_ones() as usize;
        cut = cut + g.degree(v) - 2 * cut_at_v;
        minus_set ^= 1 << v;
        counts[cut][minus_set.count_ones() as usize] += 1;
    }
    let mut terms = Vec::new();
    for (c, row) in counts.iter().enumerate() {
        for (k, &cnt) in row.iter().enumerate() {
            if cnt > 0 {
                let energy = m as i32 - 2 * c as i32;
                let magnetisation = n as i32 - 2 * k as i32;
                terms.push((vec![energy, magnetisation], BigInt::from(cnt)));
            }
        }
    }
    Ok(Polynomial::from_terms(&ising_space(), terms))
}

/// Colour 1 is spin `+1`: `x1 -> y`, `x2 -> 1/y`, loops `y1_1, y2_2 -> x`,
/// and the cross weight `y1_2 -> 1/x`.
pub fn ising_from_p2(p: &Polynomial) -> Result<Polynomial> {
    if p.space().homomorphism_order() != Some(2) {
        return Err(Error::Invalid("expected a polynomial over the q = 2 space".into()));
    }
    let s = Substitution::new(&ising_space())
        .strict(true)
        .map_monomial("x1", &[("y", 1)])?
        .map_monomial("x2", &[("y", -1)])?
        .map_monomial("y1_1", &[("x", 1)])?
        .map_monomial("y2_2", &[("x", 1)])?
        .map_monomial("y1_2", &[("x", -1)])?;
    p.substitute(&s)
}
