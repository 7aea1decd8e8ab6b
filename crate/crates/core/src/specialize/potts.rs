//! Potts partition functions and proper-colouring counts.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::graph::{bits, Graph};
use crate::homopoly::Budget;
use crate::poly::{Polynomial, Substitution, VarSpace};

/// `sum over q-colourings of y^{monochromatic edges}`, as a polynomial in `y`.
pub fn potts_direct(g: &Graph, q: usize, budget: Budget) -> Result<Polynomial> {
    if q < 2 {
        return Err(Error::Order(q));
    }
    let n = g.n();
    budget.check_power("Potts colouring sum", q, n)?;
    let mut counts = vec![0u64; g.m() + 1];
    let mut colour = vec![0usize; n];
    let mut mono = g.m();
    'outer: loop {
        counts[mono] += 1;
        let mut v = 0;
        loop {
            if v == n {
                break 'outer;
            }
            let old = colour[v];
            let new = if old + 1 == q { 0 } else { old + 1 };
            for u in bits(g.adj(v)) {
                if colour[u] == old {
                    mono -= 1;
                }
                if colour[u] == new {
                    mono += 1;
                }
            }
            colour[v] = new;
            if new != 0 {
                break;
            }
            v += 1;
        }
    }
    Ok(Polynomial::univariate("y", counts.into_iter().map(BigInt::from)))
}

/// Sets every `x_i` and every cross weight to 1 and each loop weight to `y`.
pub fn potts_from_homopoly(p: &Polynomial) -> Result<Polynomial> {
    let q = p
        .space()
        .homomorphism_order()
        .ok_or_else(|| Error::Invalid("not over a homomorphism variable space".into()))?;
    let target = VarSpace::new(["y"]);
    let mut s = Substitution::new(&target).strict(true);
    for i in 1..=q {
        s = s.map_const(&format!("x{i}"), 1);
        s = s.map_monomial(&format!("y{i}_{i}"), &[("y", 1)])?;
        for j in i + 1..=q {
            s = s.map_const(&format!("y{i}_{j}"), 1);
        }
    }
    p.substitute(&s)
}

/// Number of proper `k`-colourings by backtracking in vertex order.
pub fn colour_count(g: &Graph, k: usize) -> u128 {
    fn go(g: &Graph, k: usize, v: usize, colour: &mut [usize]) -> u128 {
        if v == g.n() {
            return 1;
        }
        let earlier = g.adj(v) & ((1u32 << v) - 1);
        let mut total = 0;
        for c in 0..k {
            if bits(earlier).all(|u| colour[u] != c) {
                colour[v] = c;
                total += go(g, k, v + 1, colour);
            }
        }
        total
    }
    let mut colour = vec![usize::MAX; g.n()];
    go(g, k, 0, &mut colour)
}

/// Proper `k`-colourings read off `P_q(G)` for `k <= q`: keep the terms using
/// colours `1..=k` only, then set loop weights to 0 and everything else to 1.
pub fn colour_count_from_homopoly(p: &Polynomial, k: usize) -> Result<BigInt> {
    let q = p
        .space()
        .homomorphism_order()
        .ok_or_else(|| Error::Invalid("not over a homomorphism variable space".into()))?;
    if k == 0 || k > q {
        return Err(Error::Order(k));
    }
    let mut drop = Vec::new();
    for c in k + 1..=q {
        drop.push(format!("x{c}"));
        for i in 1..=c {
            drop.push(format!("y{i}_{c}"));
        }
    }
    let names: Vec<&str> = drop.iter().map(String::as_str).collect();
    let restricted = p.restrict_zero(&names);
    let values: Vec<BigInt> = restricted
        .space()
        .names()
        .iter()
        .map(|name| {
            let loop_weight = name
                .strip_prefix('y')
                .and_then(|r| r.split_once('_'))
                .is_some_and(|(a, b)| a == b);
            BigInt::from(!loop_weight as u8)
        })
        .collect();
    restricted.evaluate(&values)
}
