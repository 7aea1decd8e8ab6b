//! Hard-core lattice gas `H(G, h, x) = sum over vertex sets A of
//! h^{edges inside A} x^{|A|}` and its `h = 0` part, the independence
//! polynomial.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::poly::{Polynomial, Substitution, VarSpace};

const MAX_SUBSET_VERTICES: usize = 25;

fn hardcore_space() -> VarSpace {
    VarSpace::new(["h", "x"])
}

pub fn hardcore_partition(g: &Graph) -> Result<Polynomial> {
    let n = g.n();
    if n > MAX_SUBSET_VERTICES {
        return Err(Error::Budget {
            what: "vertex subset sum".into(),
            needed: format!("2^{n}"),
            budget: 1 << MAX_SUBSET_VERTICES,
        });
    }
    // counts[inside edges][size]
    let mut counts = vec![vec![0u64; n + 1]; g.m() + 1];
    let mut set = 0u32;
    let mut inside = 0usize;
    counts[0][0] = 1;
    for step in 1u64..1 << n {
        let v = step.trailing_zeros() as usize;
        let touching = (g.adj(v) & set).count_ones() as usize;
        if set >> v & 1 == 1 {
            inside -= touching;
        } else {
            inside += touching;
        }
        set ^= 1 << v;
        counts[inside][set.count_ones() as usize] += 1;
    }
    let terms = counts.iter().enumerate().flat_map(|(e, row)| {
        row.iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(move |(k, &c)| (vec![e as i32, k as i32], BigInt::from(c)))
    });
    Ok(Polynomial::from_terms(&hardcore_space(), terms))
}

/// `I(G, x) = H(G, 0, x)`.
pub fn independence_polynomial(g: &Graph) -> Result<Polynomial> {
    Ok(hardcore_partition(g)?.restrict_zero(&["h"]))
}

/// From `P_2`: colour 1 marks the occupied vertices (`x1 -> x`,
/// `y1_1 -> h`) and colour 2 weighs nothing (`x2 = y2_2 = y1_2 = 1`).
pub fn hardcore_from_p2(p: &Polynomial) -> Result<Polynomial> {
    if p.space().homomorphism_order() != Some(2) {
        return Err(Error::Invalid("expected a polynomial over the q = 2 space".into()));
    }
    let s = Substitution::new(&hardcore_space())
        .strict(true)
        .map_monomial("x1", &[("x", 1)])?
        .map_monomial("y1_1", &[("h", 1)])?
        .map_const("x2", 1)
        .map_const("y2_2", 1)
        .map_const("y1_2", 1);
    p.substitute(&s)
}
