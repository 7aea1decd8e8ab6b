//! The order-`q` homomorphism polynomial `P_q(G)`.
//!
//! `P_q(G)` sums, over every map `phi: V(G) -> {1..q}`, the product of `x_i`
//! for each vertex coloured `i` and `y_{ij}` for each edge whose ends are
//! coloured `i` and `j`. The weight graph is complete with loops, so every map
//! counts. A monomial only depends on the class sizes `n_i` and the edge
//! counts `e_{ij}` between classes.

use num_bigint::BigInt;
use num_traits::One;
use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::graph::{bits, Graph};
use crate::poly::{y_index, Polynomial, VarSpace};

/// Upper bound on the number of vertex maps a single computation may visit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget(pub u64);

impl Default for Budget {
    fn default() -> Budget {
        Budget(1_000_000_000)
    }
}

impl Budget {
    pub const ENV_VAR: &'static str = "HOMOPOLY_BUDGET";

    /// Default budget, overridden by `HOMOPOLY_BUDGET` when set and numeric.
    pub fn from_env() -> Budget {
        std::env::var(Self::ENV_VAR)
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .map(Budget)
            .unwrap_or_default()
    }

    pub fn unlimited() -> Budget {
        Budget(u64::MAX)
    }

    /// Succeeds when `base^exp` evaluations fit.
    pub fn check_power(&self, what: &str, base: usize, exp: usize) -> Result<u64> {
        let needed = (base as u64).checked_pow(exp as u32);
        match needed {
            Some(k) if k <= self.0 => Ok(k),
            _ => Err(Error::Budget {
                what: what.to_owned(),
                needed: format!("{base}^{exp}"),
                budget: self.0,
            }),
        }
    }
}

fn check_order(q: usize) -> Result<()> {
    if q < 2 {
        Err(Error::Order(q))
    } else {
        Ok(())
    }
}

/// `P_q(G)` by iterating all `q^n` vertex maps as a base-`q` counter. Each
/// step recolours the vertices whose digit changed and updates the class and
/// edge statistics in place.
pub fn hom_poly(g: &Graph, q: usize, budget: Budget) -> Result<Polynomial> {
    check_order(q)?;
    budget.check_power("homomorphism polynomial", q, g.n())?;
    let space = VarSpace::homomorphism(q);
    let stats = map_statistics(g, q);
    Ok(Polynomial::from_distinct_terms(
        &space,
        stats
            .into_iter()
            .map(|(k, c)| (k.into_iter().map(i32::from).collect(), BigInt::from(c)))
            .collect(),
    ))
}

fn map_statistics(g: &Graph, q: usize) -> FxHashMap<Vec<u16>, u64> {
    let n = g.n();
    let nvars = 2 * q + q * (q - 1) / 2;
    let yidx: Vec<Vec<usize>> = (0..q)
        .map(|a| (0..q).map(|b| y_index(q, a + 1, b + 1)).collect())
        .collect();
    let mut key = vec![0u16; nvars];
    key[0] = n as u16;
    key[yidx[0][0]] = g.m() as u16;
    let mut colour = vec![0usize; n];
    let mut out: FxHashMap<Vec<u16>, u64> = FxHashMap::default();
    loop {
        match out.get_mut(key.as_slice()) {
            Some(c) => *c += 1,
            None => {
                out.insert(key.clone(), 1);
            }
        }
        let mut v = 0;
        loop {
            if v == n {
                return out;
            }
            let old = colour[v];
            let new = if old + 1 == q { 0 } else { old + 1 };
            key[old] -= 1;
            key[new] += 1;
            for u in bits(g.adj(v)) {
                let c = colour[u];
                key[yidx[old][c]] -= 1;
                key[yidx[new][c]] += 1;
            }
            colour[v] = new;
            if new != 0 {
                break;
            }
            v += 1;
        }
    }
}

/// Closed form for `K_n`: a sum over compositions `(n_1..n_q)` of `n` with
/// multinomial coefficients, `x_i^{n_i}`, loop exponents `C(n_i, 2)` and
/// cross exponents `n_i n_j`.
pub fn hom_poly_complete(n: usize, q: usize) -> Result<Polynomial> {
    check_order(q)?;
    if n == 0 {
        return Err(Error::VertexCount(0));
    }
    let space = VarSpace::homomorphism(q);
    let fact: Vec<BigInt> = std::iter::once(BigInt::one())
        .chain((1..=n).scan(BigInt::one(), |acc, k| {
            *acc *= k;
            Some(acc.clone())
        }))
        .collect();
    let mut terms = Vec::new();
    let mut parts = vec![0usize; q];
    compositions(n, 0, &mut parts, &mut |parts| {
        let mut e = vec![0i32; space.len()];
        let mut coeff = fact[n].clone();
        for i in 0..q {
            e[i] = parts[i] as i32;
            e[y_index(q, i + 1, i + 1)] = (parts[i] * parts[i].saturating_sub(1) / 2) as i32;
            for j in i + 1..q {
                e[y_index(q, i + 1, j + 1)] = (parts[i] * parts[j]) as i32;
            }
            coeff /= &fact[parts[i]];
        }
        terms.push((e, coeff));
    });
    Ok(Polynomial::from_terms(&space, terms))
}

fn compositions(left: usize, i: usize, parts: &mut [usize], f: &mut impl FnMut(&[usize])) {
    if i + 1 == parts.len() {
        parts[i] = left;
        f(parts);
        return;
    }
    for k in 0..=left {
        parts[i] = k;
        compositions(left - k, i + 1, parts, f);
    }
}

/// Turns `P_q(G)` into `P_q(complement of G)` for an `n`-vertex `G`: each
/// term keeps its coefficient and class sizes, and every `y` exponent is
/// replaced by its complement against the `K_n` exponent for those sizes.
pub fn complement_transform(p: &Polynomial, n: usize) -> Result<Polynomial> {
    let q = p
        .space()
        .homomorphism_order()
        .ok_or_else(|| Error::Invalid("not over a homomorphism variable space".into()))?;
    let bad = || Error::NotAHomomorphismPolynomial(n);
    let mut terms = Vec::with_capacity(p.len());
    for (m, c) in p.terms() {
        let e = m.exponents();
        if e[..q].iter().any(|&k| k < 0) || e[..q].iter().sum::<i32>() != n as i32 {
            return Err(bad());
        }
        let mut out = e.to_vec();
        for i in 0..q {
            let ni = e[i];
            let ii = y_index(q, i + 1, i + 1);
            out[ii] = ni * (ni - 1) / 2 - e[ii];
            for j in i + 1..q {
                let ij = y_index(q, i + 1, j + 1);
                out[ij] = ni * e[j] - e[ij];
            }
        }
        if out[q..].iter().any(|&k| k < 0) {
            return Err(bad());
        }
        terms.push((out, c.clone()));
    }
    Ok(Polynomial::from_terms(p.space(), terms))
}

/// `P_{q'}(G)` from `P_q(G)`: the terms that use no colour above `q'`.
pub fn restrict_order(p: &Polynomial, q_new: usize) -> Result<Polynomial> {
    check_order(q_new)?;
    let q = p
        .space()
        .homomorphism_order()
        .ok_or_else(|| Error::Invalid("not over a homomorphism variable space".into()))?;
    if q_new > q {
        return Err(Error::Order(q_new));
    }
    let mut drop = Vec::new();
    for k in q_new + 1..=q {
        drop.push(format!("x{k}"));
        for i in 1..=k {
            drop.push(format!("y{i}_{k}"));
        }
    }
    let names: Vec<&str> = drop.iter().map(String::as_str).collect();
    let r = p.restrict_zero(&names);
    debug_assert_eq!(*r.space(), VarSpace::homomorphism(q_new));
    Ok(r)
}

/// `P_q(G)` through the complement: multiply the polynomials of the
/// complement's components, then transform back.
pub fn hom_poly_via_complement(g: &Graph, q: usize, budget: Budget) -> Result<Polynomial> {
    check_order(q)?;
    let co = g.complement();
    let space = VarSpace::homomorphism(q);
    let mut product = Polynomial::one(&space);
    for comp in co.components() {
        let part = hom_poly(&co.induced(comp)?, q, budget)?;
        product = &product * &part;
    }
    complement_transform(&product, g.n())
}

/// `P_q` of the join of `G1` (with `n1` vertices) and `G2` (with `n2`), from
/// their polynomials alone.
pub fn join_poly(p1: &Polynomial, n1: usize, p2: &Polynomial, n2: usize) -> Result<Polynomial> {
    let c1 = complement_transform(p1, n1)?;
    let c2 = complement_transform(p2, n2)?;
    complement_transform(&c1.try_mul(&c2)?, n1 + n2)
}

/// `P_q` of the complete multipartite graph with the given part sizes.
pub fn complete_multipartite(parts: &[usize], q: usize) -> Result<Polynomial> {
    check_order(q)?;
    let space = VarSpace::homomorphism(q);
    let mut product = Polynomial::one(&space);
    for &t in parts {
        product = &product * &hom_poly_complete(t, q)?;
    }
    complement_transform(&product, parts.iter().sum())
}

/// For two graphs on exactly `q` vertices, whether `P_q` agrees. For such
/// graphs this holds exactly when they are isomorphic.
pub fn same_order_iso_check(g1: &Graph, g2: &Graph, q: usize) -> Result<bool> {
    if g1.n() != q || g2.n() != q {
        return Err(Error::Invalid(format!(
            "both graphs need exactly q = {q} vertices, got {} and {}",
            g1.n(),
            g2.n()
        )));
    }
    let budget = Budget::unlimited();
    Ok(hom_poly(g1, q, budget)? == hom_poly(g2, q, budget)?)
}
