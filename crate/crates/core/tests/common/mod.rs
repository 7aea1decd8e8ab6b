//! Brute-force oracles written independently of the library, and the
//! exhaustive small-graph sweep built on them.

#![allow(dead_code)]

use std::collections::BTreeMap;

use homopoly::graph::{enumerate_graphs, Graph};
use homopoly::homopoly::{complement_transform, hom_poly_complete, restrict_order};
use homopoly::poly::{y_index, Polynomial, VarSpace};
use homopoly::specialize::{
    chromatic_deletion_contraction, chromatic_from_homopoly, colour_count, colour_count_from_homopoly,
    hardcore_from_p2, hardcore_partition, independence_polynomial, ising_direct, ising_from_p2, matching_polynomial,
    potts_direct, potts_from_homopoly, vdw_polynomial,
};
use homopoly::subset::{
    random_cluster, random_cluster_brute, strong_u_polynomial, strong_u_polynomial_brute, u_polynomial,
    u_polynomial_brute,
};
use homopoly::treewidth::{dp_hom_poly, exact_treewidth};
use homopoly::{hom_poly, Budget};

/// `P_q` by recursing over colourings vertex by vertex and reading the
/// monomial off the finished colouring.
pub fn brute_hom_poly(g: &Graph, q: usize) -> Polynomial {
    fn go(g: &Graph, q: usize, colour: &mut Vec<usize>, acc: &mut BTreeMap<Vec<i32>, i64>) {
        if colour.len() == g.n() {
            let mut e = vec![0i32; 2 * q + q * (q - 1) / 2];
            for &c in colour.iter() {
                e[c] += 1;
            }
            for (u, v) in g.edges() {
                let (a, b) = (colour[u].min(colour[v]), colour[u].max(colour[v]));
                e[y_index(q, a + 1, b + 1)] += 1;
            }
            *acc.entry(e).or_insert(0) += 1;
            return;
        }
        for c in 0..q {
            colour.push(c);
            go(g, q, colour, acc);
            colour.pop();
        }
    }
    let mut acc = BTreeMap::new();
    go(g, q, &mut Vec::new(), &mut acc);
    Polynomial::from_terms(&VarSpace::homomorphism(q), acc)
}

/// Proper `k`-colourings by trying all `k^n` maps.
pub fn brute_colourings(g: &Graph, k: usize) -> u64 {
    let n = g.n();
    let edges = g.edges();
    let mut count = 0;
    let mut colour = vec![0usize; n];
    'maps: loop {
        if edges.iter().all(|&(u, v)| colour[u] != colour[v]) {
            count += 1;
        }
        for c in colour.iter_mut() {
            *c += 1;
            if *c < k {
                continue 'maps;
            }
            *c = 0;
        }
        return count;
    }
}

/// Matchings by size, from all edge subsets.
pub fn brute_matchings(g: &Graph) -> Vec<i64> {
    let edges = g.edges();
    let mut out = vec![0i64; g.n() / 2 + 1];
    for subset in 0u32..1 << edges.len() {
        let mut covered = 0u32;
        let mut ok = true;
        for (k, &(u, v)) in edges.iter().enumerate() {
            if subset >> k & 1 == 1 {
                let both = 1 << u | 1 << v;
                ok &= covered & both == 0;
                covered |= both;
            }
        }
        if ok {
            out[subset.count_ones() as usize] += 1;
        }
    }
    out
}

fn expect(what: &str, g: &Graph, a: &Polynomial, b: &Polynomial) -> Result<(), String> {
    if a == b {
        Ok(())
    } else {
        Err(format!("{what} on {}: {a} != {b}", g.to_graph6()))
    }
}

/// Every identity of the sweep for one graph. Returns the number of checks.
/// `interpolate` adds chromatic interpolation from `P_{n-1}`, which
/// dominates the cost at seven vertices.
pub fn check_graph(g: &Graph, interpolate: bool) -> Result<usize, String> {
    let e = |err: homopoly::Error| format!("{} on {}", err, g.to_graph6());
    let n = g.n();
    let mut checks = 0;
    let mut p3 = None;
    for q in [2, 3] {
        let p = hom_poly(g, q, Budget::default()).map_err(e)?;
        expect("map iteration vs recursion", g, &p, &brute_hom_poly(g, q))?;

        let space = VarSpace::homomorphism(q);
        let mut product = Polynomial::one(&space);
        for comp in g.components() {
            product = &product * &hom_poly(&g.induced(comp).map_err(e)?, q, Budget::default()).map_err(e)?;
        }
        expect("product over components", g, &product, &p)?;

        let co = hom_poly(&g.complement(), q, Budget::default()).map_err(e)?;
        expect("complement transform", g, &complement_transform(&p, n).map_err(e)?, &co)?;

        let (_, td) = exact_treewidth(g).map_err(e)?;
        td.validate(g).map_err(e)?;
        expect("decomposition DP", g, &dp_hom_poly(g, &td, q).map_err(e)?, &p)?;

        expect(
            "Potts",
            g,
            &potts_from_homopoly(&p).map_err(e)?,
            &potts_direct(g, q, Budget::default()).map_err(e)?,
        )?;
        for k in 1..=q {
            let from_p = colour_count_from_homopoly(&p, k).map_err(e)?;
            let direct = colour_count(g, k);
            if from_p != direct.into() || direct != u128::from(brute_colourings(g, k)) {
                return Err(format!("{k}-colourings on {}", g.to_graph6()));
            }
        }
        checks += 6;
        if q == 3 {
            p3 = Some(p);
        } else {
            expect("Ising", g, &ising_from_p2(&p).map_err(e)?, &ising_direct(g).map_err(e)?)?;
            let h = hardcore_from_p2(&p).map_err(e)?;
            expect("hard-core", g, &h, &hardcore_partition(g).map_err(e)?)?;
            expect(
                "independence",
                g,
                &h.restrict_zero(&["h"]),
                &independence_polynomial(g).map_err(e)?,
            )?;
            checks += 3;
        }
    }
    let p3 = p3.expect("q = 3 ran");
    expect(
        "order restriction",
        g,
        &restrict_order(&p3, 2).map_err(e)?,
        &hom_poly(g, 2, Budget::default()).map_err(e)?,
    )?;

    let chromatic = chromatic_deletion_contraction(g).map_err(e)?;
    for k in 1..n.max(2) {
        let at_k = chromatic.evaluate(&[k.into()]).map_err(e)?;
        if at_k != brute_colourings(g, k).into() {
            return Err(format!("chromatic polynomial at {k} on {}", g.to_graph6()));
        }
    }
    if interpolate {
        let q = n.saturating_sub(1).max(2);
        let pq = hom_poly(g, q, Budget::default()).map_err(e)?;
        expect(
            "chromatic interpolation",
            g,
            &chromatic_from_homopoly(&pq, n).map_err(e)?,
            &chromatic,
        )?;
    }

    let m = matching_polynomial(g);
    expect(
        "matching vs enumeration",
        g,
        &m,
        &Polynomial::univariate("x", brute_matchings(g)),
    )?;
    let w = vdw_polynomial(g).map_err(e)?;
    let perfect_parity: Vec<_> = (0..=n / 2).map(|i| w.coefficient(&[i as i32, 2 * i as i32])).collect();
    expect("b_(i,2i) = m_i", g, &Polynomial::univariate("x", perfect_parity), &m)?;
    if g.m() > 0 {
        expect(
            "I(L(G)) = m(G)",
            g,
            &independence_polynomial(&g.line_graph().map_err(e)?).map_err(e)?,
            &m,
        )?;
    }

    expect(
        "random-cluster DP",
        g,
        &random_cluster(g).map_err(e)?,
        &random_cluster_brute(g).map_err(e)?,
    )?;
    expect(
        "U DP",
        g,
        &u_polynomial(g).map_err(e)?,
        &u_polynomial_brute(g).map_err(e)?,
    )?;
    expect(
        "strong U DP",
        g,
        &strong_u_polynomial(g).map_err(e)?,
        &strong_u_polynomial_brute(g).map_err(e)?,
    )?;
    Ok(checks + 8 + usize::from(interpolate))
}

/// Runs [`check_graph`] on every graph with at most `max_n` vertices and
/// the closed form on every `K_n`. Chromatic interpolation runs on every
/// graph below seven vertices and on every eighth graph from seven on.
/// Returns graphs and checks.
pub fn sweep(max_n: usize) -> Result<(usize, usize), String> {
    let mut graphs = 0;
    let mut checks = 0;
    for n in 1..=max_n {
        for q in [2, 3] {
            let closed = hom_poly_complete(n, q).map_err(|e| e.to_string())?;
            expect(
                "K_n closed form",
                &Graph::complete(n).unwrap(),
                &closed,
                &brute_hom_poly(&Graph::complete(n).unwrap(), q),
            )?;
            checks += 1;
        }
        for (i, g) in enumerate_graphs(n).map_err(|e| e.to_string())?.iter().enumerate() {
            checks += check_graph(g, n < 7 || i % 8 == 0)?;
            graphs += 1;
        }
    }
    Ok((graphs, checks))
}
