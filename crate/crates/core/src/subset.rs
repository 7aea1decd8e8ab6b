//! Edge-subset polynomials: the random-cluster form of the Tutte polynomial,
//! the U-polynomial and the strong U-polynomial.
//!
//! Every edge subset `A` splits the vertex set into the components of
//! `(V, A)`, and `A` restricted to a component `T` is a connected spanning
//! edge set of `G[T]`. So each polynomial is a sum over set partitions of
//! `V` of products of per-block connected counts, which is what the fast
//! paths compute. The `*_brute` functions enumerate edge subsets directly.
//!
//! Variable names: `u<k>` for a component on `k` vertices, `u<s>_<c>` for a
//! component on `s` vertices whose edge set has excess `c = |A_T| - s + 1`,
//! `y` for the total excess, `p` and `q` for the random-cluster weights.

use std::hash::Hash;

use num_bigint::BigInt;
use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::graph::{bits, Graph};
use crate::poly::{Polynomial, Substitution, VarSpace};

/// Largest vertex count for the set-partition dynamic programs.
pub const MAX_SUBSET_VERTICES: usize = 16;
/// Largest edge count for the edge-subset enumeration.
pub const MAX_ORACLE_EDGES: usize = 24;

fn check_vertices(g: &Graph) -> Result<()> {
    if g.n() > MAX_SUBSET_VERTICES {
        return Err(Error::Budget {
            what: "vertex set partition DP".into(),
            needed: format!("3^{}", g.n()),
            budget: 3u64.pow(MAX_SUBSET_VERTICES as u32),
        });
    }
    Ok(())
}

fn binomial_table(m: usize) -> Vec<Vec<u128>> {
    let mut t = vec![vec![1u128]];
    for i in 1..=m {
        let prev = &t[i - 1];
        let mut row = vec![1u128; i + 1];
        for k in 1..i {
            row[k] = prev[k - 1] + prev[k];
        }
        t.push(row);
    }
    t
}

/// For every vertex set `S`, the number of connected spanning edge subsets
/// of `G[S]` by excess `|A| - (|S| - 1)`.
///
/// Entry `c` of a profile counts the subsets of excess `c`; the profile of
/// a set inducing a disconnected graph is empty.
#[derive(Clone, Debug)]
pub struct ConnectedSpanningProfile {
    n: usize,
    counts: Vec<Vec<u128>>,
}

impl ConnectedSpanningProfile {
    pub fn new(g: &Graph) -> Result<ConnectedSpanningProfile> {
        check_vertices(g)?;
        let n = g.n();
        let size = 1usize << n;
        let mut inside = vec![0usize; size];
        for s in 1..size {
            let v = s.trailing_zeros() as usize;
            let rest = s & (s - 1);
            inside[s] = inside[rest] + (g.adj(v) & rest as u32).count_ones() as usize;
        }
        let binom = binomial_table(g.m());
        let mut counts: Vec<Vec<u128>> = vec![Vec::new(); size];
        for s in 1..size {
            let k = s.count_ones() as usize;
            let e = inside[s];
            if e + 1 < k {
                continue;
            }
            // by edge count: all subsets, minus those where the component
            // of the lowest vertex is a proper subset T
            let mut by_edges: Vec<u128> = binom[e].clone();
            let low = s & s.wrapping_neg();
            let rest = s ^ low;
            let mut sub = rest;
            loop {
                sub = sub.wrapping_sub(1) & rest;
                let t = low | sub;
                let ct = &counts[t];
                if !ct.is_empty() {
                    let tk = t.count_ones() as usize - 1;
                    let others = &binom[inside[s ^ t]];
                    for (c, &a) in ct.iter().enumerate() {
                        if a == 0 {
                            continue;
                        }
                        for (j, &b) in others.iter().enumerate() {
                            by_edges[tk + c + j] -= a * b;
                        }
                    }
                }
                if sub == 0 {
                    break;
                }
            }
            let profile: Vec<u128> = by_edges[k - 1..].to_vec();
            if profile.iter().any(|&c| c != 0) {
                counts[s] = profile;
            }
        }
        Ok(ConnectedSpanningProfile { n, counts })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Counts by excess for the vertex set `set`; empty when `G[set]` is
    /// disconnected.
    pub fn get(&self, set: u32) -> &[u128] {
        &self.counts[set as usize]
    }

    /// The profile of `set` as a polynomial in `y`.
    pub fn polynomial(&self, set: u32) -> Polynomial {
        Polynomial::univariate("y", self.get(set).iter().map(|&c| BigInt::from(c)))
    }
}

/// Sums over set partitions of the vertex set: each block `T` with a
/// connected spanning edge set of excess `c` contributes `block(|T|, c)`,
/// combined with `mul`.
fn partition_sum<K, B, M>(profile: &ConnectedSpanningProfile, unit: K, block: B, mul: M) -> Vec<(K, u128)>
where
    K: Clone + Eq + Hash + Ord,
    B: Fn(usize, usize) -> K,
    M: Fn(&K, &K) -> K,
{
    let n = profile.n;
    let full = (1usize << n) - 1;
    // Every set reached from the full set by removing blocks that contain
    // the lowest vertex avoids vertex 0, except the full set itself.
    let mut table: Vec<Vec<(K, u128)>> = vec![Vec::new(); 1 << (n - 1)];
    let solve = |s: usize, table: &Vec<Vec<(K, u128)>>| -> Vec<(K, u128)> {
        let mut acc: FxHashMap<K, u128> = FxHashMap::default();
        let low = s & s.wrapping_neg();
        let rest = s ^ low;
        let mut sub = rest;
        loop {
            let t = low | sub;
            let ct = profile.get(t as u32);
            if !ct.is_empty() {
                let size = t.count_ones() as usize;
                let remaining = s ^ t;
                let tail: &[(K, u128)] = if remaining == 0 { &[] } else { &table[remaining >> 1] };
                for (c, &a) in ct.iter().enumerate() {
                    if a == 0 {
                        continue;
                    }
                    let w = block(size, c);
                    if remaining == 0 {
                        *acc.entry(mul(&unit, &w)).or_insert(0) += a;
                    }
                    for (k, b) in tail {
                        *acc.entry(mul(k, &w)).or_insert(0) += a * b;
                    }
                }
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
        let mut out: Vec<(K, u128)> = acc.into_iter().collect();
        out.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        out
    };
    // sets avoiding vertex 0 are stored shifted down by one bit
    for s in 1..1usize << (n - 1) {
        table[s] = solve(s << 1, &table);
    }
    solve(full, &table)
}

// u128 key for the U-polynomial: five bits per component size, y above.
const Y_SHIFT: u32 = 80;

fn u_key_to_exponents(n: usize, key: u128) -> Vec<i32> {
    let mut e = Vec::with_capacity(n + 1);
    e.push((key >> Y_SHIFT) as i32);
    for k in 0..n {
        e.push((key >> (5 * k) & 31) as i32);
    }
    e
}

/// `["y", "u1", ..., "un"]`.
pub fn u_space(n: usize) -> VarSpace {
    VarSpace::new(std::iter::once("y".to_owned()).chain((1..=n).map(|k| format!("u{k}"))))
}

/// Largest excess of a connected graph on `s` vertices.
fn max_excess(s: usize) -> usize {
    (s * (s - 1) / 2 + 1).saturating_sub(s)
}

/// `u<s>_<c>` for `s = 1..=n` and `c = 0..=C(s,2) - s + 1`.
pub fn strong_u_space(n: usize) -> VarSpace {
    let mut names = Vec::new();
    for s in 1..=n {
        for c in 0..=max_excess(s) {
            names.push(format!("u{s}_{c}"));
        }
    }
    VarSpace::new(names)
}

fn strong_u_offsets(n: usize) -> Vec<usize> {
    let mut offsets = vec![0; n + 2];
    for s in 1..=n {
        offsets[s + 1] = offsets[s] + max_excess(s) + 1;
    }
    offsets
}

/// `["p", "q"]`.
pub fn random_cluster_space() -> VarSpace {
    VarSpace::new(["p", "q"])
}

/// `U(G) = sum over edge subsets A of y^{|A| - r(A)} prod over components H
/// of (V, A) of u_{|H|}`.
pub fn u_polynomial(g: &Graph) -> Result<Polynomial> {
    let profile = ConnectedSpanningProfile::new(g)?;
    let terms = partition_sum(
        &profile,
        0u128,
        |size, c| 1u128 << (5 * (size - 1)) | (c as u128) << Y_SHIFT,
        |a, b| a + b,
    );
    let space = u_space(g.n());
    Ok(Polynomial::from_terms(
        &space,
        terms
            .into_iter()
            .map(|(k, c)| (u_key_to_exponents(g.n(), k), BigInt::from(c))),
    ))
}

/// Like [`u_polynomial`] but each component `H` contributes
/// `u_{|H|, |A_H| - |H| + 1}`.
pub fn strong_u_polynomial(g: &Graph) -> Result<Polynomial> {
    let profile = ConnectedSpanningProfile::new(g)?;
    let offsets = strong_u_offsets(g.n());
    let terms = partition_sum(
        &profile,
        Vec::<u16>::new(),
        |size, c| vec![(offsets[size] + c) as u16],
        |a, b| {
            let mut v = a.clone();
            let at = v.partition_point(|&x| x <= b[0]);
            v.insert(at, b[0]);
            v
        },
    );
    let space = strong_u_space(g.n());
    Ok(Polynomial::from_terms(
        &space,
        terms.into_iter().map(|(k, c)| {
            let mut e = vec![0i32; space.len()];
            for i in k {
                e[i as usize] += 1;
            }
            (e, BigInt::from(c))
        }),
    ))
}

/// `T(G; p, q) = sum over edge subsets A of p^{|A|} (1-p)^{m-|A|} q^{k(A)}`,
/// isolated vertices counting as components.
pub fn random_cluster(g: &Graph) -> Result<Polynomial> {
    let profile = ConnectedSpanningProfile::new(g)?;
    // key: blocks above bit 16, edges below
    let terms = partition_sum(&profile, 0u32, |size, c| 1 << 16 | (size - 1 + c) as u32, |a, b| a + b);
    let counts = terms
        .into_iter()
        .map(|(k, c)| ((k >> 16) as usize, (k & 0xffff) as usize, c));
    Ok(expand_random_cluster(g.m(), counts))
}

/// `sum count * p^a (1-p)^{m-a} q^k` over `(k, a, count)`.
fn expand_random_cluster(m: usize, counts: impl IntoIterator<Item = (usize, usize, u128)>) -> Polynomial {
    let space = random_cluster_space();
    let binom = binomial_table(m);
    let mut p = Polynomial::zero(&space);
    for (k, a, c) in counts {
        // (1-p)^{m-a} = sum_j C(m-a, j) (-1)^j p^j
        let rest = m - a;
        for (j, &b) in binom[rest][..=rest].iter().enumerate() {
            let mut coeff = BigInt::from(c) * BigInt::from(b);
            if j % 2 == 1 {
                coeff = -coeff;
            }
            p.add_term(crate::poly::Monomial(vec![(a + j) as i32, k as i32]), coeff);
        }
    }
    p
}

/// Reads `T(G; p, q)` off `U(G)`: a term `y^e prod u_k^{c_k}` has
/// `k(A) = sum c_k` components and `|A| = e + n - k(A)` edges.
pub fn random_cluster_from_u(u: &Polynomial, n: usize, m: usize) -> Result<Polynomial> {
    if *u.space() != u_space(n) {
        return Err(Error::SpaceMismatch(
            u.space().names().join(","),
            u_space(n).names().join(","),
        ));
    }
    let mut counts = Vec::new();
    for (mono, c) in u.terms() {
        let e = mono.exponents();
        let k: i32 = e[1..].iter().sum();
        let a = e[0] + n as i32 - k;
        let c = u128::try_from(c).map_err(|_| Error::Invalid(format!("coefficient {c} is not a count")))?;
        if a < 0 || a as usize > m {
            return Err(Error::Invalid(format!("term with {a} edges in a graph with {m}")));
        }
        counts.push((k as usize, a as usize, c));
    }
    Ok(expand_random_cluster(m, counts))
}

/// Forgets the per-component excess: `u<s>_<c> -> u<s> * y^c`.
pub fn u_from_strong_u(su: &Polynomial, n: usize) -> Result<Polynomial> {
    let target = u_space(n);
    let mut s = Substitution::new(&target).strict(true);
    for size in 1..=n {
        let u = format!("u{size}");
        for c in 0..=max_excess(size) {
            s = s.map_monomial(&format!("u{size}_{c}"), &[(u.as_str(), 1), ("y", c as i32)])?;
        }
    }
    su.substitute(&s)
}

/// Component multisets `(size, edges)` of every edge subset, with counts.
fn edge_subset_blocks(g: &Graph) -> Result<FxHashMap<Vec<(u8, u8)>, u128>> {
    let edges = g.edges();
    if edges.len() > MAX_ORACLE_EDGES {
        return Err(Error::Budget {
            what: "edge subset enumeration".into(),
            needed: format!("2^{}", edges.len()),
            budget: 1 << MAX_ORACLE_EDGES,
        });
    }
    let n = g.n();
    let mut out: FxHashMap<Vec<(u8, u8)>, u128> = FxHashMap::default();
    let mut parent = vec![0usize; n];
    for subset in 0u32..1 << edges.len() {
        for (v, p) in parent.iter_mut().enumerate() {
            *p = v;
        }
        for k in bits(subset) {
            let (a, b) = edges[k];
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
        let mut size = vec![0u8; n];
        let mut inner = vec![0u8; n];
        for v in 0..n {
            let r = find(&mut parent, v);
            size[r] += 1;
        }
        for k in bits(subset) {
            let r = find(&mut parent, edges[k].0);
            inner[r] += 1;
        }
        let mut blocks: Vec<(u8, u8)> = (0..n).filter(|&v| size[v] > 0).map(|v| (size[v], inner[v])).collect();
        blocks.sort_unstable();
        *out.entry(blocks).or_insert(0) += 1;
    }
    Ok(out)
}

fn find(parent: &mut [usize], mut v: usize) -> usize {
    while parent[v] != v {
        parent[v] = parent[parent[v]];
        v = parent[v];
    }
    v
}

/// [`u_polynomial`] by enumerating all edge subsets; `m <= 24`.
pub fn u_polynomial_brute(g: &Graph) -> Result<Polynomial> {
    let n = g.n();
    let space = u_space(n);
    let terms = edge_subset_blocks(g)?.into_iter().map(|(blocks, c)| {
        let mut e = vec![0i32; n + 1];
        for (s, a) in blocks {
            e[s as usize] += 1;
            e[0] += a as i32 - s as i32 + 1;
        }
        (e, BigInt::from(c))
    });
    Ok(Polynomial::from_terms(&space, terms))
}

/// [`strong_u_polynomial`] by enumerating all edge subsets; `m <= 24`.
pub fn strong_u_polynomial_brute(g: &Graph) -> Result<Polynomial> {
    let n = g.n();
    let space = strong_u_space(n);
    let terms: Vec<_> = edge_subset_blocks(g)?
        .into_iter()
        .map(|(blocks, c)| {
            let mut e = vec![0i32; space.len()];
            for (s, a) in blocks {
                let name = format!("u{s}_{}", a as i32 - s as i32 + 1);
                e[space.index(&name).expect("excess within range")] += 1;
            }
            (e, BigInt::from(c))
        })
        .collect();
    Ok(Polynomial::from_terms(&space, terms))
}

/// [`random_cluster`] by enumerating all edge subsets; `m <= 24`.
pub fn random_cluster_brute(g: &Graph) -> Result<Polynomial> {
    let counts: Vec<_> = edge_subset_blocks(g)?
        .into_iter()
        .map(|(blocks, c)| {
            let a: usize = blocks.iter().map(|&(_, a)| a as usize).sum();
            (blocks.len(), a, c)
        })
        .collect();
    Ok(expand_random_cluster(g.m(), counts))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(s: &str) -> Graph {
        s.parse().unwrap()
    }

    #[test]
    fn profile_basics() {
        let k3 = Graph::complete(3).unwrap();
        let p = ConnectedSpanningProfile::new(&k3).unwrap();
        assert_eq!(p.get(0b001), &[1]);
        assert_eq!(p.get(0b011), &[1]);
        assert_eq!(p.get(0b111), &[3, 1]);
        let e2 = Graph::empty(2).unwrap();
        assert!(ConnectedSpanningProfile::new(&e2).unwrap().get(0b11).is_empty());
        // K_4: 16 spanning trees, 15 unicyclic spanning sets, 6, 1
        let k4 = ConnectedSpanningProfile::new(&Graph::complete(4).unwrap()).unwrap();
        assert_eq!(k4.get(0b1111), &[16, 15, 6, 1]);
    }

    #[test]
    fn u_examples() {
        let u = |g: Graph| u_polynomial(&g).unwrap().canonical_text();
        assert_eq!(u(Graph::empty(1).unwrap()), "1*u1^1");
        assert_eq!(u(Graph::complete(2).unwrap()), "1*u1^2 + 1*u2^1");
        assert_eq!(
            u(Graph::complete(3).unwrap()),
            "1*u1^3 + 1*y^1*u3^1 + 3*u1^1*u2^1 + 3*u3^1"
        );
    }

    #[test]
    fn strong_u_examples() {
        let su = |g: Graph| strong_u_polynomial(&g).unwrap().canonical_text();
        assert_eq!(su(Graph::empty(1).unwrap()), "1*u1_0^1");
        assert_eq!(su(Graph::complete(2).unwrap()), "1*u1_0^2 + 1*u2_0^1");
        assert_eq!(
            su(Graph::complete(3).unwrap()),
            "1*u1_0^3 + 3*u1_0^1*u2_0^1 + 3*u3_0^1 + 1*u3_1^1"
        );
    }

    #[test]
    fn random_cluster_examples() {
        let rc = |g: Graph| random_cluster(&g).unwrap();
        let s = random_cluster_space();
        let p = Polynomial::var(&s, "p").unwrap();
        let q = Polynomial::var(&s, "q").unwrap();
        let one_minus_p = &Polynomial::one(&s) - &p;
        assert_eq!(rc(Graph::empty(1).unwrap()), q);
        assert_eq!(
            rc(Graph::complete(2).unwrap()),
            &(&one_minus_p * &q.pow(2)) + &(&p * &q)
        );
        let p3 = &(&(&one_minus_p.pow(2) * &q.pow(3)) + &(&(&p * &one_minus_p) * &q.pow(2)).scale(&2.into()))
            + &(&p.pow(2) * &q);
        assert_eq!(rc(Graph::path(3).unwrap()), p3);
    }

    #[test]
    fn dp_matches_enumeration() {
        for g in [
            graph("Bg"),
            graph("DqK"),
            graph("E~~w"),
            Graph::cycle(5).unwrap(),
            Graph::empty(4).unwrap(),
        ] {
            assert_eq!(u_polynomial(&g).unwrap(), u_polynomial_brute(&g).unwrap(), "{g}");
            assert_eq!(
                strong_u_polynomial(&g).unwrap(),
                strong_u_polynomial_brute(&g).unwrap(),
                "{g}"
            );
            assert_eq!(random_cluster(&g).unwrap(), random_cluster_brute(&g).unwrap(), "{g}");
        }
    }

    #[test]
    fn projections() {
        let g = graph("E~~w");
        let u = u_polynomial(&g).unwrap();
        assert_eq!(u_from_strong_u(&strong_u_polynomial(&g).unwrap(), g.n()).unwrap(), u);
        assert_eq!(
            random_cluster_from_u(&u, g.n(), g.m()).unwrap(),
            random_cluster(&g).unwrap()
        );
    }
}
