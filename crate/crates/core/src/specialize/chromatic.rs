//! Chromatic polynomial in the variable `k`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rustc_hash::FxHashMap;

use super::potts::colour_count_from_homopoly;
use crate::error::{Error, Result};
use crate::graph::{canon::canonical_code, Graph};
use crate::poly::Polynomial;

const MAX_DC_VERTICES: usize = 12;

/// Dense coefficients of `k (k-1) ... (k-j+1)`.
fn falling(j: usize) -> Vec<BigInt> {
    let mut c = vec![BigInt::one()];
    for i in 0..j {
        // multiply by (k - i)
        let mut next = vec![BigInt::zero(); c.len() + 1];
        for (d, a) in c.iter().enumerate() {
            next[d + 1] += a;
            next[d] -= a * BigInt::from(i);
        }
        c = next;
    }
    c
}

fn add_into(acc: &mut Vec<BigInt>, other: &[BigInt], scale: &BigInt) {
    if acc.len() < other.len() {
        acc.resize(other.len(), BigInt::zero());
    }
    for (a, b) in acc.iter_mut().zip(other) {
        *a += b * scale;
    }
}

fn to_poly(mut coeffs: Vec<BigInt>) -> Polynomial {
    while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
        coeffs.pop();
    }
    Polynomial::univariate("k", coeffs)
}

/// The unique monic degree-`n` integer polynomial with value 0 at `k = 0`
/// and `counts[k - 1]` at `k = 1..n-1`.
///
/// Writing it as `k^(n falling) + sum a_j k^(j falling)`, the `a_j` are the
/// forward differences at 0 divided by `j!`; a non-integral `a_j` means the
/// counts cannot come from a graph.
pub fn chromatic_from_counts(n: usize, counts: &[BigInt]) -> Result<Polynomial> {
    if n == 0 || counts.len() + 1 != n {
        return Err(Error::Invalid(format!(
            "need n - 1 = {} counts, got {}",
            n.saturating_sub(1),
            counts.len()
        )));
    }
    let mut diffs: Vec<BigInt> = std::iter::once(BigInt::zero()).chain(counts.iter().cloned()).collect();
    let mut result = falling(n);
    let mut factorial = BigInt::one();
    for j in 0..n {
        if j > 0 {
            factorial *= j;
        }
        let (a, rem) = diffs[0].div_rem(&factorial);
        if !rem.is_zero() {
            return Err(Error::Interpolation(format!(
                "difference of order {j} is {} which is not divisible by {j}!",
                diffs[0]
            )));
        }
        add_into(&mut result, &falling(j), &a);
        diffs = diffs.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    Ok(to_poly(result))
}

/// Chromatic polynomial of an `n`-vertex graph from `P_q(G)` with
/// `q >= n - 1`, through the colouring counts for `k = 1..n-1`.
pub fn chromatic_from_homopoly(p: &Polynomial, n: usize) -> Result<Polynomial> {
    let counts = (1..n)
        .map(|k| colour_count_from_homopoly(p, k))
        .collect::<Result<Vec<_>>>()?;
    chromatic_from_counts(n, &counts)
}

/// `C(G) = C(G - e) - C(G / e)`, memoised on canonical form, with closed
/// forms for edgeless graphs, cliques and trees, and products over
/// components.
pub fn chromatic_deletion_contraction(g: &Graph) -> Result<Polynomial> {
    if g.n() > MAX_DC_VERTICES {
        return Err(Error::Budget {
            what: "deletion-contraction".into(),
            needed: format!("n = {}", g.n()),
            budget: MAX_DC_VERTICES as u64,
        });
    }
    let mut memo = FxHashMap::default();
    Ok(to_poly(dc(g, &mut memo)))
}

fn dc(g: &Graph, memo: &mut FxHashMap<(usize, u128), Vec<BigInt>>) -> Vec<BigInt> {
    let n = g.n();
    let m = g.m();
    if m == 0 {
        let mut c = vec![BigInt::zero(); n + 1];
        c[n] = BigInt::one();
        return c;
    }
    if m == n * (n - 1) / 2 {
        return falling(n);
    }
    let comps = g.components();
    if comps.len() > 1 {
        let mut acc = vec![BigInt::one()];
        for c in comps {
            let part = dc(&g.induced(c).expect("component is non-empty"), memo);
            let mut prod = vec![BigInt::zero(); acc.len() + part.len() - 1];
            for (i, a) in acc.iter().enumerate() {
                for (j, b) in part.iter().enumerate() {
                    prod[i + j] += a * b;
                }
            }
            acc = prod;
        }
        return acc;
    }
    if m == n - 1 {
        // k (k - 1)^(n - 1)
        let mut c = vec![BigInt::zero(); n + 1];
        for (i, b) in binomials(n - 1).into_iter().enumerate() {
            let sign = if (n - 1 - i).is_multiple_of(2) { 1 } else { -1 };
            c[i + 1] = b * sign;
        }
        return c;
    }
    let key = (n, canonical_code(g).0);
    if let Some(c) = memo.get(&key) {
        return c.clone();
    }
    let (u, v) = g.edges()[0];
    let mut deleted = g.clone();
    deleted.remove_edge(u, v);
    let contracted = g.contract_edge(u, v).expect("n >= 2 here");
    let mut out = dc(&deleted, memo);
    add_into(&mut out, &dc(&contracted, memo), &BigInt::from(-1));
    memo.insert(key, out.clone());
    out
}

fn binomials(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for _ in 0..n {
        let mut next = vec![BigInt::one(); row.len() + 1];
        for i in 1..row.len() {
            next[i] = &row[i - 1] + &row[i];
        }
        row = next;
    }
    row
}
