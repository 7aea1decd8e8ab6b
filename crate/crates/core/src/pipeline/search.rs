//! Searches for graphs that one polynomial cannot tell apart but another
//! can.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{parallel_keys, with_threads};
use crate::error::{Error, Result};
use crate::graph::canon::canonical_code;
use crate::graph::Graph;
use crate::homopoly::{hom_poly, Budget};
use crate::specialize::{chromatic_deletion_contraction, potts_direct};
use crate::subset::{strong_u_polynomial, u_polynomial};

/// Groups graphs by key, returning the groups of two or more in key order.
/// Isomorphic graphs inside a group are reported as duplicates.
fn group<F>(graphs: &[Graph], key: F) -> Result<Vec<(String, Vec<Graph>)>>
where
    F: Fn(&Graph) -> Result<String> + Sync,
{
    let refs: Vec<&Graph> = graphs.iter().collect();
    let keys = parallel_keys(&refs, key)?;
    let mut groups: BTreeMap<String, Vec<Graph>> = BTreeMap::new();
    for (g, k) in graphs.iter().zip(keys) {
        groups.entry(k).or_default().push(g.clone());
    }
    let out: Vec<(String, Vec<Graph>)> = groups.into_iter().filter(|(_, v)| v.len() > 1).collect();
    for (_, members) in &out {
        reject_duplicates(members)?;
    }
    Ok(out)
}

fn reject_duplicates(members: &[Graph]) -> Result<()> {
    let mut seen: BTreeMap<u128, &Graph> = BTreeMap::new();
    for g in members {
        if let Some(other) = seen.insert(canonical_code(g).0, g) {
            return Err(Error::DuplicateGraphs(other.to_graph6(), g.to_graph6()));
        }
    }
    Ok(())
}

fn all_equal(keys: &[String]) -> bool {
    keys.windows(2).all(|w| w[0] == w[1])
}

/// Two graphs with the same `q_hi`-state Potts partition function but
/// different `q_lo`-state ones.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PottsPair {
    pub first: String,
    pub second: String,
}

pub fn search_potts_pairs(
    graphs: &[Graph],
    q_hi: usize,
    q_lo: usize,
    threads: Option<usize>,
) -> Result<Vec<PottsPair>> {
    with_threads(threads, || {
        let budget = Budget::default();
        let mut pairs = Vec::new();
        for (_, members) in group(graphs, |g| Ok(potts_direct(g, q_hi, budget)?.canonical_text()))? {
            let refs: Vec<&Graph> = members.iter().collect();
            let lo = parallel_keys(&refs, |g| Ok(potts_direct(g, q_lo, budget)?.canonical_text()))?;
            for i in 0..members.len() {
                for j in i + 1..members.len() {
                    if lo[i] != lo[j] {
                        pairs.push(PottsPair {
                            first: members[i].to_graph6(),
                            second: members[j].to_graph6(),
                        });
                    }
                }
            }
        }
        Ok(pairs)
    })?
}

/// Classes of graphs whose Potts partition functions agree for every `q`
/// in `qs`.
pub fn potts_classes(graphs: &[Graph], qs: &[usize], threads: Option<usize>) -> Result<Vec<Vec<Graph>>> {
    with_threads(threads, || {
        let budget = Budget::default();
        let key = |g: &Graph| -> Result<String> {
            let parts = qs
                .iter()
                .map(|&q| Ok(potts_direct(g, q, budget)?.canonical_text()))
                .collect::<Result<Vec<_>>>()?;
            Ok(parts.join(" | "))
        };
        Ok(group(graphs, key)?.into_iter().map(|(_, v)| v).collect())
    })?
}

/// A class of graphs with equal U-polynomial and how the members compare
/// on other polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UClass {
    pub members: Vec<String>,
    pub u: String,
    pub shares_p2: bool,
    pub shares_p3: bool,
    pub shares_strong_u: bool,
}

pub fn search_u_classes(graphs: &[Graph], threads: Option<usize>) -> Result<Vec<UClass>> {
    with_threads(threads, || {
        let classes = group(graphs, |g| Ok(u_polynomial(g)?.canonical_text()))?;
        classes
            .into_par_iter()
            .map(|(u, members)| {
                let keys = |f: &dyn Fn(&Graph) -> Result<String>| members.iter().map(f).collect::<Result<Vec<_>>>();
                let p2 = keys(&|g| Ok(hom_poly(g, 2, Budget::default())?.canonical_text()))?;
                let p3 = keys(&|g| Ok(hom_poly(g, 3, Budget::default())?.canonical_text()))?;
                let su = keys(&|g| Ok(strong_u_polynomial(g)?.canonical_text()))?;
                Ok(UClass {
                    members: members.iter().map(Graph::to_graph6).collect(),
                    u,
                    shares_p2: all_equal(&p2),
                    shares_p3: all_equal(&p3),
                    shares_strong_u: all_equal(&su),
                })
            })
            .collect()
    })?
}

/// A class whose members do not all share a chromatic polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChromaticAnomaly {
    pub class_index: usize,
    pub members: Vec<String>,
    /// Chromatic polynomial text per member, in member order.
    pub chromatic: Vec<String>,
}

pub fn search_chromatic_anomalies(classes: &[Vec<Graph>]) -> Result<Vec<ChromaticAnomaly>> {
    let found: Vec<Option<ChromaticAnomaly>> = classes
        .par_iter()
        .enumerate()
        .map(|(i, members)| {
            let chromatic = members
                .iter()
                .map(|g| Ok(chromatic_deletion_contraction(g)?.canonical_text()))
                .collect::<Result<Vec<_>>>()?;
            Ok((!all_equal(&chromatic)).then(|| ChromaticAnomaly {
                class_index: i,
                members: members.iter().map(Graph::to_graph6).collect(),
                chromatic,
            }))
        })
        .collect::<Result<_>>()?;
    Ok(found.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::enumerate_graphs;

    #[test]
    fn nothing_below_eight_vertices() {
        let graphs = enumerate_graphs(5).unwrap();
        assert!(search_potts_pairs(&graphs, 3, 2, Some(1)).unwrap().is_empty());
        assert!(search_u_classes(&graphs, Some(1)).unwrap().is_empty());
    }

    #[test]
    fn isomorphic_inputs_are_rejected() {
        let g = Graph::cycle(5).unwrap();
        let h = g.relabel(&[1, 3, 0, 2, 4]);
        assert!(matches!(
            search_potts_pairs(&[g, h], 3, 2, Some(1)),
            Err(Error::DuplicateGraphs(_, _))
        ));
    }

    #[test]
    fn singletons_have_no_anomalies() {
        let classes = vec![vec![Graph::path(4).unwrap()]];
        assert!(search_chromatic_anomalies(&classes).unwrap().is_empty());
    }
}
