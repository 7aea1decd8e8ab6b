//! Classical graph polynomials and partition functions, each computed
//! directly from the graph and, where the homomorphism polynomial determines
//! it, by substitution into `P_q`.

mod chromatic;
mod hardcore;
mod ising;
mod matching;
mod potts;
mod vdw;

pub use chromatic::{chromatic_deletion_contraction, chromatic_from_counts, chromatic_from_homopoly};
pub use hardcore::{hardcore_from_p2, hardcore_partition, independence_polynomial};
pub use ising::{ising_direct, ising_from_p2};
pub use matching::matching_polynomial;
pub use potts::{colour_count, colour_count_from_homopoly, potts_direct, potts_from_homopoly};
pub use vdw::{vdw_polynomial, vdw_polynomial_brute};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::homopoly::{hom_poly, Budget};
use crate::poly::{PolyJson, Polynomial, VarSpace};
use crate::subset::{
    random_cluster, random_cluster_brute, strong_u_polynomial, strong_u_polynomial_brute, u_polynomial,
    u_polynomial_brute,
};

/// Which polynomial a [`SpecializationResult`] holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpecKind {
    Ising,
    Potts(usize),
    Chromatic,
    Matching,
    Independence,
    Hardcore,
    Vdw,
    ColourCount(usize),
    U,
    StrongU,
    RandomCluster,
}

impl fmt::Display for SpecKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecKind::Ising => f.write_str("ising"),
            SpecKind::Potts(q) => write!(f, "potts:{q}"),
            SpecKind::Chromatic => f.write_str("chromatic"),
            SpecKind::Matching => f.write_str("matching"),
            SpecKind::Independence => f.write_str("independence"),
            SpecKind::Hardcore => f.write_str("hardcore"),
            SpecKind::Vdw => f.write_str("vdw"),
            SpecKind::ColourCount(k) => write!(f, "colour_count:{k}"),
            SpecKind::U => f.write_str("u"),
            SpecKind::StrongU => f.write_str("su"),
            SpecKind::RandomCluster => f.write_str("rc"),
        }
    }
}

impl FromStr for SpecKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<SpecKind> {
        let param = |p: &str| -> Result<usize> {
            p.parse()
                .map_err(|_| Error::Invalid(format!("bad parameter in kind {s:?}")))
        };
        Ok(match s.split_once(':') {
            Some(("potts", q)) => SpecKind::Potts(param(q)?),
            Some(("colour_count", k)) => SpecKind::ColourCount(param(k)?),
            Some(_) => return Err(Error::Invalid(format!("unknown kind {s:?}"))),
            None => match s {
                "ising" => SpecKind::Ising,
                "chromatic" => SpecKind::Chromatic,
                "matching" => SpecKind::Matching,
                "independence" => SpecKind::Independence,
                "hardcore" => SpecKind::Hardcore,
                "vdw" => SpecKind::Vdw,
                "u" => SpecKind::U,
                "su" => SpecKind::StrongU,
                "rc" => SpecKind::RandomCluster,
                _ => return Err(Error::Invalid(format!("unknown kind {s:?}"))),
            },
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Direct,
    FromHomopoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecializationResult {
    pub kind: SpecKind,
    pub provenance: Provenance,
    pub polynomial: Polynomial,
}

#[derive(Serialize, Deserialize)]
struct ResultJson {
    kind: String,
    provenance: Provenance,
    polynomial: PolyJson,
}

impl SpecializationResult {
    pub fn new(kind: SpecKind, provenance: Provenance, polynomial: Polynomial) -> Self {
        SpecializationResult {
            kind,
            provenance,
            polynomial,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&ResultJson {
            kind: self.kind.to_string(),
            provenance: self.provenance,
            polynomial: self.polynomial.to_json(),
        })
        .expect("serialisable")
    }

    pub fn from_json(text: &str) -> Result<SpecializationResult> {
        let j: ResultJson = serde_json::from_str(text).map_err(|e| Error::Invalid(e.to_string()))?;
        Ok(SpecializationResult {
            kind: j.kind.parse()?,
            provenance: j.provenance,
            polynomial: Polynomial::from_json(&j.polynomial)?,
        })
    }
}

/// Computes `kind` for `g` by its direct method.
pub fn specialize(g: &Graph, kind: SpecKind, budget: Budget) -> Result<SpecializationResult> {
    let p = match kind {
        SpecKind::Ising => ising_direct(g)?,
        SpecKind::Potts(q) => potts_direct(g, q, budget)?,
        SpecKind::Chromatic => chromatic_deletion_contraction(g)?,
        SpecKind::Matching => matching_polynomial(g),
        SpecKind::Independence => independence_polynomial(g)?,
        SpecKind::Hardcore => hardcore_partition(g)?,
        SpecKind::Vdw => vdw_polynomial(g)?,
        SpecKind::ColourCount(k) => count_polynomial(BigInt::from(colour_count(g, k))),
        SpecKind::U => u_polynomial(g)?,
        SpecKind::StrongU => strong_u_polynomial(g)?,
        SpecKind::RandomCluster => random_cluster(g)?,
    };
    Ok(SpecializationResult::new(kind, Provenance::Direct, p))
}

/// Computes `kind` for `g` by an independent route: substitution into
/// `P_q` where the homomorphism polynomial determines it, otherwise
/// brute-force enumeration or an identity such as `m(G) = I(L(G))`.
pub fn specialize_oracle(g: &Graph, kind: SpecKind, budget: Budget) -> Result<SpecializationResult> {
    let (provenance, p) = match kind {
        SpecKind::Ising => (Provenance::FromHomopoly, ising_from_p2(&hom_poly(g, 2, budget)?)?),
        SpecKind::Potts(q) => (Provenance::FromHomopoly, potts_from_homopoly(&hom_poly(g, q, budget)?)?),
        SpecKind::Chromatic => {
            let q = g.n().saturating_sub(1).max(2);
            (
                Provenance::FromHomopoly,
                chromatic_from_homopoly(&hom_poly(g, q, budget)?, g.n())?,
            )
        }
        SpecKind::Matching => {
            let p = if g.m() == 0 {
                Polynomial::univariate("x", [1])
            } else {
                independence_polynomial(&g.line_graph()?)?
            };
            (Provenance::Direct, p)
        }
        SpecKind::Independence => {
            let h = hardcore_from_p2(&hom_poly(g, 2, budget)?)?;
            (Provenance::FromHomopoly, h.restrict_zero(&["h"]))
        }
        SpecKind::Hardcore => (Provenance::FromHomopoly, hardcore_from_p2(&hom_poly(g, 2, budget)?)?),
        SpecKind::Vdw => (Provenance::Direct, vdw_polynomial_brute(g)?),
        SpecKind::ColourCount(k) => {
            let q = k.max(2);
            let c = colour_count_from_homopoly(&hom_poly(g, q, budget)?, k)?;
            (Provenance::FromHomopoly, count_polynomial(c))
        }
        SpecKind::U => (Provenance::Direct, u_polynomial_brute(g)?),
        SpecKind::StrongU => (Provenance::Direct, strong_u_polynomial_brute(g)?),
        SpecKind::RandomCluster => (Provenance::Direct, random_cluster_brute(g)?),
    };
    Ok(SpecializationResult::new(kind, provenance, p))
}

/// A count as a constant over the empty variable space.
fn count_polynomial(c: BigInt) -> Polynomial {
    Polynomial::constant(&VarSpace::new(Vec::<String>::new()), c)
}
