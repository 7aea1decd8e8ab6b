//! Exact computation of graph homomorphism polynomials and the graph
//! polynomials they specialise to, plus a staged equivalence classifier.

pub mod error;
pub mod graph;
pub mod homopoly;
pub mod pipeline;
pub mod poly;
pub mod specialize;
pub mod subset;
pub mod treewidth;

pub use error::{Error, Result};
pub use graph::Graph;
pub use homopoly::{hom_poly, Budget};
pub use poly::{Polynomial, VarSpace};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/graphs.md")]
    mod graphs {}
    #[doc = include_str!("../../../book/src/polynomials.md")]
    mod polynomials {}
    #[doc = include_str!("../../../book/src/homomorphism.md")]
    mod homomorphism {}
    #[doc = include_str!("../../../book/src/specializations.md")]
    mod specializations {}
    #[doc = include_str!("../../../book/src/subset-polynomials.md")]
    mod subset_polynomials {}
    #[doc = include_str!("../../../book/src/tree-decompositions.md")]
    mod tree_decompositions {}
    #[doc = include_str!("../../../book/src/classification.md")]
    mod classification {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
