//! Generalised cut ideals of labelled multigraphs.
//!
//! A graph carries an edge labeling and nonzero integer edge multiplicities.
//! Its cut ideal is the kernel of the monomial map sending the variable of
//! each vertex bipartition to the product of `s`/`t` variables of the edges
//! it separates/keeps together. The crate computes these ideals exactly and
//! implements how disjoint union, clique 0-sum and vertex collapse act on
//! the exponent matrices and on the ideals.

pub mod calculus;
pub mod cli;
pub mod error;
pub mod format;
pub mod graph;
pub mod groebner;
pub mod matrix;
pub mod partition;
pub mod toric;

pub use error::{Error, Result};
pub use graph::{CollapseKind, Edge, Graph};
pub use groebner::TermOrder;
pub use matrix::{exponent_matrix, ExponentMatrix, LatticeBasis};
pub use partition::Partition;
pub use toric::{eliminate, ideal_equal, membership, toric_ideal, Binomial, Ideal};
