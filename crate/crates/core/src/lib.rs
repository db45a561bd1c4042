//! Max-cut and `K_r`-free subgraph computations for dense graphs, together with the
//! extremal constructions, certified solvers and numeric lemma checks built on them.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod constructions;
pub mod graph;
pub mod homomorphism;
pub mod lemmas;
pub mod rational;
pub mod solvers;

pub use graph::{Graph, GraphBuilder, GraphError, VertexSet};
pub use rational::Fraction;
