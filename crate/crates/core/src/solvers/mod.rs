//! Exact and heuristic solvers for `P_k(G)` and `K_r f(G)`, and the two
//! constructive procedures: partition extension and min-degree peeling.

use alloc::string::String;
use alloc::vec::Vec;

use crate::graph::{Graph, GraphBuilder};

mod cut;
mod krfree;
mod peel;

pub use cut::{
    extend_partition, extension_bound, greedy_partition, improving_move, max_kcut_exact,
    max_kcut_exact_with_cap, max_kcut_local, kcut_cap, PartialAssignment,
};
pub use krfree::{krfree_cap, krfree_from_parts, max_krfree_exact, max_krfree_exact_with_cap};
pub use peel::{peel, PeelStep, PeelTrace};

/// Which procedure produced a certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum SolverKind {
    Exact,
    LocalSearch,
    Greedy,
    Extension,
    Parts,
}

impl SolverKind {
    pub fn is_exact(self) -> bool {
        self == SolverKind::Exact
    }

    pub fn name(self) -> &'static str {
        match self {
            SolverKind::Exact => "exact",
            SolverKind::LocalSearch => "local-search",
            SolverKind::Greedy => "greedy",
            SolverKind::Extension => "extension",
            SolverKind::Parts => "parts",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolverError {
    #[error("{problem} exact solver refuses n = {n}: size cap is {cap}")]
    TooLarge {
        problem: &'static str,
        n: usize,
        cap: usize,
    },
    #[error("part count k must be at least 1")]
    InvalidK,
    #[error("clique order r must be at least 2, got {0}")]
    InvalidR(usize),
    #[error("assignment has length {got}, graph has {n} vertices")]
    LengthMismatch { got: usize, n: usize },
    #[error("vertex {v} is assigned part {part}, but only {k} parts exist")]
    PartOutOfRange { v: usize, part: usize, k: usize },
    #[error("a K_{r} survives among the kept edges: {witness:?}")]
    SurvivingClique { r: usize, witness: Vec<usize> },
    #[error("{0}")]
    Other(String),
}

/// A `k`-partition of the vertices and its number of cross edges.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PartitionCertificate {
    pub k: usize,
    pub assignment: Vec<usize>,
    pub value: usize,
    pub solver: SolverKind,
}

impl PartitionCertificate {
    pub fn new(g: &Graph, k: usize, assignment: Vec<usize>, solver: SolverKind) -> Self {
        let value = cross_edges(g, &assignment);
        Self {
            k,
            assignment,
            value,
            solver,
        }
    }

    /// Recomputes the value and checks the assignment's range.
    pub fn verify(&self, g: &Graph) -> bool {
        self.assignment.len() == g.n()
            && self.assignment.iter().all(|&p| p < self.k.max(1))
            && cross_edges(g, &self.assignment) == self.value
            && self.value <= g.edge_count()
    }

    /// The `k`-partite subgraph: every edge whose ends lie in different parts.
    pub fn subgraph(&self, g: &Graph) -> Graph {
        let intra: Vec<(usize, usize)> = g
            .edges()
            .into_iter()
            .filter(|&(u, v)| self.assignment[u] == self.assignment[v])
            .collect();
        g.without_edges(&intra)
    }
}

/// Number of edges of `g` whose ends get different labels.
pub fn cross_edges(g: &Graph, assignment: &[usize]) -> usize {
    g.edges()
        .into_iter()
        .filter(|&(u, v)| assignment[u] != assignment[v])
        .count()
}

/// A set of kept edges containing no `K_r`.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EdgeSubsetCertificate {
    pub r: usize,
    /// Kept edges `(u, v)` with `u < v`, in lexicographic order.
    pub kept_edges: Vec<(usize, usize)>,
    pub value: usize,
    pub solver: SolverKind,
}

impl EdgeSubsetCertificate {
    pub fn kept_graph(&self, n: usize) -> Option<Graph> {
        let mut b = GraphBuilder::new(n).ok()?;
        for &(u, v) in &self.kept_edges {
            b.add_edge(u, v).ok()?;
        }
        Some(b.build())
    }

    /// Checks that the kept edges are distinct edges of `g` and span no `K_r`.
    pub fn verify(&self, g: &Graph) -> bool {
        let mut sorted = self.kept_edges.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != self.kept_edges.len() || self.value != self.kept_edges.len() {
            return false;
        }
        if !self
            .kept_edges
            .iter()
            .all(|&(u, v)| u < v && v < g.n() && g.has_edge(u, v))
        {
            return false;
        }
        match self.kept_graph(g.n()) {
            Some(h) => !h.clique_exists(self.r),
            None => false,
        }
    }
}
