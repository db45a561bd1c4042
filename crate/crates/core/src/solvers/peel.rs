use alloc::vec::Vec;

use crate::graph::{Graph, VertexSet};
use crate::rational::Fraction;

/// One deletion: the vertex, its degree at that moment, and the vertex count before removal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PeelStep {
    pub vertex: usize,
    pub degree: usize,
    pub size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct PeelTrace {
    #[cfg_attr(feature = "serde", serde(with = "crate::rational::serde_fraction"))]
    pub gamma: Fraction,
    pub n: usize,
    pub steps: Vec<PeelStep>,
    /// Surviving original labels, ascending; vertex `i` of `final_graph` is `remaining[i]`.
    pub remaining: Vec<usize>,
    pub final_graph: Graph,
}

/// `deg <= gamma * size`, exactly.
fn at_most(gamma: &Fraction, deg: usize, size: usize) -> bool {
    let (p, q) = (*gamma.numer() as i128, *gamma.denom() as i128);
    deg as i128 * q <= p * size as i128
}

/// Deletes a vertex of degree at most `gamma` times the current vertex count while
/// one exists, choosing the smallest degree and then the smallest label.
pub fn peel(g: &Graph, gamma: Fraction) -> PeelTrace {
    let n = g.n();
    let mut alive = VertexSet::full(n);
    let mut degree: Vec<usize> = g.degrees();
    let mut size = n;
    let mut steps = Vec::new();
    loop {
        let pick = alive.iter().min_by_key(|&v| (degree[v], v));
        let Some(v) = pick else { break };
        if !at_most(&gamma, degree[v], size) {
            break;
        }
        steps.push(PeelStep {
            vertex: v,
            degree: degree[v],
            size,
        });
        alive = remove(&alive, v);
        for w in g.neighbors(v) {
            if alive.contains(w) {
                degree[w] -= 1;
            }
        }
        size -= 1;
    }
    let induced = g.induced(&alive);
    PeelTrace {
        gamma,
        n,
        steps,
        remaining: induced.labels,
        final_graph: induced.graph,
    }
}

fn remove(set: &VertexSet, v: usize) -> VertexSet {
    VertexSet::from_vertices(set.host_n(), set.iter().filter(|&u| u != v))
        .expect("subset of a valid set")
}

impl PeelTrace {
    /// `v(final) / n`; zero for the empty graph.
    pub fn alpha(&self) -> Fraction {
        if self.n == 0 {
            Fraction::from_integer(0)
        } else {
            Fraction::new(self.remaining.len() as i64, self.n as i64)
        }
    }

    /// Minimum degree of the final graph exceeds `gamma` times its order (or it is empty).
    pub fn final_condition_holds(&self) -> bool {
        let m = self.final_graph.n();
        match self.final_graph.min_degree() {
            None => true,
            Some(d) => !at_most(&self.gamma, d, m),
        }
    }

    /// Sum of the sizes at deletion; `gamma` times this bounds the edges lost.
    pub fn size_sum(&self) -> usize {
        self.steps.iter().map(|s| s.size).sum()
    }

    /// `e(final) >= e(G) - gamma * Σ sizes`, exactly.
    pub fn edge_loss_bound_holds(&self, g: &Graph) -> bool {
        let (p, q) = (*self.gamma.numer() as i128, *self.gamma.denom() as i128);
        let lost = (g.edge_count() - self.final_graph.edge_count()) as i128;
        lost * q <= p * self.size_sum() as i128
    }

    /// Re-applies the recorded deletions to `g`, checking each recorded degree and
    /// threshold, and returns the resulting graph.
    pub fn replay(&self, g: &Graph) -> Option<Graph> {
        if g.n() != self.n {
            return None;
        }
        let mut alive = VertexSet::full(self.n);
        for (i, step) in self.steps.iter().enumerate() {
            if !alive.contains(step.vertex) || step.size != self.n - i {
                return None;
            }
            if g.degree_in(step.vertex, &alive) != step.degree
                || !at_most(&self.gamma, step.degree, step.size)
            {
                return None;
            }
            alive = remove(&alive, step.vertex);
        }
        let induced = g.induced(&alive);
        (induced.labels == self.remaining).then_some(induced.graph)
    }
}
