//! Generators for the graph families: `F_d`, `F_d + K_s`, Turán graphs, the
//! pentagon blowup, the six-part `G_4` and the recursive `G_r`.
//!
//! Multi-part constructions lay their parts out consecutively (`V_0` first) and
//! return the vertex → part map alongside the graph.

use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, GraphBuilder, GraphError};
use crate::rational::{round_fraction_times, Fraction};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConstructionError {
    #[error("F_d needs d >= 1, got {0}")]
    InvalidD(usize),
    #[error("Turán graph needs k >= 1")]
    InvalidK,
    #[error("theta = {0} lies outside [0, 1]")]
    ThetaOutOfRange(Fraction),
    #[error("G_r needs r >= 4, got {0}")]
    RTooSmall(usize),
    #[error("G_{r} needs {expected} apex part sizes, got {got}")]
    ApexCount { r: usize, expected: usize, got: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// `F_d`: `K_2` for `d = 1`, otherwise the circulant on `Z_{3d-1}` with steps `≡ 1 (mod 3)`.
pub fn make_f(d: usize) -> Result<Graph, ConstructionError> {
    match d {
        0 => Err(ConstructionError::InvalidD(d)),
        1 => Ok(Graph::complete(2)),
        _ => {
            let m = 3 * d - 1;
            let g = Graph::from_fn(m, |u, v| (v - u) % 3 == 1 || (u + m - v) % 3 == 1)?;
            debug_assert!(g.degrees().iter().all(|&x| x == d));
            Ok(g)
        }
    }
}

/// `F_d + K_s`; the clique occupies labels `3d-1 ..`.
pub fn make_f_plus_k(d: usize, s: usize) -> Result<Graph, ConstructionError> {
    Ok(make_f(d)?.join(&Graph::complete(s))?)
}

/// Balanced part sizes of the Turán graph `T_k(n)`, larger parts first.
pub fn turan_part_sizes(n: usize, k: usize) -> Vec<usize> {
    (0..k).map(|i| n / k + usize::from(i < n % k)).collect()
}

/// Complete `k`-partite graph on `n` vertices with parts as equal as possible.
pub fn make_turan(n: usize, k: usize) -> Result<PartitionedGraph, ConstructionError> {
    if k == 0 {
        return Err(ConstructionError::InvalidK);
    }
    let sizes = turan_part_sizes(n, k);
    let part_of = part_labels(&sizes);
    let graph = Graph::from_fn(n, |u, v| part_of[u] != part_of[v])?;
    Ok(PartitionedGraph {
        graph,
        part_of,
        part_sizes: sizes,
        theta_edges: Vec::new(),
    })
}

/// The Petersen graph (outer 5-cycle `0..5`, inner pentagram `5..10`).
pub fn petersen() -> Graph {
    let mut edges = Vec::with_capacity(15);
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::from_edges(10, &edges).expect("fixed edge list")
}

/// Blowup of the cycle `C_m` (`m = sizes.len()`): independent parts, complete
/// bipartite graphs between cyclically consecutive parts.
pub fn cycle_blowup(sizes: &[usize]) -> Result<PartitionedGraph, ConstructionError> {
    let m = sizes.len();
    let part_of = part_labels(sizes);
    let n = part_of.len();
    let graph = Graph::from_fn(n, |u, v| {
        let (a, b) = (part_of[u], part_of[v]);
        a != b && ((a + 1) % m == b || (b + 1) % m == a)
    })?;
    Ok(PartitionedGraph {
        graph,
        part_of,
        part_sizes: sizes.to_vec(),
        theta_edges: Vec::new(),
    })
}

fn part_labels(sizes: &[usize]) -> Vec<usize> {
    sizes
        .iter()
        .enumerate()
        .flat_map(|(i, &s)| core::iter::repeat_n(i, s))
        .collect()
}

/// How the density-θ edges between parts at cyclic distance two are placed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum BlowupMode {
    /// Uniform sample without replacement, reproducible from the seed.
    #[default]
    SeededRandom,
    /// Fixed diagonal enumeration; no randomness.
    Quasirandom,
}

/// Parameters of the five-part pentagon blowup.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BlowupSpec {
    pub part_sizes: [usize; 5],
    #[cfg_attr(feature = "serde", serde(with = "crate::rational::serde_fraction"))]
    pub theta: Fraction,
    #[cfg_attr(feature = "serde", serde(default))]
    pub seed: u64,
    #[cfg_attr(feature = "serde", serde(default))]
    pub mode: BlowupMode,
}

impl BlowupSpec {
    pub fn new(part_sizes: [usize; 5], theta: Fraction) -> Self {
        Self {
            part_sizes,
            theta,
            seed: 0,
            mode: BlowupMode::default(),
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_mode(mut self, mode: BlowupMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn validate(&self) -> Result<(), ConstructionError> {
        let zero = Fraction::from_integer(0);
        let one = Fraction::from_integer(1);
        if self.theta < zero || self.theta > one {
            return Err(ConstructionError::ThetaOutOfRange(self.theta));
        }
        Ok(())
    }

    /// Number of θ-edges placed between `V_i` and `V_{i+2}`.
    pub fn theta_edge_count(&self, i: usize) -> usize {
        let a = self.part_sizes[i % 5] as u64;
        let b = self.part_sizes[(i + 2) % 5] as u64;
        round_fraction_times(&self.theta, a * b) as usize
    }
}

/// Parameters of the recursive `G_r`: the `G_4` base plus apex parts `V_5 ..= V_{r+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RecursiveSpec {
    pub r: usize,
    pub base: BlowupSpec,
    pub apex_sizes: Vec<usize>,
}

/// A graph together with the part structure it was built from.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct PartitionedGraph {
    pub graph: Graph,
    /// `part_of[v]` is the index of the part containing `v`.
    pub part_of: Vec<usize>,
    pub part_sizes: Vec<usize>,
    /// Edges between parts at cyclic distance two (pentagon constructions only).
    pub theta_edges: Vec<(usize, usize)>,
}

impl PartitionedGraph {
    pub fn part_count(&self) -> usize {
        self.part_sizes.len()
    }

    /// First label of part `i`.
    pub fn part_offset(&self, i: usize) -> usize {
        self.part_sizes[..i].iter().sum()
    }

    pub fn part(&self, i: usize) -> core::ops::Range<usize> {
        let start = self.part_offset(i);
        start..start + self.part_sizes[i]
    }

    /// The graph with every θ-edge removed.
    pub fn without_theta_edges(&self) -> Graph {
        self.graph.without_edges(&self.theta_edges)
    }

    /// Appends an independent part joined to every existing vertex.
    fn push_apex(&mut self, size: usize) -> Result<(), ConstructionError> {
        let old = self.graph.n();
        let joined = self.graph.join(&Graph::empty(size))?;
        self.graph = joined;
        let idx = self.part_sizes.len();
        self.part_sizes.push(size);
        self.part_of.extend(core::iter::repeat_n(idx, size));
        debug_assert!((old..old + size).all(|v| self.graph.degree(v) == old));
        Ok(())
    }
}

/// Pentagon blowup: `V_i ∪ V_{i+1}` is a clique for every `i ∈ Z_5`, and exactly
/// `round(θ|V_i||V_{i+2}|)` edges join `V_i` to `V_{i+2}`.
pub fn make_pentagon_blowup(spec: &BlowupSpec) -> Result<PartitionedGraph, ConstructionError> {
    spec.validate()?;
    let sizes = spec.part_sizes.to_vec();
    let part_of = part_labels(&sizes);
    let n = part_of.len();
    let mut b = GraphBuilder::new(n)?;
    for u in 0..n {
        for v in u + 1..n {
            let (pu, pv) = (part_of[u], part_of[v]);
            if pu == pv || (pu + 1) % 5 == pv || (pv + 1) % 5 == pu {
                b.add_edge(u, v)?;
            }
        }
    }
    let offsets: Vec<usize> = (0..5).map(|i| sizes[..i].iter().sum()).collect();
    let mut theta_edges = Vec::new();
    for i in 0..5 {
        let j = (i + 2) % 5;
        let (a, bsz) = (sizes[i], sizes[j]);
        let count = spec.theta_edge_count(i);
        for (x, y) in place_pairs(a, bsz, count, spec.mode, spec.seed, i as u64) {
            let (u, v) = (offsets[i] + x, offsets[j] + y);
            b.add_edge(u, v)?;
            theta_edges.push((u.min(v), u.max(v)));
        }
    }
    theta_edges.sort_unstable();
    Ok(PartitionedGraph {
        graph: b.build(),
        part_of,
        part_sizes: sizes,
        theta_edges,
    })
}

/// Chooses `count` distinct pairs of `[0, a) × [0, b)`.
fn place_pairs(
    a: usize,
    b: usize,
    count: usize,
    mode: BlowupMode,
    seed: u64,
    stream: u64,
) -> Vec<(usize, usize)> {
    let total = a * b;
    debug_assert!(count <= total);
    match mode {
        BlowupMode::Quasirandom => (0..count)
            .map(|m| {
                let (round, x) = (m / a, m % a);
                (x, (x + round) % b)
            })
            .collect(),
        BlowupMode::SeededRandom => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(stream);
            // partial Fisher–Yates over the row-major pair indices
            let mut idx: Vec<usize> = (0..total).collect();
            for m in 0..count {
                let j = rng.random_range(m..total);
                idx.swap(m, j);
            }
            let mut chosen = idx[..count].to_vec();
            chosen.sort_unstable();
            chosen.into_iter().map(|p| (p / b, p % b)).collect()
        }
    }
}

/// Pentagon blowup plus an independent apex part `V_5` joined to every blowup vertex.
pub fn make_g4(spec: &BlowupSpec, apex_size: usize) -> Result<PartitionedGraph, ConstructionError> {
    let mut g = make_pentagon_blowup(spec)?;
    g.push_apex(apex_size)?;
    Ok(g)
}

/// `G_r`: `G_4` followed by `r - 4` further independent parts, each joined to everything before it.
pub fn make_gr(spec: &RecursiveSpec) -> Result<PartitionedGraph, ConstructionError> {
    if spec.r < 4 {
        return Err(ConstructionError::RTooSmall(spec.r));
    }
    let expected = spec.r - 3;
    if spec.apex_sizes.len() != expected {
        return Err(ConstructionError::ApexCount {
            r: spec.r,
            expected,
            got: spec.apex_sizes.len(),
        });
    }
    let mut g = make_g4(&spec.base, spec.apex_sizes[0])?;
    for &size in &spec.apex_sizes[1..] {
        g.push_apex(size)?;
    }
    Ok(g)
}

/// Largest-remainder apportionment of `total` among integer `weights`; ties go to lower indices.
pub fn apportion(total: usize, weights: &[u64]) -> Vec<usize> {
    let sum: u64 = weights.iter().sum();
    if sum == 0 {
        return vec![0; weights.len()];
    }
    let total = total as u128;
    let mut sizes: Vec<usize> = weights
        .iter()
        .map(|&w| (total * w as u128 / sum as u128) as usize)
        .collect();
    let assigned: usize = sizes.iter().sum();
    let mut order: Vec<usize> = (0..weights.len()).collect();
    // remainder of part i is (total * w_i) mod sum
    order.sort_by_key(|&i| core::cmp::Reverse(total * weights[i] as u128 % sum as u128));
    for &i in order.iter().take(total as usize - assigned) {
        sizes[i] += 1;
    }
    sizes
}

/// Part sizes for `G_4` on `n` vertices in the proportions 8:8:8:8:8:15.
pub fn g4_part_sizes(n: usize) -> ([usize; 5], usize) {
    let s = apportion(n, &[8, 8, 8, 8, 8, 15]);
    ([s[0], s[1], s[2], s[3], s[4]], s[5])
}

/// Part sizes for `G_r` on `total` vertices: five parts of weight 8, `r - 3` apex parts of weight 15.
pub fn gr_part_sizes(r: usize, total: usize) -> ([usize; 5], Vec<usize>) {
    let mut weights = vec![8u64; 5];
    weights.extend(core::iter::repeat_n(15, r.saturating_sub(3)));
    let s = apportion(total, &weights);
    ([s[0], s[1], s[2], s[3], s[4]], s[5..].to_vec())
}
