//! Simple undirected graphs on dense labels `0..n`, stored as fixed-width bit rows.
//!
//! Every constructor and operation returns a symmetric, irreflexive adjacency
//! relation; values are immutable once built (use [`GraphBuilder`] to assemble
//! one edge by edge).

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Hard cap on the number of vertices of any [`Graph`].
pub const MAX_VERTICES: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("graph on {n} vertices exceeds the supported maximum of {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("vertex {v} is out of range for a graph on {n} vertices")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
}

#[inline]
pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

#[inline]
fn check_size(n: usize) -> Result<(), GraphError> {
    if n > MAX_VERTICES {
        Err(GraphError::TooLarge {
            n,
            cap: MAX_VERTICES,
        })
    } else {
        Ok(())
    }
}

/// Iterates the indices of the set bits of a multi-word bitset, ascending.
pub(crate) fn iter_bits(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(w, &word)| {
        let mut rest = word;
        core::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(w * 64 + b)
            }
        })
    })
}

#[inline]
fn popcount(words: &[u64]) -> usize {
    words.iter().map(|w| w.count_ones() as usize).sum()
}

/// Simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges())
            .finish()
    }
}

/// Incremental edge-by-edge construction of a [`Graph`].
#[derive(Debug, Clone)]
pub struct GraphBuilder {
    graph: Graph,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Result<Self, GraphError> {
        check_size(n)?;
        let words = words_for(n);
        Ok(Self {
            graph: Graph {
                n,
                words,
                rows: vec![0; n * words],
            },
        })
    }

    pub fn n(&self) -> usize {
        self.graph.n
    }

    /// Adds the edge `uv`; adding an existing edge is a no-op.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<&mut Self, GraphError> {
        let n = self.graph.n;
        for x in [u, v] {
            if x >= n {
                return Err(GraphError::VertexOutOfRange { v: x, n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.graph.set(u, v);
        self.graph.set(v, u);
        Ok(self)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.graph.has_edge(u, v)
    }

    pub fn build(self) -> Graph {
        debug_assert!(self.graph.is_well_formed());
        self.graph
    }
}

/// Result of [`Graph::induced`]: the subgraph plus the map from new to old labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Induced {
    pub graph: Graph,
    /// `labels[new] = old`.
    pub labels: Vec<usize>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    ///
    /// # Panics
    /// If `n > MAX_VERTICES`.
    pub fn empty(n: usize) -> Self {
        GraphBuilder::new(n).expect("vertex cap").build()
    }

    /// Complete graph `K_n`.
    ///
    /// # Panics
    /// If `n > MAX_VERTICES`.
    pub fn complete(n: usize) -> Self {
        Self::empty(n).complement()
    }

    /// Cycle `C_n`; for `n < 3` this is the path on `n` vertices.
    ///
    /// # Panics
    /// If `n > MAX_VERTICES`.
    pub fn cycle(n: usize) -> Self {
        let mut g = Self::path(n);
        if n >= 3 {
            g.set(0, n - 1);
            g.set(n - 1, 0);
        }
        g
    }

    /// Path on `n` vertices (`n - 1` edges).
    ///
    /// # Panics
    /// If `n > MAX_VERTICES`.
    pub fn path(n: usize) -> Self {
        let mut g = Self::empty(n);
        for v in 1..n {
            g.set(v - 1, v);
            g.set(v, v - 1);
        }
        g
    }

    /// Builds a graph from an edge list; duplicate edges collapse.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut b = GraphBuilder::new(n)?;
        for &(u, v) in edges {
            b.add_edge(u, v)?;
        }
        Ok(b.build())
    }

    /// Builds a graph on `n` vertices with `u ~ v` whenever `adjacent(u, v)` holds for `u < v`.
    pub fn from_fn(
        n: usize,
        mut adjacent: impl FnMut(usize, usize) -> bool,
    ) -> Result<Self, GraphError> {
        let mut b = GraphBuilder::new(n)?;
        for u in 0..n {
            for v in u + 1..n {
                if adjacent(u, v) {
                    b.graph.set(u, v);
                    b.graph.set(v, u);
                }
            }
        }
        Ok(b.build())
    }

    #[inline]
    fn set(&mut self, u: usize, v: usize) {
        self.rows[u * self.words + v / 64] |= 1u64 << (v % 64);
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of `u64` words per adjacency row.
    #[inline]
    pub fn words(&self) -> usize {
        self.words
    }

    /// Neighbourhood of `v` as a bit row of [`Self::words`] words.
    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.rows[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        popcount(self.row(v))
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    /// Minimum degree, `None` for the graph on zero vertices.
    pub fn min_degree(&self) -> Option<usize> {
        (0..self.n).map(|v| self.degree(v)).min()
    }

    pub fn max_degree(&self) -> Option<usize> {
        (0..self.n).map(|v| self.degree(v)).max()
    }

    pub fn edge_count(&self) -> usize {
        popcount(&self.rows) / 2
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        iter_bits(self.row(v))
    }

    /// Number of neighbours of `v` inside `set`.
    pub fn degree_in(&self, v: usize, set: &VertexSet) -> usize {
        self.row(v)
            .iter()
            .zip(&set.bits)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// All edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            out.extend(self.neighbors(u).filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    /// Checks symmetry, irreflexivity and that no bit beyond `n` is set.
    pub fn is_well_formed(&self) -> bool {
        let tail = self.n % 64;
        for u in 0..self.n {
            if self.has_edge(u, u) {
                return false;
            }
            if tail != 0 && self.row(u)[self.words - 1] >> tail != 0 {
                return false;
            }
            if self.neighbors(u).any(|v| !self.has_edge(v, u)) {
                return false;
            }
        }
        true
    }

    pub fn complement(&self) -> Self {
        let mut g = self.clone();
        let tail = self.n % 64;
        for u in 0..self.n {
            let row = &mut g.rows[u * self.words..(u + 1) * self.words];
            for w in row.iter_mut() {
                *w = !*w;
            }
            if tail != 0 {
                row[self.words - 1] &= (1u64 << tail) - 1;
            }
            row[u / 64] &= !(1u64 << (u % 64));
        }
        debug_assert!(g.is_well_formed());
        g
    }

    /// `k`-th power: `u ~ v` iff their distance in `self` lies in `1..=k`.
    ///
    /// # Panics
    /// If `k == 0`.
    pub fn power(&self, k: usize) -> Self {
        assert!(k >= 1, "graph power needs k >= 1");
        let mut g = Self::empty(self.n);
        let mut reach = vec![0u64; self.words];
        let mut next = vec![0u64; self.words];
        for v in 0..self.n {
            reach.iter_mut().for_each(|w| *w = 0);
            reach[v / 64] |= 1u64 << (v % 64);
            for _ in 0..k {
                next.copy_from_slice(&reach);
                for u in iter_bits(&reach) {
                    for (a, b) in next.iter_mut().zip(self.row(u)) {
                        *a |= b;
                    }
                }
                if next == reach {
                    break;
                }
                core::mem::swap(&mut reach, &mut next);
            }
            reach[v / 64] &= !(1u64 << (v % 64));
            g.rows[v * self.words..(v + 1) * self.words].copy_from_slice(&reach);
        }
        debug_assert!(g.is_well_formed());
        g
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Self, GraphError> {
        let shift = self.n;
        let mut b = GraphBuilder::new(self.n + other.n)?;
        for (u, v) in self.edges() {
            b.add_edge(u, v)?;
        }
        for (u, v) in other.edges() {
            b.add_edge(u + shift, v + shift)?;
        }
        Ok(b.build())
    }

    /// Join `self + other`: disjoint union plus every edge between the two sides.
    pub fn join(&self, other: &Graph) -> Result<Self, GraphError> {
        let mut b = GraphBuilder::new(self.n + other.n)?;
        b.graph = self.disjoint_union(other)?;
        for u in 0..self.n {
            for v in 0..other.n {
                b.add_edge(u, self.n + v)?;
            }
        }
        let g = b.build();
        debug_assert_eq!(
            g.edge_count(),
            self.edge_count() + other.edge_count() + self.n * other.n
        );
        Ok(g)
    }

    /// Subgraph induced on `set`, relabelled `0..|set|` in increasing old-label order.
    pub fn induced(&self, set: &VertexSet) -> Induced {
        assert_eq!(set.host_n(), self.n, "vertex set belongs to another graph");
        let labels: Vec<usize> = set.iter().collect();
        let mut g = Self::empty(labels.len());
        for (i, &u) in labels.iter().enumerate() {
            for (j, &v) in labels.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.set(i, j);
                    g.set(j, i);
                }
            }
        }
        Induced { graph: g, labels }
    }

    /// Removes the given edges (those absent are ignored).
    pub fn without_edges(&self, edges: &[(usize, usize)]) -> Self {
        let mut g = self.clone();
        for &(u, v) in edges {
            if u < self.n && v < self.n {
                g.rows[u * self.words + v / 64] &= !(1u64 << (v % 64));
                g.rows[v * self.words + u / 64] &= !(1u64 << (u % 64));
            }
        }
        g
    }

    /// Returns an `r`-clique if one exists.
    ///
    /// Pivoting Bron–Kerbosch over bit rows with the size bound `|R| + |P| < r`;
    /// the search visits candidates in ascending label order, so the witness is
    /// deterministic. Returned labels are sorted.
    pub fn find_clique(&self, r: usize) -> Option<Vec<usize>> {
        if r == 0 {
            return Some(Vec::new());
        }
        if r > self.n {
            return None;
        }
        let mut p = vec![0u64; self.words];
        for v in 0..self.n {
            p[v / 64] |= 1u64 << (v % 64);
        }
        let x = vec![0u64; self.words];
        let mut clique = Vec::with_capacity(r);
        if self.bron_kerbosch_sized(r, &mut clique, p, x) {
            clique.sort_unstable();
            Some(clique)
        } else {
            None
        }
    }

    /// `true` iff the graph contains `K_r`.
    pub fn clique_exists(&self, r: usize) -> bool {
        self.find_clique(r).is_some()
    }

    fn bron_kerbosch_sized(
        &self,
        r: usize,
        clique: &mut Vec<usize>,
        mut p: Vec<u64>,
        mut x: Vec<u64>,
    ) -> bool {
        if clique.len() == r {
            return true;
        }
        if clique.len() + popcount(&p) < r {
            return false;
        }
        // pivot: vertex of P ∪ X with the most neighbours in P
        let pivot = iter_bits(&p)
            .chain(iter_bits(&x))
            .max_by_key(|&u| {
                let hits: usize = self
                    .row(u)
                    .iter()
                    .zip(&p)
                    .map(|(a, b)| (a & b).count_ones() as usize)
                    .sum();
                (hits, core::cmp::Reverse(u))
            })
            .expect("P is nonempty here");
        let branch: Vec<usize> = iter_bits(&p)
            .filter(|&v| !self.has_edge(pivot, v))
            .collect();
        for v in branch {
            let row = self.row(v);
            let p2: Vec<u64> = p.iter().zip(row).map(|(a, b)| a & b).collect();
            let x2: Vec<u64> = x.iter().zip(row).map(|(a, b)| a & b).collect();
            clique.push(v);
            if self.bron_kerbosch_sized(r, clique, p2, x2) {
                return true;
            }
            clique.pop();
            p[v / 64] &= !(1u64 << (v % 64));
            x[v / 64] |= 1u64 << (v % 64);
        }
        false
    }

    /// Every copy of `K_r`, each as a sorted label list, in lexicographic order.
    pub fn cliques(&self, r: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        if r == 0 || r > self.n {
            return out;
        }
        let mut stack = Vec::with_capacity(r);
        let all: Vec<u64> = {
            let mut p = vec![0u64; self.words];
            for v in 0..self.n {
                p[v / 64] |= 1u64 << (v % 64);
            }
            p
        };
        self.extend_cliques(r, &mut stack, &all, &mut out);
        out
    }

    fn extend_cliques(
        &self,
        r: usize,
        stack: &mut Vec<usize>,
        cand: &[u64],
        out: &mut Vec<Vec<usize>>,
    ) {
        if stack.len() == r {
            out.push(stack.clone());
            return;
        }
        if stack.len() + popcount(cand) < r {
            return;
        }
        for v in iter_bits(cand) {
            // only later vertices, so each clique is produced once
            let next: Vec<u64> = cand
                .iter()
                .zip(self.row(v))
                .enumerate()
                .map(|(w, (a, b))| {
                    let keep_above = if w * 64 > v {
                        u64::MAX
                    } else if w * 64 + 63 <= v {
                        0
                    } else {
                        let off = v - w * 64;
                        if off == 63 {
                            0
                        } else {
                            u64::MAX << (off + 1)
                        }
                    };
                    a & b & keep_above
                })
                .collect();
            stack.push(v);
            self.extend_cliques(r, stack, &next, out);
            stack.pop();
        }
    }

    /// All maximal cliques (Bron–Kerbosch with pivoting), each sorted.
    pub fn maximal_cliques(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut p = vec![0u64; self.words];
        for v in 0..self.n {
            p[v / 64] |= 1u64 << (v % 64);
        }
        let mut r = Vec::new();
        self.bk_all(&mut r, p, vec![0u64; self.words], &mut out);
        out
    }

    fn bk_all(&self, r: &mut Vec<usize>, mut p: Vec<u64>, mut x: Vec<u64>, out: &mut Vec<Vec<usize>>) {
        if p.iter().all(|&w| w == 0) {
            if x.iter().all(|&w| w == 0) && !r.is_empty() {
                let mut c = r.clone();
                c.sort_unstable();
                out.push(c);
            }
            return;
        }
        let pivot = iter_bits(&p)
            .chain(iter_bits(&x))
            .max_by_key(|&u| {
                let hits: usize = self
                    .row(u)
                    .iter()
                    .zip(&p)
                    .map(|(a, b)| (a & b).count_ones() as usize)
                    .sum();
                (hits, core::cmp::Reverse(u))
            })
            .expect("P is nonempty");
        let branch: Vec<usize> = iter_bits(&p).filter(|&v| !self.has_edge(pivot, v)).collect();
        for v in branch {
            let row = self.row(v);
            let p2 = p.iter().zip(row).map(|(a, b)| a & b).collect();
            let x2 = x.iter().zip(row).map(|(a, b)| a & b).collect();
            r.push(v);
            self.bk_all(r, p2, x2, out);
            r.pop();
            p[v / 64] &= !(1u64 << (v % 64));
            x[v / 64] |= 1u64 << (v % 64);
        }
    }

    /// `true` iff `map` (a bijection `0..n -> 0..n`) carries `self` onto `other`.
    pub fn is_isomorphism(&self, other: &Graph, map: &[usize]) -> bool {
        if self.n != other.n || map.len() != self.n || self.edge_count() != other.edge_count() {
            return false;
        }
        let mut seen = vec![false; self.n];
        for &m in map {
            if m >= self.n || core::mem::replace(&mut seen[m], true) {
                return false;
            }
        }
        self.edges()
            .into_iter()
            .all(|(u, v)| other.has_edge(map[u], map[v]))
    }
}

/// A subset of the vertices `0..n` of a host graph.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    n: usize,
    bits: Vec<u64>,
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            bits: vec![0; words_for(n)],
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for v in 0..n {
            s.bits[v / 64] |= 1u64 << (v % 64);
        }
        s
    }

    pub fn from_vertices(
        n: usize,
        members: impl IntoIterator<Item = usize>,
    ) -> Result<Self, GraphError> {
        let mut s = Self::empty(n);
        for v in members {
            if v >= n {
                return Err(GraphError::VertexOutOfRange { v, n });
            }
            s.bits[v / 64] |= 1u64 << (v % 64);
        }
        Ok(s)
    }

    pub fn host_n(&self) -> usize {
        self.n
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.n && self.bits[v / 64] >> (v % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        popcount(&self.bits)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        iter_bits(&self.bits)
    }

    pub fn complement(&self) -> Self {
        let mut s = Self::full(self.n);
        for (a, b) in s.bits.iter_mut().zip(&self.bits) {
            *a &= !b;
        }
        s
    }
}

#[cfg(feature = "serde")]
mod serde_impl {
    //! Graphs serialize as `{"n": .., "edges": [[u, v], ..]}`.
    use super::{Graph, Vec};
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Repr {
        n: usize,
        edges: Vec<(usize, usize)>,
    }

    impl Serialize for Graph {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            Repr {
                n: self.n,
                edges: self.edges(),
            }
            .serialize(s)
        }
    }

    impl<'de> Deserialize<'de> for Graph {
        fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
            let repr = Repr::deserialize(d)?;
            Graph::from_edges(repr.n, &repr.edges).map_err(serde::de::Error::custom)
        }
    }
}
