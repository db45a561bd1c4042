use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{PartitionCertificate, SolverError, SolverKind};
use crate::graph::Graph;
use crate::rational::turan_edges;

/// Default vertex cap of the exact max-`k`-cut solver.
pub fn kcut_cap(k: usize) -> usize {
    match k {
        0..=2 => 24,
        3 => 20,
        _ => 16,
    }
}

/// `P_k(G)` with the lexicographically smallest optimal assignment, refusing
/// graphs above [`kcut_cap`].
pub fn max_kcut_exact(g: &Graph, k: usize) -> Result<PartitionCertificate, SolverError> {
    max_kcut_exact_with_cap(g, k, kcut_cap(k))
}

/// As [`max_kcut_exact`] with an explicit cap (at most 64).
pub fn max_kcut_exact_with_cap(
    g: &Graph,
    k: usize,
    cap: usize,
) -> Result<PartitionCertificate, SolverError> {
    if k == 0 {
        return Err(SolverError::InvalidK);
    }
    let cap = cap.min(64);
    let n = g.n();
    if n > cap {
        return Err(SolverError::TooLarge {
            problem: "max-k-cut",
            n,
            cap,
        });
    }
    if k == 1 || g.edge_count() == 0 {
        return Ok(PartitionCertificate::new(g, k, vec![0; n], SolverKind::Exact));
    }
    let adj: Vec<u64> = (0..n)
        .map(|v| g.neighbors(v).fold(0u64, |m, w| m | 1 << w))
        .collect();

    let warm = max_kcut_local(g, k, 0, 8)?;
    let mut search = CutSearch::new(&adj, k);
    search.best = warm.value;
    search.mode = Mode::Maximize;
    search.order = reverse_degeneracy_order(&adj);
    search.run(0);
    let opt = search.best;

    let mut search = CutSearch::new(&adj, k);
    search.best = opt;
    search.mode = Mode::FirstReaching;
    search.order = (0..n).collect();
    search.run(0);
    let assignment = search
        .found
        .take()
        .expect("an assignment reaching the optimum exists");
    let cert = PartitionCertificate::new(g, k, assignment, SolverKind::Exact);
    debug_assert_eq!(cert.value, opt);
    Ok(cert)
}

/// Vertices in reverse order of repeated min-degree removal, so the densest core comes first.
fn reverse_degeneracy_order(adj: &[u64]) -> Vec<usize> {
    let n = adj.len();
    let mut alive: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut order = Vec::with_capacity(n);
    while alive != 0 {
        let v = (0..n)
            .filter(|&v| alive >> v & 1 == 1)
            .min_by_key(|&v| ((adj[v] & alive).count_ones(), v))
            .expect("alive is nonempty");
        order.push(v);
        alive &= !(1u64 << v);
    }
    order.reverse();
    order
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    /// Raise `best` to the optimum.
    Maximize,
    /// Stop at the first complete assignment whose value equals `best`.
    FirstReaching,
}

struct CutSearch<'a> {
    adj: &'a [u64],
    k: usize,
    order: Vec<usize>,
    mode: Mode,
    part: Vec<usize>,
    /// `cnt[v * k + p]`: neighbours of `v` already placed in part `p`.
    cnt: Vec<u32>,
    unassigned: u64,
    cross: usize,
    best: usize,
    found: Option<Vec<usize>>,
}

impl<'a> CutSearch<'a> {
    fn new(adj: &'a [u64], k: usize) -> Self {
        let n = adj.len();
        Self {
            adj,
            k,
            order: Vec::new(),
            mode: Mode::Maximize,
            part: vec![usize::MAX; n],
            cnt: vec![0; n * k],
            unassigned: if n == 64 { u64::MAX } else { (1u64 << n) - 1 },
            cross: 0,
            best: 0,
            found: None,
        }
    }

    fn bound(&self) -> usize {
        let mut b = self.cross;
        let mut rest = self.unassigned;
        let mut inner = 0usize;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let c = &self.cnt[v * self.k..(v + 1) * self.k];
            let total: u32 = c.iter().sum();
            let least = *c.iter().min().expect("k >= 1");
            b += (total - least) as usize;
            inner += (self.adj[v] & self.unassigned).count_ones() as usize;
        }
        let u = self.unassigned.count_ones() as usize;
        b + (inner / 2).min(turan_edges(u, self.k))
    }

    fn place(&mut self, v: usize, p: usize) {
        let c = &self.cnt[v * self.k..(v + 1) * self.k];
        let total: u32 = c.iter().sum();
        self.cross += (total - c[p]) as usize;
        self.part[v] = p;
        self.unassigned &= !(1u64 << v);
        let mut nb = self.adj[v];
        while nb != 0 {
            let w = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            self.cnt[w * self.k + p] += 1;
        }
    }

    fn unplace(&mut self, v: usize, p: usize) {
        let mut nb = self.adj[v];
        while nb != 0 {
            let w = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            self.cnt[w * self.k + p] -= 1;
        }
        self.unassigned |= 1u64 << v;
        self.part[v] = usize::MAX;
        let c = &self.cnt[v * self.k..(v + 1) * self.k];
        let total: u32 = c.iter().sum();
        self.cross -= (total - c[p]) as usize;
    }

    /// Returns `true` once the search may stop.
    fn run(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            match self.mode {
                Mode::Maximize => {
                    self.best = self.best.max(self.cross);
                    return false;
                }
                Mode::FirstReaching => {
                    if self.cross == self.best {
                        self.found = Some(self.part.clone());
                        return true;
                    }
                    return false;
                }
            }
        }
        let bound = self.bound();
        let hopeless = match self.mode {
            Mode::Maximize => bound <= self.best,
            Mode::FirstReaching => bound < self.best,
        };
        if hopeless {
            return false;
        }
        let v = self.order[depth];
        let opened = self.order[..depth]
            .iter()
            .map(|&u| self.part[u] + 1)
            .max()
            .unwrap_or(0);
        let limit = (opened + 1).min(self.k);
        let mut choices: Vec<usize> = (0..limit).collect();
        if self.mode == Mode::Maximize {
            // fewest placed neighbours first
            let base = v * self.k;
            choices.sort_by_key(|&p| (self.cnt[base + p], p));
        }
        for p in choices {
            self.place(v, p);
            let stop = self.run(depth + 1);
            self.unplace(v, p);
            if stop {
                return true;
            }
        }
        false
    }
}

/// Best of `restarts` single-vertex-move local optima from seeded random starts.
pub fn max_kcut_local(
    g: &Graph,
    k: usize,
    seed: u64,
    restarts: usize,
) -> Result<PartitionCertificate, SolverError> {
    if k == 0 {
        return Err(SolverError::InvalidK);
    }
    let n = g.n();
    if k == 1 {
        return Ok(PartitionCertificate::new(g, 1, vec![0; n], SolverKind::LocalSearch));
    }
    let adj: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v).collect()).collect();
    let mut best: Option<(usize, Vec<usize>)> = None;
    for restart in 0..restarts.max(1) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(restart as u64);
        let mut part: Vec<usize> = (0..n).map(|_| rng.random_range(0..k)).collect();
        descend(&adj, k, &mut part);
        let value = count_cross(&adj, &part);
        if best.as_ref().is_none_or(|(b, _)| value > *b) {
            best = Some((value, part));
        }
    }
    let (_, assignment) = best.expect("at least one restart");
    Ok(PartitionCertificate::new(g, k, assignment, SolverKind::LocalSearch))
}

fn count_cross(adj: &[Vec<usize>], part: &[usize]) -> usize {
    adj.iter()
        .enumerate()
        .map(|(v, nb)| nb.iter().filter(|&&w| w > v && part[w] != part[v]).count())
        .sum()
}

/// Applies improving single-vertex moves until none is left.
fn descend(adj: &[Vec<usize>], k: usize, part: &mut [usize]) {
    let n = part.len();
    let mut cnt = vec![0u32; n * k];
    for v in 0..n {
        for &w in &adj[v] {
            cnt[v * k + part[w]] += 1;
        }
    }
    loop {
        let mut moved = false;
        for v in 0..n {
            let c = &cnt[v * k..(v + 1) * k];
            let (target, &least) = c
                .iter()
                .enumerate()
                .min_by_key(|&(p, &x)| (x, p))
                .expect("k >= 1");
            if least < c[part[v]] {
                let from = part[v];
                for &w in &adj[v] {
                    cnt[w * k + from] -= 1;
                    cnt[w * k + target] += 1;
                }
                part[v] = target;
                moved = true;
            }
        }
        if !moved {
            break;
        }
    }
}

/// A vertex whose move to another part would increase the cut, with that part.
pub fn improving_move(g: &Graph, cert: &PartitionCertificate) -> Option<(usize, usize)> {
    let k = cert.k;
    for v in 0..g.n() {
        let mut cnt = vec![0usize; k];
        for w in g.neighbors(v) {
            cnt[cert.assignment[w]] += 1;
        }
        let own = cnt[cert.assignment[v]];
        if let Some(p) = (0..k).find(|&p| cnt[p] < own) {
            return Some((v, p));
        }
    }
    None
}

/// Assignment of some vertices to parts `0..k`; `None` marks unplaced vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PartialAssignment {
    pub k: usize,
    pub parts: Vec<Option<usize>>,
}

impl PartialAssignment {
    pub fn empty(n: usize, k: usize) -> Self {
        Self {
            k,
            parts: vec![None; n],
        }
    }

    pub fn from_certificate(cert: &PartitionCertificate) -> Self {
        Self {
            k: cert.k,
            parts: cert.assignment.iter().map(|&p| Some(p)).collect(),
        }
    }

    fn check(&self, g: &Graph) -> Result<(), SolverError> {
        if self.k == 0 {
            return Err(SolverError::InvalidK);
        }
        if self.parts.len() != g.n() {
            return Err(SolverError::LengthMismatch {
                got: self.parts.len(),
                n: g.n(),
            });
        }
        for (v, p) in self.parts.iter().enumerate() {
            if let Some(p) = *p {
                if p >= self.k {
                    return Err(SolverError::PartOutOfRange { v, part: p, k: self.k });
                }
            }
        }
        Ok(())
    }
}

/// Places each vertex, in label order, into the part holding the fewest of its
/// already placed neighbours. Keeps at least `ceil((k-1)/k · e(G))` edges.
pub fn greedy_partition(g: &Graph, k: usize) -> Result<PartitionCertificate, SolverError> {
    let mut cert = extend_partition(g, &PartialAssignment::empty(g.n(), k))?;
    cert.solver = SolverKind::Greedy;
    Ok(cert)
}

/// Completes `partial` by the same rule as [`greedy_partition`], leaving placed
/// vertices untouched.
pub fn extend_partition(
    g: &Graph,
    partial: &PartialAssignment,
) -> Result<PartitionCertificate, SolverError> {
    partial.check(g)?;
    let k = partial.k;
    let mut part: Vec<Option<usize>> = partial.parts.clone();
    for v in 0..g.n() {
        if part[v].is_some() {
            continue;
        }
        let mut cnt = vec![0usize; k];
        for w in g.neighbors(v) {
            if let Some(p) = part[w] {
                cnt[p] += 1;
            }
        }
        let best = (0..k).min_by_key(|&p| (cnt[p], p)).expect("k >= 1");
        part[v] = Some(best);
    }
    let assignment = part.into_iter().map(|p| p.expect("all placed")).collect();
    Ok(PartitionCertificate::new(g, k, assignment, SolverKind::Extension))
}

/// Guaranteed value of [`extend_partition`]: cross edges already inside the placed
/// set plus `ceil((k-1)/k · m)`, `m` the number of edges touching an unplaced vertex.
pub fn extension_bound(g: &Graph, partial: &PartialAssignment) -> usize {
    let k = partial.k.max(1);
    let (mut inside, mut m) = (0usize, 0usize);
    for (u, v) in g.edges() {
        match (partial.parts[u], partial.parts[v]) {
            (Some(a), Some(b)) => inside += usize::from(a != b),
            _ => m += 1,
        }
    }
    inside + ((k - 1) * m).div_ceil(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{make_turan, petersen};

    fn brute(g: &Graph, k: usize) -> usize {
        let n = g.n();
        let mut best = 0;
        let mut a = vec![0usize; n];
        loop {
            best = best.max(super::super::cross_edges(g, &a));
            let mut i = 0;
            loop {
                if i == n {
                    return best;
                }
                a[i] += 1;
                if a[i] < k {
                    break;
                }
                a[i] = 0;
                i += 1;
            }
        }
    }

    #[test]
    fn exact_small_examples() {
        assert_eq!(max_kcut_exact(&Graph::cycle(5), 2).unwrap().value, 4);
        assert_eq!(max_kcut_exact(&Graph::complete(5), 3).unwrap().value, 8);
        assert_eq!(brute(&Graph::complete(5), 3), 8);
        assert_eq!(max_kcut_exact(&Graph::complete(4), 6).unwrap().value, 6);
        assert_eq!(max_kcut_exact(&petersen(), 2).unwrap().value, 12);
        assert_eq!(brute(&petersen(), 2), 12);
    }

    #[test]
    fn exact_certificate_is_lexicographically_first() {
        let c5 = Graph::cycle(5);
        let cert = max_kcut_exact(&c5, 2).unwrap();
        assert_eq!(cert.assignment, vec![0, 0, 1, 0, 1]);
        assert!(cert.verify(&c5));
        let k5 = max_kcut_exact(&Graph::complete(5), 3).unwrap();
        assert_eq!(k5.assignment, vec![0, 0, 1, 1, 2]);
    }

    #[test]
    fn exact_refuses_large() {
        let err = max_kcut_exact(&Graph::complete(21), 3).unwrap_err();
        assert_eq!(
            err,
            SolverError::TooLarge {
                problem: "max-k-cut",
                n: 21,
                cap: 20
            }
        );
    }

    #[test]
    fn turan_graph_is_its_own_cut() {
        let t = make_turan(9, 3).unwrap();
        assert_eq!(max_kcut_exact(&t.graph, 3).unwrap().value, 27);
    }

    #[test]
    fn local_search() {
        let c5 = Graph::cycle(5);
        let cert = max_kcut_local(&c5, 2, 1, 5).unwrap();
        assert_eq!(cert.value, 4);
        assert_eq!(improving_move(&c5, &cert), None);
        assert_eq!(max_kcut_local(&petersen(), 1, 0, 3).unwrap().value, 0);
        let mut bad = PartitionCertificate::new(&c5, 2, vec![0; 5], SolverKind::LocalSearch);
        assert!(improving_move(&c5, &bad).is_some());
        bad.k = 3;
        assert!(improving_move(&c5, &bad).is_some());
    }

    #[test]
    fn greedy_and_extension() {
        let k4 = Graph::complete(4);
        let g = greedy_partition(&k4, 3).unwrap();
        assert!(g.value >= 4);
        assert_eq!(greedy_partition(&Graph::empty(5), 3).unwrap().value, 0);
        let k33 = Graph::from_fn(6, |u, v| (u < 3) != (v < 3)).unwrap();
        assert_eq!(greedy_partition(&k33, 2).unwrap().value, 9);

        let partial = PartialAssignment {
            k: 3,
            parts: vec![Some(0), Some(1), None, None],
        };
        assert_eq!(extension_bound(&k4, &partial), 5);
        let ext = extend_partition(&k4, &partial).unwrap();
        assert!(ext.value >= 5);
        assert_eq!(&ext.assignment[..2], &[0, 1]);

        let full = max_kcut_exact(&k4, 3).unwrap();
        let same = extend_partition(&k4, &PartialAssignment::from_certificate(&full)).unwrap();
        assert_eq!(same.assignment, full.assignment);

        let empty = extend_partition(&k4, &PartialAssignment::empty(4, 3)).unwrap();
        assert_eq!(empty.assignment, g.assignment);

        let wrong = PartialAssignment {
            k: 2,
            parts: vec![Some(2), None, None, None],
        };
        assert!(extend_partition(&k4, &wrong).is_err());
        assert!(extend_partition(&k4, &PartialAssignment::empty(3, 2)).is_err());
    }
}
