use alloc::vec;
use alloc::vec::Vec;

use super::{kcut_cap, max_kcut_exact, max_kcut_exact_with_cap, max_kcut_local, EdgeSubsetCertificate, SolverError, SolverKind};
use crate::graph::Graph;
use crate::rational::turan_edges;

/// Default vertex cap of the exact `K_r`-free solver.
pub fn krfree_cap(r: usize) -> usize {
    if r <= 3 {
        14
    } else {
        16
    }
}

/// `K_r f(G)`: all edges minus a minimum set of edges meeting every `K_r`.
pub fn max_krfree_exact(g: &Graph, r: usize) -> Result<EdgeSubsetCertificate, SolverError> {
    max_krfree_exact_with_cap(g, r, krfree_cap(r))
}

/// As [`max_krfree_exact`] with an explicit cap (at most 16, so edges fit a `u128`).
pub fn max_krfree_exact_with_cap(
    g: &Graph,
    r: usize,
    cap: usize,
) -> Result<EdgeSubsetCertificate, SolverError> {
    if r < 2 {
        return Err(SolverError::InvalidR(r));
    }
    let cap = cap.min(16);
    let n = g.n();
    if n > cap {
        return Err(SolverError::TooLarge {
            problem: "K_r-free subgraph",
            n,
            cap,
        });
    }
    let edges = g.edges();
    let mut index = vec![usize::MAX; n * n];
    for (i, &(u, v)) in edges.iter().enumerate() {
        index[u * n + v] = i;
        index[v * n + u] = i;
    }
    let edge_mask = |vs: &[usize]| -> u128 {
        let mut m = 0u128;
        for (a, &u) in vs.iter().enumerate() {
            for &v in &vs[a + 1..] {
                m |= 1u128 << index[u * n + v];
            }
        }
        m
    };
    let cliques: Vec<u128> = g.cliques(r).iter().map(|c| edge_mask(c)).collect();
    let blocks: Vec<(u128, usize)> = g
        .maximal_cliques()
        .into_iter()
        .filter(|c| c.len() > r)
        .map(|c| (edge_mask(&c), turan_edges(c.len(), r - 1)))
        .collect();
    let all: u128 = if edges.len() == 128 {
        u128::MAX
    } else {
        (1u128 << edges.len()) - 1
    };

    let non_edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| !g.has_edge(u, v))
        .collect();
    let mut search = HittingSearch {
        cliques,
        blocks,
        all,
        global_cap: turan_edges(n, r - 1),
        stable_cap: turan_edges(n, r - 1),
        exact_cut: false,
        best: all,
        n,
        parts: r - 1,
        edges: edges.clone(),
        non_edges,
    };
    let cut = if n <= kcut_cap(r - 1) {
        max_kcut_exact(g, r - 1)?
    } else {
        max_kcut_local(g, r - 1, 0, 32)?
    };
    if cut.solver.is_exact() {
        // a K_r-free graph with t_{r-1}(n) - s edges keeps an (r-1)-partite
        // subgraph with all but s of its edges, so 2 e(H) <= t_{r-1}(n) + P_{r-1}(G)
        search.stable_cap = (search.global_cap + cut.value) / 2;
        search.exact_cut = true;
    }
    search.best = search.initial_upper(&cut.assignment, &edges);
    search.run(0, 0);
    let kept_mask = all & !search.best;
    let kept_edges: Vec<(usize, usize)> = edges
        .iter()
        .enumerate()
        .filter(|&(i, _)| kept_mask >> i & 1 == 1)
        .map(|(_, &e)| e)
        .collect();
    Ok(EdgeSubsetCertificate {
        r,
        value: kept_edges.len(),
        kept_edges,
        solver: SolverKind::Exact,
    })
}

struct HittingSearch {
    /// Edge masks of every `K_r`.
    cliques: Vec<u128>,
    /// Maximal cliques larger than `r`, with the `K_r`-free edge cap inside each.
    blocks: Vec<(u128, usize)>,
    all: u128,
    global_cap: usize,
    exact_cut: bool,
    /// Upper bound on the size of any `K_r`-free subgraph from Turán stability.
    stable_cap: usize,
    /// Smallest hitting set found so far.
    best: u128,
    n: usize,
    parts: usize,
    edges: Vec<(usize, usize)>,
    non_edges: Vec<(usize, usize)>,
}

impl HittingSearch {
    fn initial_upper(&self, assignment: &[usize], edges: &[(usize, usize)]) -> u128 {
        // edges inside the parts of a good (r-1)-partition
        let mut from_cut = 0u128;
        for (i, &(u, v)) in edges.iter().enumerate() {
            if assignment[u] == assignment[v] {
                from_cut |= 1u128 << i;
            }
        }
        // greedy: repeatedly delete the edge lying in most unhit cliques
        let mut greedy = 0u128;
        loop {
            let unhit: Vec<u128> = self
                .cliques
                .iter()
                .copied()
                .filter(|&c| c & greedy == 0)
                .collect();
            if unhit.is_empty() {
                break;
            }
            let e = (0..edges.len())
                .max_by_key(|&i| {
                    let hits = unhit.iter().filter(|&&c| c >> i & 1 == 1).count();
                    (hits, core::cmp::Reverse(i))
                })
                .expect("a clique has edges");
            greedy |= 1u128 << e;
        }
        if from_cut.count_ones() <= greedy.count_ones() {
            from_cut
        } else {
            greedy
        }
    }

    fn lower_bound(&self, deleted: u128, kept: u128) -> usize {
        let present = self.all & !deleted;
        let mut global = (present.count_ones() as usize).saturating_sub(self.global_cap);
        // a K_r-free graph with exactly t_{r-1}(n) edges is the Turán graph itself
        if present.count_ones() as usize >= self.global_cap && !self.turan_fits(deleted) {
            global += 1;
        }
        global = global.max((present.count_ones() as usize).saturating_sub(self.stable_cap));

        let mut needs: Vec<(usize, u128)> = self
            .blocks
            .iter()
            .filter_map(|&(mask, cap)| {
                let need = ((present & mask).count_ones() as usize).saturating_sub(cap);
                (need > 0).then_some((need, mask))
            })
            .collect();
        needs.sort_by_key(|&(need, _)| core::cmp::Reverse(need));
        let mut used = 0u128;
        let mut packed = 0usize;
        for (need, mask) in needs {
            if mask & used == 0 {
                packed += need;
                used |= mask;
            }
        }
        for &c in &self.cliques {
            if c & deleted != 0 {
                continue;
            }
            let free = c & !kept;
            if free & used == 0 {
                packed += 1;
                used |= free;
            }
        }
        global.max(packed)
    }

    /// Whether the present edges contain a spanning copy of `T_{r-1}(n)`: every
    /// missing pair must fall inside a part, so the components of the missing-pair
    /// graph have to pack exactly into the balanced part sizes.
    fn turan_fits(&self, deleted: u128) -> bool {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut rest = deleted;
        let missing = self.non_edges.iter().copied().chain(core::iter::from_fn(|| {
            (rest != 0).then(|| {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                self.edges[i]
            })
        }));
        for (u, v) in missing {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a != b {
                parent[a] = b;
            }
        }
        let mut sizes = vec![0usize; self.n];
        for v in 0..self.n {
            let root = find(&mut parent, v);
            sizes[root] += 1;
        }
        let mut comps: Vec<usize> = sizes.into_iter().filter(|&s| s > 0).collect();
        comps.sort_unstable_by(|a, b| b.cmp(a));
        let mut bins = crate::constructions::turan_part_sizes(self.n, self.parts);
        pack(&comps, &mut bins)
    }

    /// Recomputes `P_{r-1}` of the present edges and applies the stability bound.
    fn stability_prunes(&self, deleted: u128, budget: usize) -> bool {
        let present = self.all & !deleted;
        let kept: Vec<(usize, usize)> = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(i, _)| present >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        let h = Graph::from_edges(self.n, &kept).expect("edges of g");
        match max_kcut_exact_with_cap(&h, self.parts, 64) {
            Ok(cut) => {
                let cap = (self.global_cap + cut.value) / 2;
                (present.count_ones() as usize).saturating_sub(cap) >= budget
            }
            Err(_) => false,
        }
    }

    fn run(&mut self, deleted: u128, kept: u128) {
        let cost = deleted.count_ones();
        if cost >= self.best.count_ones() {
            return;
        }
        let mut pick: Option<u128> = None;
        for &c in &self.cliques {
            if c & deleted != 0 {
                continue;
            }
            let free = c & !kept;
            if free == 0 {
                return;
            }
            if pick.is_none_or(|p| free.count_ones() < p.count_ones()) {
                pick = Some(free);
            }
        }
        let Some(free) = pick else {
            self.best = deleted;
            return;
        };
        let target = self.best.count_ones() as usize;
        let lb = cost as usize + self.lower_bound(deleted, kept);
        if lb >= target {
            return;
        }
        if lb + 1 == target && self.exact_cut && self.stability_prunes(deleted, target - cost as usize) {
            return;
        }
        let mut keep_more = kept;
        let mut rest = free;
        while rest != 0 {
            let bit = rest & rest.wrapping_neg();
            rest &= rest - 1;
            self.run(deleted | bit, keep_more);
            keep_more |= bit;
        }
    }
}

/// Exact bin packing of `items` (descending) into the remaining `bins` capacities.
fn pack(items: &[usize], bins: &mut [usize]) -> bool {
    let Some((&first, rest)) = items.split_first() else {
        return bins.iter().all(|&b| b == 0);
    };
    for i in 0..bins.len() {
        if bins[i] >= first && !bins[..i].contains(&bins[i]) {
            bins[i] -= first;
            let ok = pack(rest, bins);
            bins[i] += first;
            if ok {
                return true;
            }
        }
    }
    false
}

/// Keeps exactly the edges between distinct parts and certifies that they span no `K_r`.
pub fn krfree_from_parts(
    g: &Graph,
    part_of: &[usize],
    r: usize,
) -> Result<EdgeSubsetCertificate, SolverError> {
    if r < 2 {
        return Err(SolverError::InvalidR(r));
    }
    if part_of.len() != g.n() {
        return Err(SolverError::LengthMismatch {
            got: part_of.len(),
            n: g.n(),
        });
    }
    let kept_edges: Vec<(usize, usize)> = g
        .edges()
        .into_iter()
        .filter(|&(u, v)| part_of[u] != part_of[v])
        .collect();
    let cert = EdgeSubsetCertificate {
        r,
        value: kept_edges.len(),
        kept_edges,
        solver: SolverKind::Parts,
    };
    let kept = cert.kept_graph(g.n()).expect("edges of g");
    if let Some(witness) = kept.find_clique(r) {
        return Err(SolverError::SurvivingClique { r, witness });
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{make_g4, make_turan, petersen, BlowupSpec};
    use crate::rational::Fraction;

    #[test]
    fn exact_examples() {
        let c5 = max_krfree_exact(&Graph::cycle(5), 3).unwrap();
        assert_eq!(c5.value, 5);
        let k4 = max_krfree_exact(&Graph::complete(4), 3).unwrap();
        assert_eq!(k4.value, 4);
        assert!(k4.verify(&Graph::complete(4)));
        assert_eq!(max_krfree_exact(&Graph::complete(5), 4).unwrap().value, 8);
        assert_eq!(max_krfree_exact(&petersen(), 3).unwrap().value, 15);
        assert_eq!(max_krfree_exact(&Graph::complete(10), 4).unwrap().value, 33);
        assert_eq!(max_krfree_exact(&Graph::complete(3), 2).unwrap().value, 0);
    }

    #[test]
    fn exact_refuses_large() {
        assert!(matches!(
            max_krfree_exact(&Graph::complete(15), 3),
            Err(SolverError::TooLarge { cap: 14, .. })
        ));
        assert!(max_krfree_exact(&Graph::complete(16), 4).is_ok());
        assert!(matches!(max_krfree_exact(&Graph::complete(3), 1), Err(SolverError::InvalidR(1))));
    }

    #[test]
    fn parts_certificates() {
        let k4 = Graph::complete(4);
        let cert = krfree_from_parts(&k4, &[0, 0, 1, 1], 3).unwrap();
        assert_eq!(cert.value, 4);
        assert!(cert.verify(&k4));
        match krfree_from_parts(&Graph::complete(5), &[0, 0, 1, 2, 3], 4) {
            Err(SolverError::SurvivingClique { r: 4, witness }) => assert_eq!(witness.len(), 4),
            other => panic!("expected a surviving clique, got {other:?}"),
        }
        let c5 = Graph::cycle(5);
        assert_eq!(krfree_from_parts(&c5, &[0, 1, 2, 3, 4], 3).unwrap().value, 5);
        let t = make_turan(7, 3).unwrap();
        assert_eq!(krfree_from_parts(&t.graph, &t.part_of, 4).unwrap().value, 16);
    }

    #[test]
    fn g4_parts_without_theta() {
        let g = make_g4(&BlowupSpec::new([1, 1, 1, 1, 1], Fraction::new(0, 1)), 2).unwrap();
        let cert = krfree_from_parts(&g.graph, &g.part_of, 4).unwrap();
        assert_eq!(cert.value, g.graph.edge_count());
    }
}
