//! Brute-force oracles and random instances shared by the integration tests.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use turangap_core::Graph;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// G(n, p) with `p` in percent.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, percent: u32) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_range(0..100) < percent {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// Graph on `n` vertices from a bit per pair, in `(0,1), (0,2), ..` order.
pub fn graph_from_bits(n: usize, bits: &[bool]) -> Graph {
    let mut edges = Vec::new();
    let mut i = 0;
    for u in 0..n {
        for v in u + 1..n {
            if bits.get(i).copied().unwrap_or(false) {
                edges.push((u, v));
            }
            i += 1;
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

fn adjacency(g: &Graph) -> Vec<Vec<bool>> {
    (0..g.n()).map(|u| (0..g.n()).map(|v| g.has_edge(u, v)).collect()).collect()
}

/// Max over all `k^n` labellings of the number of bichromatic edges.
pub fn brute_kcut(g: &Graph, k: usize) -> usize {
    let n = g.n();
    let edges = g.edges();
    let total = k.pow(n as u32);
    let mut label = vec![0usize; n];
    let mut best = 0;
    for code in 0..total {
        let mut c = code;
        for l in label.iter_mut() {
            *l = c % k;
            c /= k;
        }
        let val = edges.iter().filter(|&&(u, v)| label[u] != label[v]).count();
        best = best.max(val);
    }
    best
}

/// Every `r`-subset of vertices that is a clique, by plain subset enumeration.
pub fn brute_cliques(g: &Graph, r: usize) -> Vec<Vec<usize>> {
    let n = g.n();
    let adj = adjacency(g);
    let mut out = Vec::new();
    if r > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..r).collect();
    loop {
        let ok = (0..r).all(|a| (a + 1..r).all(|b| adj[idx[a]][idx[b]]));
        if ok {
            out.push(idx.clone());
        }
        // next combination
        let mut i = r;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] < n - r + i {
                idx[i] += 1;
                for j in i + 1..r {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Largest edge subset containing no `K_r`, over all `2^m` subsets.
pub fn brute_krfree(g: &Graph, r: usize) -> usize {
    let edges = g.edges();
    let m = edges.len();
    assert!(m <= 24, "too many edges for enumeration");
    let index = |u: usize, v: usize| edges.iter().position(|&e| e == (u.min(v), u.max(v))).unwrap();
    let masks: Vec<u32> = brute_cliques(g, r)
        .iter()
        .map(|c| {
            let mut mask = 0u32;
            for a in 0..c.len() {
                for b in a + 1..c.len() {
                    mask |= 1 << index(c[a], c[b]);
                }
            }
            mask
        })
        .collect();
    let mut best = 0;
    for subset in 0u32..(1u32 << m) {
        let size = subset.count_ones() as usize;
        if size > best && masks.iter().all(|&c| subset & c != c) {
            best = size;
        }
    }
    best
}

/// Whether some map `V(g) → V(h)` preserves edges, over all `|h|^|g|` maps.
pub fn brute_hom_exists(g: &Graph, h: &Graph) -> bool {
    let (n, t) = (g.n(), h.n());
    if n == 0 {
        return true;
    }
    if t == 0 {
        return false;
    }
    let edges = g.edges();
    let hadj = adjacency(h);
    let total = t.pow(n as u32);
    let mut map = vec![0usize; n];
    for code in 0..total {
        let mut c = code;
        for m in map.iter_mut() {
            *m = c % t;
            c /= t;
        }
        if edges.iter().all(|&(u, v)| hadj[map[u]][map[v]]) {
            return true;
        }
    }
    false
}

/// Edge-by-edge check of a vertex map, written independently of the library's.
pub fn preserves_edges(g: &Graph, h: &Graph, map: &[usize]) -> bool {
    map.len() == g.n()
        && map.iter().all(|&x| x < h.n())
        && g.edges().iter().all(|&(u, v)| h.has_edge(map[u], map[v]))
}

/// Number of edges of a `k`-partite graph on `n` vertices with balanced parts, summed pairwise.
pub fn balanced_multipartite_edges(n: usize, k: usize) -> usize {
    let sizes: Vec<usize> = (0..k).map(|i| n / k + usize::from(i < n % k)).collect();
    let mut total = 0;
    for a in 0..k {
        for b in a + 1..k {
            total += sizes[a] * sizes[b];
        }
    }
    total
}

/// Graphs on `1..=max_n` vertices with every edge pattern equally likely.
pub fn arb_graph(max_n: usize) -> impl proptest::strategy::Strategy<Value = Graph> {
    use proptest::prelude::*;
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| graph_from_bits(n, &bits))
    })
}
