//! Graph homomorphisms into small targets, and the collapse maps that shrink a
//! non-surjective map into `F_d + K_1` down to `F_{d-1} + K_1`.

use alloc::vec;
use alloc::vec::Vec;

use crate::constructions::{make_f, make_f_plus_k};
use crate::graph::Graph;
use crate::rational::Fraction;

/// Largest target the search accepts (domains are `u64` masks).
pub const MAX_TARGET: usize = 64;

/// Largest source the search accepts for a target of `target_n` vertices.
pub fn hom_source_cap(target_n: usize) -> usize {
    if target_n <= 12 {
        40
    } else {
        24
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HomError {
    #[error("homomorphism search refuses a source of {source_n} vertices into a target of {target_n}: cap is {cap}")]
    TooLarge {
        source_n: usize,
        target_n: usize,
        cap: usize,
    },
    #[error("d must be at least {min}, got {d}")]
    InvalidD { d: usize, min: usize },
    #[error("vertex {missing} is not a vertex of F_{d} + K_1")]
    MissingOutOfRange { d: usize, missing: usize },
    #[error("collapse map for d = {d}, missing {missing} sends edge {edge:?} to a non-edge")]
    CollapseFailed {
        d: usize,
        missing: usize,
        edge: (usize, usize),
    },
    #[error("map does not avoid any vertex of F_{d} + K_1")]
    Surjective { d: usize },
    #[error("map is not a homomorphism into F_{d} + K_1")]
    NotAHomomorphism { d: usize },
}

/// A vertex map from a source graph to a target graph.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct HomomorphismMap {
    pub source_n: usize,
    pub target_n: usize,
    pub map: Vec<usize>,
}

impl HomomorphismMap {
    /// `uv ∈ E(g)` implies `map(u) map(v) ∈ E(h)`.
    pub fn is_edge_preserving(&self, g: &Graph, h: &Graph) -> bool {
        g.n() == self.source_n
            && h.n() == self.target_n
            && self.map.len() == self.source_n
            && self.map.iter().all(|&t| t < self.target_n)
            && g.edges()
                .into_iter()
                .all(|(u, v)| h.has_edge(self.map[u], self.map[v]))
    }

    /// Every target vertex has a preimage.
    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target_n];
        for &t in &self.map {
            if t < self.target_n {
                hit[t] = true;
            }
        }
        hit.into_iter().all(|b| b)
    }

    /// Target vertices without a preimage, ascending.
    pub fn missed(&self) -> Vec<usize> {
        let mut hit = vec![false; self.target_n];
        for &t in &self.map {
            hit[t] = true;
        }
        (0..self.target_n).filter(|&t| !hit[t]).collect()
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &HomomorphismMap) -> HomomorphismMap {
        HomomorphismMap {
            source_n: self.source_n,
            target_n: other.target_n,
            map: self.map.iter().map(|&t| other.map[t]).collect(),
        }
    }
}

/// Finds a homomorphism `g → h` by backtracking with forward checking.
///
/// Source vertices are assigned by descending degree (then label), target values
/// ascending, so the result is the first map in that search order.
pub fn find_homomorphism(g: &Graph, h: &Graph) -> Result<Option<HomomorphismMap>, HomError> {
    let (n, m) = (g.n(), h.n());
    let cap = if m > MAX_TARGET { 0 } else { hom_source_cap(m) };
    if m > MAX_TARGET || n > cap {
        return Err(HomError::TooLarge {
            source_n: n,
            target_n: m,
            cap,
        });
    }
    if n == 0 {
        return Ok(Some(HomomorphismMap {
            source_n: 0,
            target_n: m,
            map: Vec::new(),
        }));
    }
    if m == 0 {
        return Ok(None);
    }
    let target_adj: Vec<u64> = (0..m)
        .map(|t| h.neighbors(t).fold(0u64, |acc, u| acc | 1 << u))
        .collect();
    let full: u64 = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (core::cmp::Reverse(g.degree(v)), v));
    let neighbors: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v).collect()).collect();
    let mut search = HomSearch {
        order,
        neighbors,
        target_adj,
        domains: vec![full; n],
        assigned: vec![usize::MAX; n],
    };
    if search.run(0) {
        let map = HomomorphismMap {
            source_n: n,
            target_n: m,
            map: search.assigned,
        };
        debug_assert!(map.is_edge_preserving(g, h));
        Ok(Some(map))
    } else {
        Ok(None)
    }
}

struct HomSearch {
    order: Vec<usize>,
    neighbors: Vec<Vec<usize>>,
    target_adj: Vec<u64>,
    domains: Vec<u64>,
    assigned: Vec<usize>,
}

impl HomSearch {
    fn run(&mut self, depth: usize) -> bool {
        let Some(&v) = self.order.get(depth) else {
            return true;
        };
        let mut values = self.domains[v];
        while values != 0 {
            let t = values.trailing_zeros() as usize;
            values &= values - 1;
            self.assigned[v] = t;
            let mut saved: Vec<(usize, u64)> = Vec::new();
            let mut wiped = false;
            for &w in &self.neighbors[v] {
                if self.assigned[w] != usize::MAX {
                    continue;
                }
                let narrowed = self.domains[w] & self.target_adj[t];
                if narrowed != self.domains[w] {
                    saved.push((w, self.domains[w]));
                    self.domains[w] = narrowed;
                }
                if narrowed == 0 {
                    wiped = true;
                    break;
                }
            }
            if !wiped && self.run(depth + 1) {
                return true;
            }
            for (w, d) in saved.into_iter().rev() {
                self.domains[w] = d;
            }
            self.assigned[v] = usize::MAX;
        }
        false
    }
}

/// `χ(g) ≤ k`, decided as a homomorphism into `K_k`.
pub fn chromatic_at_most(g: &Graph, k: usize) -> Result<bool, HomError> {
    Ok(find_homomorphism(g, &Graph::complete(k))?.is_some())
}

/// `F_d + K_1`, apex labelled `3d - 1`.
pub fn wheel(d: usize) -> Result<Graph, HomError> {
    make_f_plus_k(d, 1).map_err(|_| HomError::InvalidD { d, min: 1 })
}

/// The collapse of `F_d + K_1` minus `missing` onto `F_{d-1} + K_1`.
///
/// The source keeps the labels of `F_d + K_1` (`missing` is mapped to the target
/// apex so the vector stays total, but it is not a source vertex). A missing rim
/// vertex is first rotated to `3d - 2`; then `j ↦ j` for `j ≤ 3d - 5`,
/// `3d - 4 ↦ 0`, `3d - 3 ↦ 1`, and the apex goes to the target apex. With the apex
/// missing, `3d - 2` goes to the target apex instead. The result is checked edge by edge.
pub fn collapse_map(d: usize, missing: usize) -> Result<HomomorphismMap, HomError> {
    if d < 2 {
        return Err(HomError::InvalidD { d, min: 2 });
    }
    let rim = 3 * d - 1;
    let apex = rim;
    if missing > apex {
        return Err(HomError::MissingOutOfRange { d, missing });
    }
    let target_apex = 3 * (d - 1) - 1;
    let base = |j: usize| -> usize {
        match j {
            _ if j + 5 <= 3 * d => j,
            _ if j + 4 == 3 * d => 0,
            _ if j + 3 == 3 * d => 1,
            _ => target_apex,
        }
    };
    let map: Vec<usize> = if missing == apex {
        (0..=apex).map(base).collect()
    } else {
        // rotation of Z_{3d-1} sending `missing` to 3d - 2
        let shift = rim - 1 + rim - missing;
        (0..=apex)
            .map(|v| if v == apex { target_apex } else { base((v + shift) % rim) })
            .collect()
    };
    let source = wheel(d)?;
    let target = wheel(d - 1)?;
    for (u, v) in source.edges() {
        if u == missing || v == missing {
            continue;
        }
        if !target.has_edge(map[u], map[v]) {
            return Err(HomError::CollapseFailed {
                d,
                missing,
                edge: (u, v),
            });
        }
    }
    Ok(HomomorphismMap {
        source_n: 3 * d,
        target_n: 3 * d - 3,
        map,
    })
}

/// Turns a homomorphism `g → F_d + K_1` that misses a vertex into one `g → F_{d-1} + K_1`.
pub fn collapse_homomorphism(
    g: &Graph,
    hom: &HomomorphismMap,
    d: usize,
) -> Result<HomomorphismMap, HomError> {
    let w = wheel(d)?;
    if !hom.is_edge_preserving(g, &w) {
        return Err(HomError::NotAHomomorphism { d });
    }
    let missing = *hom.missed().first().ok_or(HomError::Surjective { d })?;
    let composed = hom.then(&collapse_map(d, missing)?);
    let target = wheel(d - 1)?;
    if !composed.is_edge_preserving(g, &target) {
        return Err(HomError::NotAHomomorphism { d: d - 1 });
    }
    Ok(composed)
}

/// Smallest `i ≤ d_max` with `g → F_i + K_1`, together with a map.
pub fn min_wheel_type(g: &Graph, d_max: usize) -> Result<Option<(usize, HomomorphismMap)>, HomError> {
    for i in 1..=d_max {
        if let Some(map) = find_homomorphism(g, &wheel(i)?)? {
            return Ok(Some((i, map)));
        }
    }
    Ok(None)
}

/// Outcome of testing the minimum-degree condition for mapping into `F_d + K_{r-2}`.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct HypothesisReport {
    pub r: usize,
    pub d: usize,
    pub n: usize,
    /// `G` contains no `K_{r+1}`.
    pub krfree: bool,
    pub delta: usize,
    /// The condition is `δ > threshold · n`.
    #[cfg_attr(feature = "serde", serde(with = "crate::rational::serde_fraction"))]
    pub threshold: Fraction,
    pub hypothesis_met: bool,
    /// Searched only when the hypothesis holds.
    pub map_found: Option<bool>,
    pub map: Option<Vec<usize>>,
}

impl HypothesisReport {
    /// The hypothesis holds but no homomorphism was found.
    pub fn is_violation(&self) -> bool {
        self.hypothesis_met && self.map_found == Some(false)
    }
}

/// `1 - (2d-1) / ((2d-1) r - d + 1)`.
pub fn degree_threshold(r: usize, d: usize) -> Fraction {
    let a = (2 * d - 1) as i64;
    let b = a * r as i64 - d as i64 + 1;
    Fraction::from_integer(1) - Fraction::new(a, b)
}

/// Checks `K_{r+1}`-freeness and `δ(G) > threshold · n`, and if both hold searches
/// for a homomorphism into `F_d + K_{r-2}`.
pub fn check_degree_hypothesis(g: &Graph, r: usize, d: usize) -> Result<HypothesisReport, HomError> {
    if !(1..=9).contains(&d) {
        return Err(HomError::InvalidD { d, min: 1 });
    }
    let n = g.n();
    let threshold = degree_threshold(r.max(2), d);
    let krfree = !g.clique_exists(r + 1);
    let delta = g.min_degree().unwrap_or(0);
    let lhs = delta as i128 * *threshold.denom() as i128;
    let rhs = *threshold.numer() as i128 * n as i128;
    let hypothesis_met = krfree && n > 0 && lhs > rhs;
    let (map_found, map) = if hypothesis_met {
        let target = if r >= 2 {
            make_f_plus_k(d, r - 2)
        } else {
            make_f(d)
        }
        .map_err(|_| HomError::InvalidD { d, min: 1 })?;
        let found = find_homomorphism(g, &target)?;
        (Some(found.is_some()), found.map(|m| m.map))
    } else {
        (None, None)
    };
    Ok(HypothesisReport {
        r,
        d,
        n,
        krfree,
        delta,
        threshold,
        hypothesis_met,
        map_found,
        map,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{cycle_blowup, make_turan, petersen};

    #[test]
    fn small_targets() {
        let c5 = Graph::cycle(5);
        let id = find_homomorphism(&c5, &c5).unwrap().unwrap();
        assert!(id.is_edge_preserving(&c5, &c5));
        assert!(id.is_surjective());
        let c7 = Graph::cycle(7);
        let m = find_homomorphism(&c7, &c5).unwrap().unwrap();
        assert!(m.is_edge_preserving(&c7, &c5));
        assert!(find_homomorphism(&Graph::complete(3), &c5).unwrap().is_none());
        let k1 = find_homomorphism(&Graph::empty(4), &Graph::complete(1)).unwrap().unwrap();
        assert!(k1.is_surjective());
        assert!(find_homomorphism(&Graph::empty(41), &c5).is_err());
    }

    #[test]
    fn chromatic() {
        let c5 = Graph::cycle(5);
        assert!(!chromatic_at_most(&c5, 2).unwrap());
        assert!(chromatic_at_most(&c5, 3).unwrap());
        assert!(chromatic_at_most(&make_turan(7, 3).unwrap().graph, 3).unwrap());
        assert!(chromatic_at_most(&Graph::empty(0), 0).unwrap());
        assert!(!chromatic_at_most(&Graph::empty(1), 0).unwrap());
    }

    #[test]
    fn collapse_examples() {
        let m = collapse_map(2, 4).unwrap();
        assert_eq!(m.target_n, 3);
        assert_eq!(&m.map[..4], &[0, 1, 0, 1]);
        assert_eq!(m.map[5], 2);
        for missing in 0..9 {
            assert!(collapse_map(3, missing).is_ok(), "missing {missing}");
        }
        let apex_case = collapse_map(3, 8).unwrap();
        assert_eq!(apex_case.map[7], 5);
        assert!(collapse_map(1, 0).is_err());
        assert!(collapse_map(3, 9).is_err());
    }

    #[test]
    fn collapse_composes() {
        // C_5 minus nothing, mapped into F_3 + K_1 avoiding the apex
        let c5 = Graph::cycle(5);
        let w3 = wheel(3).unwrap();
        let hom = HomomorphismMap {
            source_n: 5,
            target_n: 9,
            map: alloc::vec![0, 1, 2, 3, 7],
        };
        assert!(hom.is_edge_preserving(&c5, &w3));
        let down = collapse_homomorphism(&c5, &hom, 3).unwrap();
        assert!(down.is_edge_preserving(&c5, &wheel(2).unwrap()));
    }

    #[test]
    fn wheel_types() {
        assert_eq!(min_wheel_type(&Graph::complete(3), 4).unwrap().unwrap().0, 1);
        assert_eq!(min_wheel_type(&wheel(2).unwrap(), 4).unwrap().unwrap().0, 2);
        assert_eq!(min_wheel_type(&Graph::complete(4), 4).unwrap(), None);
    }

    #[test]
    fn degree_hypothesis() {
        assert_eq!(degree_threshold(2, 2), Fraction::new(2, 5));
        assert_eq!(degree_threshold(3, 2), Fraction::new(5, 8));
        assert_eq!(degree_threshold(3, 3), Fraction::new(8, 13));
        assert_eq!(degree_threshold(3, 4), Fraction::new(11, 18));

        let p = check_degree_hypothesis(&petersen(), 2, 2).unwrap();
        assert!(p.krfree && !p.hypothesis_met && p.map_found.is_none());

        for parts in [[3; 5], [4; 5], [5, 5, 5, 4, 4]] {
            let b = cycle_blowup(&parts).unwrap();
            let rep = check_degree_hypothesis(&b.graph, 2, 2).unwrap();
            assert!(rep.krfree);
            assert!(!rep.hypothesis_met, "{parts:?}");
        }
        let k33 = Graph::from_fn(6, |u, v| (u < 3) != (v < 3)).unwrap();
        let rep = check_degree_hypothesis(&k33, 2, 2).unwrap();
        assert!(rep.hypothesis_met);
        assert_eq!(rep.map_found, Some(true));
        assert!(!rep.is_violation());
    }
}
