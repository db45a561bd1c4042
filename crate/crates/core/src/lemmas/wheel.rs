//! Weighted wheels: weights on `F_d + K_1` (apex `3d-1`) with every weighted degree
//! `g_i = Σ_{j~i} x_j` at least `gamma`, and the largest edge weight `Σ_{ij} x_i x_j`
//! such weights can carry.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::lp::{self, Constraint, LpOutcome, Sense};
use crate::constructions::make_f_plus_k;
use crate::graph::Graph;
use crate::rational::{big_to_f64, q};

const FEAS_TOL: f64 = 1e-12;
const ENUMERATION_CAP: u64 = 100_000;
const ASCENT_STEPS: usize = 400;
const VERTEX_STARTS: usize = 32;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum WheelError {
    #[error("d = {0} outside 2..=4")]
    DOutOfRange(usize),
    #[error("expected {expected} weights, got {got}")]
    Length { got: usize, expected: usize },
    #[error("weights must be nonnegative and sum to 1")]
    NotOnSimplex,
}

/// `F_d + K_1`, the apex being vertex `3d-1`.
pub fn wheel_graph(d: usize) -> Graph {
    make_f_plus_k(d, 1).expect("d >= 1")
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct WeightedWheelInstance {
    pub d: usize,
    pub gamma: f64,
    pub x: Vec<f64>,
}

impl WeightedWheelInstance {
    pub fn new(d: usize, gamma: f64, x: Vec<f64>) -> Result<Self, WheelError> {
        if d < 1 {
            return Err(WheelError::DOutOfRange(d));
        }
        if x.len() != 3 * d {
            return Err(WheelError::Length {
                got: x.len(),
                expected: 3 * d,
            });
        }
        let sum: f64 = x.iter().sum();
        if x.iter().any(|&v| v.is_nan() || v < 0.0) || (sum - 1.0).abs() > FEAS_TOL {
            return Err(WheelError::NotOnSimplex);
        }
        Ok(Self { d, gamma, x })
    }

    /// Weighted degrees `g_i`.
    pub fn g(&self) -> Vec<f64> {
        weighted_degrees(&wheel_graph(self.d), &self.x)
    }

    /// Every `g_i >= gamma - tol`.
    pub fn meets_gamma(&self, tol: f64) -> bool {
        self.g().iter().all(|&gi| gi >= self.gamma - tol)
    }
}

fn weighted_degrees(g: &Graph, x: &[f64]) -> Vec<f64> {
    (0..g.n()).map(|i| g.neighbors(i).map(|j| x[j]).sum()).collect()
}

fn energy(g: &Graph, x: &[f64]) -> f64 {
    g.edges().iter().map(|&(i, j)| x[i] * x[j]).sum()
}

/// `Σ_{ij ∈ E} x_i x_j`, which equals `½ Σ x_i g_i`.
pub fn wheel_energy(inst: &WeightedWheelInstance) -> f64 {
    energy(&wheel_graph(inst.d), &inst.x)
}

pub fn wheel_energy_exact(d: usize, x: &[BigRational]) -> BigRational {
    wheel_graph(d)
        .edges()
        .iter()
        .fold(BigRational::zero(), |acc, &(i, j)| acc + &x[i] * &x[j])
}

/// Largest `gamma` admitting feasible weights: `(3d-1)/(5d-2)`.
pub fn feasibility_threshold(d: usize) -> BigRational {
    q(3 * d as i64 - 1, 5 * d as i64 - 2)
}

/// `(125d²γ² − 150d²γ + 45d² − 175dγ² + 200dγ − 57d + 50γ² − 50γ + 14) / 6`.
pub fn b_general(d: usize, gamma: &BigRational) -> BigRational {
    let d = BigRational::from_integer((d as i64).into());
    let g = gamma;
    let g2 = g * g;
    let d2 = &d * &d;
    let i = |v: i64| BigRational::from_integer(v.into());
    let sum = i(125) * &d2 * &g2 - i(150) * &d2 * g + i(45) * &d2 - i(175) * &d * &g2
        + i(200) * &d * g
        - i(57) * &d
        + i(50) * &g2
        - i(50) * g
        + i(14);
    sum / i(6)
}

/// `12γ² − 15γ + 5`, the sharper bound for `d = 2`.
pub fn b2(gamma: &BigRational) -> BigRational {
    let i = |v: i64| BigRational::from_integer(v.into());
    i(12) * gamma * gamma - i(15) * gamma + i(5)
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct WheelMax {
    pub d: usize,
    /// Exact `gamma` as `"p/q"`.
    pub gamma: String,
    pub feasible: bool,
    /// Best energy over feasible points found; `None` when infeasible.
    pub e_hat: Option<f64>,
    pub argmax: Option<WeightedWheelInstance>,
    /// Energy of the exact basic feasible point, as `"p/q"`.
    pub exact_energy: Option<String>,
    pub vertices: usize,
    pub ascents: usize,
}

fn lp_constraints<T: lp::Scalar>(g: &Graph, gamma: T) -> Vec<Constraint<T>> {
    let m = g.n();
    let mut cons = vec![Constraint {
        coeffs: vec![T::one(); m],
        sense: Sense::Eq,
        rhs: T::one(),
    }];
    for i in 0..m {
        let mut row = vec![T::zero(); m];
        for j in g.neighbors(i) {
            row[j] = T::one();
        }
        cons.push(Constraint {
            coeffs: row,
            sense: Sense::Ge,
            rhs: gamma.clone(),
        });
    }
    cons
}

/// Searches for the largest energy of feasible weights at `gamma`.
///
/// Feasibility is decided in exact arithmetic. The value `e_hat` is the best energy of
/// points that satisfy the constraints to within `1e-12`, found by enumerating the
/// polytope's vertices (when there are few enough candidate bases) and by conditional
/// gradient ascent from those vertices and from random ones; it never exceeds the true
/// maximum by more than rounding.
pub fn wheel_max(
    d: usize,
    gamma: &BigRational,
    restarts: usize,
    seed: u64,
    tol: f64,
) -> Result<WheelMax, WheelError> {
    if !(2..=4).contains(&d) {
        return Err(WheelError::DOutOfRange(d));
    }
    let g = wheel_graph(d);
    let m = g.n();
    let exact_cons = lp_constraints(&g, gamma.clone());
    let Some(x0) = lp::feasible_point(m, &exact_cons) else {
        return Ok(WheelMax {
            d,
            gamma: gamma.to_string(),
            feasible: false,
            e_hat: None,
            argmax: None,
            exact_energy: None,
            vertices: 0,
            ascents: 0,
        });
    };
    let e0 = wheel_energy_exact(d, &x0);
    let gamma_f = big_to_f64(gamma);
    let mut search = Search {
        g: &g,
        gamma: gamma_f,
        cons: lp_constraints(&g, gamma_f),
        best: big_to_f64(&e0),
        best_x: x0.iter().map(big_to_f64).collect(),
        tol: tol.max(1e-15),
        ascents: 0,
    };

    let mut pool = search.enumerate_vertices();
    let vertices = pool.len();
    pool.sort_by(|a, b| energy(&g, b).total_cmp(&energy(&g, a)));
    for x in pool.iter().take(VERTEX_STARTS) {
        search.ascend(x.clone());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut random_vertices: Vec<Vec<f64>> = Vec::new();
    for _ in 0..restarts {
        let c: Vec<f64> = (0..m).map(|_| rng.random_range(-1.0..1.0)).collect();
        let Some(v) = search.lp_vertex(&c) else { continue };
        search.ascend(v.clone());
        // a chord to an earlier vertex gives a start inside the polytope
        if !random_vertices.is_empty() {
            let other = &random_vertices[rng.random_range(0..random_vertices.len())];
            let lambda: f64 = rng.random_range(0.0..1.0);
            let mix = v.iter().zip(other).map(|(a, b)| lambda * a + (1.0 - lambda) * b).collect();
            search.ascend(mix);
        }
        random_vertices.push(v);
    }

    let argmax = WeightedWheelInstance {
        d,
        gamma: gamma_f,
        x: search.best_x.clone(),
    };
    Ok(WheelMax {
        d,
        gamma: gamma.to_string(),
        feasible: true,
        e_hat: Some(search.best),
        argmax: Some(argmax),
        exact_energy: Some(e0.to_string()),
        vertices,
        ascents: search.ascents,
    })
}

struct Search<'a> {
    g: &'a Graph,
    gamma: f64,
    cons: Vec<Constraint<f64>>,
    best: f64,
    best_x: Vec<f64>,
    tol: f64,
    ascents: usize,
}

impl Search<'_> {
    fn feasible(&self, x: &[f64]) -> bool {
        let sum: f64 = x.iter().sum();
        x.iter().all(|&v| v >= -FEAS_TOL)
            && (sum - 1.0).abs() <= FEAS_TOL
            && weighted_degrees(self.g, x)
                .iter()
                .all(|&gi| gi >= self.gamma - FEAS_TOL)
    }

    fn offer(&mut self, x: &[f64]) {
        if !self.feasible(x) {
            return;
        }
        let e = energy(self.g, x);
        if e > self.best {
            self.best = e;
            self.best_x = x.to_vec();
        }
    }

    fn lp_vertex(&self, c: &[f64]) -> Option<Vec<f64>> {
        match lp::maximize(c, &self.cons) {
            LpOutcome::Optimal { x, .. } => Some(x),
            _ => None,
        }
    }

    /// Conditional gradient ascent with exact line search on the quadratic.
    fn ascend(&mut self, mut x: Vec<f64>) {
        self.ascents += 1;
        self.offer(&x);
        for _ in 0..ASCENT_STEPS {
            let grad = weighted_degrees(self.g, &x);
            let Some(s) = self.lp_vertex(&grad) else { break };
            let dir: Vec<f64> = s.iter().zip(&x).map(|(a, b)| a - b).collect();
            let slope: f64 = grad.iter().zip(&dir).map(|(a, b)| a * b).sum();
            if slope <= self.tol {
                break;
            }
            let curve = energy(self.g, &dir);
            let tau = if curve < 0.0 {
                (slope / (-2.0 * curve)).min(1.0)
            } else {
                1.0
            };
            for (xi, di) in x.iter_mut().zip(&dir) {
                *xi += tau * di;
            }
            self.offer(&x);
        }
    }

    /// All vertices of the polytope, by solving every choice of `m-1` tight
    /// inequalities together with `Σ x = 1`; skipped when there are too many choices.
    fn enumerate_vertices(&mut self) -> Vec<Vec<f64>> {
        let m = self.g.n();
        let k = m - 1;
        if binomial(2 * m as u64, k as u64) > ENUMERATION_CAP {
            return Vec::new();
        }
        let rows: Vec<(Vec<f64>, f64)> = (0..m)
            .map(|i| {
                let mut r = vec![0.0; m];
                r[i] = 1.0;
                (r, 0.0)
            })
            .chain((0..m).map(|i| {
                let mut r = vec![0.0; m];
                for j in self.g.neighbors(i) {
                    r[j] = 1.0;
                }
                (r, self.gamma)
            }))
            .collect();
        let mut found: Vec<Vec<f64>> = Vec::new();
        let mut combo: Vec<usize> = (0..k).collect();
        loop {
            let mut a: Vec<Vec<f64>> = combo.iter().map(|&c| rows[c].0.clone()).collect();
            let mut b: Vec<f64> = combo.iter().map(|&c| rows[c].1).collect();
            a.push(vec![1.0; m]);
            b.push(1.0);
            if let Some(x) = solve(a, b) {
                if self.feasible(&x)
                    && !found
                        .iter()
                        .any(|y| y.iter().zip(&x).all(|(p, q)| (p - q).abs() < 1e-10))
                {
                    self.offer(&x);
                    found.push(x);
                }
            }
            if !next_combination(&mut combo, 2 * m) {
                break;
            }
        }
        found
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Gaussian elimination with partial pivoting; `None` when (numerically) singular.
fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let p = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[p][col].abs() < 1e-12 {
            return None;
        }
        a.swap(col, p);
        b.swap(col, p);
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            if f != 0.0 {
                let (top, bottom) = a.split_at_mut(r);
                for (x, y) in bottom[0][col..].iter_mut().zip(&top[col][col..]) {
                    *x -= f * y;
                }
                b[r] -= f * b[col];
            }
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let s: f64 = (r + 1..n).map(|c| a[r][c] * x[c]).sum();
        x[r] = (b[r] - s) / a[r][r];
    }
    Some(x)
}

/// `gamma` is at most the feasibility threshold, exactly.
pub fn gamma_feasible(d: usize, gamma: &BigRational) -> bool {
    gamma <= &feasibility_threshold(d)
}

/// Exact energy of the weights forced at the threshold: `5γ−3` on the rim, `1−γ` on the apex.
pub fn forced_configuration(d: usize) -> Vec<BigRational> {
    let gamma = feasibility_threshold(d);
    let rim = &gamma * BigRational::from_integer(5.into()) - BigRational::from_integer(3.into());
    let mut x = vec![rim; 3 * d - 1];
    x.push(BigRational::one() - &gamma);
    debug_assert!(x.iter().all(|v| !v.is_negative()));
    x
}
