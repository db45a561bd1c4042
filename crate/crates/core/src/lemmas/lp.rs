//! Dense two-phase simplex with Bland's rule, generic over the number type so the
//! same code runs in `f64` and in exact rationals.

use alloc::vec;
use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Field operations plus a sign test (with a tolerance for floating point).
pub trait Scalar: Clone + core::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    fn is_positive(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn is_zero(&self) -> bool {
        !self.is_positive() && !self.is_negative()
    }
    fn neg(&self) -> Self {
        Self::zero().sub(self)
    }
}

const F64_EPS: f64 = 1e-11;

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn is_positive(&self) -> bool {
        *self > F64_EPS
    }
    fn is_negative(&self) -> bool {
        *self < -F64_EPS
    }
}

impl Scalar for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn is_positive(&self) -> bool {
        Signed::is_positive(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Le,
    Eq,
    Ge,
}

/// `coeffs · x (sense) rhs`.
#[derive(Debug, Clone)]
pub struct Constraint<T> {
    pub coeffs: Vec<T>,
    pub sense: Sense,
    pub rhs: T,
}

#[derive(Debug, Clone)]
pub enum LpOutcome<T> {
    Optimal { x: Vec<T>, value: T },
    Infeasible,
    Unbounded,
}

/// Maximizes `c · x` over `x >= 0` and `constraints`.
pub fn maximize<T: Scalar>(c: &[T], constraints: &[Constraint<T>]) -> LpOutcome<T> {
    let n = c.len();
    let mut tab = Tableau::build(n, constraints);
    if !tab.phase_one() {
        return LpOutcome::Infeasible;
    }
    if !tab.phase_two(c) {
        return LpOutcome::Unbounded;
    }
    let x = tab.solution(n);
    let value = x
        .iter()
        .zip(c)
        .fold(T::zero(), |acc, (xi, ci)| acc.add(&xi.mul(ci)));
    LpOutcome::Optimal { x, value }
}

/// A basic feasible point of `constraints` over `x >= 0`, if any exists.
pub fn feasible_point<T: Scalar>(n: usize, constraints: &[Constraint<T>]) -> Option<Vec<T>> {
    let mut tab = Tableau::build(n, constraints);
    tab.phase_one().then(|| tab.solution(n))
}

struct Tableau<T> {
    /// `rows[i]` has `cols` coefficients followed by the right-hand side.
    rows: Vec<Vec<T>>,
    basis: Vec<usize>,
    cols: usize,
    artificial_from: usize,
}

impl<T: Scalar> Tableau<T> {
    fn build(n: usize, constraints: &[Constraint<T>]) -> Self {
        let m = constraints.len();
        // normalize to nonnegative right-hand sides
        let normalized: Vec<(Vec<T>, Sense, T)> = constraints
            .iter()
            .map(|con| {
                let mut coeffs = con.coeffs.clone();
                coeffs.resize(n, T::zero());
                if con.rhs.is_negative() {
                    let flipped = match con.sense {
                        Sense::Le => Sense::Ge,
                        Sense::Ge => Sense::Le,
                        Sense::Eq => Sense::Eq,
                    };
                    (coeffs.iter().map(T::neg).collect(), flipped, con.rhs.neg())
                } else {
                    (coeffs, con.sense, con.rhs.clone())
                }
            })
            .collect();
        let slacks = normalized.iter().filter(|c| c.1 != Sense::Eq).count();
        let artificials = normalized.iter().filter(|c| c.1 != Sense::Le).count();
        let artificial_from = n + slacks;
        let cols = artificial_from + artificials;
        let mut rows = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let (mut s, mut a) = (n, artificial_from);
        for (coeffs, sense, rhs) in normalized {
            let mut row = vec![T::zero(); cols + 1];
            row[..n].clone_from_slice(&coeffs);
            match sense {
                Sense::Le => {
                    row[s] = T::one();
                    basis.push(s);
                    s += 1;
                }
                Sense::Ge => {
                    row[s] = T::one().neg();
                    s += 1;
                    row[a] = T::one();
                    basis.push(a);
                    a += 1;
                }
                Sense::Eq => {
                    row[a] = T::one();
                    basis.push(a);
                    a += 1;
                }
            }
            row[cols] = rhs;
            rows.push(row);
        }
        Self {
            rows,
            basis,
            cols,
            artificial_from,
        }
    }

    fn pivot(&mut self, r: usize, j: usize) {
        let p = self.rows[r][j].clone();
        for v in self.rows[r].iter_mut() {
            *v = v.div(&p);
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[j].is_zero() {
                continue;
            }
            let f = row[j].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                *v = v.sub(&f.mul(pv));
            }
        }
        self.basis[r] = j;
    }

    /// Runs simplex iterations maximizing `cost · x` over columns `< allowed`.
    /// Returns `false` when unbounded.
    fn optimize(&mut self, cost: &[T], allowed: usize) -> bool {
        loop {
            // reduced cost z_j - c_j
            let entering = (0..allowed).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let z = self
                    .rows
                    .iter()
                    .zip(&self.basis)
                    .fold(T::zero(), |acc, (row, &b)| acc.add(&cost[b].mul(&row[j])));
                z.sub(&cost[j]).is_negative()
            });
            let Some(j) = entering else {
                return true;
            };
            let mut leave: Option<(usize, T)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[j].is_positive() {
                    continue;
                }
                let ratio = row[self.cols].div(&row[j]);
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => {
                        let d = ratio.sub(lr);
                        d.is_negative() || d.is_zero() && self.basis[i] < self.basis[*li]
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((r, _)) = leave else {
                return false;
            };
            self.pivot(r, j);
        }
    }

    fn phase_one(&mut self) -> bool {
        let mut cost = vec![T::zero(); self.cols];
        for c in cost.iter_mut().skip(self.artificial_from) {
            *c = T::one().neg();
        }
        self.optimize(&cost, self.cols);
        let infeasibility = self
            .rows
            .iter()
            .zip(&self.basis)
            .filter(|(_, &b)| b >= self.artificial_from)
            .fold(T::zero(), |acc, (row, _)| acc.add(&row[self.cols]));
        if infeasibility.is_positive() {
            return false;
        }
        // drive zero-level artificials out of the basis, dropping redundant rows
        let mut i = 0;
        while i < self.rows.len() {
            if self.basis[i] >= self.artificial_from {
                match (0..self.artificial_from).find(|&j| !self.rows[i][j].is_zero()) {
                    Some(j) => self.pivot(i, j),
                    None => {
                        self.rows.remove(i);
                        self.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
        true
    }

    fn phase_two(&mut self, c: &[T]) -> bool {
        let mut cost = vec![T::zero(); self.cols];
        cost[..c.len()].clone_from_slice(c);
        self.optimize(&cost, self.artificial_from)
    }

    fn solution(&self, n: usize) -> Vec<T> {
        let mut x = vec![T::zero(); n];
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            if b < n {
                x[b] = row[self.cols].clone();
            }
        }
        x
    }
}
