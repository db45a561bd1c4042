//! Floating-point checks of the one-parameter family used to push `δ_4` below one:
//! `γ(t) = (6t − 2(2δ−1)²)/(9 + 9t − 12δ) − ε` on `t ∈ [δ/3, 1]`.

use alloc::format;
use alloc::vec::Vec;

use super::{Check, LemmaReport, Relation, Table};

#[derive(Debug, Clone, Copy, PartialEq, thiserror::Error)]
pub enum LllError {
    #[error("delta must lie in (1/2, 1), got {0}")]
    Delta(f64),
    #[error("epsilon must be nonnegative and small, got {0}")]
    Epsilon(f64),
    #[error("grid step must lie in (0, 0.01], got {0}")]
    Step(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LllParams {
    pub delta: f64,
    pub epsilon: f64,
}

impl Default for LllParams {
    fn default() -> Self {
        Self {
            delta: 0.9415,
            epsilon: 1e-6,
        }
    }
}

fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

impl LllParams {
    fn u(&self) -> f64 {
        1.0 - self.delta
    }

    pub fn t_min(&self) -> f64 {
        self.delta / 3.0
    }

    pub fn s(&self, t: f64) -> f64 {
        3.0 + 3.0 * t - 4.0 * self.delta
    }

    pub fn gamma(&self, t: f64) -> f64 {
        let a = 2.0 * self.delta - 1.0;
        (6.0 * t - 2.0 * a * a) / (9.0 + 9.0 * t - 12.0 * self.delta) - self.epsilon
    }

    /// Same quantity written through `s`: `2/3 − 8(1−δ)²/(3s) − ε`.
    pub fn gamma_via_s(&self, t: f64) -> f64 {
        let u = self.u();
        2.0 / 3.0 - 8.0 * u * u / (3.0 * self.s(t)) - self.epsilon
    }

    pub fn dgamma_dt(&self, t: f64) -> f64 {
        let s = self.s(t);
        8.0 * self.u() * self.u() / (s * s)
    }

    /// `((31−32δ)² + 15)/48`, where `s = 64(1−δ)²`.
    pub fn t_star(&self) -> f64 {
        let a = 31.0 - 32.0 * self.delta;
        (a * a + 15.0) / 48.0
    }

    pub fn g1(gamma: f64) -> f64 {
        (325.0 * gamma * gamma - 400.0 * gamma + 124.0) / 3.0
    }

    fn g1_prime(gamma: f64) -> f64 {
        (650.0 * gamma - 400.0) / 3.0
    }

    /// Closed form of `d²/dt² g1(γ(t))`.
    pub fn d2g1_dt2(&self, t: f64) -> f64 {
        let u2 = self.u() * self.u();
        let s = self.s(t);
        (8.0 / 3.0) * u2 / (s * s * s * s) * (15600.0 * u2 - 200.0 * s)
            + 10400.0 * u2 / (s * s * s) * self.epsilon
    }

    /// `(6t−3γ)(2−3γ) − (3γ−4δ+2)²`, evaluated in double-double arithmetic because
    /// the two products nearly cancel.
    pub fn quadratic_gap(&self, t: f64) -> f64 {
        let (t, d) = (Dd::from(t), Dd::from(self.delta));
        let a = Dd::from(2.0).mul(d).sub(Dd::from(1.0));
        let num = Dd::from(6.0).mul(t).sub(Dd::from(2.0).mul(a).mul(a));
        let den = Dd::from(9.0).add(Dd::from(9.0).mul(t)).sub(Dd::from(12.0).mul(d));
        let g = num.div(den).sub(Dd::from(self.epsilon));
        let three_g = Dd::from(3.0).mul(g);
        let b = three_g.sub(Dd::from(4.0).mul(d)).add(Dd::from(2.0));
        let left = Dd::from(6.0).mul(t).sub(three_g).mul(Dd::from(2.0).sub(three_g));
        left.sub(b.mul(b)).value()
    }

    /// `6sε`, in double-double so it can be compared with [`Self::quadratic_gap`].
    pub fn six_s_epsilon(&self, t: f64) -> f64 {
        let s = Dd::from(3.0)
            .add(Dd::from(3.0).mul(Dd::from(t)))
            .sub(Dd::from(4.0).mul(Dd::from(self.delta)));
        Dd::from(6.0).mul(s).mul(Dd::from(self.epsilon)).value()
    }

    /// Coefficient of `α²`: `12γ² − (31/2)γ + 5`.
    pub fn alpha_coefficient(&self, t: f64) -> f64 {
        let g = self.gamma(t);
        12.0 * g * g - 15.5 * g + 5.0
    }

    /// Smallest `α >= 0` with `(12γ² − (31/2)γ + 5)α² + γ/2 >= t`, using `γ(t)` with ε.
    pub fn r1_exact(&self, t: f64) -> f64 {
        let g = self.gamma(t);
        sqrt(((t - g / 2.0) / self.alpha_coefficient(t)).max(0.0))
    }

    /// The same root with ε dropped, as a function of `s`:
    /// `½ s^{1/2} (1−δ)^{-1} (64(1−δ)² − s)^{-1/2} (s − 2(1−δ))`.
    pub fn r1(&self, s: f64) -> f64 {
        let u = self.u();
        0.5 * sqrt(s) / u / sqrt(64.0 * u * u - s) * (s - 2.0 * u)
    }

    pub fn dr1_ds(&self, s: f64) -> f64 {
        let u = self.u();
        let w = 64.0 * u * u - s;
        0.5 / u / sqrt(s) / (w * sqrt(w)) * (32.0 * (s + 2.0 * self.delta - 2.0) * u * u + s * w)
    }

    /// `t` with `γ(t) = target`, by bisection on `[δ/3, 1]`.
    pub fn solve_gamma(&self, target: f64) -> Option<f64> {
        bisect(|t| self.gamma(t) - target, self.t_min(), 1.0)
    }

    /// `t` where the ε-free root equals one.
    pub fn r1_root(&self) -> Option<f64> {
        let lo = (2.0 * self.delta - 1.0) / 3.0 + 1e-9;
        let hi = self.t_star() - 1e-12;
        bisect(|t| self.r1(self.s(t)) - 1.0, lo, hi)
    }

    pub fn r1_exact_root(&self) -> Option<f64> {
        let lo = (2.0 * self.delta - 1.0) / 3.0 + 1e-9;
        let hi = self.t_star() - 1e-12;
        bisect(|t| self.r1_exact(t) - 1.0, lo, hi)
    }
}

/// Unevaluated sum `hi + lo` carrying about 106 bits.
#[derive(Debug, Clone, Copy)]
struct Dd {
    hi: f64,
    lo: f64,
}

impl From<f64> for Dd {
    fn from(v: f64) -> Self {
        Dd { hi: v, lo: 0.0 }
    }
}

fn two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    let bb = s - a;
    Dd {
        hi: s,
        lo: (a - (s - bb)) + (b - bb),
    }
}

fn quick_two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    Dd { hi: s, lo: b - (s - a) }
}

impl Dd {
    fn value(self) -> f64 {
        self.hi + self.lo
    }

    fn add(self, o: Dd) -> Dd {
        let s = two_sum(self.hi, o.hi);
        let t = two_sum(self.lo, o.lo);
        let u = quick_two_sum(s.hi, s.lo + t.hi);
        quick_two_sum(u.hi, u.lo + t.lo)
    }

    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }

    fn sub(self, o: Dd) -> Dd {
        self.add(o.neg())
    }

    fn mul(self, o: Dd) -> Dd {
        let p = self.hi * o.hi;
        let e = libm::fma(self.hi, o.hi, -p);
        quick_two_sum(p, e + (self.hi * o.lo + self.lo * o.hi))
    }

    fn div(self, o: Dd) -> Dd {
        let q1 = self.hi / o.hi;
        let r = self.sub(o.mul(Dd::from(q1)));
        let q2 = r.hi / o.hi;
        let r = r.sub(o.mul(Dd::from(q2)));
        let q3 = r.hi / o.hi;
        quick_two_sum(q1, q2).add(Dd::from(q3))
    }
}

/// Root of an increasing-through-zero function on `[lo, hi]`, to about `1e-13`.
fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> Option<f64> {
    let (flo, fhi) = (f(lo), f(hi));
    if !(flo <= 0.0 && fhi >= 0.0) {
        return None;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo < 1e-14 {
            break;
        }
        if f(mid) <= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

/// Evenly spaced points covering `[a, b]` with spacing at most `step`, endpoints included.
fn grid(a: f64, b: f64, step: f64) -> (Vec<f64>, f64) {
    if b <= a {
        return (alloc::vec![a], 0.0);
    }
    let n = libm::ceil((b - a) / step) as usize;
    let h = (b - a) / n as f64;
    ((0..=n).map(|k| if k == n { b } else { a + k as f64 * h }).collect(), h)
}

fn min_of(it: impl Iterator<Item = f64>) -> f64 {
    it.fold(f64::INFINITY, f64::min)
}

fn max_of(it: impl Iterator<Item = f64>) -> f64 {
    it.fold(f64::NEG_INFINITY, f64::max)
}

/// Runs every check at the given `delta`, `epsilon` and grid spacing.
pub fn verify_lll(delta: f64, epsilon: f64, grid_step: f64) -> Result<LemmaReport, LllError> {
    if !(delta > 0.5 && delta < 1.0) {
        return Err(LllError::Delta(delta));
    }
    if !(0.0..=1e-3).contains(&epsilon) {
        return Err(LllError::Epsilon(epsilon));
    }
    if !(grid_step > 0.0 && grid_step <= 0.01) {
        return Err(LllError::Step(grid_step));
    }
    let p = LllParams { delta, epsilon };
    let u = 1.0 - delta;
    let mut rep = LemmaReport::new("lll");
    rep.input("delta", delta);
    rep.input("epsilon", epsilon);
    rep.input("grid_step", grid_step);

    let t0 = p.t_min();
    let t_star = p.t_star();
    let (full, h) = grid(t0, 1.0, grid_step);
    // |dγ/dt| <= 8/9 because s >= 3(1−δ)
    let lip_gamma = 8.0 / 9.0;

    // γ stays strictly between 11/18 and 2t
    let low = min_of(full.iter().map(|&t| p.gamma(t) - 11.0 / 18.0));
    rep.push(Check::float("gamma - 11/18 on [delta/3, 1]", low, Relation::Gt, 0.0, lip_gamma * h / 2.0));
    let high = min_of(full.iter().map(|&t| 2.0 * t - p.gamma(t)));
    rep.push(Check::float("2t - gamma on [delta/3, 1]", high, Relation::Gt, 0.0, 2.0 * h / 2.0));

    // the quadratic gap equals 6sε, which is positive since s >= 3(1−δ)
    let worst_rel = max_of(full.iter().map(|&t| {
        let lhs = p.quadratic_gap(t);
        let rhs = p.six_s_epsilon(t);
        if rhs == 0.0 {
            lhs.abs()
        } else {
            ((lhs - rhs) / rhs).abs()
        }
    }));
    rep.push(Check::float("quadratic gap = 6 s epsilon (max relative error)", worst_rel, Relation::Le, 0.0, 1e-9));
    rep.push(
        Check::float("6 s epsilon at s = 3(1 - delta)", 6.0 * 3.0 * u * epsilon, Relation::Gt, 0.0, 0.0)
            .with_reference("strict gap follows from the identity"),
    );
    let gap_min = min_of(full.iter().map(|&t| p.quadratic_gap(t)));
    rep.push(Check::float("quadratic gap on grid points", gap_min, Relation::Gt, 0.0, 0.0));

    // γ via s agrees with the defining formula
    let alt = max_of(full.iter().map(|&t| (p.gamma(t) - p.gamma_via_s(t)).abs()));
    rep.push(Check::float("gamma(t) two forms agree", alt, Relation::Le, 0.0, 1e-12));

    // derivative of γ
    let fd_step = 1e-7;
    let fd_err = max_of(full.iter().map(|&t| {
        let fd = (p.gamma(t + fd_step) - p.gamma(t - fd_step)) / (2.0 * fd_step);
        let exact = p.dgamma_dt(t);
        ((fd - exact) / exact).abs()
    }));
    rep.push(Check::float("dgamma/dt finite difference (max relative error)", fd_err, Relation::Le, 0.0, 1e-6));
    let dg_max = max_of(full.iter().map(|&t| p.dgamma_dt(t)));
    let dg_min = min_of(full.iter().map(|&t| p.dgamma_dt(t)));
    rep.push(Check::float("max dgamma/dt", dg_max, Relation::Le, 8.0 / 9.0, 1e-12));
    rep.push(Check::float("min dgamma/dt", dg_min, Relation::Gt, 0.0, 0.0));

    // t − g1(γ(t)) > 0 while γ <= 8/13 (and t < t*)
    let t_prime = p.solve_gamma(8.0 / 13.0);
    match t_prime {
        Some(tp) => {
            let upper = tp.min(t_star);
            let (part, hp) = grid(t0, upper, grid_step);
            let g_lo = p.gamma(t0);
            let slope = g1_slope_bound(g_lo, 8.0 / 13.0);
            let lip = 1.0 + slope * lip_gamma;
            let m = min_of(part.iter().map(|&t| t - LllParams::g1(p.gamma(t))));
            rep.push(Check::float("t - g1(gamma(t)) while gamma <= 8/13", m, Relation::Gt, 0.0, lip * hp / 2.0));
            let curv = min_of(part.iter().map(|&t| p.d2g1_dt2(t)));
            rep.push(Check::float("second derivative of g1(gamma(t)) sign", curv, Relation::Gt, 0.0, 0.0));
            let fd2 = 1e-4;
            let curv_err = max_of(part.iter().map(|&t| {
                let f = |x: f64| LllParams::g1(p.gamma(x));
                let num = (f(t + fd2) - 2.0 * f(t) + f(t - fd2)) / (fd2 * fd2);
                let exact = p.d2g1_dt2(t);
                ((num - exact) / exact).abs()
            }));
            rep.push(Check::float("second derivative finite difference (max relative error)", curv_err, Relation::Le, 0.0, 1e-3));
        }
        None => rep.push(Check::flag("gamma reaches 8/13 on [delta/3, 1]", false)),
    }

    // no α in [0, 1] satisfies the quadratic inequality for t in [δ/3, t*)
    let (below_star, _) = grid(t0, t_star, grid_step);
    let below_star: Vec<f64> = below_star.into_iter().filter(|&t| t < t_star).collect();
    let coeff_min = min_of(below_star.iter().map(|&t| p.alpha_coefficient(t)));
    rep.push(Check::float("alpha^2 coefficient below t*", coeff_min, Relation::Gt, 0.0, 0.0));
    let s_gap = min_of(below_star.iter().map(|&t| 64.0 * u * u - p.s(t)));
    rep.push(Check::float("64(1-delta)^2 - s below t*", s_gap, Relation::Gt, 0.0, 0.0));
    rep.push(Check::float(
        "s(t*) = 64(1-delta)^2",
        p.s(t_star),
        Relation::Within,
        64.0 * u * u,
        1e-12,
    ));
    let dr_min = min_of(below_star.iter().map(|&t| p.dr1_ds(p.s(t))));
    rep.push(Check::float("dr1/ds on [delta/3, t*)", dr_min, Relation::Gt, 0.0, 0.0));
    // r1 increases in t, so its least value is at the left endpoint
    rep.push(Check::float("r1 at t = delta/3", p.r1_exact(t0), Relation::Gt, 1.0, 1e-12));
    let r1_closed_vs_exact = (p.r1(p.s(t0)) - p.r1_exact(t0)).abs();
    rep.push(Check::float("r1 closed form vs epsilon form at delta/3", r1_closed_vs_exact, Relation::Le, 0.0, 1e-3));

    // published constants
    let g0 = p.gamma(t0);
    rep.push(Check::float("gamma(delta/3)", g0, Relation::Within, 0.61465, 0.00015).with_reference("0.6146 to 0.6147"));
    let mut table = Table {
        columns: ["quantity", "computed", "reference"].iter().map(|s| (*s).into()).collect(),
        rows: Vec::new(),
    };
    let mut row = |name: &str, v: Option<f64>, r: &str| {
        let shown = v.map_or_else(|| "none".into(), |x| format!("{x:.9}"));
        table.rows.push(alloc::vec![name.into(), shown, r.into()]);
    };
    row("gamma(delta/3)", Some(g0), "0.6146 to 0.6147");
    row("t*", Some(t_star), "");
    row("t'", t_prime, "0.3146 +- 0.0001");
    match t_prime {
        Some(tp) => {
            rep.push(Check::float("t' with gamma(t') = 8/13", tp, Relation::Within, 0.3146, 0.0002).with_reference("0.3146 +- 0.0001"));
            let v = tp - LllParams::g1(8.0 / 13.0);
            rep.push(Check::float("t' - g1(8/13)", v, Relation::Within, 0.0069, 0.0002).with_reference("0.0069 +- 0.0001"));
            row("t' - g1(8/13)", Some(v), "0.0069 +- 0.0001");
        }
        None => rep.push(Check::flag("t' located", false)),
    }
    let left = t0 - LllParams::g1(g0);
    rep.push(Check::float("delta/3 - g1(gamma(delta/3))", left, Relation::Within, 0.0060, 0.0002).with_reference("0.0060 +- 0.0001"));
    row("delta/3 - g1(gamma(delta/3))", Some(left), "0.0060 +- 0.0001");
    let root = p.r1_root();
    match root {
        Some(r) => rep.push(Check::float("root of r1 = 1", r, Relation::Within, 0.31379, 0.00005).with_reference("0.31379 +- 0.00001")),
        None => rep.push(Check::flag("root of r1 = 1 located", false)),
    }
    row("root of r1 = 1", root, "0.31379 +- 0.00001");
    let root_eps = p.r1_exact_root();
    row("root of r1 = 1 (with epsilon)", root_eps, "");
    if let Some(r) = root {
        rep.push(Check::float("root of r1 = 1 lies below delta/3", r, Relation::Lt, t0, 0.0));
    }
    rep.table = Some(table);
    Ok(rep)
}

/// `max |g1'(γ)|` for `γ` between the two arguments; `g1'` is affine.
fn g1_slope_bound(a: f64, b: f64) -> f64 {
    LllParams::g1_prime(a).abs().max(LllParams::g1_prime(b).abs())
}
