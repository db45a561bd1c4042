//! Exact-rational checks: the general upper bound on `δ_r`, the weak `49/52` bound's
//! case algebra, and the per-`d` wheel bounds.

use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::wheel::{b2, b_general, feasibility_threshold, wheel_max, WheelError};
use super::{Check, LemmaReport, Relation, Table};
use crate::rational::{big_to_f64, q};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BoundsError {
    #[error("r_max must be at least 4, got {0}")]
    RMax(usize),
    #[error("n values must be positive")]
    NonPositiveN,
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// `(4(3r−7)(r−1)+1) / (4(r−2)(3r−4))`.
pub fn general_upper_bound(r: usize) -> BigRational {
    let r = r as i64;
    q(4 * (3 * r - 7) * (r - 1) + 1, 4 * (r - 2) * (3 * r - 4))
}

/// `(3r−4)/(3r−1)`.
pub fn general_lower_bound(r: usize) -> BigRational {
    let r = r as i64;
    q(3 * r - 4, 3 * r - 1)
}

/// The two sides of `√(δ(r−2)(3r−4) − (3r−7)(r−1)) ≥ 2(r−1)(3r−4)((½−δ)(r−2)/(r−1) + (3r−7)/(2(3r−4)))`
/// as (radicand, right-hand side).
pub fn upper_inequality_sides(r: usize, delta: &BigRational) -> (BigRational, BigRational) {
    let r = r as i64;
    let radicand = delta * int((r - 2) * (3 * r - 4)) - int((3 * r - 7) * (r - 1));
    let inner = (q(1, 2) - delta) * q(r - 2, r - 1) + q(3 * r - 7, 2 * (3 * r - 4));
    let rhs = int(2 * (r - 1) * (3 * r - 4)) * inner;
    (radicand, rhs)
}

/// `√radicand >= rhs`, decided by squaring where that is valid.
fn sqrt_at_least(radicand: &BigRational, rhs: &BigRational) -> bool {
    if radicand.is_negative() {
        return false;
    }
    rhs.is_negative() || radicand >= &(rhs * rhs)
}

/// Checks the inequality at `δ = general_upper_bound(r)` for every `4 <= r <= r_max`.
pub fn verify_general_upper(r_max: usize) -> Result<LemmaReport, BoundsError> {
    if r_max < 4 {
        return Err(BoundsError::RMax(r_max));
    }
    let mut rep = LemmaReport::new("upper");
    rep.input("r_max", r_max);
    let mut table = Table {
        columns: ["r", "upper", "lower", "radicand", "rhs", "holds", "increasing"]
            .iter()
            .map(|s| s.to_string())
            .collect(),
        rows: Vec::new(),
    };
    let (mut sides_ok, mut ineq_ok, mut range_ok, mut order_ok) = (true, true, true, true);
    let mut first_bad: Option<usize> = None;
    let mut prev: Option<BigRational> = None;
    for r in 4..=r_max {
        let delta = general_upper_bound(r);
        let lower = general_lower_bound(r);
        let (radicand, rhs) = upper_inequality_sides(r, &delta);
        let nonneg = !radicand.is_negative() && !rhs.is_negative();
        let holds = sqrt_at_least(&radicand, &rhs);
        let in_range = delta.is_positive() && delta < BigRational::one();
        let ordered = lower < delta;
        sides_ok &= nonneg;
        ineq_ok &= holds;
        range_ok &= in_range;
        order_ok &= ordered;
        if !(nonneg && holds && in_range && ordered) && first_bad.is_none() {
            first_bad = Some(r);
        }
        let increasing = prev.as_ref().map_or("", |p| if &delta > p { "yes" } else { "no" });
        table.rows.push(vec![
            r.to_string(),
            delta.to_string(),
            lower.to_string(),
            radicand.to_string(),
            rhs.to_string(),
            holds.to_string(),
            increasing.to_string(),
        ]);
        prev = Some(delta);
    }
    if let Some(r) = first_bad {
        rep.input("first_failing_r", r);
    }
    rep.push(Check::flag("both sides nonnegative for every r", sides_ok));
    rep.push(Check::flag("squared inequality holds for every r", ineq_ok));
    rep.push(Check::flag("upper bound in (0, 1) for every r", range_ok));
    rep.push(Check::flag("lower bound below upper bound for every r", order_ok));
    rep.push(Check::exact("upper bound at r = 4", &general_upper_bound(4), Relation::Eq, &q(61, 64)));
    rep.push(Check::exact("lower bound at r = 4 below upper", &general_lower_bound(4), Relation::Lt, &q(61, 64)));
    rep.table = Some(table);
    Ok(rep)
}

/// `nα² − 12α − n/4 − 1`.
pub fn weak_quadratic(n: u64, alpha: &BigRational) -> BigRational {
    let n = int(n as i64);
    &n * alpha * alpha - int(12) * alpha - &n / int(4) - int(1)
}

/// Largest value of the (convex) quadratic on `[0, 1/2 − 27/n]`; `None` when that
/// interval is empty.
fn weak_quadratic_max(n: u64) -> Option<BigRational> {
    let a = q(1, 2) - q(27, n as i64);
    if a.is_negative() {
        return None;
    }
    let at0 = weak_quadratic(n, &BigRational::zero());
    let at_a = weak_quadratic(n, &a);
    Some(if at0 > at_a { at0 } else { at_a })
}

fn thresholds(n: u64) -> (BigRational, BigRational, BigRational) {
    let nn = int(n as i64);
    let target = q(49, 52) * &nn + int(1);
    let d3 = q(12, 13) * &nn + q(12, 13);
    let d2_alt = q(159, 169) * &nn;
    let d2 = if d3 > d2_alt { d3.clone() } else { d2_alt };
    (target, d3, d2)
}

/// For each `n`: the quadratic is nonpositive on `[0, 1/2 − 27/n]`, and both case
/// thresholds lie below `49/52·n + 1`.
pub fn verify_weak_bound(n_values: &[u64]) -> Result<LemmaReport, BoundsError> {
    if n_values.contains(&0) {
        return Err(BoundsError::NonPositiveN);
    }
    let mut rep = LemmaReport::new("weak");
    rep.input("n_values", format!("{n_values:?}"));
    let mut table = Table {
        columns: ["n", "quadratic max", "49/52 n + 1", "d=3 threshold", "d=2 threshold"]
            .iter()
            .map(|s| s.to_string())
            .collect(),
        rows: Vec::new(),
    };
    for &n in n_values {
        let qmax = weak_quadratic_max(n);
        match &qmax {
            Some(v) => rep.push(Check::exact(
                &format!("n = {n}: quadratic max on [0, 1/2 - 27/n]"),
                v,
                Relation::Le,
                &BigRational::zero(),
            )),
            None => rep.push(Check::flag(&format!("n = {n}: interval empty"), true)),
        }
        let (target, d3, d2) = thresholds(n);
        rep.push(Check::exact(&format!("n = {n}: d=3 threshold"), &d3, Relation::Lt, &target));
        rep.push(Check::exact(&format!("n = {n}: d=2 threshold"), &d2, Relation::Lt, &target));
        table.rows.push(vec![
            n.to_string(),
            qmax.map_or_else(|| "empty".to_string(), |v| v.to_string()),
            target.to_string(),
            d3.to_string(),
            d2.to_string(),
        ]);
    }
    // the endpoint value is −34 + 1053/n, so it is nonpositive from n = 31 on
    let quad_from = (1..=10_000u64)
        .find(|&n| {
            let a = q(1, 2) - q(27, n as i64);
            !weak_quadratic(n, &a).is_positive()
        })
        .unwrap_or(0);
    let thresholds_from = (1..=10_000u64)
        .find(|&n| {
            let (t, d3, d2) = thresholds(n);
            d3 < t && d2 < t
        })
        .unwrap_or(0);
    rep.input("quadratic_endpoint_nonpositive_from_n", quad_from);
    rep.input("thresholds_below_from_n", thresholds_from);
    rep.push(Check::exact("12/13 below 49/52", &q(12, 13), Relation::Lt, &q(49, 52)));
    rep.push(Check::exact("159/169 below 49/52", &q(159, 169), Relation::Lt, &q(49, 52)));
    rep.table = Some(table);
    Ok(rep)
}

/// The per-`d` bound as written for `d = 2, 3, 4`.
pub fn stated_bound(d: usize, gamma: &BigRational) -> BigRational {
    let g2 = gamma * gamma;
    match d {
        2 => b2(gamma),
        3 => (int(325) * &g2 - int(400) * gamma + int(124)) / int(3),
        4 => int(225) * &g2 - int(275) * gamma + q(253, 3),
        _ => b_general(d, gamma),
    }
}

/// Two degree-2 polynomials agreeing at five points are identical.
fn agree_at_five(f: impl Fn(&BigRational) -> BigRational, g: impl Fn(&BigRational) -> BigRational) -> bool {
    [q(0, 1), q(1, 2), q(1, 1), q(2, 1), q(3, 1)]
        .iter()
        .all(|x| f(x) == g(x))
}

/// Thresholds, polynomial forms and the search oracle for `d = 2, 3, 4` at one `gamma`.
pub fn verify_condition_of_d(gamma: &BigRational, restarts: usize, seed: u64) -> Result<LemmaReport, WheelError> {
    let mut rep = LemmaReport::new("conditions");
    rep.input("gamma", gamma);
    rep.input("restarts", restarts);
    rep.input("seed", seed);
    let t = [feasibility_threshold(2), feasibility_threshold(3), feasibility_threshold(4)];
    rep.push(Check::exact("threshold d=2", &t[0], Relation::Eq, &q(5, 8)));
    rep.push(Check::exact("threshold d=3", &t[1], Relation::Eq, &q(8, 13)));
    rep.push(Check::exact("threshold d=4", &t[2], Relation::Eq, &q(11, 18)));
    rep.push(Check::exact("11/18 below 8/13", &t[2], Relation::Lt, &t[1]));
    rep.push(Check::exact("8/13 below 5/8", &t[1], Relation::Lt, &t[0]));
    rep.push(Check::flag(
        "general bound at d=2 equals (200g^2 - 250g + 80)/6",
        agree_at_five(|g| b_general(2, g), |g| (int(200) * g * g - int(250) * g + int(80)) / int(6)),
    ));
    rep.push(Check::flag(
        "general bound at d=3 equals (325g^2 - 400g + 124)/3",
        agree_at_five(|g| b_general(3, g), |g| stated_bound(3, g)),
    ));
    rep.push(Check::flag(
        "general bound at d=4 equals 225g^2 - 275g + 253/3",
        agree_at_five(|g| b_general(4, g), |g| stated_bound(4, g)),
    ));
    // B_general(2, γ) − B_2(γ) = (8γ − 5)²/3
    rep.push(Check::exact("12g^2 - 15g + 5 at most the general d=2 bound", &b2(gamma), Relation::Le, &b_general(2, gamma)));

    let mut table = Table {
        columns: ["d", "threshold", "feasible", "bound", "e_hat"].iter().map(|s| s.to_string()).collect(),
        rows: Vec::new(),
    };
    for d in 2..=4 {
        let w = wheel_max(d, gamma, restarts, seed, 1e-12)?;
        let expected_feasible = gamma <= &feasibility_threshold(d);
        rep.push(Check::flag(&format!("d={d}: feasibility matches threshold"), w.feasible == expected_feasible));
        let bound = stated_bound(d, gamma);
        if let Some(e) = w.e_hat {
            rep.push(Check::float(&format!("d={d}: e_hat at most bound"), e, Relation::Le, big_to_f64(&bound), 1e-6));
            if gamma == &feasibility_threshold(d) {
                rep.push(Check::float(&format!("d={d}: bound attained at threshold"), e, Relation::Within, big_to_f64(&bound), 1e-9));
            }
        }
        table.rows.push(vec![
            d.to_string(),
            feasibility_threshold(d).to_string(),
            w.feasible.to_string(),
            bound.to_string(),
            w.e_hat.map_or_else(|| "-".to_string(), |e| format!("{e:.12}")),
        ]);
    }
    rep.table = Some(table);
    Ok(rep)
}

/// The weighted-wheel bound at one `(d, gamma)`, compared against the search oracle.
pub fn verify_minlemma(d: usize, gamma: &BigRational, restarts: usize, seed: u64, tol: f64) -> Result<LemmaReport, WheelError> {
    let w = wheel_max(d, gamma, restarts, seed, tol)?;
    let mut rep = LemmaReport::new("minlemma");
    rep.input("d", d);
    rep.input("gamma", gamma);
    rep.input("restarts", restarts);
    rep.input("seed", seed);
    rep.input("vertices_enumerated", w.vertices);
    rep.input("ascents", w.ascents);
    let threshold = feasibility_threshold(d);
    rep.push(Check::flag("feasibility matches gamma <= (3d-1)/(5d-2)", w.feasible == (gamma <= &threshold)));
    let Some(e) = w.e_hat else {
        rep.input("feasible", false);
        return Ok(rep);
    };
    rep.input("feasible", true);
    if let Some(x) = &w.exact_energy {
        rep.input("exact_point_energy", x);
    }
    let general = b_general(d, gamma);
    rep.push(Check::float("e_hat at most general bound", e, Relation::Le, big_to_f64(&general), 1e-6));
    if d == 2 {
        rep.push(Check::float("e_hat at most 12g^2 - 15g + 5", e, Relation::Le, big_to_f64(&b2(gamma)), 1e-6));
    }
    if let Some(arg) = &w.argmax {
        rep.push(Check::flag("argmax satisfies every degree constraint", arg.meets_gamma(1e-12)));
    }
    if gamma == &threshold {
        let bound = stated_bound(d, gamma);
        rep.push(Check::float("forced weights attain the bound", e, Relation::Within, big_to_f64(&bound), 1e-9));
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lemmas::Status;

    #[test]
    fn upper_bound_values() {
        assert_eq!(general_upper_bound(4), q(61, 64));
        assert!(general_lower_bound(4) < q(61, 64));
        for r in 4..40 {
            let (rad, rhs) = upper_inequality_sides(r, &general_upper_bound(r));
            assert_eq!(rad, q(1, 4));
            assert_eq!(rhs, q(1, 2));
        }
        let rep = verify_general_upper(50).unwrap();
        assert_eq!(rep.status, Status::Pass);
        assert_eq!(rep.table.as_ref().unwrap().rows.len(), 47);
        assert_eq!(verify_general_upper(3), Err(BoundsError::RMax(3)));
    }

    #[test]
    fn weak_bound_values() {
        // endpoint value −34 + 1053/n
        for n in [60u64, 100, 1000] {
            let a = q(1, 2) - q(27, n as i64);
            assert_eq!(weak_quadratic(n, &a), int(-34) + q(1053, n as i64));
        }
        assert_eq!(weak_quadratic(7, &BigRational::zero()), q(-11, 4));
        let rep = verify_weak_bound(&[100, 1000, 10000]).unwrap();
        assert_eq!(rep.status, Status::Pass);
        assert_eq!(rep.inputs["quadratic_endpoint_nonpositive_from_n"], "31");
        assert_eq!(rep.inputs["thresholds_below_from_n"], "1");
    }

    #[test]
    fn stated_bounds_at_thresholds() {
        assert_eq!(stated_bound(3, &q(8, 13)), q(4, 13));
        assert_eq!(stated_bound(2, &q(8, 13)), q(53, 169));
        assert_eq!(b_general(2, &q(7, 10)) - b2(&q(7, 10)), q(3, 25));
    }

    #[test]
    fn conditions_at_eleven_eighteenths() {
        let rep = verify_condition_of_d(&q(11, 18), 10, 3).unwrap();
        if let Some(c) = rep.failed().next() {
            panic!("{c:?}");
        }
        let rows = &rep.table.as_ref().unwrap().rows;
        assert!(rows.iter().all(|r| r[2] == "true"));
    }

    #[test]
    fn minlemma_forced() {
        let rep = verify_minlemma(2, &q(5, 8), 20, 0, 1e-12).unwrap();
        assert_eq!(rep.status, Status::Pass);
        assert_eq!(rep.inputs["exact_point_energy"], "5/16");
        let off = verify_minlemma(2, &q(63, 100), 5, 0, 1e-12).unwrap();
        assert_eq!(off.status, Status::Pass);
        assert_eq!(off.inputs["feasible"], "false");
    }
}
