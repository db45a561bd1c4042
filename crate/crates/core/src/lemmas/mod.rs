//! Numeric and exact checks of the analytic inequalities behind the degree thresholds.
//!
//! Every check stores the computed value, the value it is compared against, the
//! relation and the tolerance, so its status can be recomputed from the record alone.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_rational::BigRational;

use crate::rational::parse_big;

pub mod bounds;
pub mod lll;
pub mod lp;
pub mod wheel;

pub use bounds::{verify_condition_of_d, verify_general_upper, verify_minlemma, verify_weak_bound, BoundsError};
pub use lll::{verify_lll, LllError, LllParams};
pub use wheel::{b2, b_general, wheel_energy, wheel_max, WeightedWheelInstance, WheelError, WheelMax};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum Status {
    Pass,
    Inconclusive,
    Fail,
}

/// `computed (relation) expected`.
///
/// For strict relations on floats the tolerance is a certification margin: the check
/// passes only when the inequality holds by more than the tolerance, fails when it
/// does not hold at all, and is inconclusive in between.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum Relation {
    Lt,
    Le,
    Gt,
    Ge,
    Eq,
    Within,
}

/// A float, or an exact rational rendered as `"p/q"`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(untagged))]
pub enum Value {
    Float(f64),
    Exact(String),
}

impl Value {
    pub fn exact(x: &BigRational) -> Self {
        Value::Exact(x.to_string())
    }

    pub fn as_f64(&self) -> f64 {
        match self {
            Value::Float(v) => *v,
            Value::Exact(s) => parse_big(s).map_or(f64::NAN, |b| crate::rational::big_to_f64(&b)),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Check {
    pub name: String,
    pub computed: Value,
    pub relation: Relation,
    pub expected: Value,
    pub tolerance: f64,
    pub status: Status,
    /// Published value or other context, for display only.
    #[cfg_attr(feature = "serde", serde(default, skip_serializing_if = "Option::is_none"))]
    pub reference: Option<String>,
}

impl Check {
    pub fn new(name: &str, computed: Value, relation: Relation, expected: Value, tolerance: f64) -> Self {
        let status = evaluate(&computed, relation, &expected, tolerance);
        Self {
            name: name.to_string(),
            computed,
            relation,
            expected,
            tolerance,
            status,
            reference: None,
        }
    }

    pub fn float(name: &str, computed: f64, relation: Relation, expected: f64, tolerance: f64) -> Self {
        Self::new(name, Value::Float(computed), relation, Value::Float(expected), tolerance)
    }

    pub fn exact(name: &str, computed: &BigRational, relation: Relation, expected: &BigRational) -> Self {
        Self::new(name, Value::exact(computed), relation, Value::exact(expected), 0.0)
    }

    /// A yes/no fact established elsewhere (exactly), recorded as `1 = 1` or `0 = 1`.
    pub fn flag(name: &str, holds: bool) -> Self {
        let v = if holds { "1" } else { "0" };
        Self::new(name, Value::Exact(v.to_string()), Relation::Eq, Value::Exact("1".to_string()), 0.0)
    }

    pub fn with_reference(mut self, reference: &str) -> Self {
        self.reference = Some(reference.to_string());
        self
    }

    pub fn recheck(&self) -> Status {
        evaluate(&self.computed, self.relation, &self.expected, self.tolerance)
    }
}

fn evaluate(computed: &Value, relation: Relation, expected: &Value, tol: f64) -> Status {
    if let (Value::Exact(a), Value::Exact(b)) = (computed, expected) {
        let (Some(a), Some(b)) = (parse_big(a), parse_big(b)) else {
            return Status::Fail;
        };
        let ok = match relation {
            Relation::Lt => a < b,
            Relation::Le => a <= b,
            Relation::Gt => a > b,
            Relation::Ge => a >= b,
            Relation::Eq | Relation::Within => a == b,
        };
        return if ok { Status::Pass } else { Status::Fail };
    }
    let (c, e) = (computed.as_f64(), expected.as_f64());
    if c.is_nan() || e.is_nan() || tol.is_nan() || tol < 0.0 {
        return Status::Fail;
    }
    let pass = |b: bool| if b { Status::Pass } else { Status::Fail };
    match relation {
        Relation::Le => pass(c <= e + tol),
        Relation::Ge => pass(c >= e - tol),
        Relation::Eq | Relation::Within => pass((c - e).abs() <= tol),
        Relation::Lt => strict(e - c, tol),
        Relation::Gt => strict(c - e, tol),
    }
}

fn strict(gap: f64, margin: f64) -> Status {
    if gap > margin {
        Status::Pass
    } else if gap <= 0.0 {
        Status::Fail
    } else {
        Status::Inconclusive
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LemmaReport {
    pub lemma: String,
    pub inputs: BTreeMap<String, String>,
    pub checks: Vec<Check>,
    #[cfg_attr(feature = "serde", serde(default, skip_serializing_if = "Option::is_none"))]
    pub table: Option<Table>,
    pub status: Status,
}

impl LemmaReport {
    pub fn new(lemma: &str) -> Self {
        Self {
            lemma: lemma.to_string(),
            inputs: BTreeMap::new(),
            checks: Vec::new(),
            table: None,
            status: Status::Pass,
        }
    }

    pub fn input(&mut self, key: &str, value: impl ToString) {
        self.inputs.insert(key.to_string(), value.to_string());
    }

    pub fn push(&mut self, check: Check) {
        self.status = self.status.max(check.status);
        self.checks.push(check);
    }

    /// Worst status over the checks: any failure fails, else any inconclusive.
    pub fn overall(&self) -> Status {
        self.checks.iter().map(|c| c.status).max().unwrap_or(Status::Pass)
    }

    /// Every stored status agrees with a fresh evaluation of its stored values.
    pub fn recheck(&self) -> bool {
        self.checks.iter().all(|c| c.recheck() == c.status) && self.status == self.overall()
    }

    pub fn failed(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status != Status::Pass)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn strict_margin_semantics() {
        assert_eq!(Check::float("a", 1.0, Relation::Gt, 0.0, 0.5).status, Status::Pass);
        assert_eq!(Check::float("a", 0.3, Relation::Gt, 0.0, 0.5).status, Status::Inconclusive);
        assert_eq!(Check::float("a", 0.0, Relation::Gt, 0.0, 0.5).status, Status::Fail);
        assert_eq!(Check::float("a", -1.0, Relation::Lt, 0.0, 0.0).status, Status::Pass);
        assert_eq!(Check::float("a", 0.1, Relation::Within, 0.1002, 0.0002).status, Status::Pass);
    }

    #[test]
    fn exact_comparisons() {
        assert_eq!(Check::exact("r", &q(8, 11), Relation::Lt, &q(61, 64)).status, Status::Pass);
        assert_eq!(Check::exact("r", &q(1, 2), Relation::Eq, &q(2, 4)).status, Status::Pass);
        assert_eq!(Check::flag("f", false).status, Status::Fail);
    }

    #[test]
    fn report_rollup() {
        let mut r = LemmaReport::new("x");
        r.push(Check::flag("ok", true));
        assert_eq!(r.status, Status::Pass);
        r.push(Check::float("maybe", 0.1, Relation::Gt, 0.0, 1.0));
        assert_eq!(r.status, Status::Inconclusive);
        r.push(Check::flag("bad", false));
        assert_eq!(r.status, Status::Fail);
        assert!(r.recheck());
        r.checks[0].computed = Value::Exact("0".into());
        assert!(!r.recheck());
    }
}
