//! Exact rational helpers: parsing user parameters, Turán numbers, rounding.

use alloc::string::{String, ToString};
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Signed, ToPrimitive, Zero};

/// Small exact fraction used for user-facing parameters (θ, γ).
pub type Fraction = Ratio<i64>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse {input:?} as an exact fraction")]
pub struct ParseFractionError {
    pub input: String,
}

/// Parses `"p/q"`, an integer, or a plain decimal such as `"0.125"` exactly.
pub fn parse_fraction(s: &str) -> Result<Fraction, ParseFractionError> {
    let err = || ParseFractionError {
        input: s.to_string(),
    };
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p = i64::from_str(p.trim()).map_err(|_| err())?;
        let q = i64::from_str(q.trim()).map_err(|_| err())?;
        if q == 0 {
            return Err(err());
        }
        return Ok(Fraction::new(p, q));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() {
        return Err(err());
    }
    if !int.bytes().all(|b| b.is_ascii_digit()) || !frac.bytes().all(|b| b.is_ascii_digit()) {
        return Err(err());
    }
    if frac.len() > 17 {
        return Err(err());
    }
    let den = 10i64.checked_pow(frac.len() as u32).ok_or_else(err)?;
    let int_v = if int.is_empty() {
        0
    } else {
        i64::from_str(int).map_err(|_| err())?
    };
    let frac_v = if frac.is_empty() {
        0
    } else {
        i64::from_str(frac).map_err(|_| err())?
    };
    let num = int_v
        .checked_mul(den)
        .and_then(|v| v.checked_add(frac_v))
        .ok_or_else(err)?;
    Ok(Fraction::new(if neg { -num } else { num }, den))
}

/// Renders a fraction as `"p/q"` (or `"p"` for integers).
pub fn fraction_to_string(f: &Fraction) -> String {
    f.to_string()
}

pub fn fraction_to_f64(f: &Fraction) -> f64 {
    *f.numer() as f64 / *f.denom() as f64
}

pub fn to_big(f: &Fraction) -> BigRational {
    BigRational::new(BigInt::from(*f.numer()), BigInt::from(*f.denom()))
}

/// Shorthand for the exact rational `p/q`.
pub fn q(p: i64, qd: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(qd))
}

pub fn big_to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Parses the `"p/q"` rendering produced by `BigRational`'s `Display`.
pub fn parse_big(s: &str) -> Option<BigRational> {
    BigRational::from_str(s.trim()).ok()
}

/// `round(frac * count)` with halves rounded up, exactly; `frac` must be nonnegative.
pub fn round_fraction_times(frac: &Fraction, count: u64) -> u64 {
    let p = *frac.numer() as i128;
    let qd = *frac.denom() as i128;
    debug_assert!(p >= 0 && qd > 0);
    let twice = 2 * p * count as i128 + qd;
    (twice / (2 * qd)) as u64
}

/// Largest number of edges in a `k`-partite graph on `n` vertices.
pub fn turan_edges(n: usize, k: usize) -> usize {
    if k == 0 {
        return 0;
    }
    let (base, extra) = (n / k, n % k);
    let total = n * n;
    let squares = extra * (base + 1) * (base + 1) + (k - extra) * base * base;
    (total - squares) / 2
}

/// `ceil(num/den * value)` over nonnegative integers.
pub fn ceil_fraction_of(num: usize, den: usize, value: usize) -> usize {
    (num * value).div_ceil(den)
}

/// Exact comparison helper: sign of a rational.
pub fn sign(x: &BigRational) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(feature = "serde")]
pub mod serde_fraction {
    //! Fractions serialize as `"p/q"` strings; numbers and decimal strings are accepted on input.
    use super::{parse_fraction, Fraction};
    use alloc::format;
    use alloc::string::{String, ToString};
    use serde::de::{self, Visitor};
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(f: &Fraction, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&f.to_string())
    }

    struct FractionVisitor;

    impl Visitor<'_> for FractionVisitor {
        type Value = Fraction;

        fn expecting(&self, f: &mut core::fmt::Formatter) -> core::fmt::Result {
            f.write_str("a fraction \"p/q\", a decimal string, or a number")
        }

        fn visit_str<E: de::Error>(self, v: &str) -> Result<Fraction, E> {
            parse_fraction(v).map_err(E::custom)
        }

        fn visit_string<E: de::Error>(self, v: String) -> Result<Fraction, E> {
            self.visit_str(&v)
        }

        fn visit_u64<E: de::Error>(self, v: u64) -> Result<Fraction, E> {
            Ok(Fraction::from_integer(v as i64))
        }

        fn visit_i64<E: de::Error>(self, v: i64) -> Result<Fraction, E> {
            Ok(Fraction::from_integer(v))
        }

        fn visit_f64<E: de::Error>(self, v: f64) -> Result<Fraction, E> {
            // shortest round-trip decimal, parsed exactly
            parse_fraction(&format!("{v}")).map_err(E::custom)
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Fraction, D::Error> {
        d.deserialize_any(FractionVisitor)
    }
}
