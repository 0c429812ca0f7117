//! Exact rational helpers: JSON encoding and the planar target comparison.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

/// `p/q`, or `p` for integers.
pub fn to_text(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_text(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let q: BigInt = q.trim().parse().ok()?;
            if q == BigInt::from(0) {
                return None;
            }
            Some(BigRational::new(p.trim().parse().ok()?, q))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

/// Decimal rendering for display only.
pub fn approx(r: &BigRational) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

#[derive(Serialize, Deserialize)]
struct JsonRatio {
    num: Value,
    den: Value,
}

fn int_value(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::from(x.to_string()),
    }
}

fn value_int(v: &Value) -> Option<BigInt> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from).or_else(|| n.as_u64().map(BigInt::from)),
        Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

/// `{"num": p, "den": q}`; integers too large for JSON numbers become
/// decimal strings.
pub fn to_json(r: &BigRational) -> Value {
    serde_json::to_value(JsonRatio { num: int_value(r.numer()), den: int_value(r.denom()) })
        .expect("plain JSON")
}

pub fn from_json(v: &Value) -> Option<BigRational> {
    let num = value_int(v.get("num")?)?;
    let den = value_int(v.get("den")?)?;
    if den.is_positive() {
        Some(BigRational::new(num, den))
    } else {
        None
    }
}

/// Serde adapter: `#[serde(with = "crate::rational::json")]`.
pub mod json {
    use super::*;

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        to_json(r).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let v = Value::deserialize(d)?;
        from_json(&v).ok_or_else(|| D::Error::custom(format!("bad rational {v}")))
    }
}

/// Whether `x >= (5/2)^(n/4 - 1/2)`, decided as `x^4 * 2^(n-2) >= 5^(n-2)`.
pub fn meets_planar_target(x: &BigRational, n: usize) -> bool {
    if x.is_negative() {
        return false;
    }
    let e = n.saturating_sub(2) as u32;
    let lhs = x.numer().pow(4) * BigInt::from(2).pow(e);
    let rhs = BigInt::from(5).pow(e) * x.denom().pow(4);
    lhs >= rhs
}

pub fn nu_meets_planar_target(nu: &BigUint, n: usize) -> bool {
    meets_planar_target(&BigRational::from_integer(BigInt::from(nu.clone())), n)
}

/// `(5/2)^(n/4 - 1/2)` as a float, for display.
pub fn planar_target_approx(n: usize) -> f64 {
    2.5f64.powf(n as f64 / 4.0 - 0.5)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    #[test]
    fn text_and_json() {
        assert_eq!(to_text(&r(6, 4)), "3/2");
        assert_eq!(to_text(&r(4, 1)), "4");
        assert_eq!(parse_text("3/2"), Some(r(3, 2)));
        assert_eq!(parse_text("7"), Some(r(7, 1)));
        assert_eq!(parse_text("1/0"), None);
        let big = BigRational::from_integer(BigInt::from(10).pow(30));
        assert_eq!(from_json(&to_json(&big)), Some(big));
        assert_eq!(from_json(&to_json(&r(-5, 2))), Some(r(-5, 2)));
    }

    #[test]
    fn planar_target() {
        // theta: 1 >= (5/2)^0
        assert!(meets_planar_target(&r(1, 1), 2));
        assert!(!meets_planar_target(&r(99, 100), 2));
        // K4: 2 >= 1.58.., 3/2 < 1.58..
        assert!(meets_planar_target(&r(2, 1), 4));
        assert!(!meets_planar_target(&r(3, 2), 4));
        // n = 10: target is exactly (5/2)^2
        assert!(meets_planar_target(&r(25, 4), 10));
        assert!(!meets_planar_target(&r(24, 4), 10));
    }
}
