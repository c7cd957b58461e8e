//! Exact integers, rationals and truncated power series.
//!
//! Everything here is arbitrary precision. Cohomology dimensions and Hilbert
//! function values are carried as [`BigUint`], Chow-ring coefficients as
//! [`Rational`].

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Reduced fraction with positive denominator.
pub type Rational = BigRational;

/// `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binomial(n: u64, k: i64) -> BigUint {
    if k < 0 || k as u64 > n {
        return BigUint::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Numerator degrees and denominator weights of the rational function
/// `∏_j (1 − q^{d_j}) / ∏_i (1 − q^{a_i})`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesSpec {
    pub numerator_degrees: Vec<u64>,
    pub denominator_weights: Vec<u64>,
}

impl SeriesSpec {
    pub fn new(numerator_degrees: Vec<u64>, denominator_weights: Vec<u64>) -> Self {
        debug_assert!(numerator_degrees.iter().chain(&denominator_weights).all(|&x| x >= 1));
        Self {
            numerator_degrees,
            denominator_weights,
        }
    }

    /// Coefficients of `q^0 ..= q^t`. Empty for negative `t`.
    pub fn coeffs_upto(&self, t: i64) -> Vec<BigInt> {
        if t < 0 {
            return Vec::new();
        }
        let len = t as usize + 1;
        let mut c = vec![BigInt::zero(); len];
        c[0] = BigInt::one();
        // 1 / (1 - q^a): running sum with stride a
        for &a in &self.denominator_weights {
            let a = a as usize;
            for i in a..len {
                let prev = c[i - a].clone();
                c[i] += prev;
            }
        }
        // (1 - q^d): subtract shifted copy, top down
        for &d in &self.numerator_degrees {
            let d = d as usize;
            for i in (d..len).rev() {
                let prev = c[i - d].clone();
                c[i] -= prev;
            }
        }
        c
    }

    /// Coefficient of `q^t`; zero for `t < 0`.
    pub fn coeff(&self, t: i64) -> BigInt {
        self.coeffs_upto(t).pop().unwrap_or_default()
    }
}

/// Coefficient of `q^t` in `∏(1 − q^{d_j}) / ∏(1 − q^{a_i})`.
///
/// Nonnegative whenever the degrees are those of a regular sequence in the
/// weighted polynomial ring, where it counts weighted monomials modulo the
/// sequence.
pub fn series_coeff(s: &SeriesSpec, t: i64) -> BigInt {
    s.coeff(t)
}

pub fn rational_from_ints(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rational_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

/// `"p/q"`, or `"p"` for integers.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Serde for [`Rational`]: integers as JSON numbers when they fit in `i64`,
/// everything else as a `"p/q"` string.
pub mod serde_rational {
    use super::*;
    use serde::de::Error;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        if r.is_integer() {
            if let Some(v) = r.numer().to_i64() {
                return s.serialize_i64(v);
            }
        }
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        match serde_json::Value::deserialize(d)? {
            serde_json::Value::Number(n) => {
                if let Some(i) = n.as_i64() {
                    Ok(rational_int(i))
                } else {
                    parse_rational(&n.to_string())
                        .ok_or_else(|| D::Error::custom("expected an exact integer or \"p/q\""))
                }
            }
            serde_json::Value::String(s) => {
                parse_rational(&s).ok_or_else(|| D::Error::custom(format!("bad rational {s:?}")))
            }
            other => Err(D::Error::custom(format!("expected rational, got {other}"))),
        }
    }

    pub mod vec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
            struct One<'a>(&'a Rational);
            impl Serialize for One<'_> {
                fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                    super::serialize(self.0, s)
                }
            }
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for r in v {
                seq.serialize_element(&One(r))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
            Vec::<serde_json::Value>::deserialize(d)?
                .into_iter()
                .map(|v| super::deserialize(v).map_err(D::Error::custom))
                .collect()
        }
    }

    pub mod option {
        use super::*;

        pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
            match r {
                Some(r) => super::serialize(r, s),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
            match Option::<serde_json::Value>::deserialize(d)? {
                None | Some(serde_json::Value::Null) => Ok(None),
                Some(v) => super::deserialize(v).map(Some).map_err(D::Error::custom),
            }
        }
    }
}

/// Serde for [`BigUint`]: JSON number when it fits in `u64`, decimal string otherwise.
pub mod serde_biguint {
    use super::*;
    use serde::de::Error;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(n: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        match n.to_u64() {
            Some(v) => s.serialize_u64(v),
            None => s.serialize_str(&n.to_string()),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        match serde_json::Value::deserialize(d)? {
            serde_json::Value::Number(n) => n
                .as_u64()
                .map(BigUint::from)
                .ok_or_else(|| D::Error::custom("expected a nonnegative integer")),
            serde_json::Value::String(s) => s.parse().map_err(|_| D::Error::custom(format!("bad integer {s:?}"))),
            other => Err(D::Error::custom(format!("expected integer, got {other}"))),
        }
    }

    pub mod option {
        use super::*;

        pub fn serialize<S: Serializer>(n: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
            match n {
                Some(n) => super::serialize(n, s),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigUint>, D::Error> {
            match Option::<serde_json::Value>::deserialize(d)? {
                None | Some(serde_json::Value::Null) => Ok(None),
                Some(v) => super::deserialize(v).map(Some).map_err(D::Error::custom),
            }
        }
    }
}

/// `BigInt -> BigUint`, `None` when negative.
pub fn to_natural(n: &BigInt) -> Option<BigUint> {
    if n.is_negative() {
        None
    } else {
        n.to_biguint()
    }
}
