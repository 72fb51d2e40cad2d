use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A Reidemeister number: a positive integer or infinity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RNumber {
    Finite(BigUint),
    Infinite,
}

impl RNumber {
    /// `|d|`, or infinity for `d = 0`.
    pub fn from_signed(d: &BigInt) -> Self {
        Self::from_unsigned(super::abs_unsigned(d))
    }

    /// `v`, or infinity for `v = 0`; a zero count means infinitely many classes.
    pub fn from_unsigned(v: BigUint) -> Self {
        if v.is_zero() {
            RNumber::Infinite
        } else {
            RNumber::Finite(v)
        }
    }

    pub fn finite(v: u64) -> Self {
        assert!(v > 0, "Reidemeister numbers are positive");
        RNumber::Finite(BigUint::from(v))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, RNumber::Infinite)
    }

    pub fn as_u64(&self) -> Option<u64> {
        match self {
            RNumber::Finite(v) => v.to_u64(),
            RNumber::Infinite => None,
        }
    }

    /// Sum of a nonempty sequence, absorbing infinity.
    pub fn sum(terms: impl IntoIterator<Item = RNumber>) -> RNumber {
        let mut iter = terms.into_iter();
        let first = iter.next().expect("sum of an empty sequence");
        iter.fold(first, |acc, x| acc + x)
    }
}

impl Add for RNumber {
    type Output = RNumber;

    fn add(self, rhs: RNumber) -> RNumber {
        match (self, rhs) {
            (RNumber::Finite(a), RNumber::Finite(b)) => RNumber::Finite(a + b),
            _ => RNumber::Infinite,
        }
    }
}

impl Mul for RNumber {
    type Output = RNumber;

    fn mul(self, rhs: RNumber) -> RNumber {
        match (self, rhs) {
            (RNumber::Finite(a), RNumber::Finite(b)) => RNumber::Finite(a * b),
            _ => RNumber::Infinite,
        }
    }
}

impl fmt::Display for RNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RNumber::Finite(v) => write!(f, "{}", v),
            RNumber::Infinite => f.write_str("infinity"),
        }
    }
}

impl Serialize for RNumber {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            RNumber::Finite(v) => match v.to_u64() {
                Some(x) => serializer.serialize_u64(x),
                None => serializer.serialize_str(&v.to_string()),
            },
            RNumber::Infinite => serializer.serialize_str("infinity"),
        }
    }
}

impl<'de> Deserialize<'de> for RNumber {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let v = serde_json::Value::deserialize(deserializer)?;
        match &v {
            serde_json::Value::Number(n) => match n.as_u64() {
                Some(x) if x > 0 => Ok(RNumber::finite(x)),
                _ => Err(D::Error::custom("expected a positive integer")),
            },
            serde_json::Value::String(s) if s == "infinity" => Ok(RNumber::Infinite),
            serde_json::Value::String(s) => s
                .parse::<BigUint>()
                .ok()
                .filter(|x| !x.is_zero())
                .map(RNumber::Finite)
                .ok_or_else(|| D::Error::custom("expected a positive integer or \"infinity\"")),
            _ => Err(D::Error::custom("expected a positive integer or \"infinity\"")),
        }
    }
}
