//! Lossless JSON encodings for arbitrary-precision integers: values that fit
//! in `i64` are plain numbers, larger ones are decimal strings.

use num_bigint::BigInt;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

pub(crate) fn big_from_json(v: &Value) -> Result<BigInt, String> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .or_else(|| n.as_u64().map(BigInt::from))
            .ok_or_else(|| format!("{} is not an integer", n)),
        Value::String(s) => s.trim().parse::<BigInt>().map_err(|_| format!("{:?} is not an integer", s)),
        other => Err(format!("{} is not an integer", other)),
    }
}

pub(crate) fn big_vec_from_json(v: &Value) -> Result<Vec<BigInt>, String> {
    v.as_array()
        .ok_or_else(|| format!("{} is not an array", v))?
        .iter()
        .map(big_from_json)
        .collect()
}

pub(crate) fn big_vec_to_json(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(crate::exactlin::big_to_json).collect())
}

pub(crate) fn big_vecs<S: Serializer>(v: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
    Value::Array(v.iter().map(|x| big_vec_to_json(x)).collect()).serialize(s)
}

pub(crate) mod big_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        big_vec_to_json(v).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let v = Value::deserialize(d)?;
        big_vec_from_json(&v).map_err(D::Error::custom)
    }
}

pub(crate) mod big {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        crate::exactlin::big_to_json(v).serialize(s)
    }
}
