//! Serde helpers: big integers are written as JSON numbers when they fit in
//! an `i64` and as decimal strings otherwise. Both forms are accepted back.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

pub(crate) struct IntRef<'a>(pub &'a BigInt);

impl Serialize for IntRef<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.collect_str(self.0),
        }
    }
}

pub(crate) struct IntOwned(pub BigInt);

impl<'de> Deserialize<'de> for IntOwned {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = IntOwned;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a decimal string")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<IntOwned, E> {
                Ok(IntOwned(v.into()))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<IntOwned, E> {
                Ok(IntOwned(v.into()))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<IntOwned, E> {
                v.parse().map(IntOwned).map_err(E::custom)
            }
        }
        d.deserialize_any(V)
    }
}

pub(crate) mod int {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        IntRef(v).serialize(s)
    }

    #[cfg_attr(not(test), allow(dead_code))]
    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        Ok(IntOwned::deserialize(d)?.0)
    }
}

pub(crate) mod int_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for x in v {
            seq.serialize_element(&IntRef(x))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = Vec<BigInt>;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a list of integers")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Vec<BigInt>, A::Error> {
                let mut out = Vec::new();
                while let Some(IntOwned(x)) = seq.next_element()? {
                    out.push(x);
                }
                Ok(out)
            }
        }
        d.deserialize_seq(V)
    }
}

pub(crate) mod int_array {
    use super::*;

    pub fn serialize<S: Serializer, const K: usize>(v: &[BigInt; K], s: S) -> Result<S::Ok, S::Error> {
        int_vec::serialize(v, s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>, const K: usize>(d: D) -> Result<[BigInt; K], D::Error> {
        let v = int_vec::deserialize(d)?;
        let len = v.len();
        v.try_into()
            .map_err(|_| de::Error::invalid_length(len, &format!("{K} integers").as_str()))
    }
}

pub(crate) mod int_pair {
    use super::*;

    pub fn serialize<S: Serializer>(v: &(BigInt, BigInt), s: S) -> Result<S::Ok, S::Error> {
        (IntRef(&v.0), IntRef(&v.1)).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<(BigInt, BigInt), D::Error> {
        let (IntOwned(a), IntOwned(b)) = Deserialize::deserialize(d)?;
        Ok((a, b))
    }
}

/// Wrapper for a list of integers inside other containers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct IntList(pub Vec<BigInt>);

impl Serialize for IntList {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        int_vec::serialize(&self.0, s)
    }
}

impl<'de> Deserialize<'de> for IntList {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        int_vec::deserialize(d).map(IntList)
    }
}
