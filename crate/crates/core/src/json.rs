//! Serde helpers: integers travel as decimal strings on output and are
//! accepted either as strings or as plain JSON numbers on input.

use serde::de::{self, Deserializer};
use serde::{Deserialize, Serializer};

#[derive(Deserialize)]
#[serde(untagged)]
enum Repr {
    Str(String),
    Int(u64),
}

fn parse<E: de::Error>(r: Repr) -> Result<u64, E> {
    match r {
        Repr::Int(v) => Ok(v),
        Repr::Str(s) => s
            .trim()
            .parse()
            .map_err(|_| E::custom(format!("`{s}` is not a nonnegative decimal integer"))),
    }
}

pub mod u64_str {
    use super::*;

    pub fn serialize<S: Serializer>(v: &u64, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<u64, D::Error> {
        parse(Repr::deserialize(d)?)
    }
}

pub mod opt_u64_str {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<u64>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => s.serialize_str(&v.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<u64>, D::Error> {
        Option::<Repr>::deserialize(d)?.map(parse).transpose()
    }
}

pub mod usize_str {
    use super::*;

    pub fn serialize<S: Serializer>(v: &usize, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<usize, D::Error> {
        parse(Repr::deserialize(d)?).map(|v| v as usize)
    }
}

pub mod opt_usize_str {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<usize>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => s.serialize_str(&v.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<usize>, D::Error> {
        Ok(Option::<Repr>::deserialize(d)?
            .map(parse)
            .transpose()?
            .map(|v| v as usize))
    }
}
