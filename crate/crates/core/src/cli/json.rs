//! Serde helpers shared by the JSON outputs.

use serde::Serializer;

use num_bigint::BigInt;

use crate::algebra::{rat, MPoly, Rat};

pub fn polys<S: Serializer>(ps: &[MPoly], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(ps.iter().map(ToString::to_string))
}

pub fn rational<S: Serializer>(x: &Rat, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&rat::to_string(x))
}

pub fn rationals<S: Serializer>(xs: &[Rat], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(rat::to_string))
}

pub fn integer_rows<S: Serializer>(rows: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(
        rows.iter()
            .map(|row| row.iter().map(ToString::to_string).collect::<Vec<_>>()),
    )
}

pub fn bigint<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}
