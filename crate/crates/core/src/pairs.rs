//! Serde helpers writing complex numbers as `[re, im]` pairs.

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub fn serialize<S: Serializer>(values: &[Complex64], s: S) -> Result<S::Ok, S::Error> {
    values
        .iter()
        .map(|z| [z.re, z.im])
        .collect::<Vec<_>>()
        .serialize(s)
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Complex64>, D::Error> {
    let raw = Vec::<[f64; 2]>::deserialize(d)?;
    Ok(raw
        .into_iter()
        .map(|[re, im]| Complex64::new(re, im))
        .collect())
}

/// Single complex value as a pair.
pub mod one {
    use super::*;

    pub fn serialize<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
        [z.re, z.im].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex64, D::Error> {
        let [re, im] = <[f64; 2]>::deserialize(d)?;
        Ok(Complex64::new(re, im))
    }
}
