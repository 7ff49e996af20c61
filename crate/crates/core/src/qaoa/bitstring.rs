use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Measurement outcome; character `j` is qubit `j + 1`, the most significant bit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bitstring(Vec<bool>);

impl Bitstring {
    pub fn new(bits: Vec<bool>) -> Self {
        Self(bits)
    }

    pub fn zeros(n: usize) -> Self {
        Self(vec![false; n])
    }

    /// Reads `index` as an `n`-bit integer with qubit 1 in the high bit.
    pub fn from_index(index: usize, n: usize) -> Self {
        Self((0..n).map(|q| index >> (n - 1 - q) & 1 == 1).collect())
    }

    pub fn index(&self) -> usize {
        self.0.iter().fold(0, |acc, &b| acc << 1 | b as usize)
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Bitstring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for Bitstring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::InvalidInput(format!("bad bit {other:?} in {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Bitstring)
    }
}

impl Serialize for Bitstring {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Bitstring {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_qubit_is_high_bit() {
        let b: Bitstring = "100110".parse().unwrap();
        assert_eq!(b.index(), 38);
        assert_eq!(Bitstring::from_index(38, 6), b);
        assert_eq!(Bitstring::from_index(1, 3).to_string(), "001");
        assert!("01x".parse::<Bitstring>().is_err());
    }
}
