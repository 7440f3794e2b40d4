use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Measurement outcome over `len` qubits.
///
/// Qubit 0 is the leftmost character and the most significant bit of
/// [`Bitstring::index`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Bitstring {
    bits: Vec<bool>,
}

impl Bitstring {
    pub fn zeros(len: usize) -> Self {
        Self { bits: vec![false; len] }
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    pub fn from_index(len: usize, index: usize) -> Self {
        let bits = (0..len).map(|q| (index >> (len - 1 - q)) & 1 == 1).collect();
        Self { bits }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bit(&self, qubit: usize) -> bool {
        self.bits[qubit]
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn index(&self) -> usize {
        self.bits.iter().fold(0usize, |acc, &b| (acc << 1) | usize::from(b))
    }
}

impl FromStr for Bitstring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Input(format!("invalid bit character {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { bits })
    }
}

impl TryFrom<String> for Bitstring {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Bitstring> for String {
    fn from(b: Bitstring) -> String {
        b.to_string()
    }
}

impl fmt::Display for Bitstring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn big_endian_index() {
        let b: Bitstring = "010".parse().unwrap();
        assert_eq!(b.index(), 2);
        assert_eq!(Bitstring::from_index(3, 2), b);
        assert_eq!("11".parse::<Bitstring>().unwrap().index(), 3);
    }

    #[test]
    fn rejects_garbage() {
        assert!("01x".parse::<Bitstring>().is_err());
    }

    #[test]
    fn display_round_trip() {
        for i in 0..32 {
            let b = Bitstring::from_index(5, i);
            assert_eq!(b.to_string().parse::<Bitstring>().unwrap().index(), i);
        }
    }
}
