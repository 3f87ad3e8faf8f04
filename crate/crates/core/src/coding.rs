//! Elias delta code for positive integers.
//!
//! For `i` with `N = ⌊log₂ i⌋ + 1` significant bits and `L = ⌊log₂ N⌋`, the
//! codeword is `L` zeros, then `N` in binary (`L + 1` bits), then the low
//! `N - 1` bits of `i`. Codewords are written most significant bit first.
//! The transmitted message is the bare codeword with no padding.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A sequence of bits, most significant first.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Bits(Vec<bool>);

impl Bits {
    pub fn new() -> Self {
        Self(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, bit: bool) {
        self.0.push(bit);
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.0
    }

    /// Appends the low `width` bits of `value`, most significant first.
    fn push_int(&mut self, value: u64, width: u32) {
        for k in (0..width).rev() {
            self.0.push((value >> k) & 1 == 1);
        }
    }
}

impl From<Vec<bool>> for Bits {
    fn from(v: Vec<bool>) -> Self {
        Self(v)
    }
}

impl fmt::Display for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for Bits {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Decode(format!("invalid bit character {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Bits)
    }
}

/// Codeword length of `i` in bits, without building it.
pub fn elias_delta_len(i: u64) -> u32 {
    assert!(i >= 1, "Elias delta codes start at 1");
    let n = 64 - i.leading_zeros();
    let l = 31 - n.leading_zeros();
    2 * l + n
}

pub fn elias_delta_encode(i: u64) -> Result<Bits> {
    if i == 0 {
        return Err(Error::InvalidArgument("Elias delta cannot encode 0".into()));
    }
    let n = 64 - i.leading_zeros();
    let l = 31 - n.leading_zeros();
    let mut out = Bits(Vec::with_capacity((2 * l + n) as usize));
    out.push_int(0, l);
    out.push_int(n as u64, l + 1);
    out.push_int(i, n - 1);
    Ok(out)
}

/// Decodes one codeword from the front of `bits`; returns the value and the
/// number of bits consumed.
pub fn elias_delta_decode_prefix(bits: &[bool]) -> Result<(u64, usize)> {
    let l = bits.iter().take_while(|b| !**b).count();
    if l == bits.len() {
        return Err(Error::Decode("missing length prefix terminator".into()));
    }
    // N ≤ 64 needs at most 6 leading zeros.
    if l > 6 {
        return Err(Error::Decode(format!("length prefix of {l} zeros overflows u64")));
    }
    let mut pos = l;
    let mut n: u64 = 0;
    for _ in 0..=l {
        n = (n << 1) | bits[pos] as u64;
        pos += 1;
    }
    if n > 64 {
        return Err(Error::Decode(format!("codeword declares {n} significant bits")));
    }
    let tail = (n - 1) as usize;
    if bits.len() < pos + tail {
        return Err(Error::Decode(format!(
            "truncated codeword: need {} bits, have {}",
            pos + tail,
            bits.len()
        )));
    }
    let mut value: u64 = 1;
    for &b in &bits[pos..pos + tail] {
        value = (value << 1) | b as u64;
    }
    Ok((value, pos + tail))
}

/// Decodes a complete message; trailing bits are an error.
pub fn elias_delta_decode(bits: &Bits) -> Result<u64> {
    let (value, used) = elias_delta_decode_prefix(bits.as_slice())?;
    if used != bits.len() {
        return Err(Error::Decode(format!(
            "{} trailing bits after codeword",
            bits.len() - used
        )));
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn known_codewords() {
        assert_eq!(elias_delta_encode(1).unwrap().to_string(), "1");
        assert_eq!(elias_delta_encode(2).unwrap().to_string(), "0100");
        assert_eq!(elias_delta_encode(15).unwrap().to_string(), "00100111");
        assert_eq!(elias_delta_encode(17).unwrap().to_string(), "001010001");
        assert_eq!(elias_delta_len(1), 1);
        assert_eq!(elias_delta_len(2), 4);
        assert_eq!(elias_delta_len(15), 8);
    }

    #[test]
    fn extremes() {
        let bits = elias_delta_encode(u64::MAX).unwrap();
        assert_eq!(bits.len() as u32, elias_delta_len(u64::MAX));
        assert_eq!(elias_delta_decode(&bits).unwrap(), u64::MAX);
        assert!(elias_delta_encode(0).is_err());
    }

    #[test]
    fn malformed_inputs() {
        let bad = |s: &str| elias_delta_decode(&s.parse().unwrap());
        assert!(matches!(bad(""), Err(Error::Decode(_))));
        assert!(bad("000").is_err());
        assert!(bad("010").is_err()); // truncated tail
        assert!(bad("11").is_err()); // trailing bit
        assert!(bad("0000000").is_err()); // overflowing prefix
        assert!(bad("00000011000001").is_err()); // N = 65
        assert!("01x".parse::<Bits>().is_err());
    }

    #[test]
    fn kraft_sum_is_at_most_one() {
        let kraft: f64 = (1..=1u64 << 16).map(|i| 0.5f64.powi(elias_delta_len(i) as i32)).sum();
        assert!(kraft <= 1.0, "{kraft}");
    }

    proptest! {
        #[test]
        fn round_trip(i in 1u64..) {
            let bits = elias_delta_encode(i).unwrap();
            prop_assert_eq!(bits.len() as u32, elias_delta_len(i));
            prop_assert_eq!(elias_delta_decode(&bits).unwrap(), i);
        }

        #[test]
        fn concatenations_split_uniquely(xs in proptest::collection::vec(1u64..1_000_000, 1..20)) {
            let mut stream = Vec::new();
            for &x in &xs {
                stream.extend_from_slice(elias_delta_encode(x).unwrap().as_slice());
            }
            let mut pos = 0;
            for &x in &xs {
                let (v, used) = elias_delta_decode_prefix(&stream[pos..]).unwrap();
                prop_assert_eq!(v, x);
                pos += used;
            }
            prop_assert_eq!(pos, stream.len());
        }
    }
}
