//! Binary strings and the standard length-lexicographic enumeration
//! `s_0 = λ, s_1 = 0, s_2 = 1, s_3 = 00, ...`.
//!
//! Characteristic sequences are indexed from 1: position `p` of `χ_L` holds
//! the membership bit of `s_{p-1}`. The string whose bit follows a prefix of
//! length `m` is therefore `s_m`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A finite binary string, indexed from 1 in the public API.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Bits(Vec<bool>);

impl Bits {
    pub fn new() -> Self {
        Bits(Vec::new())
    }

    pub fn from_vec(bits: Vec<bool>) -> Self {
        Bits(bits)
    }

    pub fn zeros(len: usize) -> Self {
        Bits(vec![false; len])
    }

    pub fn ones(len: usize) -> Self {
        Bits(vec![true; len])
    }

    /// The `width` low-order bits of `value`, most significant first.
    pub fn from_uint(value: u64, width: u32) -> Self {
        Bits((0..width).rev().map(|b| (value >> b) & 1 == 1).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// 1-based access; `None` outside `1..=len`.
    pub fn get(&self, position: u64) -> Option<bool> {
        if position == 0 {
            return None;
        }
        self.0.get((position - 1) as usize).copied()
    }

    /// 1-based access where everything past the end reads as 0.
    pub fn bit_or_zero(&self, position: u64) -> bool {
        self.get(position).unwrap_or(false)
    }

    pub fn push(&mut self, bit: bool) {
        self.0.push(bit);
    }

    pub fn extend_from(&mut self, other: &Bits) {
        self.0.extend_from_slice(&other.0);
    }

    pub fn concat(&self, other: &Bits) -> Bits {
        let mut out = self.clone();
        out.extend_from(other);
        out
    }

    /// First `len` bits (or the whole string if shorter).
    pub fn prefix(&self, len: usize) -> Bits {
        Bits(self.0[..len.min(self.0.len())].to_vec())
    }

    /// `self ⊑ other`.
    pub fn is_prefix_of(&self, other: &Bits) -> bool {
        other.0.starts_with(&self.0)
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        self.0.iter().copied()
    }

    pub fn count_ones(&self) -> usize {
        self.0.iter().filter(|b| **b).count()
    }

    /// Value of the string read as a binary numeral (most significant bit first).
    ///
    /// Only meaningful for strings of at most 64 bits.
    pub fn to_uint(&self) -> u64 {
        self.0
            .iter()
            .fold(0u64, |acc, b| (acc << 1) | u64::from(*b))
    }

    /// All strings of length `len` in lexicographic order.
    pub fn all_of_length(len: u32) -> impl Iterator<Item = Bits> {
        (0..1u64 << len).map(move |v| Bits::from_uint(v, len))
    }

    /// All strings of length at most `max_len` in length-lexicographic order.
    pub fn all_up_to(max_len: u32) -> impl Iterator<Item = Bits> {
        (0..=max_len).flat_map(Bits::all_of_length)
    }
}

impl From<Vec<bool>> for Bits {
    fn from(v: Vec<bool>) -> Self {
        Bits(v)
    }
}

impl FromIterator<bool> for Bits {
    fn from_iter<I: IntoIterator<Item = bool>>(iter: I) -> Self {
        Bits(iter.into_iter().collect())
    }
}

impl FromStr for Bits {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Parse(format!(
                    "unexpected character {other:?} in bit string"
                ))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Bits)
    }
}

impl fmt::Display for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            f.write_str(if *b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            f.write_str("λ")
        } else {
            write!(f, "\"{self}\"")
        }
    }
}

/// Length-then-lexicographic order (the `x ≤ y` order on strings).
impl Ord for Bits {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Bits {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `s_i`: the string of rank `i` in the standard enumeration.
pub fn rank_to_string(rank: u64) -> Bits {
    let len = (rank + 1).ilog2();
    Bits::from_uint(rank + 1 - (1u64 << len), len)
}

/// `pos(x)`: `2^|x| - 1` plus the lexicographic index of `x` among strings of its length.
///
/// Strings of 64 bits or more have no `u64` rank.
pub fn string_to_rank(x: &Bits) -> u64 {
    assert!(
        x.len() < 64,
        "rank of a {}-bit string does not fit in u64",
        x.len()
    );
    (1u64 << x.len()) - 1 + x.to_uint()
}

/// The string whose membership bit sits at 1-based position `p` of a characteristic sequence.
pub fn string_at_position(position: u64) -> Bits {
    assert!(position >= 1, "characteristic positions start at 1");
    rank_to_string(position - 1)
}

/// 1-based position of `x`'s membership bit.
pub fn position_of(x: &Bits) -> u64 {
    string_to_rank(x) + 1
}

/// Rank of the first string of length `len`.
pub fn first_rank_of_length(len: u32) -> u64 {
    (1u64 << len) - 1
}
