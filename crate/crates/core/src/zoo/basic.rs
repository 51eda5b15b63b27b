use std::collections::BTreeSet;

use crate::error::Result;
use crate::language::{census, LanguageOracle, Polynomial};
use crate::strategy::{Constructor, IndexedConstructor, LocalConstructor, Prefix};
use crate::strings::{rank_to_string, Bits};

/// `ext(h(σ)) = 1 − L(s_{|σ|})`: flips the next membership bit of `L`.
#[derive(Debug, Clone)]
pub struct SingletonAvoider {
    lang: LanguageOracle,
}

pub fn singleton_avoider(lang: LanguageOracle) -> SingletonAvoider {
    SingletonAvoider { lang }
}

impl SingletonAvoider {
    fn flipped(&self, len: u64) -> Result<bool> {
        Ok(!self.lang.member(&rank_to_string(len))?)
    }
}

impl Constructor for SingletonAvoider {
    fn extension(&self, prefix: &Prefix<'_>) -> Result<Bits> {
        Ok(Bits::from_vec(vec![self.flipped(prefix.len())?]))
    }
}

/// The singleton avoider as a local family: one bit, no reads of `σ`.
impl LocalConstructor for SingletonAvoider {
    fn ext_bit(&self, _index: u64, prefix: &Prefix<'_>, k: u64) -> Result<Option<bool>> {
        if k == 1 {
            Ok(Some(self.flipped(prefix.len())?))
        } else {
            Ok(None)
        }
    }

    fn query_set(&self, _n: u32, _index: u64, _k: u64) -> BTreeSet<u64> {
        BTreeSet::new()
    }
}

/// Pads `σ` with `|σ|` ones.
#[derive(Debug, Clone, Copy, Default)]
pub struct SparseAvoider;

pub fn sparse_avoider() -> SparseAvoider {
    SparseAvoider
}

impl LocalConstructor for SparseAvoider {
    fn ext_bit(&self, _index: u64, prefix: &Prefix<'_>, k: u64) -> Result<Option<bool>> {
        Ok((k >= 1 && k <= prefix.len()).then_some(true))
    }

    fn query_set(&self, _n: u32, _index: u64, _k: u64) -> BTreeSet<u64> {
        BTreeSet::new()
    }
}

/// Local fixture that reads `σ`: `ext(h_i(σ))[k] = 1 − σ[k]` for `k ≤ i + 1`.
#[derive(Debug, Clone, Copy, Default)]
pub struct EchoFlip;

impl LocalConstructor for EchoFlip {
    fn ext_bit(&self, index: u64, prefix: &Prefix<'_>, k: u64) -> Result<Option<bool>> {
        if k == 0 || k > index + 1 {
            return Ok(None);
        }
        Ok(Some(!prefix.bit(k)?))
    }

    /// `{1, …, min(k, 2^n − 1)}`: a prefix with `⌈log₂(|σ|+1)⌉ ≤ n` has at most `2^n − 1` bits.
    fn query_set(&self, n: u32, _index: u64, k: u64) -> BTreeSet<u64> {
        let top = if n >= 63 { u64::MAX } else { (1u64 << n) - 1 };
        (1..=k.min(top)).collect()
    }
}

/// `h_i(τ) = τ 1^i`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Ones;

impl IndexedConstructor for Ones {
    fn extension_at(&self, index: u64, _prefix: &Prefix<'_>) -> Result<Bits> {
        Ok(Bits::ones(index as usize))
    }
}

/// `h_t` = singleton avoider of `{s_t}`.
#[derive(Debug, Clone, Copy, Default)]
pub struct SingletonFamily;

impl IndexedConstructor for SingletonFamily {
    fn extension_at(&self, index: u64, prefix: &Prefix<'_>) -> Result<Bits> {
        Ok(Bits::from_vec(vec![prefix.len() != index]))
    }
}

/// `h_{⟨i,j⟩}(τ) = τ 1^i 0^j`, through Cantor pairing.
pub fn paired_ones_zeros() -> impl IndexedConstructor {
    crate::strategy::union_combine(|i, j, _: &Prefix<'_>| {
        Ok(Bits::ones(i as usize).concat(&Bits::zeros(j as usize)))
    })
}

/// Smallest `m ≤ limit` such that for every `m' ∈ [m, limit]` the window of
/// ranks `[m', 2m' − 1]` contains more than `p(n)` strings of some length `n`.
///
/// Past this threshold `τ 1^{|τ|}` cannot be a prefix of any language with
/// census bounded by `p`.
pub fn sparse_threshold(p: &Polynomial, limit: u64) -> u64 {
    let overflows = |m: u64| -> bool {
        if m == 0 {
            return false;
        }
        let (lo, hi) = (m, 2 * m - 1);
        let mut n = (lo + 1).ilog2();
        loop {
            let first = (1u64 << n) - 1;
            if first > hi {
                return false;
            }
            let last = (1u64 << (n + 1)) - 2;
            let covered = hi.min(last) - lo.max(first) + 1;
            if covered > p.eval(u64::from(n)) {
                return true;
            }
            n += 1;
        }
    };
    let mut threshold = limit + 1;
    for m in (0..=limit).rev() {
        if !overflows(m) {
            break;
        }
        threshold = m;
    }
    threshold
}

/// Whether `|L^{=n}| ≤ p(n)` for every `n ≤ max_len`.
pub fn census_within(lang: &LanguageOracle, p: &Polynomial, max_len: u32) -> Result<bool> {
    for n in 0..=max_len {
        if census(lang, n)? > p.eval(u64::from(n)) {
            return Ok(false);
        }
    }
    Ok(true)
}
