use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::language::LanguageOracle;
use crate::strategy::{
    bound_extension_sizes, materialize_view, BitSource, EnumerationCap, IndexedConstructor,
    LocalConstructor, Prefix, QueryLog,
};
use crate::strings::{position_of, string_at_position, Bits};

/// Largest string length the global diagonal language answers for.
pub const GLOBAL_MAX_LEN: u32 = 24;

/// The language `B₀ B₁ B₂ …` with `B₀ = 0` and `B_i = ext(h_i(B₀…B_{i−1}))`
/// padded with zeros to `2^i` bits, so block `i` holds the strings of length `i`.
pub struct DiagGlobal<H> {
    h: H,
}

pub fn diag_language_global<H: IndexedConstructor>(h: H) -> DiagGlobal<H> {
    DiagGlobal { h }
}

/// Answers reads of the prefix `B₀…B_{i−1}` from the unpadded blocks.
struct BlockSource<'a> {
    blocks: &'a [Bits],
}

impl BitSource for BlockSource<'_> {
    fn bit(&self, position: u64) -> Result<bool> {
        let x = string_at_position(position);
        let len = x.len();
        if len == 0 || len >= self.blocks.len() {
            return Ok(false);
        }
        Ok(self.blocks[len].bit_or_zero(x.to_uint() + 1))
    }
}

impl<H: IndexedConstructor> DiagGlobal<H> {
    fn block(&self, i: u32, blocks: &[Bits]) -> Result<Bits> {
        let source = BlockSource { blocks };
        let log = QueryLog::new();
        let view = Prefix::from_source(&source, (1u64 << i) - 1, &log);
        let w = self.h.extension_at(u64::from(i), &view)?;
        let capacity = 1u64 << i;
        if w.len() as u64 > capacity {
            return Err(Error::ExtensionOverflow {
                block: u64::from(i),
                len: w.len() as u64,
                capacity,
            });
        }
        Ok(w)
    }

    /// `B₀ … B_last`, padded, built block by block.
    pub fn direct_prefix(&self, last: u32) -> Result<Bits> {
        if last > GLOBAL_MAX_LEN {
            return Err(Error::guard("diagonal block", last, GLOBAL_MAX_LEN));
        }
        let mut out = Bits::zeros(1);
        let mut blocks = vec![Bits::zeros(1)];
        for i in 1..=last {
            let w = self.block(i, &blocks)?;
            let mut padded = w.clone();
            padded.extend_from(&Bits::zeros((1usize << i) - w.len()));
            out.extend_from(&padded);
            blocks.push(w);
        }
        Ok(out)
    }

    /// Membership of `x` by recomputing `B̄₁ … B̄_{|x|}` and reading `B̄_{|x|}`.
    pub fn member(&self, x: &Bits) -> Result<bool> {
        let n = x.len() as u32;
        if n > GLOBAL_MAX_LEN {
            return Err(Error::guard("diagonal string length", n, GLOBAL_MAX_LEN));
        }
        if n == 0 {
            return Ok(false);
        }
        let mut blocks = vec![Bits::zeros(1)];
        for i in 1..=n {
            let w = self.block(i, &blocks)?;
            blocks.push(w);
        }
        Ok(blocks[n as usize].bit_or_zero(x.to_uint() + 1))
    }
}

impl<H: IndexedConstructor + 'static> DiagGlobal<H> {
    pub fn into_language(self) -> LanguageOracle {
        let me = Arc::new(self);
        LanguageOracle::fallible("diag-global", move |x| me.member(x))
    }
}

/// The language whose block `i` (positions `F(i−1)+1 ..= F(i)`, where
/// `F(j) = f(0)+…+f(j)`) is `ext(h_i(B₀…B_{i−1}))` padded to `f(i)` bits,
/// with `⊥` read as 0.
pub struct DiagLocal<H> {
    h: H,
    sizes: Vec<u64>,
    ends: Vec<u64>,
    memo: Mutex<HashMap<u64, bool>>,
}

pub fn diag_language_local<H: LocalConstructor>(
    h: H,
    i_max: u64,
    cap: EnumerationCap,
) -> Result<DiagLocal<H>> {
    let sizes = bound_extension_sizes(&h, i_max, cap)?;
    let ends = sizes
        .iter()
        .scan(0u64, |acc, &f| {
            *acc += f;
            Some(*acc)
        })
        .collect();
    Ok(DiagLocal {
        h,
        sizes,
        ends,
        memo: Mutex::new(HashMap::new()),
    })
}

impl<H: LocalConstructor> DiagLocal<H> {
    /// `f(0..=i_max)`.
    pub fn sizes(&self) -> &[u64] {
        &self.sizes
    }

    /// Number of positions covered.
    pub fn len(&self) -> u64 {
        *self.ends.last().expect("f(0) is always present")
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `(i(x), rpos(x))` for the string at 1-based `position`; `rpos` is 0-based.
    pub fn locate(&self, position: u64) -> Result<(u64, u64)> {
        if position == 0 || position > self.len() {
            return Err(Error::guard("diagonal position", position, self.len()));
        }
        let i = self
            .ends
            .iter()
            .position(|&e| position <= e)
            .expect("position is covered");
        let start = if i == 0 { 0 } else { self.ends[i - 1] };
        Ok((i as u64, position - 1 - start))
    }

    /// Bit at `position`, answering the strategy's reads recursively.
    pub fn bit_at(&self, position: u64) -> Result<bool> {
        if let Some(&b) = self.memo.lock().expect("memo poisoned").get(&position) {
            return Ok(b);
        }
        let (i, rpos) = self.locate(position)?;
        let b = if i == 0 {
            false
        } else {
            let source = |q: u64| self.bit_at(q);
            let log = QueryLog::new();
            let view = Prefix::from_source(&source, self.ends[i as usize - 1], &log);
            self.h.ext_bit(i, &view, rpos + 1)?.unwrap_or(false)
        };
        self.memo.lock().expect("memo poisoned").insert(position, b);
        Ok(b)
    }

    pub fn member(&self, x: &Bits) -> Result<bool> {
        self.bit_at(position_of(x))
    }

    /// All blocks, built in order from materialized extensions.
    pub fn direct_prefix(&self) -> Result<Bits> {
        let mut out = Bits::zeros(1);
        for i in 1..self.sizes.len() {
            let f = self.sizes[i];
            let log = QueryLog::new();
            let view = Prefix::new(&out, &log);
            let w = materialize_view(&self.h, i as u64, &view, f).map_err(|e| match e {
                Error::ExtensionCap { .. } => Error::ExtensionOverflow {
                    block: i as u64,
                    len: f + 1,
                    capacity: f,
                },
                other => other,
            })?;
            let mut padded = w.clone();
            padded.extend_from(&Bits::zeros((f - w.len() as u64) as usize));
            out.extend_from(&padded);
        }
        Ok(out)
    }
}

impl<H: LocalConstructor + 'static> DiagLocal<H> {
    pub fn into_language(self) -> LanguageOracle {
        let me = Arc::new(self);
        LanguageOracle::fallible("diag-local", move |x| me.member(x))
    }
}
