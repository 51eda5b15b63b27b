use std::collections::BTreeSet;
use std::sync::Mutex;

use crate::arith::{log_len, monus};
use crate::error::{Error, Result};
use crate::strategy::{
    bound_uniform, Constructor, IndexedConstructor, LocalConstructor, Materialized, Prefix,
};
use crate::strings::Bits;

/// Evaluation budget for one `f(m)` table entry.
pub const BOUND_EVALUATIONS: u64 = 1 << 20;

fn top_position(n: u32) -> u64 {
    if n >= 63 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// `h_k(σ) = g(σ 0^{k ∸ |σ|})`.
pub struct WinningToIndexed<G> {
    pub g: G,
}

pub fn winning_to_indexed<G: Constructor>(g: G) -> WinningToIndexed<G> {
    WinningToIndexed { g }
}

impl<G: Constructor> IndexedConstructor for WinningToIndexed<G> {
    fn extension_at(&self, index: u64, prefix: &Prefix<'_>) -> Result<Bits> {
        let pad = monus(index, prefix.len());
        let tail = self.g.extension(&prefix.padded(pad))?;
        Ok(Bits::zeros(pad as usize).concat(&tail))
    }
}

/// Local form of [`WinningToIndexed`]; `g` is read at index 0.
pub struct WinningToIndexedLoc<G> {
    pub g: G,
}

pub fn winning_to_indexed_loc<G: LocalConstructor>(g: G) -> WinningToIndexedLoc<G> {
    WinningToIndexedLoc { g }
}

impl<G: LocalConstructor> LocalConstructor for WinningToIndexedLoc<G> {
    fn ext_bit(&self, index: u64, prefix: &Prefix<'_>, k: u64) -> Result<Option<bool>> {
        let pad = monus(index, prefix.len());
        if k == 0 {
            return Ok(None);
        }
        if k <= pad {
            return Ok(Some(false));
        }
        self.g.ext_bit(0, &prefix.padded(pad), k - pad)
    }

    /// Reads of `g` on `σ 0^{i ∸ |σ|}` that land inside `σ`.
    fn query_set(&self, n: u32, index: u64, k: u64) -> BTreeSet<u64> {
        let top = top_position(n);
        let inner = log_len(top.saturating_add(index));
        self.g
            .query_set(inner, 0, k)
            .into_iter()
            .filter(|&p| p >= 1 && p <= top)
            .collect()
    }
}

/// Player II built from an indexed family.
///
/// With `n = ⌈log₂(|σ|+1)⌉`, let `n₀` be the least `t ≤ n` such that no
/// `τ ⊑ σ` with `|τ| ≤ n` has `h_t(τ) ⊑ σ`. The move is `ext(h_{n₀}(σ))`, or
/// `0` when no such `t` exists or that extension is empty.
pub struct IndexedToWinning<H> {
    pub h: H,
}

pub fn indexed_to_winning<H: IndexedConstructor>(h: H) -> IndexedToWinning<H> {
    IndexedToWinning { h }
}

impl<H: IndexedConstructor> IndexedToWinning<H> {
    /// The index served at `σ`, if any.
    pub fn unmet_index(&self, prefix: &Prefix<'_>) -> Result<Option<u64>> {
        let n = u64::from(log_len(prefix.len()));
        for t in 0..=n {
            let mut met = false;
            for m in 0..=n.min(prefix.len()) {
                let w = self.h.extension_at(t, &prefix.truncated(m))?;
                if m + w.len() as u64 <= prefix.len() && continues(prefix, m, &w)? {
                    met = true;
                    break;
                }
            }
            if !met {
                return Ok(Some(t));
            }
        }
        Ok(None)
    }
}

fn continues(prefix: &Prefix<'_>, start: u64, w: &Bits) -> Result<bool> {
    for (offset, b) in w.iter().enumerate() {
        if prefix.bit(start + offset as u64 + 1)? != b {
            return Ok(false);
        }
    }
    Ok(true)
}

impl<H: IndexedConstructor> Constructor for IndexedToWinning<H> {
    fn extension(&self, prefix: &Prefix<'_>) -> Result<Bits> {
        let Some(t) = self.unmet_index(prefix)? else {
            return Ok(Bits::zeros(1));
        };
        let w = self.h.extension_at(t, prefix)?;
        Ok(if w.is_empty() { Bits::zeros(1) } else { w })
    }
}

/// Local player II built from a local family.
///
/// `B` is the largest `m ≥ 1` with `f(m) ≤ n`, where `f(m)` bounds `|h_t(τ)|`
/// for `t, |τ| ≤ m`. The search for `n₀` runs over `t ≤ B` and `|τ| ≤ B`, so
/// it only reads `σ[1..n]`. The move is `0 ext(h_{n₀}(σ0))`, or `0` alone when
/// there is no `n₀`.
pub struct IndexedToWinningLoc<H> {
    h: H,
    ext_cap: u64,
    max_m: u64,
    bounds: Mutex<Vec<u64>>,
}

pub fn indexed_to_winning_loc<H: LocalConstructor>(
    h: H,
    ext_cap: u64,
    max_m: u64,
) -> IndexedToWinningLoc<H> {
    IndexedToWinningLoc {
        h,
        ext_cap,
        max_m,
        bounds: Mutex::new(Vec::new()),
    }
}

impl<H: LocalConstructor> IndexedToWinningLoc<H> {
    /// `f(m)`, computed on demand and cached.
    pub fn bound(&self, m: u64) -> Result<u64> {
        if m == 0 || m > self.max_m {
            return Err(Error::guard("uniform bound argument", m, self.max_m));
        }
        let mut cache = self.bounds.lock().expect("bound cache poisoned");
        while (cache.len() as u64) < m {
            let next = cache.len() as u64 + 1;
            let family = Materialized {
                local: &self.h,
                cap: self.ext_cap,
            };
            cache.push(bound_uniform(&family, next, BOUND_EVALUATIONS)?);
        }
        Ok(cache[m as usize - 1])
    }

    /// `B` for `n`, capped at `max_m`; `None` when even `f(1) > n`.
    pub fn search_bound(&self, n: u64) -> Result<Option<u64>> {
        let mut best = None;
        for m in 1..=self.max_m {
            if self.bound(m)? > n {
                break;
            }
            best = Some(m);
        }
        Ok(best)
    }

    fn met(&self, t: u64, prefix: &Prefix<'_>, m: u64) -> Result<bool> {
        let tau = prefix.truncated(m);
        for k in 1..=self.ext_cap.saturating_add(1) {
            match self.h.ext_bit(t, &tau, k)? {
                None => return Ok(true),
                Some(_) if k > self.ext_cap => break,
                Some(b) => {
                    if m + k > prefix.len() || prefix.bit(m + k)? != b {
                        return Ok(false);
                    }
                }
            }
        }
        Err(Error::ExtensionCap { cap: self.ext_cap })
    }

    pub fn unmet_index(&self, prefix: &Prefix<'_>) -> Result<Option<u64>> {
        let n = u64::from(log_len(prefix.len()));
        let Some(b) = self.search_bound(n)? else {
            return Ok(None);
        };
        for t in 0..=b {
            let mut met = false;
            for m in 0..=b.min(prefix.len()) {
                if self.met(t, prefix, m)? {
                    met = true;
                    break;
                }
            }
            if !met {
                return Ok(Some(t));
            }
        }
        Ok(None)
    }
}

impl<H: LocalConstructor> LocalConstructor for IndexedToWinningLoc<H> {
    fn ext_bit(&self, _index: u64, prefix: &Prefix<'_>, k: u64) -> Result<Option<bool>> {
        match k {
            0 => Ok(None),
            1 => Ok(Some(false)),
            _ => match self.unmet_index(prefix)? {
                None => Ok(None),
                Some(t) => self.h.ext_bit(t, &prefix.padded(1), k - 1),
            },
        }
    }

    /// `{1, …, n} ∪ G_h(n + 1, n, k − 1)`, clipped to `σ`.
    fn query_set(&self, n: u32, _index: u64, k: u64) -> BTreeSet<u64> {
        let top = top_position(n);
        let mut out: BTreeSet<u64> = (1..=u64::from(n).min(top)).collect();
        if k >= 2 {
            out.extend(
                self.h
                    .query_set(n + 1, u64::from(n), k - 1)
                    .into_iter()
                    .filter(|&p| p >= 1 && p <= top),
            );
        }
        out
    }
}
