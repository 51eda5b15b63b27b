use std::fmt;

use crate::error::{Error, Result};
use crate::language::LanguageOracle;
use crate::strings::Bits;

use super::{ext_of, ext_single, with_prefix, Constructor, IndexedConstructor, LocalConstructor};

/// Lazily grown characteristic prefix of a language.
pub struct ChiCache<'a> {
    lang: &'a LanguageOracle,
    bits: Bits,
}

impl<'a> ChiCache<'a> {
    pub fn new(lang: &'a LanguageOracle) -> Self {
        ChiCache {
            lang,
            bits: Bits::new(),
        }
    }

    /// `χ_L[p]`, 1-based.
    pub fn bit(&mut self, position: u64) -> Result<bool> {
        while (self.bits.len() as u64) < position {
            let next = self.bits.len() as u64 + 1;
            let b = self.lang.bit_at(next)?;
            self.bits.push(b);
        }
        Ok(self.bits.bit_or_zero(position))
    }

    pub fn prefix(&mut self, len: u64) -> Result<Bits> {
        if len > 0 {
            self.bit(len)?;
        }
        Ok(self.bits.prefix(len as usize))
    }

    /// Whether `w` continues `χ_L` from position `start + 1` on.
    pub fn continues_with(&mut self, start: u64, w: &Bits) -> Result<bool> {
        for (offset, b) in w.iter().enumerate() {
            if self.bit(start + offset as u64 + 1)? != b {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Result of searching for a prefix `τ ⊑ χ_L` with `h(τ) ⊑ χ_L`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Met { tau: Bits },
    NotMetUpTo { horizon: u64 },
}

impl Verdict {
    pub fn is_met(&self) -> bool {
        matches!(self, Verdict::Met { .. })
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Met { tau } => write!(f, "Met{{tau={tau:?}, |tau|={}}}", tau.len()),
            Verdict::NotMetUpTo { horizon } => write!(f, "NotMetUpTo{{{horizon}}}"),
        }
    }
}

/// The avoidance view of the same search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AvoidVerdict {
    AvoidsUpTo { horizon: u64 },
    FailsAt { tau: Bits },
}

/// Whether `h(τ) ⊑ χ_L`.
pub fn extends_into<C: Constructor + ?Sized>(
    h: &C,
    lang: &LanguageOracle,
    tau: &Bits,
) -> Result<bool> {
    let mut chi = ChiCache::new(lang);
    if chi.prefix(tau.len() as u64)? != *tau {
        return Ok(false);
    }
    let w = ext_single(h, tau)?;
    chi.continues_with(tau.len() as u64, &w)
}

/// Searches `τ ⊑ χ_L` with `|τ| ≤ horizon` for `h(τ) ⊑ χ_L`.
///
/// Only prefixes of `χ_L` need checking, because `h(τ) ⊑ χ_L` forces `τ ⊑ χ_L`.
pub fn meets_check<C: Constructor + ?Sized>(
    h: &C,
    lang: &LanguageOracle,
    horizon: u64,
) -> Result<Verdict> {
    meets_check_from(h, lang, 0, horizon)
}

/// [`meets_check`] restricted to `min_len ≤ |τ| ≤ horizon`.
pub fn meets_check_from<C: Constructor + ?Sized>(
    h: &C,
    lang: &LanguageOracle,
    min_len: u64,
    horizon: u64,
) -> Result<Verdict> {
    let mut chi = ChiCache::new(lang);
    for m in min_len..=horizon {
        let tau = chi.prefix(m)?;
        let w = ext_single(h, &tau)?;
        if chi.continues_with(m, &w)? {
            return Ok(Verdict::Met { tau });
        }
    }
    Ok(Verdict::NotMetUpTo { horizon })
}

/// [`meets_check`] for `h_i` of a local family, comparing extension bits lazily
/// so that long extensions are abandoned at their first disagreement with `χ_L`.
pub fn meets_check_local<H: LocalConstructor + ?Sized>(
    h: &H,
    index: u64,
    lang: &LanguageOracle,
    horizon: u64,
    cap: u64,
) -> Result<Verdict> {
    meets_check_local_from(h, index, lang, 0, horizon, cap)
}

pub fn meets_check_local_from<H: LocalConstructor + ?Sized>(
    h: &H,
    index: u64,
    lang: &LanguageOracle,
    min_len: u64,
    horizon: u64,
    cap: u64,
) -> Result<Verdict> {
    let mut chi = ChiCache::new(lang);
    for m in min_len..=horizon {
        let tau = chi.prefix(m)?;
        let met = with_prefix(&tau, |view| -> Result<bool> {
            for k in 1..=cap.saturating_add(1) {
                match h.ext_bit(index, view, k)? {
                    None => return Ok(true),
                    Some(_) if k > cap => break,
                    Some(b) => {
                        if chi.bit(m + k)? != b {
                            return Ok(false);
                        }
                    }
                }
            }
            Err(Error::ExtensionCap { cap })
        })?;
        if met {
            return Ok(Verdict::Met { tau });
        }
    }
    Ok(Verdict::NotMetUpTo { horizon })
}

/// Shortest `τ ⊑ r` with `h_i(τ) ⊑ r`, for a finite string `r`.
pub fn witness_in<H: IndexedConstructor + ?Sized>(
    h: &H,
    index: u64,
    r: &Bits,
) -> Result<Option<Bits>> {
    for m in 0..=r.len() {
        let tau = r.prefix(m);
        let w = ext_of(h, index, &tau)?;
        if m + w.len() <= r.len() && r.prefix(m + w.len()) == tau.concat(&w) {
            return Ok(Some(tau));
        }
    }
    Ok(None)
}

/// Checks `h(τ) ⋢ χ_L` for every `τ` of length at most `horizon`.
pub fn avoids_check<C: Constructor + ?Sized>(
    h: &C,
    lang: &LanguageOracle,
    horizon: u64,
) -> Result<AvoidVerdict> {
    let mut chi = ChiCache::new(lang);
    for m in 0..=horizon {
        let tau = chi.prefix(m)?;
        if extends_into(h, lang, &tau)? {
            return Ok(AvoidVerdict::FailsAt { tau });
        }
    }
    Ok(AvoidVerdict::AvoidsUpTo { horizon })
}
