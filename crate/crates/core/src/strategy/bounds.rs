use crate::error::{Error, Result};
use crate::strings::Bits;

use super::{ext_of, materialize_local, IndexedConstructor, LocalConstructor};

/// Limits for exhaustive enumeration of input prefixes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationCap {
    /// Maximum number of prefixes enumerated for one table entry.
    pub max_strings: u64,
    /// Maximum extension length materialized per prefix.
    pub ext_cap: u64,
}

impl Default for EnumerationCap {
    fn default() -> Self {
        EnumerationCap {
            max_strings: 1 << 17,
            ext_cap: 1 << 12,
        }
    }
}

fn strings_up_to(max_len: u64, cap: u64) -> Result<u32> {
    let count = if max_len >= 63 {
        u64::MAX
    } else {
        (1u64 << (max_len + 1)) - 1
    };
    if count > cap {
        return Err(Error::guard("prefixes to enumerate", count, cap));
    }
    Ok(max_len as u32)
}

/// Block sizes `f(0..=i_max)` for a local family.
///
/// `f(0) = 1` and `f(i) = max(2^i, |ext(h_i(σ))|)` over every `σ` with
/// `|σ| ≤ f(0) + … + f(i−1)`.
pub fn bound_extension_sizes<H: LocalConstructor + ?Sized>(
    h: &H,
    i_max: u64,
    cap: EnumerationCap,
) -> Result<Vec<u64>> {
    let mut f = vec![1u64];
    let mut total = 1u64;
    for i in 1..=i_max {
        let max_len = strings_up_to(total, cap.max_strings)?;
        let mut best = 1u64 << i.min(63);
        for sigma in Bits::all_up_to(max_len) {
            let w = materialize_local(h, i, &sigma, cap.ext_cap)?;
            best = best.max(w.len() as u64);
        }
        f.push(best);
        total = total.saturating_add(best);
    }
    Ok(f)
}

/// `max |h_t(τ)|` over `t ≤ m` and `|τ| ≤ m`, lengths counted with `τ` included.
pub fn bound_uniform<H: IndexedConstructor + ?Sized>(h: &H, m: u64, cap: u64) -> Result<u64> {
    let max_len = strings_up_to(m, cap / (m + 1).max(1))?;
    let mut best = 0u64;
    for t in 0..=m {
        for tau in Bits::all_up_to(max_len) {
            let len = tau.len() as u64 + ext_of(h, t, &tau)?.len() as u64;
            best = best.max(len);
        }
    }
    Ok(best)
}
