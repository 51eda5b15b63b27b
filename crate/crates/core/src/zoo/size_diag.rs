use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use crate::arith::log_len;
use crate::circuits::{table_histogram, Basis, CircuitCaps, TableHistogram};
use crate::error::{Error, Result};
use crate::strategy::{Constructor, Prefix};
use crate::strings::{rank_to_string, Bits};

/// Limits for [`SizeDiagonalizer`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SizeDiagCaps {
    /// Upper bound on the extension length.
    pub max_bits: u64,
    /// Largest input length `|z|` allowed.
    pub max_inputs: usize,
    /// Upper bound on circuit size.
    pub max_size: usize,
}

impl Default for SizeDiagCaps {
    fn default() -> Self {
        SizeDiagCaps {
            max_bits: 16,
            max_inputs: 3,
            max_size: 5,
        }
    }
}

/// One emitted bit of the size diagonalizer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagStep {
    /// The string whose membership bit is written.
    pub z: Bits,
    pub bit: bool,
    /// Consistent circuits before and after this bit.
    pub before: u64,
    pub after: u64,
}

/// Diagonalizes against `|z|`-input circuits of size `min(|z|^c, cap)`.
///
/// On `σ` with `n = ⌈log₂(|σ|+1)⌉` it writes `min(2n^{c+1}, cap)` bits. Bit
/// `i` sits at the membership position of `z_i = s_{|σ|+i−1}` and is
/// `1 − majority` over the plain circuits consistent with the earlier bits
/// whose strings have the same length.
#[derive(Debug, Clone)]
pub struct SizeDiagonalizer {
    pub c: u32,
    pub caps: SizeDiagCaps,
    pub circuit_caps: CircuitCaps,
}

pub fn size_diagonalizer(c: u32, caps: SizeDiagCaps) -> SizeDiagonalizer {
    SizeDiagonalizer {
        c,
        caps,
        circuit_caps: CircuitCaps::default(),
    }
}

impl SizeDiagonalizer {
    /// `min(2n^{c+1}, max_bits)`.
    pub fn extension_len(&self, sigma_len: u64) -> u64 {
        let n = u64::from(log_len(sigma_len));
        n.checked_pow(self.c + 1)
            .and_then(|v| v.checked_mul(2))
            .unwrap_or(u64::MAX)
            .min(self.caps.max_bits)
    }

    /// Circuit size bound for `m`-input circuits.
    pub fn size_for(&self, m: usize) -> usize {
        (m as u64)
            .checked_pow(self.c)
            .unwrap_or(u64::MAX)
            .min(self.caps.max_size as u64) as usize
    }

    /// The extension together with the per-bit consistent-set sizes.
    pub fn trace(&self, sigma_len: u64) -> Result<Vec<DiagStep>> {
        let len = self.extension_len(sigma_len);
        let mut sets: BTreeMap<usize, TableHistogram> = BTreeMap::new();
        let mut steps = Vec::with_capacity(len as usize);
        for i in 1..=len {
            let z = rank_to_string(sigma_len + i - 1);
            let m = z.len();
            if m > self.caps.max_inputs {
                return Err(Error::guard(
                    "diagonalized string length",
                    m as u64,
                    self.caps.max_inputs as u64,
                ));
            }
            let hist = match sets.entry(m) {
                Entry::Occupied(e) => e.into_mut(),
                Entry::Vacant(e) => e.insert(table_histogram(
                    Basis::Plain,
                    m,
                    self.size_for(m),
                    &Bits::new(),
                    &self.circuit_caps,
                    true,
                )?),
            };
            let row = z.to_uint() as usize;
            let bit = !hist.majority(row);
            let before = hist.total();
            *hist = hist.restrict(row, bit);
            steps.push(DiagStep {
                z,
                bit,
                before,
                after: hist.total(),
            });
        }
        Ok(steps)
    }
}

impl Constructor for SizeDiagonalizer {
    fn extension(&self, prefix: &Prefix<'_>) -> Result<Bits> {
        Ok(self
            .trace(prefix.len())?
            .into_iter()
            .map(|s| s.bit)
            .collect())
    }
}

/// Halving run over all `2^n` strings of length `n` against plain circuits of size at most `s`.
pub fn halving_run(n: usize, s: usize, caps: &CircuitCaps) -> Result<Vec<DiagStep>> {
    let mut hist = table_histogram(Basis::Plain, n, s, &Bits::new(), caps, true)?;
    let mut steps = Vec::new();
    for z in Bits::all_of_length(n as u32) {
        let row = z.to_uint() as usize;
        let bit = !hist.majority(row);
        let before = hist.total();
        hist = hist.restrict(row, bit);
        steps.push(DiagStep {
            z,
            bit,
            before,
            after: hist.total(),
        });
    }
    Ok(steps)
}
