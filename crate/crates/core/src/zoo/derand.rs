use crate::circuits::{table_histogram, Basis, CircuitCaps};
use crate::error::{Error, Result};
use crate::strategy::{Constructor, Prefix};
use crate::strings::{first_rank_of_length, Bits};

/// One coding position of the derandomization diagonalizer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodingStep {
    pub u: Bits,
    /// Majority of the consistent circuits on `u`, ties to 1.
    pub majority: bool,
    pub z: bool,
    pub before: u64,
    pub after: u64,
}

/// The extension produced on one input together with its coding steps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerandRun {
    pub level: u32,
    pub extension: Bits,
    pub steps: Vec<CodingStep>,
}

/// Writes `1 − majority` at the positions of `0^{2^{bℓ}} u`, `|u| = ℓ`.
///
/// The level `ℓ` is the smallest `ℓ ≥ 1` whose coding strings all lie past
/// `σ`. Every other position up to the last coding string `0^{2^{bℓ}} 1^ℓ`
/// gets 0. The vote at `u_i` ranges over `ℓ`-input oracle circuits of size
/// below `s(ℓ)`, with oracle gates answered from `σ`, that agree with every
/// earlier `(u_j, z_j)` of the same run.
#[derive(Debug, Clone)]
pub struct DerandDiagonalizer {
    pub b: u32,
    /// `s(ℓ)` for `ℓ = 1, 2, …`.
    pub sizes: Vec<usize>,
    pub max_level: u32,
    pub circuit_caps: CircuitCaps,
}

pub fn derand_diagonalizer(b: u32, sizes: Vec<usize>) -> Result<DerandDiagonalizer> {
    if b == 0 {
        return Err(Error::InvalidArgument("derandomization needs b ≥ 1".into()));
    }
    if b > 2 {
        return Err(Error::guard("b", u64::from(b), 2u64));
    }
    if sizes.is_empty() {
        return Err(Error::InvalidArgument(
            "no circuit size bounds given".into(),
        ));
    }
    Ok(DerandDiagonalizer {
        b,
        max_level: sizes.len().min(2) as u32,
        sizes,
        circuit_caps: CircuitCaps::default(),
    })
}

impl DerandDiagonalizer {
    /// Length of the coding strings at level `ℓ`.
    pub fn coding_len(&self, level: u32) -> u64 {
        (1u64 << (self.b * level)) + u64::from(level)
    }

    /// Rank of `0^{2^{bℓ}+ℓ}`, the first coding string of level `ℓ`.
    pub fn coding_start(&self, level: u32) -> u64 {
        first_rank_of_length(self.coding_len(level) as u32)
    }

    pub fn level_for(&self, sigma_len: u64) -> Result<u32> {
        (1..=self.max_level)
            .find(|&level| self.coding_start(level) >= sigma_len)
            .ok_or_else(|| {
                Error::guard(
                    "coding level",
                    u64::from(self.max_level) + 1,
                    u64::from(self.max_level),
                )
            })
    }

    pub fn run(&self, prefix: &Prefix<'_>) -> Result<DerandRun> {
        let sigma_len = prefix.len();
        let level = self.level_for(sigma_len)?;
        let ell = level as usize;
        let start = self.coding_start(level);
        let oracle: Bits = (1..=1u64 << (ell + 1))
            .map(|p| prefix.bit(p))
            .collect::<Result<_>>()?;
        let bound = self.sizes[ell - 1];
        let mut hist = match bound.checked_sub(1) {
            Some(s) => Some(table_histogram(
                Basis::oracle_for(ell),
                ell,
                s,
                &oracle,
                &self.circuit_caps,
                true,
            )?),
            None => None,
        };
        let mut extension = Bits::zeros((start - sigma_len) as usize);
        let mut steps = Vec::new();
        for u in Bits::all_of_length(level) {
            let row = u.to_uint() as usize;
            let (majority, before, after) = match hist.as_mut() {
                Some(h) => {
                    let m = h.majority(row);
                    let before = h.total();
                    *h = h.restrict(row, !m);
                    (m, before, h.total())
                }
                None => (true, 0, 0),
            };
            extension.push(!majority);
            steps.push(CodingStep {
                u,
                majority,
                z: !majority,
                before,
                after,
            });
        }
        Ok(DerandRun {
            level,
            extension,
            steps,
        })
    }
}

impl Constructor for DerandDiagonalizer {
    fn extension(&self, prefix: &Prefix<'_>) -> Result<Bits> {
        Ok(self.run(prefix)?.extension)
    }
}
