use std::collections::BTreeSet;

use rand::Rng;

use crate::error::{Error, Result};
use crate::rng::{derive_seed, stream_rng};

use super::{LocalConstructor, Prefix};

/// A local family whose bits are computed by a seeded randomized procedure.
///
/// `ext_bit_seeded(i, σ, k, n, seed)` should equal `ext_bit(i, σ, k)` of the
/// intended deterministic family with probability at least `1 − 2^{−n}` over seeds.
pub trait ProbabilisticLocalConstructor: Send + Sync {
    fn ext_bit_seeded(
        &self,
        index: u64,
        prefix: &Prefix<'_>,
        k: u64,
        error: u32,
        seed: u64,
    ) -> Result<Option<bool>>;

    fn query_set(&self, n: u32, index: u64, k: u64) -> BTreeSet<u64>;
}

/// A deterministic family seen as a probabilistic one.
pub struct Deterministic<H>(pub H);

impl<H: LocalConstructor> ProbabilisticLocalConstructor for Deterministic<H> {
    fn ext_bit_seeded(
        &self,
        index: u64,
        prefix: &Prefix<'_>,
        k: u64,
        _error: u32,
        _seed: u64,
    ) -> Result<Option<bool>> {
        self.0.ext_bit(index, prefix, k)
    }

    fn query_set(&self, n: u32, index: u64, k: u64) -> BTreeSet<u64> {
        self.0.query_set(n, index, k)
    }
}

/// Fixture: answers like `base` with probability `correct`, and otherwise with
/// one of the two wrong outcomes in `{0, 1, ⊥}`, chosen uniformly.
pub struct NoisyLocal<H> {
    pub base: H,
    pub correct: f64,
}

impl<H: LocalConstructor> ProbabilisticLocalConstructor for NoisyLocal<H> {
    fn ext_bit_seeded(
        &self,
        index: u64,
        prefix: &Prefix<'_>,
        k: u64,
        _error: u32,
        seed: u64,
    ) -> Result<Option<bool>> {
        let truth = self.base.ext_bit(index, prefix, k)?;
        let mut rng = stream_rng(derive_seed(seed, index), k);
        if rng.random::<f64>() < self.correct {
            return Ok(truth);
        }
        let wrong: Vec<Option<bool>> = [Some(false), Some(true), None]
            .into_iter()
            .filter(|o| *o != truth)
            .collect();
        Ok(wrong[usize::from(rng.random::<bool>())])
    }

    fn query_set(&self, n: u32, index: u64, k: u64) -> BTreeSet<u64> {
        self.base.query_set(n, index, k)
    }
}

/// Majority over `reps` independent-seed runs.
pub struct Amplified<P> {
    base: P,
    reps: u32,
}

impl<P> Amplified<P> {
    pub fn reps(&self) -> u32 {
        self.reps
    }
}

/// Amplifies `ph` by majority vote over `reps` (odd) runs with derived seeds.
///
/// `⊥` wins when more than half of the runs answer `⊥`; otherwise the bit is
/// the majority of the runs that answered a bit, ties going to 1.
pub fn amplify<P: ProbabilisticLocalConstructor>(ph: P, reps: u32) -> Result<Amplified<P>> {
    if reps == 0 || reps.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!(
            "repetitions must be odd and positive, got {reps}"
        )));
    }
    Ok(Amplified { base: ph, reps })
}

impl<P: ProbabilisticLocalConstructor> ProbabilisticLocalConstructor for Amplified<P> {
    fn ext_bit_seeded(
        &self,
        index: u64,
        prefix: &Prefix<'_>,
        k: u64,
        error: u32,
        seed: u64,
    ) -> Result<Option<bool>> {
        if self.reps == 1 {
            return self.base.ext_bit_seeded(index, prefix, k, error, seed);
        }
        let (mut bottoms, mut ones, mut zeros) = (0u32, 0u32, 0u32);
        for r in 0..self.reps {
            let sub = derive_seed(seed, u64::from(r));
            match self.base.ext_bit_seeded(index, prefix, k, error, sub)? {
                None => bottoms += 1,
                Some(true) => ones += 1,
                Some(false) => zeros += 1,
            }
        }
        if bottoms > self.reps / 2 {
            Ok(None)
        } else {
            Ok(Some(ones >= zeros))
        }
    }

    fn query_set(&self, n: u32, index: u64, k: u64) -> BTreeSet<u64> {
        self.base.query_set(n, index, k)
    }
}
