use crate::arith::log_len;
use crate::error::{Error, Result};
use crate::strings::Bits;

use super::{LocalConstructor, Prefix, QueryLog};

/// `ext(h_i(σ))` assembled from `ext_bit`, failing if no `⊥` shows up within `cap` bits.
pub fn materialize_local<H: LocalConstructor + ?Sized>(
    h: &H,
    index: u64,
    sigma: &Bits,
    cap: u64,
) -> Result<Bits> {
    let log = QueryLog::new();
    materialize_view(h, index, &Prefix::new(sigma, &log), cap)
}

/// As [`materialize_local`], over an existing view (its log keeps accumulating).
pub fn materialize_view<H: LocalConstructor + ?Sized>(
    h: &H,
    index: u64,
    prefix: &Prefix<'_>,
    cap: u64,
) -> Result<Bits> {
    let mut w = Bits::new();
    for k in 1..=cap.saturating_add(1) {
        match h.ext_bit(index, prefix, k)? {
            None => return Ok(w),
            Some(_) if k > cap => break,
            Some(b) => w.push(b),
        }
    }
    Err(Error::ExtensionCap { cap })
}

/// One query-set trial: inputs `(n, i, k, σ)` with `⌈log₂(|σ|+1)⌉ ≤ n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QueryTrial {
    pub n: u32,
    pub index: u64,
    pub k: u64,
    pub sigma: Bits,
}

/// Outcome of [`enforce_query_set`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QueryReport {
    Pass {
        evaluations: u64,
    },
    Fail {
        trial: usize,
        index: u64,
        k: u64,
        position: u64,
    },
}

impl QueryReport {
    pub fn passed(&self) -> bool {
        matches!(self, QueryReport::Pass { .. })
    }
}

/// Checks that every read made by `ext_bit(i', σ, k')`, for all `i' ≤ i` and
/// `k' ≤ k`, lies inside the declared `query_set(n, i, k)`.
pub fn enforce_query_set<H: LocalConstructor + ?Sized>(
    h: &H,
    trials: &[QueryTrial],
) -> Result<QueryReport> {
    let mut evaluations = 0;
    for (t, trial) in trials.iter().enumerate() {
        let needed = log_len(trial.sigma.len() as u64);
        if needed > trial.n {
            return Err(Error::InvalidArgument(format!(
                "trial {t}: |σ| = {} needs n ≥ {needed}, got {}",
                trial.sigma.len(),
                trial.n
            )));
        }
        let allowed = h.query_set(trial.n, trial.index, trial.k);
        for index in 0..=trial.index {
            for k in 1..=trial.k {
                let log = QueryLog::new();
                let view = Prefix::new(&trial.sigma, &log);
                h.ext_bit(index, &view, k)?;
                evaluations += 1;
                if let Some(position) = log.positions().into_iter().find(|p| !allowed.contains(p)) {
                    return Ok(QueryReport::Fail {
                        trial: t,
                        index,
                        k,
                        position,
                    });
                }
            }
        }
    }
    Ok(QueryReport::Pass { evaluations })
}
