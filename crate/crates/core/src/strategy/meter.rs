use std::fmt;

use num_bigint::BigUint;

use crate::arith::{log_len, BoundFamily};
use crate::error::Result;
use crate::strings::Bits;

use super::{IndexedConstructor, LocalConstructor, Prefix, QueryLog};

/// Resource counts for one strategy evaluation against a bound.
///
/// A diagnostic only: the counts are proxies for running time, not a proof of it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeterReport {
    /// `⌈log₂(|σ|+1)⌉ + |i|`.
    pub n: u64,
    pub budget: BigUint,
    pub queries: u64,
    pub emitted: u64,
    pub steps: u64,
    pub violation: bool,
}

impl MeterReport {
    fn new(n: u64, bound: &BoundFamily, queries: u64, emitted: u64, steps: u64) -> Self {
        let budget = bound.eval(n);
        let violation = [queries, emitted, steps]
            .iter()
            .any(|&c| BigUint::from(c) > budget);
        MeterReport {
            n,
            budget,
            queries,
            emitted,
            steps,
            violation,
        }
    }
}

impl fmt::Display for MeterReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n={} budget={} queries={} emitted={} steps={} {}",
            self.n,
            self.budget,
            self.queries,
            self.emitted,
            self.steps,
            if self.violation { "VIOLATION" } else { "ok" }
        )
    }
}

fn bit_length(i: u64) -> u64 {
    u64::from(64 - i.leading_zeros()).max(1)
}

fn argument_size(index: u64, sigma: &Bits) -> u64 {
    u64::from(log_len(sigma.len() as u64)) + bit_length(index)
}

/// Meters one call of `h_i` on `σ`.
pub fn meter_indexed<H: IndexedConstructor + ?Sized>(
    h: &H,
    index: u64,
    sigma: &Bits,
    bound: &BoundFamily,
) -> Result<(Bits, MeterReport)> {
    let log = QueryLog::new();
    let w = h.extension_at(index, &Prefix::new(sigma, &log))?;
    let report = MeterReport::new(
        argument_size(index, sigma),
        bound,
        log.count(),
        w.len() as u64,
        1,
    );
    Ok((w, report))
}

/// Meters the bitwise materialization of `h_i` on `σ`; each `ext_bit` call is one step.
pub fn meter_local<H: LocalConstructor + ?Sized>(
    h: &H,
    index: u64,
    sigma: &Bits,
    bound: &BoundFamily,
    cap: u64,
) -> Result<(Bits, MeterReport)> {
    let log = QueryLog::new();
    let view = Prefix::new(sigma, &log);
    let mut w = Bits::new();
    let mut steps = 0;
    for k in 1..=cap.saturating_add(1) {
        steps += 1;
        match h.ext_bit(index, &view, k)? {
            None => break,
            Some(_) if k > cap => return Err(crate::error::Error::ExtensionCap { cap }),
            Some(b) => w.push(b),
        }
    }
    let report = MeterReport::new(
        argument_size(index, sigma),
        bound,
        log.count(),
        w.len() as u64,
        steps,
    );
    Ok((w, report))
}
