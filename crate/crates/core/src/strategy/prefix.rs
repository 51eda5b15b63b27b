use std::cell::{Cell, RefCell};
use std::collections::BTreeSet;

use crate::error::Result;
use crate::strings::Bits;

/// Anything that can answer "what is bit `p`" for a characteristic prefix.
pub trait BitSource {
    fn bit(&self, position: u64) -> Result<bool>;
}

impl BitSource for Bits {
    fn bit(&self, position: u64) -> Result<bool> {
        Ok(self.bit_or_zero(position))
    }
}

impl<F> BitSource for F
where
    F: Fn(u64) -> Result<bool>,
{
    fn bit(&self, position: u64) -> Result<bool> {
        self(position)
    }
}

impl BitSource for Prefix<'_> {
    fn bit(&self, position: u64) -> Result<bool> {
        Prefix::bit(self, position)
    }
}

/// Record of the positions a strategy read from its input prefix.
#[derive(Debug, Default)]
pub struct QueryLog {
    reads: RefCell<BTreeSet<u64>>,
    count: Cell<u64>,
}

impl QueryLog {
    pub fn new() -> Self {
        Self::default()
    }

    /// Total number of reads, repeats included.
    pub fn count(&self) -> u64 {
        self.count.get()
    }

    /// Distinct positions read.
    pub fn positions(&self) -> BTreeSet<u64> {
        self.reads.borrow().clone()
    }

    fn record(&self, position: u64) {
        self.count.set(self.count.get() + 1);
        self.reads.borrow_mut().insert(position);
    }
}

/// Random-access view of an input prefix `σ`.
///
/// Strategies only see their input through this view. Every read of a real
/// position of `σ` is recorded in the attached [`QueryLog`]. A view can be
/// virtually padded with zeros (`σ 0^m`); reads in the padding, and reads
/// past the end, answer 0 and are not recorded, since they are not queries
/// to `σ`.
#[derive(Clone, Copy)]
pub struct Prefix<'a> {
    source: &'a dyn BitSource,
    real_len: u64,
    len: u64,
    log: &'a QueryLog,
}

impl<'a> Prefix<'a> {
    pub fn new(bits: &'a Bits, log: &'a QueryLog) -> Self {
        let len = bits.len() as u64;
        Prefix {
            source: bits,
            real_len: len,
            len,
            log,
        }
    }

    pub fn from_source(source: &'a dyn BitSource, len: u64, log: &'a QueryLog) -> Self {
        Prefix {
            source,
            real_len: len,
            len,
            log,
        }
    }

    /// `|σ|`, padding included.
    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Bit at 1-based position `p`.
    pub fn bit(&self, position: u64) -> Result<bool> {
        if position == 0 || position > self.real_len {
            return Ok(false);
        }
        self.log.record(position);
        self.source.bit(position)
    }

    /// `σ 0^extra`, sharing this view's log.
    pub fn padded(&self, extra: u64) -> Prefix<'a> {
        Prefix {
            len: self.len + extra,
            ..*self
        }
    }

    /// `σ[1..len]`, sharing this view's log.
    pub fn truncated(&self, len: u64) -> Prefix<'a> {
        let len = len.min(self.len);
        Prefix {
            real_len: self.real_len.min(len),
            len,
            ..*self
        }
    }

    /// Reads the whole prefix.
    pub fn to_bits(&self) -> Result<Bits> {
        (1..=self.len).map(|p| self.bit(p)).collect()
    }

    /// Whether `w ⊑ σ`.
    pub fn has_prefix(&self, w: &Bits) -> Result<bool> {
        if w.len() as u64 > self.len {
            return Ok(false);
        }
        for (i, b) in w.iter().enumerate() {
            if self.bit(i as u64 + 1)? != b {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn log(&self) -> &'a QueryLog {
        self.log
    }
}

/// Runs `f` on a fresh view of `bits`.
pub fn with_prefix<R>(bits: &Bits, f: impl FnOnce(&Prefix<'_>) -> R) -> R {
    let log = QueryLog::new();
    let view = Prefix::new(bits, &log);
    f(&view)
}
