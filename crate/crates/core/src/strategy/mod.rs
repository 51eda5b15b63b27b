//! Finite extension strategies.
//!
//! A strategy maps a prefix `σ` of a characteristic sequence to an extension
//! `w`, so that `h(σ) = σw` always extends `σ`. Three presentations exist:
//!
//! * [`Constructor`]: a single strategy computing `ext(h(σ))` in one go;
//! * [`IndexedConstructor`]: a family `h_i`, each member a constructor;
//! * [`LocalConstructor`]: a family whose extensions are computed bit by bit,
//!   `ext(h_i(σ), k) ∈ {0, 1, ⊥}`, with all reads of `σ` confined to a
//!   declared query set `G(n, i, k)`.
//!
//! Strategies see their input only through a [`Prefix`] view, which logs
//! every position read.

mod bounds;
mod check;
mod local;
mod meter;
mod prefix;
mod prob;

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::arith::cantor_unpair;
use crate::error::Result;
use crate::strings::Bits;

pub use bounds::{bound_extension_sizes, bound_uniform, EnumerationCap};
pub use check::{
    avoids_check, extends_into, meets_check, meets_check_from, meets_check_local,
    meets_check_local_from, witness_in, AvoidVerdict, ChiCache, Verdict,
};
pub use local::{enforce_query_set, materialize_local, materialize_view, QueryReport, QueryTrial};
pub use meter::{meter_indexed, meter_local, MeterReport};
pub use prefix::{with_prefix, BitSource, Prefix, QueryLog};
pub use prob::{amplify, Amplified, Deterministic, NoisyLocal, ProbabilisticLocalConstructor};

/// A single finite extension strategy.
pub trait Constructor: Send + Sync {
    /// `ext(h(σ))`.
    fn extension(&self, prefix: &Prefix<'_>) -> Result<Bits>;
}

/// A family of strategies `h_i`.
pub trait IndexedConstructor: Send + Sync {
    /// `ext(h_i(σ))`.
    fn extension_at(&self, index: u64, prefix: &Prefix<'_>) -> Result<Bits>;
}

/// A family of strategies whose extensions are computed one bit at a time.
///
/// `ext_bit(i, σ, k)` is the `k`th bit of `ext(h_i(σ))` (1-based), or `None`
/// for `⊥` once `k` is past the end. Implementations must keep `⊥` monotone
/// in `k` and must only read positions of `σ` listed by
/// `query_set(n, i, k)` whenever `⌈log₂(|σ|+1)⌉ ≤ n`, for every call with
/// index `≤ i` and bit `≤ k`.
pub trait LocalConstructor: Send + Sync {
    fn ext_bit(&self, index: u64, prefix: &Prefix<'_>, k: u64) -> Result<Option<bool>>;

    fn query_set(&self, n: u32, index: u64, k: u64) -> BTreeSet<u64>;
}

macro_rules! forward_impls {
    ($($ptr:ty),*) => {$(
        impl<T: Constructor + ?Sized> Constructor for $ptr {
            fn extension(&self, prefix: &Prefix<'_>) -> Result<Bits> {
                (**self).extension(prefix)
            }
        }
        impl<T: IndexedConstructor + ?Sized> IndexedConstructor for $ptr {
            fn extension_at(&self, index: u64, prefix: &Prefix<'_>) -> Result<Bits> {
                (**self).extension_at(index, prefix)
            }
        }
        impl<T: LocalConstructor + ?Sized> LocalConstructor for $ptr {
            fn ext_bit(&self, index: u64, prefix: &Prefix<'_>, k: u64) -> Result<Option<bool>> {
                (**self).ext_bit(index, prefix, k)
            }
            fn query_set(&self, n: u32, index: u64, k: u64) -> BTreeSet<u64> {
                (**self).query_set(n, index, k)
            }
        }
    )*};
}

forward_impls!(&T, Box<T>, Arc<T>);

/// `ext(h_i(σ))` for a concrete prefix.
pub fn ext_of<H: IndexedConstructor + ?Sized>(h: &H, index: u64, sigma: &Bits) -> Result<Bits> {
    with_prefix(sigma, |view| h.extension_at(index, view))
}

/// `h_i(σ) = σ · ext(h_i(σ))`.
pub fn apply<H: IndexedConstructor + ?Sized>(h: &H, index: u64, sigma: &Bits) -> Result<Bits> {
    Ok(sigma.concat(&ext_of(h, index, sigma)?))
}

/// `ext(h(σ))` for a single constructor.
pub fn ext_single<C: Constructor + ?Sized>(h: &C, sigma: &Bits) -> Result<Bits> {
    with_prefix(sigma, |view| h.extension(view))
}

/// Constructor from a closure over the prefix view.
pub struct FnConstructor<F>(pub F);

impl<F> Constructor for FnConstructor<F>
where
    F: Fn(&Prefix<'_>) -> Result<Bits> + Send + Sync,
{
    fn extension(&self, prefix: &Prefix<'_>) -> Result<Bits> {
        (self.0)(prefix)
    }
}

/// Indexed constructor from a closure `(i, σ) ↦ ext(h_i(σ))`.
pub struct FnIndexed<F>(pub F);

impl<F> IndexedConstructor for FnIndexed<F>
where
    F: Fn(u64, &Prefix<'_>) -> Result<Bits> + Send + Sync,
{
    fn extension_at(&self, index: u64, prefix: &Prefix<'_>) -> Result<Bits> {
        (self.0)(index, prefix)
    }
}

/// Local constructor from a bit closure and a query-set closure.
pub struct FnLocal<F, G> {
    pub bit: F,
    pub queries: G,
}

impl<F, G> LocalConstructor for FnLocal<F, G>
where
    F: Fn(u64, &Prefix<'_>, u64) -> Result<Option<bool>> + Send + Sync,
    G: Fn(u32, u64, u64) -> BTreeSet<u64> + Send + Sync,
{
    fn ext_bit(&self, index: u64, prefix: &Prefix<'_>, k: u64) -> Result<Option<bool>> {
        (self.bit)(index, prefix, k)
    }

    fn query_set(&self, n: u32, index: u64, k: u64) -> BTreeSet<u64> {
        (self.queries)(n, index, k)
    }
}

/// The same constructor at every index.
pub struct Uniform<C>(pub C);

impl<C: Constructor> IndexedConstructor for Uniform<C> {
    fn extension_at(&self, _index: u64, prefix: &Prefix<'_>) -> Result<Bits> {
        self.0.extension(prefix)
    }
}

/// `h_i` for a fixed `i`.
pub struct Slice<H> {
    pub family: H,
    pub index: u64,
}

impl<H: IndexedConstructor> Constructor for Slice<H> {
    fn extension(&self, prefix: &Prefix<'_>) -> Result<Bits> {
        self.family.extension_at(self.index, prefix)
    }
}

/// A local family read as an indexed family by materializing extensions up to `cap` bits.
pub struct Materialized<H> {
    pub local: H,
    pub cap: u64,
}

impl<H: LocalConstructor> IndexedConstructor for Materialized<H> {
    fn extension_at(&self, index: u64, prefix: &Prefix<'_>) -> Result<Bits> {
        materialize_view(&self.local, index, prefix, self.cap)
    }
}

/// Combines a doubly indexed family `h(i, j, ·)` into `h'_{⟨i,j⟩}` through Cantor pairing.
pub struct Paired<F>(pub F);

impl<F> IndexedConstructor for Paired<F>
where
    F: Fn(u64, u64, &Prefix<'_>) -> Result<Bits> + Send + Sync,
{
    fn extension_at(&self, index: u64, prefix: &Prefix<'_>) -> Result<Bits> {
        let (i, j) = cantor_unpair(index);
        (self.0)(i, j, prefix)
    }
}

/// `union_combine`: the family `h'_{pair(i,j)}(σ) = h(i, j, σ)`.
pub fn union_combine<F>(h: F) -> Paired<F>
where
    F: Fn(u64, u64, &Prefix<'_>) -> Result<Bits> + Send + Sync,
{
    Paired(h)
}
