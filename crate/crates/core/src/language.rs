//! Languages presented as membership oracles.
//!
//! A language is never materialized: it is a deterministic callback from
//! strings to membership bits. Finite characteristic prefixes, censuses and
//! derived languages (sparse generators, finite variants, `F(A)` extraction)
//! are all built on top of that callback.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use rand::seq::index;

use crate::error::{Error, Result};
use crate::rng::stream_rng;
use crate::strings::{string_at_position, Bits};

type MemberFn = dyn Fn(&Bits) -> Result<bool> + Send + Sync;

/// Default cap on the string length accepted by [`census`].
pub const DEFAULT_CENSUS_MAX_LEN: u32 = 20;
/// Default cap on the padded query length used by [`FExtract`].
pub const DEFAULT_PADDED_LEN_CAP: u64 = 1 << 16;

/// A language `L`, seen through its membership function.
#[derive(Clone)]
pub struct LanguageOracle {
    name: Arc<str>,
    description: Option<Arc<str>>,
    member: Arc<MemberFn>,
}

impl fmt::Debug for LanguageOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LanguageOracle")
            .field("name", &self.name)
            .finish()
    }
}

impl LanguageOracle {
    pub fn new<F>(name: impl Into<String>, member: F) -> Self
    where
        F: Fn(&Bits) -> bool + Send + Sync + 'static,
    {
        Self::fallible(name, move |x| Ok(member(x)))
    }

    /// A language whose membership computation can hit a scale guard.
    pub fn fallible<F>(name: impl Into<String>, member: F) -> Self
    where
        F: Fn(&Bits) -> Result<bool> + Send + Sync + 'static,
    {
        LanguageOracle {
            name: Arc::from(name.into()),
            description: None,
            member: Arc::new(member),
        }
    }

    pub fn with_description(mut self, description: impl Into<String>) -> Self {
        self.description = Some(Arc::from(description.into()));
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn description(&self) -> Option<&str> {
        self.description.as_deref()
    }

    pub fn member(&self, x: &Bits) -> Result<bool> {
        (self.member)(x)
    }

    /// `χ_L[p]` for a 1-based position `p`.
    pub fn bit_at(&self, position: u64) -> Result<bool> {
        self.member(&string_at_position(position))
    }

    pub fn empty() -> Self {
        Self::new("empty", |_| false)
    }

    pub fn full() -> Self {
        Self::new("full", |_| true)
    }

    /// `{x : x has an odd number of 1s}`.
    pub fn parity() -> Self {
        Self::new("parity", |x| x.count_ones() % 2 == 1)
    }

    /// The language whose characteristic sequence starts with `prefix` and is 0 afterwards.
    pub fn from_prefix(name: impl Into<String>, prefix: Bits) -> Self {
        Self::new(name, move |x| {
            if x.len() >= 64 {
                return false;
            }
            prefix.bit_or_zero(crate::strings::position_of(x))
        })
    }

    /// A finite language given by its members.
    pub fn finite(name: impl Into<String>, members: impl IntoIterator<Item = Bits>) -> Self {
        let set: BTreeSet<Bits> = members.into_iter().collect();
        Self::new(name, move |x| set.contains(x))
    }
}

/// First `n` bits of `χ_L`: position `p` holds membership of `s_{p-1}`.
pub fn chi_prefix(lang: &LanguageOracle, n: u64) -> Result<Bits> {
    (1..=n).map(|p| lang.bit_at(p)).collect()
}

/// Per-length counts `n ↦ |L^{=n}|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusTable {
    counts: Vec<u64>,
}

impl CensusTable {
    pub fn build(lang: &LanguageOracle, max_len: u32, cap: u32) -> Result<Self> {
        let counts = (0..=max_len)
            .map(|n| census_capped(lang, n, cap))
            .collect::<Result<_>>()?;
        Ok(CensusTable { counts })
    }

    pub fn count(&self, len: u32) -> Option<u64> {
        self.counts.get(len as usize).copied()
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }
}

/// `|L ∩ {0,1}^n|` by exhaustive enumeration, guarded at the default cap.
pub fn census(lang: &LanguageOracle, n: u32) -> Result<u64> {
    census_capped(lang, n, DEFAULT_CENSUS_MAX_LEN)
}

pub fn census_capped(lang: &LanguageOracle, n: u32, cap: u32) -> Result<u64> {
    if n > cap {
        return Err(Error::guard("census length", n, cap));
    }
    let mut count = 0;
    for x in Bits::all_of_length(n) {
        if lang.member(&x)? {
            count += 1;
        }
    }
    Ok(count)
}

/// A polynomial with nonnegative integer coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<u64>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<u64>) -> Self {
        Polynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Saturating evaluation.
    pub fn eval(&self, n: u64) -> u64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, c| acc.saturating_mul(n).saturating_add(*c))
    }
}

impl std::str::FromStr for Polynomial {
    type Err = Error;

    /// Comma- or semicolon-separated coefficients, constant term first: `1,1` is `n + 1`.
    fn from_str(s: &str) -> Result<Self> {
        s.split([',', ';'])
            .filter(|t| !t.trim().is_empty())
            .map(|t| {
                t.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Parse(format!("bad polynomial coefficient {t:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Polynomial::new)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(u64::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

/// Strings of length ≥ this are never members of a generated sparse language.
const SPARSE_MAX_LEN: usize = 62;

/// A sparse language with `|L^{=n}| ≤ p(n)` for every `n`.
///
/// For each length `n` the members are `min(p(n), 2^n)` distinct strings drawn
/// with the ChaCha8 stream `(seed, n)`, so membership is a pure function of
/// `(p, seed, x)`.
pub fn make_sparse(p: Polynomial, seed: u64) -> LanguageOracle {
    let name = format!("sparse[p={p},seed={seed}]");
    LanguageOracle::new(name, move |x| {
        let n = x.len();
        if n > SPARSE_MAX_LEN {
            return false;
        }
        let universe = 1u64 << n;
        let amount = p.eval(n as u64).min(universe);
        if amount == 0 {
            return false;
        }
        let mut rng = stream_rng(seed, n as u64);
        let target = x.to_uint() as usize;
        index::sample(&mut rng, universe as usize, amount as usize)
            .iter()
            .any(|i| i == target)
    })
}

/// `L` with finitely many membership bits overridden.
pub fn finite_variant(lang: &LanguageOracle, patch: BTreeMap<Bits, bool>) -> LanguageOracle {
    let base = lang.clone();
    let name = format!("{}+patch{}", lang.name(), patch.len());
    LanguageOracle::fallible(name, move |x| match patch.get(x) {
        Some(bit) => Ok(*bit),
        None => base.member(x),
    })
}

/// `F(A) = {u | 0^(2^(b|u|)) u ∈ A}`.
#[derive(Clone, Debug)]
pub struct FExtract {
    source: LanguageOracle,
    b: u32,
    padded_len_cap: u64,
}

impl FExtract {
    pub fn new(source: LanguageOracle, b: u32, padded_len_cap: u64) -> Result<Self> {
        if b == 0 {
            return Err(Error::InvalidArgument("F(A) needs b ≥ 1".into()));
        }
        Ok(FExtract {
            source,
            b,
            padded_len_cap,
        })
    }

    /// The padded string `0^(2^(b|u|)) u` queried for `u`.
    pub fn padded(&self, u: &Bits) -> Result<Bits> {
        let exp = u64::from(self.b) * u.len() as u64;
        let pad = if exp >= 63 { u64::MAX } else { 1u64 << exp };
        let total = pad.saturating_add(u.len() as u64);
        if total > self.padded_len_cap {
            return Err(Error::guard("padded length", total, self.padded_len_cap));
        }
        Ok(Bits::zeros(pad as usize).concat(u))
    }

    pub fn member(&self, u: &Bits) -> Result<bool> {
        self.source.member(&self.padded(u)?)
    }

    /// The extracted language as an oracle; queries past the cap report the guard.
    pub fn into_language(self) -> LanguageOracle {
        let name = format!("F[b={}]({})", self.b, self.source.name());
        LanguageOracle::fallible(name, move |u| self.member(u))
    }
}

/// `F(A)` with the default padded-length cap.
pub fn f_extract(source: &LanguageOracle, b: u32) -> Result<FExtract> {
    FExtract::new(source.clone(), b, DEFAULT_PADDED_LEN_CAP)
}

/// Parses the explicit-language format: one line of `0`/`1` characters giving
/// a characteristic prefix. Everything beyond the line is 0.
pub fn parse_explicit(name: impl Into<String>, text: &str) -> Result<LanguageOracle> {
    let line = text.lines().next().unwrap_or("").trim();
    let prefix: Bits = line.parse()?;
    Ok(LanguageOracle::from_prefix(name, prefix))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strings::rank_to_string;

    fn b(s: &str) -> Bits {
        s.parse().unwrap()
    }

    #[test]
    fn chi_prefix_examples() {
        assert_eq!(chi_prefix(&LanguageOracle::full(), 3).unwrap(), b("111"));
        assert_eq!(chi_prefix(&LanguageOracle::empty(), 4).unwrap(), b("0000"));
        assert_eq!(chi_prefix(&LanguageOracle::parity(), 3).unwrap(), b("001"));
    }

    #[test]
    fn census_examples() {
        assert_eq!(census(&LanguageOracle::full(), 3).unwrap(), 8);
        assert_eq!(census(&LanguageOracle::empty(), 5).unwrap(), 0);
        assert_eq!(census(&LanguageOracle::parity(), 3).unwrap(), 4);
        assert!(matches!(
            census(&LanguageOracle::full(), 21),
            Err(Error::ScaleGuard { .. })
        ));
    }

    #[test]
    fn census_table() {
        let t = CensusTable::build(&LanguageOracle::parity(), 4, 20).unwrap();
        assert_eq!(t.counts(), &[0, 1, 2, 4, 8]);
    }

    #[test]
    fn sparse_examples() {
        let zero = make_sparse(Polynomial::new(vec![0]), 11);
        assert_eq!(chi_prefix(&zero, 200).unwrap(), Bits::zeros(200));
        let one = make_sparse(Polynomial::new(vec![1]), 7);
        for n in 0..=10 {
            assert!(census(&one, n).unwrap() <= 1);
        }
        let lin = make_sparse(Polynomial::new(vec![1, 1]), 3);
        assert!(census(&lin, 4).unwrap() <= 5);
    }

    #[test]
    fn sparse_census_hits_bound_when_room() {
        let lin = make_sparse(Polynomial::new(vec![1, 1]), 3);
        // n + 1 ≤ 2^n from n = 1 on, so the bound is attained exactly
        for n in 1..=10 {
            assert_eq!(census(&lin, n).unwrap(), u64::from(n) + 1);
        }
    }

    #[test]
    fn sparse_is_deterministic() {
        let a = make_sparse(Polynomial::new(vec![2, 1]), 5);
        let b2 = make_sparse(Polynomial::new(vec![2, 1]), 5);
        assert_eq!(chi_prefix(&a, 512).unwrap(), chi_prefix(&b2, 512).unwrap());
    }

    #[test]
    fn finite_variant_examples() {
        let mut patch = BTreeMap::new();
        patch.insert(Bits::new(), true);
        let v = finite_variant(&LanguageOracle::empty(), patch);
        assert_eq!(chi_prefix(&v, 1).unwrap(), b("1"));

        let same = finite_variant(&LanguageOracle::full(), BTreeMap::new());
        assert_eq!(chi_prefix(&same, 64).unwrap(), Bits::ones(64));

        let mut patch = BTreeMap::new();
        patch.insert(b("0"), true);
        let v = finite_variant(&LanguageOracle::parity(), patch);
        assert_eq!(chi_prefix(&v, 3).unwrap(), b("011"));
    }

    #[test]
    fn f_extract_examples() {
        let e = f_extract(&LanguageOracle::empty(), 1).unwrap();
        for u in Bits::all_up_to(4) {
            assert!(!e.member(&u).unwrap());
        }
        let f = f_extract(&LanguageOracle::full(), 1).unwrap();
        for u in Bits::all_up_to(4) {
            assert!(f.member(&u).unwrap());
        }
        let a = LanguageOracle::finite("A", [b("00001")]);
        let fa = f_extract(&a, 2).unwrap();
        assert!(fa.member(&b("1")).unwrap());
        assert!(!fa.member(&b("0")).unwrap());
    }

    #[test]
    fn f_extract_guard() {
        let fa = f_extract(&LanguageOracle::full(), 2).unwrap();
        // 2^(2·8) + 8 > 2^16
        assert!(matches!(
            fa.member(&Bits::zeros(8)),
            Err(Error::ScaleGuard { .. })
        ));
        assert!(fa.member(&Bits::zeros(7)).is_ok());
        assert!(f_extract(&LanguageOracle::full(), 0).is_err());
    }

    #[test]
    fn explicit_format() {
        let l = parse_explicit("x", "0110\n").unwrap();
        assert_eq!(chi_prefix(&l, 6).unwrap(), b("011000"));
        assert!(l.member(&rank_to_string(2)).unwrap());
        assert!(parse_explicit("bad", "01a").is_err());
    }
}
