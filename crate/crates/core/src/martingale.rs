//! Exact-rational martingales.
//!
//! A [`Martingale`] is given by its initial capital and a stake function: the
//! signed amount bet on the next bit being 1. Fairness
//! `2d(w) = d(w0) + d(w1)` then holds by construction. Functions presented
//! directly by their values implement [`ValueFunction`] and are checked with
//! [`fairness_check`].

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::language::LanguageOracle;
use crate::strategy::ChiCache;
use crate::strings::{first_rank_of_length, rank_to_string, Bits};

pub trait Martingale: Send + Sync {
    fn initial(&self) -> BigRational;

    /// Stake on the bit after `w` being 1 (negative: on it being 0).
    fn stake(&self, w: &Bits) -> BigRational;
}

/// Capital as a function of the prefix.
pub trait ValueFunction {
    fn value(&self, w: &Bits) -> BigRational;
}

impl<M: Martingale + ?Sized> ValueFunction for M {
    fn value(&self, w: &Bits) -> BigRational {
        let mut d = self.initial();
        let mut prefix = Bits::new();
        for b in w.iter() {
            let s = self.stake(&prefix);
            if b {
                d += s;
            } else {
                d -= s;
            }
            prefix.push(b);
        }
        d
    }
}

/// A value function given directly, `w ↦ f(w)`.
pub struct DirectValue<F>(pub F);

impl<F: Fn(&Bits) -> BigRational> ValueFunction for DirectValue<F> {
    fn value(&self, w: &Bits) -> BigRational {
        (self.0)(w)
    }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `d ≡ 1`.
#[derive(Debug, Clone, Copy, Default)]
pub struct ConstantMartingale;

impl Martingale for ConstantMartingale {
    fn initial(&self) -> BigRational {
        BigRational::one()
    }

    fn stake(&self, _w: &Bits) -> BigRational {
        BigRational::zero()
    }
}

/// Splits capital 1 into level shares `c_n = 1/(2n²)` and, within level `n`,
/// bets the whole current level-`n` share on 0 at each of the first `n`
/// strings of length `n`.
#[derive(Debug, Clone, Copy, Default)]
pub struct DensityBettor;

pub fn density_bettor() -> DensityBettor {
    DensityBettor
}

/// `c_n = 1/(2n²)` for `n ≥ 1`.
pub fn level_share(n: u32) -> BigRational {
    assert!(n >= 1, "levels start at 1");
    let n = i64::from(n);
    rat(1, 2 * n * n)
}

impl Martingale for DensityBettor {
    fn initial(&self) -> BigRational {
        BigRational::one()
    }

    fn stake(&self, w: &Bits) -> BigRational {
        let next = rank_to_string(w.len() as u64);
        let n = next.len() as u32;
        let j = next.to_uint();
        if n == 0 || j >= u64::from(n) {
            return BigRational::zero();
        }
        let first = first_rank_of_length(n);
        let lost = (0..j).any(|t| w.bit_or_zero(first + t + 1));
        if lost {
            return BigRational::zero();
        }
        let share = level_share(n) * BigRational::from_integer(BigInt::one() << j as usize);
        -share
    }
}

/// Outcome of [`fairness_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FairnessReport {
    Pass { checked: u64 },
    Fail { w: Bits, reason: String },
}

impl FairnessReport {
    pub fn passed(&self) -> bool {
        matches!(self, FairnessReport::Pass { .. })
    }
}

/// Verifies `2d(w) = d(w0) + d(w1)` and `d(w) ≥ 0` exactly for every `|w| ≤ depth`.
pub fn fairness_check<V: ValueFunction + ?Sized>(d: &V, depth: u32) -> Result<FairnessReport> {
    if depth > 14 {
        return Err(Error::guard("fairness depth", u64::from(depth), 14u64));
    }
    let mut checked = 0;
    for w in Bits::all_up_to(depth) {
        let here = d.value(&w);
        if here.is_negative() {
            return Ok(FairnessReport::Fail {
                w,
                reason: format!("negative capital {here}"),
            });
        }
        let mut w0 = w.clone();
        w0.push(false);
        let mut w1 = w.clone();
        w1.push(true);
        let (a, b) = (d.value(&w0), d.value(&w1));
        let two = BigRational::from_integer(BigInt::from(2));
        if &two * &here != &a + &b {
            return Ok(FairnessReport::Fail {
                w,
                reason: format!("2·{here} ≠ {a} + {b}"),
            });
        }
        checked += 1;
    }
    Ok(FairnessReport::Pass { checked })
}

/// `d(χ_L[1..n])` for `n = 0..=N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CapitalTrace {
    pub bits: Bits,
    pub capital: Vec<BigRational>,
}

impl CapitalTrace {
    /// Whether every step satisfies `d(w b) = d(w) ± stake(w)`.
    pub fn obeys_recurrence<M: Martingale + ?Sized>(&self, d: &M) -> bool {
        if self.capital.first() != Some(&d.initial()) {
            return false;
        }
        (0..self.bits.len()).all(|k| {
            let w = self.bits.prefix(k);
            let s = d.stake(&w);
            let expected = if self.bits.as_slice()[k] {
                &self.capital[k] + s
            } else {
                &self.capital[k] - s
            };
            expected == self.capital[k + 1]
        })
    }

    /// Positions `n` at which `d(χ_L[1..n])` strictly exceeds every earlier value.
    pub fn records(&self) -> Vec<u64> {
        let mut best = &self.capital[0];
        let mut out = Vec::new();
        for (n, c) in self.capital.iter().enumerate().skip(1) {
            if c > best {
                best = c;
                out.push(n as u64);
            }
        }
        out
    }

    pub fn max_before(&self, position: u64) -> &BigRational {
        self.capital[..position as usize]
            .iter()
            .max()
            .expect("trace starts with the initial capital")
    }

    /// CSV with columns `position,string,bit,num,den`; row 0 is the initial capital.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("position,string,bit,num,den\n");
        for (n, c) in self.capital.iter().enumerate() {
            let (s, b) = if n == 0 {
                (String::new(), String::new())
            } else {
                (
                    rank_to_string(n as u64 - 1).to_string(),
                    u8::from(self.bits.as_slice()[n - 1]).to_string(),
                )
            };
            writeln!(out, "{n},{s},{b},{},{}", c.numer(), c.denom()).expect("write to String");
        }
        out
    }
}

/// Capital of `d` along `χ_L` up to position `N`.
pub fn capital_trace<M: Martingale + ?Sized>(
    d: &M,
    lang: &LanguageOracle,
    n: u64,
) -> Result<CapitalTrace> {
    let mut chi = ChiCache::new(lang);
    let bits = chi.prefix(n)?;
    let mut capital = Vec::with_capacity(n as usize + 1);
    let mut current = d.initial();
    capital.push(current.clone());
    for k in 0..bits.len() {
        let s = d.stake(&bits.prefix(k));
        if bits.as_slice()[k] {
            current += s;
        } else {
            current -= s;
        }
        capital.push(current.clone());
    }
    Ok(CapitalTrace { bits, capital })
}

/// 1 iff none of the first `n` strings of length `n` is in `L`.
pub fn empty_level_indicator(lang: &LanguageOracle, n: u32) -> Result<bool> {
    if n == 0 {
        return Err(Error::InvalidArgument("levels start at 1".into()));
    }
    let first = first_rank_of_length(n);
    for t in 0..u64::from(n) {
        if lang.member(&rank_to_string(first + t))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Position (1-based) of the last string of level `n`'s betting window.
pub fn level_window_end(n: u32) -> u64 {
    first_rank_of_length(n) + u64::from(n)
}
