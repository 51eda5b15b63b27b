//! Arithmetic vocabulary: truncated subtraction, integer logarithms, growth
//! bound families and Cantor pairing.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Pow};

use crate::error::{Error, Result};

/// `a ∸ b = max(a - b, 0)`.
pub fn monus(a: u64, b: u64) -> u64 {
    a.saturating_sub(b)
}

/// `⌈log₂ m⌉` for `m ≥ 1`; 0 for `m ≤ 1`.
pub fn ceil_log2(m: u64) -> u32 {
    if m <= 1 {
        0
    } else {
        (m - 1).ilog2() + 1
    }
}

/// `⌈log₂(len + 1)⌉`, the bit length of `len`. Stands in for `log |σ|`.
pub fn log_len(len: u64) -> u32 {
    ceil_log2(len + 1)
}

/// `⌈log₂(n + 2)⌉`, positive for every natural `n`.
pub fn log_plus2(n: u64) -> u32 {
    ceil_log2(n + 2)
}

/// Growth-rate families standing in for a resource bound `t ∈ Δ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundFamily {
    /// `n^k`
    Poly(u32),
    /// `n^(⌈log₂(n+2)⌉^k)`
    QuasiPoly(u32),
    /// `n^(k·⌈log₂(n+2)⌉)`
    QuasiPolyLin(u32),
    /// `2^⌈n^(num/den)⌉` with `0 < num/den < 1`
    SubExp { num: u32, den: u32 },
}

impl BoundFamily {
    pub fn subexp(num: u32, den: u32) -> Result<Self> {
        if num == 0 || den == 0 || num >= den {
            return Err(Error::InvalidArgument(format!(
                "subexp exponent {num}/{den} must lie strictly between 0 and 1"
            )));
        }
        Ok(BoundFamily::SubExp { num, den })
    }

    /// `t(n)`, clamped below at 1 so that every bound is a positive budget.
    pub fn eval(&self, n: u64) -> BigUint {
        let base = BigUint::from(n);
        let raw = match *self {
            BoundFamily::Poly(k) => Pow::pow(&base, k),
            BoundFamily::QuasiPoly(k) => {
                let l = BigUint::from(log_plus2(n));
                let exp: BigUint = Pow::pow(&l, k);
                pow_big(&base, &exp)
            }
            BoundFamily::QuasiPolyLin(k) => {
                let exp = u64::from(k) * u64::from(log_plus2(n));
                Pow::pow(&base, exp)
            }
            BoundFamily::SubExp { num, den } => {
                let e = ceil_rational_power(n, num, den);
                BigUint::one() << e
            }
        };
        raw.max(BigUint::one())
    }
}

fn pow_big(base: &BigUint, exp: &BigUint) -> BigUint {
    // exponents stay small at desk scale; anything else would not fit in memory anyway
    let e = u64::try_from(exp).expect("bound exponent exceeds u64");
    Pow::pow(base, e)
}

/// `⌈n^(num/den)⌉`, computed exactly as the least `m` with `m^den ≥ n^num`.
fn ceil_rational_power(n: u64, num: u32, den: u32) -> u64 {
    let target: BigUint = Pow::pow(&BigUint::from(n), num);
    let mut lo = 0u64;
    let mut hi = n.max(1);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if Pow::pow(&BigUint::from(mid), den) >= target {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    lo
}

impl fmt::Display for BoundFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundFamily::Poly(k) => write!(f, "poly({k})"),
            BoundFamily::QuasiPoly(k) => write!(f, "quasipoly({k})"),
            BoundFamily::QuasiPolyLin(k) => write!(f, "quasipolylin({k})"),
            BoundFamily::SubExp { num, den } => write!(f, "subexp({num}/{den})"),
        }
    }
}

impl FromStr for BoundFamily {
    type Err = Error;

    /// Accepts `poly(2)`, `quasipoly(1)`, `quasipolylin(3)`, `subexp(1/2)`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unknown bound family {s:?}"));
        let s = s.trim();
        let open = s.find('(').ok_or_else(bad)?;
        let arg = s[open + 1..].strip_suffix(')').ok_or_else(bad)?;
        let int = |a: &str| a.trim().parse::<u32>().map_err(|_| bad());
        match &s[..open] {
            "poly" => Ok(BoundFamily::Poly(int(arg)?)),
            "quasipoly" => Ok(BoundFamily::QuasiPoly(int(arg)?)),
            "quasipolylin" => Ok(BoundFamily::QuasiPolyLin(int(arg)?)),
            "subexp" => {
                let (num, den) = arg.split_once('/').ok_or_else(bad)?;
                BoundFamily::subexp(int(num)?, int(den)?)
            }
            _ => Err(bad()),
        }
    }
}

/// Cantor pairing `(i + j)(i + j + 1)/2 + j`.
pub fn cantor_pair(i: u64, j: u64) -> u64 {
    let s = i.checked_add(j).expect("cantor_pair overflow");
    s.checked_mul(s + 1)
        .map(|t| t / 2)
        .and_then(|t| t.checked_add(j))
        .expect("cantor_pair overflow")
}

/// Inverse of [`cantor_pair`].
pub fn cantor_unpair(n: u64) -> (u64, u64) {
    // largest w with w(w+1)/2 ≤ n
    let mut w = ((8.0 * n as f64 + 1.0).sqrt() as u64).saturating_sub(1) / 2;
    while (w + 1) * (w + 2) / 2 <= n {
        w += 1;
    }
    while w * (w + 1) / 2 > n {
        w -= 1;
    }
    let j = n - w * (w + 1) / 2;
    (w - j, j)
}
