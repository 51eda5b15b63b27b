use std::collections::BTreeSet;
use std::sync::Arc;

use crate::arith::{log_len, log_plus2};
use crate::error::{Error, Result};
use crate::language::LanguageOracle;
use crate::strategy::{materialize_local, LocalConstructor, Prefix};
use crate::strings::{rank_to_string, Bits};

/// Read access to a simulated characteristic sequence `χ_L`.
pub trait ChiView {
    fn chi(&self, position: u64) -> Result<bool>;
}

/// Matrix `M` of a class `X = {L | ∃x ∀y M^L(x, y) = 0}`.
pub trait Sigma2Matrix: Send + Sync {
    fn eval(&self, lang: &dyn ChiView, x: u64, y: u64) -> Result<bool>;

    /// Positions of `χ_L` that `eval(·, x, y)` may read.
    fn positions(&self, x: u64, y: u64) -> Vec<u64>;
}

/// `M^L(x, y) = [y ≥ x ∧ s_y ∈ L]`; its class `X` is the finite languages.
#[derive(Debug, Clone, Copy, Default)]
pub struct FiniteLanguages;

impl Sigma2Matrix for FiniteLanguages {
    fn eval(&self, lang: &dyn ChiView, x: u64, y: u64) -> Result<bool> {
        Ok(y >= x && lang.chi(y + 1)?)
    }

    fn positions(&self, x: u64, y: u64) -> Vec<u64> {
        if y >= x {
            vec![y + 1]
        } else {
            Vec::new()
        }
    }
}

struct Simulated<'a, 'p> {
    prefix: &'a Prefix<'p>,
    tail: &'a LanguageOracle,
}

impl ChiView for Simulated<'_, '_> {
    fn chi(&self, position: u64) -> Result<bool> {
        if position <= self.prefix.len() {
            self.prefix.bit(position)
        } else {
            self.tail.bit_at(position)
        }
    }
}

/// Extends `σ` along `A` until the simulated `L = σ A(s_{|σ|}) A(s_{|σ|+1}) ⋯`
/// witnesses `M^L(x, y) ≠ 0` for every small `x`.
///
/// `ext_bit(σ, 1) = A(s_{|σ|})`. For `k ≥ 2`, with `n = ⌈log₂(|σ|+1)⌉`, the
/// output is `⊥` if every `x < ⌈log₂(n+2)⌉` has some `y < ⌈log₂(k+2)⌉` with
/// `M^L(x, y) ≠ 0`, and `A(s_{|σ|+k−1})` otherwise.
#[derive(Clone)]
pub struct Sigma2Avoider {
    matrix: Arc<dyn Sigma2Matrix>,
    base: LanguageOracle,
}

pub fn sigma2_avoider(matrix: Arc<dyn Sigma2Matrix>, base: LanguageOracle) -> Sigma2Avoider {
    Sigma2Avoider { matrix, base }
}

impl Sigma2Avoider {
    fn settled(&self, prefix: &Prefix<'_>, k: u64) -> Result<bool> {
        let sim = Simulated {
            prefix,
            tail: &self.base,
        };
        let xs = u64::from(log_plus2(u64::from(log_len(prefix.len()))));
        let ys = u64::from(log_plus2(k));
        for x in 0..xs {
            let mut found = false;
            for y in 0..ys {
                if self.matrix.eval(&sim, x, y)? {
                    found = true;
                    break;
                }
            }
            if !found {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `ext(g(σ))`, reporting non-termination at `cap` bits.
    pub fn materialize(&self, sigma: &Bits, cap: u64) -> Result<Bits> {
        materialize_local(self, 0, sigma, cap).map_err(|e| match e {
            Error::ExtensionCap { cap } => Error::NonTermination { cap },
            other => other,
        })
    }
}

impl LocalConstructor for Sigma2Avoider {
    fn ext_bit(&self, _index: u64, prefix: &Prefix<'_>, k: u64) -> Result<Option<bool>> {
        if k == 0 {
            return Ok(None);
        }
        if k >= 2 && self.settled(prefix, k)? {
            return Ok(None);
        }
        Ok(Some(
            self.base.member(&rank_to_string(prefix.len() + k - 1))?,
        ))
    }

    /// Positions `≤ 2^n − 1` read by `M` for `x < ⌈log₂(n+2)⌉`, `y < ⌈log₂(k+2)⌉`.
    fn query_set(&self, n: u32, _index: u64, k: u64) -> BTreeSet<u64> {
        let top = if n >= 63 { u64::MAX } else { (1u64 << n) - 1 };
        let xs = u64::from(log_plus2(u64::from(n)));
        let ys = u64::from(log_plus2(k));
        let mut out = BTreeSet::new();
        for x in 0..xs {
            for y in 0..ys {
                out.extend(
                    self.matrix
                        .positions(x, y)
                        .into_iter()
                        .filter(|&p| p >= 1 && p <= top),
                );
            }
        }
        out
    }
}
