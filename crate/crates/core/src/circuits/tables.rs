use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::Result;
use crate::strategy::BitSource;

use super::{check_caps, gate_options, Basis, CircuitCaps, Gate};

/// Number of circuits per truth table, for one `(basis, n, s, σ)`.
///
/// Table bit `t` is the output on the `t`th input of length `n` in
/// lexicographic order, stored at bit `t` of the integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableHistogram {
    n: usize,
    counts: BTreeMap<u16, u64>,
}

impl TableHistogram {
    pub fn n_inputs(&self) -> usize {
        self.n
    }

    pub fn counts(&self) -> &BTreeMap<u16, u64> {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn distinct(&self) -> usize {
        self.counts.len()
    }

    /// `(#C(u)=1, #C(u)=0)` for input row `row`.
    pub fn vote(&self, row: usize) -> (u64, u64) {
        let mut ones = 0;
        let mut zeros = 0;
        for (&t, &c) in &self.counts {
            if t >> row & 1 == 1 {
                ones += c;
            } else {
                zeros += c;
            }
        }
        (ones, zeros)
    }

    /// Majority with ties to 1; `true` on an empty histogram.
    pub fn majority(&self, row: usize) -> bool {
        let (ones, zeros) = self.vote(row);
        ones >= zeros
    }

    /// Keeps circuits with output `bit` on `row`.
    pub fn restrict(&self, row: usize, bit: bool) -> TableHistogram {
        TableHistogram {
            n: self.n,
            counts: self
                .counts
                .iter()
                .filter(|(&t, _)| (t >> row & 1 == 1) == bit)
                .map(|(&t, &c)| (t, c))
                .collect(),
        }
    }

    fn merge(mut self, other: TableHistogram) -> TableHistogram {
        for (t, c) in other.counts {
            *self.counts.entry(t).or_insert(0) += c;
        }
        self
    }
}

struct Engine {
    n: usize,
    s: usize,
    mask: u16,
    options: Vec<Vec<Gate>>,
    oracle: Vec<bool>,
}

impl Engine {
    fn table(&self, gate: &Gate, wires: &[u16]) -> u16 {
        match gate {
            Gate::Input(j) => input_table(self.n, *j),
            Gate::Not(a) => !wires[*a] & self.mask,
            Gate::And(a, b) => wires[*a] & wires[*b],
            Gate::Or(a, b) => wires[*a] | wires[*b],
            Gate::Oracle(ws) => {
                let mut t = 0u16;
                for row in 0..1usize << self.n {
                    let mut value = 0usize;
                    for w in ws {
                        value = value << 1 | usize::from(wires[*w] >> row & 1 == 1);
                    }
                    let position = (1usize << ws.len()) + value;
                    if self.oracle[position] {
                        t |= 1 << row;
                    }
                }
                t
            }
        }
    }

    fn walk(&self, wires: &mut Vec<u16>, depth: usize, hist: &mut BTreeMap<u16, u64>) {
        for gate in &self.options[depth] {
            let t = self.table(gate, wires);
            *hist.entry(t).or_insert(0) += 1;
            if depth + 1 < self.s {
                wires.push(t);
                self.walk(wires, depth + 1, hist);
                wires.pop();
            }
        }
    }
}

fn input_table(n: usize, j: usize) -> u16 {
    let mut t = 0u16;
    for row in 0..1usize << n {
        if row >> (n - 1 - j) & 1 == 1 {
            t |= 1 << row;
        }
    }
    t
}

/// Truth-table histogram of every canonical circuit with `n` inputs and size at most `s`.
///
/// Oracle gates read `σ`; only positions up to `2^{n+1}` can be queried.
/// With `parallel`, work is split by the first gate and merged; the result is
/// identical to the sequential one.
pub fn table_histogram(
    basis: Basis,
    n: usize,
    s: usize,
    sigma: &(dyn BitSource + Sync),
    caps: &CircuitCaps,
    parallel: bool,
) -> Result<TableHistogram> {
    check_caps(basis, n, s, caps)?;
    let max_arity = match basis {
        Basis::Plain => 0,
        Basis::Oracle { max_arity } => max_arity,
    };
    let oracle = (0..1u64 << (max_arity + 1))
        .map(|p| if p == 0 { Ok(false) } else { sigma.bit(p) })
        .collect::<Result<Vec<bool>>>()?;
    let engine = Engine {
        n,
        s,
        mask: if n == 4 {
            u16::MAX
        } else {
            (1u16 << (1 << n)) - 1
        },
        options: (0..s).map(|t| gate_options(basis, n + t)).collect(),
        oracle,
    };
    let inputs: Vec<u16> = (0..n).map(|j| input_table(n, j)).collect();
    let mut base = TableHistogram {
        n,
        counts: BTreeMap::new(),
    };
    for &t in &inputs {
        *base.counts.entry(t).or_insert(0) += 1;
    }
    if s == 0 {
        return Ok(base);
    }
    let branch = |gate: &Gate| {
        let mut hist = BTreeMap::new();
        let mut wires = inputs.clone();
        let t = engine.table(gate, &wires);
        *hist.entry(t).or_insert(0) += 1;
        if s > 1 {
            wires.push(t);
            engine.walk(&mut wires, 1, &mut hist);
        }
        TableHistogram { n, counts: hist }
    };
    let parts: Vec<TableHistogram> = if parallel {
        engine.options[0].par_iter().map(branch).collect()
    } else {
        engine.options[0].iter().map(branch).collect()
    };
    Ok(parts.into_iter().fold(base, TableHistogram::merge))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuits::{circuit_count, enumerate_with, truth_table};
    use crate::strings::Bits;

    fn brute(basis: Basis, n: usize, s: usize, sigma: &Bits) -> BTreeMap<u16, u64> {
        let mut out = BTreeMap::new();
        for c in enumerate_with(basis, n, s, &CircuitCaps::default()).unwrap() {
            let table = truth_table(&c, sigma).unwrap();
            let t = table
                .iter()
                .enumerate()
                .fold(0u16, |acc, (row, b)| acc | (u16::from(b) << row));
            *out.entry(t).or_insert(0) += 1;
        }
        out
    }

    #[test]
    fn matches_brute_force() {
        let sigma: Bits = "0110100111".parse().unwrap();
        for (basis, n, s) in [
            (Basis::Plain, 2, 3),
            (Basis::oracle_for(1), 1, 3),
            (Basis::oracle_for(2), 2, 2),
            (Basis::Plain, 3, 2),
        ] {
            let h = table_histogram(basis, n, s, &sigma, &CircuitCaps::default(), false).unwrap();
            assert_eq!(h.counts, brute(basis, n, s, &sigma), "{basis:?} {n} {s}");
            assert_eq!(u128::from(h.total()), circuit_count(basis, n, s));
        }
    }

    #[test]
    fn parallel_equals_sequential() {
        let sigma: Bits = "1011".parse().unwrap();
        let caps = CircuitCaps::default();
        let basis = Basis::oracle_for(2);
        let a = table_histogram(basis, 2, 3, &sigma, &caps, false).unwrap();
        let b = table_histogram(basis, 2, 3, &sigma, &caps, true).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn restrict_halves_against_majority() {
        let h = table_histogram(
            Basis::Plain,
            2,
            2,
            &Bits::new(),
            &CircuitCaps::default(),
            false,
        )
        .unwrap();
        for row in 0..4 {
            let m = h.majority(row);
            assert!(h.restrict(row, !m).total() <= h.total() / 2);
        }
    }
}
