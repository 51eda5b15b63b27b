//! Boolean circuits with oracle gates.
//!
//! Gates are fan-in-2 AND/OR, NOT, and ORACLE gates of any arity. An oracle
//! gate reads its input wires as a string `u` and answers bit
//! `σ[rank(u) + 1]` of the oracle prefix, or 0 past its end.
//!
//! Canonical circuits list their `n` inputs first as `INPUT(0..n)`. A circuit
//! of size 0 outputs one of its inputs; otherwise the output is the last gate.
//! AND and OR operands are ordered (`a < b`).

mod tables;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::strategy::BitSource;
use crate::strings::{position_of, Bits};

pub use tables::{table_histogram, TableHistogram};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Gate {
    Input(usize),
    Not(usize),
    And(usize, usize),
    Or(usize, usize),
    Oracle(Vec<usize>),
}

impl Gate {
    fn refs(&self) -> Vec<usize> {
        match self {
            Gate::Input(_) => vec![],
            Gate::Not(a) => vec![*a],
            Gate::And(a, b) | Gate::Or(a, b) => vec![*a, *b],
            Gate::Oracle(ws) => ws.clone(),
        }
    }
}

/// Which gates the enumeration may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Basis {
    /// NOT, AND, OR.
    Plain,
    /// NOT, AND, OR and oracle gates of arity `0..=max_arity`.
    Oracle { max_arity: usize },
}

impl Basis {
    /// Oracle gates of arity up to the number of inputs.
    pub fn oracle_for(n_inputs: usize) -> Self {
        Basis::Oracle {
            max_arity: n_inputs,
        }
    }
}

/// Enumeration limits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CircuitCaps {
    pub max_inputs: usize,
    pub max_size: usize,
    pub max_count: u128,
}

impl Default for CircuitCaps {
    fn default() -> Self {
        CircuitCaps {
            max_inputs: 4,
            max_size: 5,
            max_count: 1 << 24,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OracleCircuit {
    n_inputs: usize,
    gates: Vec<Gate>,
    output: usize,
}

impl OracleCircuit {
    /// Checks that every reference points to an earlier gate and that inputs are in range.
    pub fn new(n_inputs: usize, gates: Vec<Gate>, output: usize) -> Result<Self> {
        for (g, gate) in gates.iter().enumerate() {
            if let Gate::Input(j) = gate {
                if *j >= n_inputs {
                    return Err(Error::MalformedCircuit(format!(
                        "g{g} reads input {j} of a {n_inputs}-input circuit"
                    )));
                }
            }
            if let Some(r) = gate.refs().into_iter().find(|&r| r >= g) {
                return Err(Error::MalformedCircuit(format!(
                    "g{g} references g{r}, which is not an earlier gate"
                )));
            }
        }
        if output >= gates.len() {
            return Err(Error::MalformedCircuit(format!(
                "output g{output} does not exist ({} gates)",
                gates.len()
            )));
        }
        Ok(OracleCircuit {
            n_inputs,
            gates,
            output,
        })
    }

    /// Canonical circuit: `INPUT(0..n)` followed by `body`, output on the last gate.
    pub fn canonical(n_inputs: usize, body: Vec<Gate>) -> Result<Self> {
        let mut gates: Vec<Gate> = (0..n_inputs).map(Gate::Input).collect();
        gates.extend(body);
        let output = gates
            .len()
            .checked_sub(1)
            .ok_or_else(|| Error::MalformedCircuit("circuit without gates".into()))?;
        Self::new(n_inputs, gates, output)
    }

    pub fn n_inputs(&self) -> usize {
        self.n_inputs
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn output(&self) -> usize {
        self.output
    }

    /// Number of non-INPUT gates.
    pub fn size(&self) -> usize {
        self.gates
            .iter()
            .filter(|g| !matches!(g, Gate::Input(_)))
            .count()
    }

    /// `C(x)` with oracle gates answered from `oracle`.
    pub fn eval(&self, x: &Bits, oracle: &dyn BitSource) -> Result<bool> {
        if x.len() != self.n_inputs {
            return Err(Error::InputLength {
                expected: self.n_inputs,
                got: x.len(),
            });
        }
        let mut values: Vec<bool> = Vec::with_capacity(self.gates.len());
        for gate in &self.gates {
            let v = match gate {
                Gate::Input(j) => x.as_slice()[*j],
                Gate::Not(a) => !values[*a],
                Gate::And(a, b) => values[*a] && values[*b],
                Gate::Or(a, b) => values[*a] || values[*b],
                Gate::Oracle(ws) => {
                    let u: Bits = ws.iter().map(|w| values[*w]).collect();
                    oracle.bit(position_of(&u))?
                }
            };
            values.push(v);
        }
        Ok(values[self.output])
    }
}

/// `C(x)` against the oracle prefix `σ`.
pub fn eval(c: &OracleCircuit, x: &Bits, sigma: &dyn BitSource) -> Result<bool> {
    c.eval(x, sigma)
}

fn gate_name(g: usize) -> String {
    format!("g{g}")
}

impl fmt::Display for OracleCircuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (g, gate) in self.gates.iter().enumerate() {
            let rhs = match gate {
                Gate::Input(j) => format!("INPUT({j})"),
                Gate::Not(a) => format!("NOT({})", gate_name(*a)),
                Gate::And(a, b) => format!("AND({},{})", gate_name(*a), gate_name(*b)),
                Gate::Or(a, b) => format!("OR({},{})", gate_name(*a), gate_name(*b)),
                Gate::Oracle(ws) => format!(
                    "ORACLE({})",
                    ws.iter()
                        .map(|w| gate_name(*w))
                        .collect::<Vec<_>>()
                        .join(",")
                ),
            };
            write!(f, "g{g}={rhs} ")?;
        }
        write!(f, "out={}", gate_name(self.output))
    }
}

fn parse_ref(s: &str) -> Result<usize> {
    s.trim()
        .strip_prefix('g')
        .and_then(|d| d.parse().ok())
        .ok_or_else(|| Error::Parse(format!("bad gate reference {s:?}")))
}

impl FromStr for OracleCircuit {
    type Err = Error;

    /// Parses the dump format `g0=INPUT(0) g1=NOT(g0) out=g1`.
    fn from_str(s: &str) -> Result<Self> {
        let mut gates = Vec::new();
        let mut output = None;
        for token in s.split_whitespace() {
            let (lhs, rhs) = token
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected name=OP(...), got {token:?}")))?;
            if lhs == "out" {
                output = Some(parse_ref(rhs)?);
                continue;
            }
            if parse_ref(lhs)? != gates.len() {
                return Err(Error::Parse(format!("gate {lhs} out of order")));
            }
            let (op, args) = rhs
                .strip_suffix(')')
                .and_then(|r| r.split_once('('))
                .ok_or_else(|| Error::Parse(format!("bad gate {rhs:?}")))?;
            let args: Vec<&str> = args.split(',').filter(|a| !a.is_empty()).collect();
            let gate = match (op, args.as_slice()) {
                ("INPUT", [j]) => Gate::Input(
                    j.parse()
                        .map_err(|_| Error::Parse(format!("bad input index {j:?}")))?,
                ),
                ("NOT", [a]) => Gate::Not(parse_ref(a)?),
                ("AND", [a, b]) => Gate::And(parse_ref(a)?, parse_ref(b)?),
                ("OR", [a, b]) => Gate::Or(parse_ref(a)?, parse_ref(b)?),
                ("ORACLE", ws) => {
                    Gate::Oracle(ws.iter().map(|w| parse_ref(w)).collect::<Result<_>>()?)
                }
                _ => return Err(Error::Parse(format!("unknown gate {rhs:?}"))),
            };
            gates.push(gate);
        }
        let n_inputs = gates.iter().filter(|g| matches!(g, Gate::Input(_))).count();
        let output = output.ok_or_else(|| Error::Parse("missing out=".into()))?;
        OracleCircuit::new(n_inputs, gates, output)
    }
}

/// The gates that may be appended to a circuit with `wires` gates so far, in canonical order.
pub fn gate_options(basis: Basis, wires: usize) -> Vec<Gate> {
    let mut out: Vec<Gate> = (0..wires).map(Gate::Not).collect();
    for a in 0..wires {
        for b in a + 1..wires {
            out.push(Gate::And(a, b));
        }
    }
    for a in 0..wires {
        for b in a + 1..wires {
            out.push(Gate::Or(a, b));
        }
    }
    if let Basis::Oracle { max_arity } = basis {
        for arity in 0..=max_arity {
            let total = (wires as u64).pow(arity as u32);
            for mut code in 0..total {
                let mut ws = vec![0; arity];
                for slot in ws.iter_mut().rev() {
                    *slot = (code % wires as u64) as usize;
                    code /= wires as u64;
                }
                out.push(Gate::Oracle(ws));
            }
        }
    }
    out
}

fn option_count(basis: Basis, wires: usize) -> u128 {
    let w = wires as u128;
    let mut c = w + w * w.saturating_sub(1);
    if let Basis::Oracle { max_arity } = basis {
        c += (0..=max_arity as u32).map(|r| w.pow(r)).sum::<u128>();
    }
    c
}

/// Exact number of canonical circuits with `n` inputs and size at most `s`.
pub fn circuit_count(basis: Basis, n: usize, s: usize) -> u128 {
    let mut total = n as u128;
    let mut level = 1u128;
    for t in 0..s {
        level = level.saturating_mul(option_count(basis, n + t));
        total = total.saturating_add(level);
    }
    total
}

fn check_caps(basis: Basis, n: usize, s: usize, caps: &CircuitCaps) -> Result<()> {
    if n > caps.max_inputs {
        return Err(Error::guard(
            "circuit inputs",
            n as u64,
            caps.max_inputs as u64,
        ));
    }
    if s > caps.max_size {
        return Err(Error::guard("circuit size", s as u64, caps.max_size as u64));
    }
    let count = circuit_count(basis, n, s);
    if count > caps.max_count {
        return Err(Error::guard("circuit count", count, caps.max_count));
    }
    Ok(())
}

/// Canonical enumeration, ordered by size and then by gate choices.
pub struct CircuitIter {
    n: usize,
    s: usize,
    options: Vec<Vec<Gate>>,
    size: usize,
    next_input: usize,
    choices: Vec<usize>,
    done: bool,
}

impl CircuitIter {
    fn new(basis: Basis, n: usize, s: usize) -> Self {
        CircuitIter {
            n,
            s,
            options: (0..s).map(|t| gate_options(basis, n + t)).collect(),
            size: 0,
            next_input: 0,
            choices: Vec::new(),
            done: false,
        }
    }

    fn start_size(&mut self, size: usize) {
        self.size = size;
        self.choices = vec![0; size];
        if size > self.s || self.options[..size].iter().any(Vec::is_empty) {
            self.done = true;
        }
    }
}

impl Iterator for CircuitIter {
    type Item = OracleCircuit;

    fn next(&mut self) -> Option<OracleCircuit> {
        if self.done {
            return None;
        }
        if self.size == 0 {
            if self.next_input < self.n {
                let j = self.next_input;
                self.next_input += 1;
                let gates = (0..self.n).map(Gate::Input).collect();
                return Some(OracleCircuit {
                    n_inputs: self.n,
                    gates,
                    output: j,
                });
            }
            self.start_size(1);
            return self.next();
        }
        let mut gates: Vec<Gate> = (0..self.n).map(Gate::Input).collect();
        for (t, &c) in self.choices.iter().enumerate() {
            gates.push(self.options[t][c].clone());
        }
        let output = gates.len() - 1;
        let item = OracleCircuit {
            n_inputs: self.n,
            gates,
            output,
        };
        let mut t = self.size;
        loop {
            if t == 0 {
                self.start_size(self.size + 1);
                break;
            }
            t -= 1;
            self.choices[t] += 1;
            if self.choices[t] < self.options[t].len() {
                break;
            }
            self.choices[t] = 0;
        }
        Some(item)
    }
}

/// Every canonical circuit with `n` inputs and size at most `s` over the full oracle basis.
pub fn enumerate(n: usize, s: usize) -> Result<CircuitIter> {
    enumerate_with(Basis::oracle_for(n), n, s, &CircuitCaps::default())
}

pub fn enumerate_with(basis: Basis, n: usize, s: usize, caps: &CircuitCaps) -> Result<CircuitIter> {
    check_caps(basis, n, s, caps)?;
    Ok(CircuitIter::new(basis, n, s))
}

/// Pairs `(u_j, z_j)` with distinct `u_j`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConstraintSet {
    pairs: Vec<(Bits, bool)>,
}

impl ConstraintSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `(u, z)`; a repeated `u` is rejected.
    pub fn insert(&mut self, u: Bits, z: bool) -> Result<()> {
        if self.pairs.iter().any(|(v, _)| *v == u) {
            return Err(Error::InvalidArgument(format!(
                "constraint on {u:?} already present"
            )));
        }
        self.pairs.push((u, z));
        Ok(())
    }

    pub fn pairs(&self) -> &[(Bits, bool)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Whether `C(u_j) = z_j` for every pair.
    pub fn satisfied_by(&self, c: &OracleCircuit, sigma: &dyn BitSource) -> Result<bool> {
        for (u, z) in &self.pairs {
            if c.eval(u, sigma)? != *z {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Circuits from [`enumerate`] satisfying every constraint in `z`.
pub fn consistent_set(
    n: usize,
    s: usize,
    sigma: &dyn BitSource,
    z: &ConstraintSet,
) -> Result<Vec<OracleCircuit>> {
    consistent_set_with(
        Basis::oracle_for(n),
        n,
        s,
        sigma,
        z,
        &CircuitCaps::default(),
    )
}

pub fn consistent_set_with(
    basis: Basis,
    n: usize,
    s: usize,
    sigma: &dyn BitSource,
    z: &ConstraintSet,
    caps: &CircuitCaps,
) -> Result<Vec<OracleCircuit>> {
    if let Some((u, _)) = z.pairs().iter().find(|(u, _)| u.len() != n) {
        return Err(Error::InputLength {
            expected: n,
            got: u.len(),
        });
    }
    let mut out = Vec::new();
    for c in enumerate_with(basis, n, s, caps)? {
        if z.satisfied_by(&c, sigma)? {
            out.push(c);
        }
    }
    Ok(out)
}

/// 1 iff at least half of the circuits output 1 on `u`.
pub fn majority_vote(set: &[OracleCircuit], u: &Bits, sigma: &dyn BitSource) -> Result<bool> {
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut ones = 0usize;
    for c in set {
        ones += usize::from(c.eval(u, sigma)?);
    }
    Ok(2 * ones >= set.len())
}

/// Outputs on all `2^n` inputs in lexicographic order.
pub fn truth_table(c: &OracleCircuit, sigma: &dyn BitSource) -> Result<Bits> {
    let n = c.n_inputs();
    if n > 4 {
        return Err(Error::guard("truth-table inputs", n as u64, 4u64));
    }
    Bits::all_of_length(n as u32)
        .map(|x| c.eval(&x, sigma))
        .collect()
}
