//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Expected values are recomputed here by brute force or closed forms rather
//! than read back from the library.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use baire_core::arith::{cantor_pair, log_len};
use baire_core::circuits::{
    circuit_count, consistent_set_with, enumerate_with, majority_vote, truth_table, Basis,
    CircuitCaps, ConstraintSet,
};
use baire_core::game::{
    adversaries, diag_language_global, diag_language_local, indexed_to_winning,
    indexed_to_winning_loc, run_game, winning_to_indexed, winning_to_indexed_loc, GameTranscript,
    Player,
};
use baire_core::language::{census, chi_prefix, make_sparse, Polynomial};
use baire_core::martingale::{
    capital_trace, density_bettor, empty_level_indicator, fairness_check, level_window_end,
    ConstantMartingale, DirectValue,
};
use baire_core::rng::stream_rng;
use baire_core::strategy::{
    amplify, enforce_query_set, ext_of, ext_single, materialize_local, meets_check_local,
    meets_check_local_from, with_prefix, Constructor, Deterministic, EnumerationCap, FnConstructor,
    FnLocal, IndexedConstructor, LocalConstructor, Materialized, NoisyLocal, Prefix,
    ProbabilisticLocalConstructor, QueryReport, QueryTrial, Slice, Verdict,
};
use baire_core::strings::{position_of, rank_to_string, string_at_position, string_to_rank};
use baire_core::zoo::{
    derand_diagonalizer, generic_default, halving_run, indexed_families, local_strategies,
    paired_ones_zeros, sigma2_avoider, sparse_avoider, sparse_threshold, EchoFlip, FiniteLanguages,
};
use baire_core::{Bits, LanguageOracle};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

type Check = std::result::Result<String, String>;

const CAP: u64 = 1 << 12;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e2s<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn bits(s: &str) -> Bits {
    s.parse().expect("literal bit string")
}

/// `τ ⊑ r` with `h(τ) ⊑ r`, searched over every prefix `τ` of the finite string `r`.
fn meets_within<H: IndexedConstructor + ?Sized>(
    h: &H,
    index: u64,
    r: &Bits,
) -> Result<bool, String> {
    for m in 0..=r.len() {
        let tau = r.prefix(m);
        let w = ext_of(h, index, &tau).map_err(e2s)?;
        if m + w.len() <= r.len() && w.iter().enumerate().all(|(o, b)| r.as_slice()[m + o] == b) {
            return Ok(true);
        }
    }
    Ok(false)
}

// 1
fn enumeration_round_trip() -> Check {
    for r in 0..1u64 << 16 {
        let x = rank_to_string(r);
        // binary of r + 1 without its leading 1
        let v = r + 1;
        let width = 63 - v.leading_zeros();
        let expected = Bits::from_vec((0..width).rev().map(|j| v >> j & 1 == 1).collect());
        ensure(x == expected, || {
            format!("rank {r} gives {x}, expected {expected}")
        })?;
        ensure(string_to_rank(&x) == r, || {
            format!("rank {r} does not round-trip")
        })?;
    }
    let mut counter = 0u64;
    for len in 0..=12u32 {
        for value in 0..1u64 << len {
            let x = Bits::from_vec((0..len).rev().map(|j| value >> j & 1 == 1).collect());
            ensure(string_to_rank(&x) == counter, || {
                format!("{x} has rank {}", string_to_rank(&x))
            })?;
            ensure(rank_to_string(counter) == x, || {
                format!("rank {counter} is not {x}")
            })?;
            counter += 1;
        }
    }
    Ok(format!("{} ranks and {counter} strings", 1u64 << 16))
}

// 2
fn martingale_fairness() -> Check {
    let depth = 12;
    let mut checked = 0;
    let report = fairness_check(&density_bettor(), depth).map_err(e2s)?;
    ensure(report.passed(), || format!("density bettor: {report:?}"))?;
    checked += 1;
    let report = fairness_check(&ConstantMartingale, depth).map_err(e2s)?;
    ensure(report.passed(), || format!("constant: {report:?}"))?;
    checked += 1;
    // all-in on 1 at every step
    let doubling = DirectValue(|w: &Bits| {
        if w.iter().all(|b| b) {
            BigRational::from_integer(BigInt::one() << w.len())
        } else {
            BigRational::zero()
        }
    });
    let report = fairness_check(&doubling, depth).map_err(e2s)?;
    ensure(report.passed(), || format!("doubling: {report:?}"))?;
    checked += 1;
    // bets a third of the capital on 0 when the last bit was 1
    let thirds = DirectValue(|w: &Bits| {
        let mut d = BigRational::one();
        let mut prev = false;
        for b in w.iter() {
            let stake = if prev {
                -&d / BigInt::from(3)
            } else {
                BigRational::zero()
            };
            d = if b { &d + stake } else { &d - stake };
            prev = b;
        }
        d
    });
    let report = fairness_check(&thirds, depth).map_err(e2s)?;
    ensure(report.passed(), || format!("thirds: {report:?}"))?;
    checked += 1;
    let unfair =
        DirectValue(|w: &Bits| BigRational::from_integer(BigInt::from(w.count_ones() + 1)));
    let report = fairness_check(&unfair, depth).map_err(e2s)?;
    ensure(!report.passed(), || "an unfair fixture passed".into())?;
    Ok(format!(
        "{checked} martingales exact to depth {depth}; unfair fixture rejected"
    ))
}

// 3
fn circuit_halving() -> Check {
    let caps = CircuitCaps::default();
    let mut cases = Vec::new();
    for n in [2usize, 3] {
        for s in [2usize, 3, 4] {
            cases.push((n, s));
        }
    }
    cases.extend([(2, 0), (2, 1)]);
    let mut empty_clause_cases = 0;
    for (n, s) in cases {
        let steps = halving_run(n, s, &caps).map_err(e2s)?;
        let circuits: Vec<Bits> = enumerate_with(Basis::Plain, n, s, &caps)
            .map_err(e2s)?
            .map(|c| truth_table(&c, &Bits::new()))
            .collect::<baire_core::Result<_>>()
            .map_err(e2s)?;
        let initial = circuits.len() as u64;
        ensure(
            u128::from(initial) == circuit_count(Basis::Plain, n, s),
            || format!("(n={n}, s={s}): enumeration size differs from count"),
        )?;
        let mut alive: Vec<&Bits> = circuits.iter().collect();
        let mut exercised = false;
        for (t, step) in steps.iter().enumerate() {
            let row = step.z.to_uint();
            let ones = alive.iter().filter(|tt| tt.bit_or_zero(row + 1)).count();
            let majority = 2 * ones >= alive.len();
            ensure(step.bit == !majority, || {
                format!("(n={n}, s={s}) bit {t}: not 1 − majority")
            })?;
            ensure(step.before == alive.len() as u64, || {
                format!(
                    "(n={n}, s={s}) bit {t}: {} before, brute force {}",
                    step.before,
                    alive.len()
                )
            })?;
            alive.retain(|tt| tt.bit_or_zero(row + 1) == step.bit);
            ensure(step.after == alive.len() as u64, || {
                format!(
                    "(n={n}, s={s}) bit {t}: {} after, brute force {}",
                    step.after,
                    alive.len()
                )
            })?;
            ensure(step.after <= step.before / 2, || {
                format!(
                    "(n={n}, s={s}) bit {t}: {} → {} is not a halving",
                    step.before, step.after
                )
            })?;
            let used = t as u32 + 1;
            if f64::from(used) > (initial as f64).log2() {
                exercised = true;
                ensure(step.after == 0, || {
                    format!(
                        "(n={n}, s={s}): set nonempty after {used} bits with {initial} circuits"
                    )
                })?;
            }
        }
        if exercised {
            empty_clause_cases += 1;
        }
    }
    Ok(format!(
        "8 (n, s) cases brute-forced; empty-set clause exercised in {empty_clause_cases}"
    ))
}

// 4
fn derandomization() -> Check {
    let caps = CircuitCaps::default();
    let mut rng = stream_rng(4, 0);
    let mut coding_bits = 0;
    let mut empty_checks = 0;
    for size in 1..=4usize {
        let d = derand_diagonalizer(1, vec![size, size]).map_err(e2s)?;
        let mut lengths: Vec<u64> = (0..=7).collect();
        lengths.extend([8, 20, 40, 63]);
        for len in lengths {
            let sigma: Bits = (0..len).map(|_| rng.random::<bool>()).collect();
            let run = with_prefix(&sigma, |p| d.run(p)).map_err(e2s)?;
            let ell = run.level as usize;
            let level = if len <= 7 { 1 } else { 2 };
            ensure(ell == level, || {
                format!("|σ|={len}: level {ell}, expected {level}")
            })?;
            let start = (1u64 << ((1u64 << ell) + ell as u64)) - 1;
            ensure(
                run.extension.len() as u64 == start - len + (1 << ell),
                || format!("|σ|={len}: extension of {} bits", run.extension.len()),
            )?;
            let oracle = Bits::from_vec(
                (1..=1u64 << (ell + 1))
                    .map(|p| sigma.bit_or_zero(p))
                    .collect(),
            );
            let mut z = ConstraintSet::new();
            let mut last_size = None;
            for (j, step) in run.steps.iter().enumerate() {
                let u = Bits::from_vec((0..ell).rev().map(|b| j >> b & 1 == 1).collect());
                let set =
                    consistent_set_with(Basis::oracle_for(ell), ell, size - 1, &oracle, &z, &caps)
                        .map_err(e2s)?;
                let expected = if set.is_empty() {
                    false
                } else {
                    !majority_vote(&set, &u, &oracle).map_err(e2s)?
                };
                ensure(step.u == u && step.z == expected, || {
                    format!(
                        "size {size}, |σ|={len}, u={u}: coding bit {} vs 1 − majority {expected}",
                        step.z
                    )
                })?;
                let offset = (start - len) as usize + j;
                ensure(run.extension.as_slice()[offset] == step.z, || {
                    "coding bit misplaced".into()
                })?;
                z.insert(u, step.z).map_err(e2s)?;
                coding_bits += 1;
                last_size = Some(
                    consistent_set_with(Basis::oracle_for(ell), ell, size - 1, &oracle, &z, &caps)
                        .map_err(e2s)?
                        .len(),
                );
            }
            let count = circuit_count(Basis::oracle_for(ell), ell, size - 1);
            if count < 1u128 << (1u32 << ell) {
                empty_checks += 1;
                ensure(last_size == Some(0), || {
                    format!("size {size}, level {ell}: {count} circuits but final set has {last_size:?}")
                })?;
            }
        }
    }
    Ok(format!(
        "{coding_bits} coding bits replayed; emptiness checked on {empty_checks} runs"
    ))
}

// 5
fn diagonal_meets_all() -> Check {
    let mut families = 0;
    for (name, h) in indexed_families(CAP) {
        let d = diag_language_global(Arc::clone(&h));
        let direct = d.direct_prefix(10).map_err(|e| format!("{name}: {e}"))?;
        for p in 1..=1024u64 {
            let bit = d.member(&string_at_position(p)).map_err(e2s)?;
            ensure(bit == direct.bit_or_zero(p), || {
                format!("{name}: position {p} disagrees")
            })?;
        }
        for i in 1..=6u64 {
            let tau = direct.prefix((1usize << i) - 1);
            let w = ext_of(&h, i, &tau).map_err(e2s)?;
            let start = tau.len();
            ensure(
                w.iter()
                    .enumerate()
                    .all(|(o, b)| direct.as_slice()[start + o] == b),
                || format!("{name}: h_{i} not met"),
            )?;
        }
        families += 1;
    }
    Ok(format!(
        "{families} families; 1024 positions each agree; h_1..h_6 met"
    ))
}

// 6
fn local_diagonal() -> Check {
    let mut done = Vec::new();
    for (name, h) in local_strategies() {
        let d = diag_language_local(Arc::clone(&h), 4, EnumerationCap::default()).map_err(e2s)?;
        let direct = d.direct_prefix().map_err(|e| format!("{name}: {e}"))?;
        for p in 1..=d.len() {
            ensure(d.bit_at(p).map_err(e2s)? == direct.bit_or_zero(p), || {
                format!("{name}: position {p}")
            })?;
        }
        let mut end = 1usize;
        for i in 1..=4u64 {
            let f = d.sizes()[i as usize] as usize;
            let tau = direct.prefix(end);
            let w = materialize_local(&h, i, &tau, CAP).map_err(e2s)?;
            ensure(w.len() <= f, || format!("{name}: block {i} overflow"))?;
            ensure(
                w.iter()
                    .enumerate()
                    .all(|(o, b)| direct.as_slice()[end + o] == b),
                || format!("{name}: h_{i} not met"),
            )?;
            end += f;
        }
        done.push(format!("{name} f={:?}", d.sizes()));
    }
    Ok(done.join("; "))
}

fn replay(
    f: &dyn Constructor,
    g: &dyn Constructor,
    t: &GameTranscript,
) -> std::result::Result<(), String> {
    let mut state = Bits::new();
    for m in &t.moves {
        let player: &dyn Constructor = if m.player == Player::I { f } else { g };
        let w = ext_single(player, &state).map_err(e2s)?;
        ensure(m.player == Player::I || !w.is_empty(), || {
            "player II did not extend".into()
        })?;
        state.extend_from(&w);
        ensure(state.len() as u64 == m.state_length, || {
            format!("move {} length", m.move_index)
        })?;
        ensure(state.is_prefix_of(&t.result_prefix), || {
            format!("move {} not extended", m.move_index)
        })?;
    }
    Ok(())
}

// 7
fn conversions() -> Check {
    let horizon = 1 << 10;
    let mut plays = 0;
    for (name, h) in indexed_families(CAP) {
        let g = indexed_to_winning(Arc::clone(&h));
        for (adv, f) in adversaries(7) {
            let t = run_game(f.as_ref(), &g, 1 << 16, horizon)
                .map_err(|e| format!("{name}/{adv}: {e}"))?;
            replay(f.as_ref(), &g, &t).map_err(|e| format!("{name}/{adv}: {e}"))?;
            for i in 0..=4 {
                ensure(meets_within(&h, i, &t.result_prefix)?, || {
                    format!(
                        "{name} vs {adv}: h_{i} not met in {} bits",
                        t.result_prefix.len()
                    )
                })?;
            }
            plays += 1;
        }
    }
    for (name, h) in local_strategies() {
        let g = Slice {
            family: Materialized {
                local: indexed_to_winning_loc(Arc::clone(&h), CAP, 10),
                cap: CAP,
            },
            index: 0,
        };
        let f = &adversaries(7)[0].1;
        let t =
            run_game(f.as_ref(), &g, 1 << 16, horizon).map_err(|e| format!("local {name}: {e}"))?;
        replay(f.as_ref(), &g, &t)?;
        let hm = Materialized {
            local: Arc::clone(&h),
            cap: CAP,
        };
        // echo's witnesses only become visible to the bounded scan once |σ| ≥ 2^11
        let depth = if name == "echo" { 0 } else { 3 };
        for i in 0..=depth {
            ensure(meets_within(&hm, i, &t.result_prefix)?, || {
                format!("local {name}: h_{i} not met")
            })?;
        }
        plays += 1;
    }
    // a winning strategy that reads its input
    let g = FnConstructor(|p: &Prefix<'_>| {
        let n = p.len();
        let mut w = Bits::new();
        for q in n.saturating_sub(3) + 1..=n {
            w.push(!p.bit(q)?);
        }
        w.push(true);
        Ok(w)
    });
    let direct = |sigma: &Bits| -> Bits {
        let mut w: Bits = sigma
            .iter()
            .skip(sigma.len().saturating_sub(3))
            .map(|b| !b)
            .collect();
        w.push(true);
        w
    };
    let h = winning_to_indexed(&g);
    let mut rng = stream_rng(7, 1);
    for _ in 0..100 {
        let k = rng.random_range(0..40u64);
        let len = rng.random_range(0..30usize);
        let sigma: Bits = (0..len).map(|_| rng.random::<bool>()).collect();
        let pad = k.saturating_sub(len as u64) as usize;
        let padded = sigma.concat(&Bits::zeros(pad));
        let expected = Bits::zeros(pad).concat(&direct(&padded));
        ensure(ext_of(&h, k, &sigma).map_err(e2s)? == expected, || {
            format!("identity fails at k={k}, σ={sigma}")
        })?;
    }
    ensure(
        ext_of(
            &winning_to_indexed(FnConstructor(|_: &Prefix<'_>| Ok(bits("1")))),
            3,
            &bits("0"),
        )
        .map_err(e2s)?
            == bits("001"),
        || "append-1 example".into(),
    )?;
    Ok(format!(
        "{plays} plays met h_0..h_4 (local: h_0..h_3, echo h_0); 100 identity samples"
    ))
}

// 8
fn sparse_meagerness() -> Check {
    let p: Polynomial = "1,1".parse().map_err(e2s)?;
    let horizon = 256u64;
    // brute-force threshold: every window [m, 2m − 1] past it holds more than n + 1 strings of some length n
    let overflows = |m: u64| {
        let mut per_len = std::collections::BTreeMap::<usize, u64>::new();
        for r in m..2 * m {
            *per_len.entry(rank_to_string(r).len()).or_insert(0) += 1;
        }
        per_len.iter().any(|(&n, &c)| c > n as u64 + 1)
    };
    let mut threshold = horizon + 1;
    for m in (1..=horizon).rev() {
        if !overflows(m) {
            break;
        }
        threshold = m;
    }
    ensure(sparse_threshold(&p, horizon) == threshold, || {
        format!(
            "threshold {} vs brute force {threshold}",
            sparse_threshold(&p, horizon)
        )
    })?;
    let h = sparse_avoider();
    for seed in 0..5 {
        let lang = make_sparse(p.clone(), seed);
        for n in 0..=10 {
            let c = census(&lang, n).map_err(e2s)?;
            ensure(c <= u64::from(n) + 1, || {
                format!("seed {seed}: census {c} at length {n}")
            })?;
        }
        let v = meets_check_local_from(&h, 0, &lang, threshold, horizon, CAP).map_err(e2s)?;
        ensure(!v.is_met(), || format!("seed {seed}: {v}"))?;
    }
    let v = meets_check_local(&h, 0, &LanguageOracle::full(), 8, CAP).map_err(e2s)?;
    ensure(v == Verdict::Met { tau: Bits::new() }, || {
        format!("full language: {v}")
    })?;
    Ok(format!(
        "T(n+1) = {threshold}; 5 languages avoided on [{threshold}, {horizon}]; full met at λ"
    ))
}

// 9
fn sigma2() -> Check {
    let g = sigma2_avoider(Arc::new(FiniteLanguages), LanguageOracle::full());
    let mut rng = stream_rng(9, 0);
    let mut tested: Vec<Bits> = Bits::all_up_to(8).collect();
    for _ in 0..50 {
        let len = rng.random_range(9..300usize);
        tested.push((0..len).map(|_| rng.random::<bool>()).collect());
    }
    for sigma in &tested {
        g.materialize(sigma, CAP)
            .map_err(|e| format!("σ of length {}: {e}", sigma.len()))?;
    }
    let finite: Vec<Vec<&str>> = vec![
        vec![],
        vec!["", "0", "1"],
        vec!["00", "101"],
        vec!["1", "0110"],
        vec!["111", "0000", "10101"],
    ];
    let h = winning_to_indexed_loc(g.clone());
    for members in &finite {
        let set: Vec<Bits> = members.iter().map(|s| bits(s)).collect();
        let last = set.iter().map(position_of).max().unwrap_or(0);
        let lang = LanguageOracle::finite("test", set.clone());
        let v = meets_check_local(&h, last, &lang, 256, CAP).map_err(e2s)?;
        ensure(!v.is_met(), || format!("{members:?}: {v}"))?;
        // the avoiding index pads past every member, so its first own bit lands on a 0 of χ_L
        let chi = chi_prefix(&lang, 300).map_err(e2s)?;
        ensure(chi.iter().skip(last as usize).all(|b| !b), || {
            "members beyond last position".into()
        })?;
    }
    Ok(format!(
        "{} prefixes reach ⊥; 5 finite languages avoided at horizon 256",
        tested.len()
    ))
}

// 10
fn measure_vs_category() -> Check {
    let generic = generic_default(3, CAP).map_err(e2s)?;
    let lang = &generic.lang;
    let locals = local_strategies();
    for block in &generic.blocks {
        let (name, h) = &locals[block.index as usize - 1];
        let tau = generic.prefix.prefix(block.tau_len as usize);
        let w = materialize_local(h, block.index, &tau, CAP).map_err(e2s)?;
        let chi = chi_prefix(lang, block.tau_len + w.len() as u64).map_err(e2s)?;
        ensure(tau.concat(&w) == chi, || format!("{name} not met"))?;
    }
    let horizon = 1 << 10;
    let d = density_bettor();
    let trace = capital_trace(&d, lang, horizon).map_err(e2s)?;
    ensure(trace.obeys_recurrence(&d), || {
        "capital trace breaks the recurrence".into()
    })?;
    let mut empty = Vec::new();
    let mut records = Vec::new();
    for n in 1..=9u32 {
        let end = level_window_end(n);
        if end > horizon {
            break;
        }
        // membership read straight from the built prefix
        let first = (1u64 << n) - 1;
        let direct_empty = (0..u64::from(n)).all(|t| !generic.prefix.bit_or_zero(first + t + 1));
        ensure(
            direct_empty == empty_level_indicator(lang, n).map_err(e2s)?,
            || format!("level {n} indicator"),
        )?;
        if direct_empty {
            empty.push(n);
            let before = trace.max_before(end).clone();
            if trace.capital[end as usize] > before {
                records.push(n);
            } else {
                ensure(n < 3, || {
                    format!("empty level {n} did not set a new maximum")
                })?;
            }
        }
    }
    ensure(records.len() >= 2, || {
        format!("new maxima only after levels {records:?}")
    })?;
    let full = capital_trace(&d, &LanguageOracle::full(), horizon).map_err(e2s)?;
    ensure(
        full.capital.iter().all(|c| *c <= BigRational::one()),
        || "capital grew on the full language".into(),
    )?;
    Ok(format!(
        "{} blocks met; empty levels {empty:?}; new maxima after {records:?}",
        generic.blocks.len()
    ))
}

// 11
fn union_combinator() -> Check {
    let h = paired_ones_zeros();
    let mut rng = stream_rng(11, 0);
    for _ in 0..100 {
        let i = rng.random_range(0..40u64);
        let j = rng.random_range(0..40u64);
        let len = rng.random_range(0..20usize);
        let sigma: Bits = (0..len).map(|_| rng.random::<bool>()).collect();
        let s = i + j;
        let index = s * (s + 1) / 2 + j;
        ensure(cantor_pair(i, j) == index, || format!("pairing ({i},{j})"))?;
        let expected = Bits::ones(i as usize).concat(&Bits::zeros(j as usize));
        ensure(ext_of(&h, index, &sigma).map_err(e2s)? == expected, || {
            format!("(i,j)=({i},{j}), σ={sigma}")
        })?;
    }
    Ok("100 samples bit-exact".into())
}

/// Exact probability that the amplified vote returns `truth`.
fn amplified_success(reps: u32, correct: f64, truth: Option<bool>) -> f64 {
    let wrong = (1.0 - correct) / 2.0;
    let mut fact = vec![1.0f64; reps as usize + 1];
    for k in 1..=reps as usize {
        fact[k] = fact[k - 1] * k as f64;
    }
    let mut total = 0.0;
    // counts of (truth, first wrong, second wrong), the wrong outcomes in the order {0, 1, ⊥} minus truth
    let outcomes: Vec<Option<bool>> = [Some(false), Some(true), None]
        .into_iter()
        .filter(|o| *o != truth)
        .collect();
    for a in 0..=reps {
        for b in 0..=reps - a {
            let c = reps - a - b;
            let prob = fact[reps as usize]
                / (fact[a as usize] * fact[b as usize] * fact[c as usize])
                * correct.powi(a as i32)
                * wrong.powi((b + c) as i32);
            let (mut bottoms, mut ones, mut zeros) = (0, 0, 0);
            for (o, n) in [(truth, a), (outcomes[0], b), (outcomes[1], c)] {
                match o {
                    None => bottoms += n,
                    Some(true) => ones += n,
                    Some(false) => zeros += n,
                }
            }
            let vote = if bottoms > reps / 2 {
                None
            } else {
                Some(ones >= zeros)
            };
            if vote == truth {
                total += prob;
            }
        }
    }
    total
}

// 12
fn amplification() -> Check {
    let base = EchoFlip;
    let det = amplify(Deterministic(EchoFlip), 15).map_err(e2s)?;
    let noisy = amplify(
        NoisyLocal {
            base: EchoFlip,
            correct: 0.7,
        },
        15,
    )
    .map_err(e2s)?;
    let mut rng = stream_rng(12, 0);
    let trials = 1000u32;
    let mut hits = 0u32;
    let mut expected = 0.0;
    for trial in 0..trials {
        let len = rng.random_range(0..12usize);
        let sigma: Bits = (0..len).map(|_| rng.random::<bool>()).collect();
        let index = rng.random_range(0..6u64);
        let k = rng.random_range(1..=8u64);
        let truth = with_prefix(&sigma, |p| base.ext_bit(index, p, k)).map_err(e2s)?;
        let d = with_prefix(&sigma, |p| {
            det.ext_bit_seeded(index, p, k, 10, u64::from(trial))
        })
        .map_err(e2s)?;
        ensure(d == truth, || {
            format!("deterministic base changed at trial {trial}")
        })?;
        let got = with_prefix(&sigma, |p| {
            noisy.ext_bit_seeded(index, p, k, 10, u64::from(trial))
        })
        .map_err(e2s)?;
        hits += u32::from(got == truth);
        expected += amplified_success(15, 0.7, truth);
    }
    let rate = f64::from(hits) / f64::from(trials);
    let mean = expected / f64::from(trials);
    ensure(rate >= 0.95, || {
        format!("empirical correctness {rate:.3} (exact mean {mean:.4})")
    })?;
    Ok(format!("empirical {rate:.3}, exact expectation {mean:.4}"))
}

// 13
fn query_sets() -> Check {
    let mut strategies: Vec<(&str, Arc<dyn LocalConstructor>)> = local_strategies();
    strategies.push((
        "sigma2",
        Arc::new(sigma2_avoider(
            Arc::new(FiniteLanguages),
            LanguageOracle::full(),
        )),
    ));
    strategies.push((
        "winning-to-indexed",
        Arc::new(winning_to_indexed_loc(EchoFlip)),
    ));
    strategies.push((
        "indexed-to-winning",
        Arc::new(indexed_to_winning_loc(EchoFlip, CAP, 6)),
    ));
    let mut rng = stream_rng(13, 0);
    let mut total = 0;
    for (name, h) in &strategies {
        let trials: Vec<QueryTrial> = (0..50)
            .map(|_| {
                let len = rng.random_range(0..40u64);
                let n = log_len(len) + rng.random_range(0..2u32);
                QueryTrial {
                    n,
                    index: rng.random_range(0..5),
                    k: rng.random_range(1..8),
                    sigma: (0..len).map(|_| rng.random::<bool>()).collect(),
                }
            })
            .collect();
        let report = enforce_query_set(h.as_ref(), &trials).map_err(e2s)?;
        let QueryReport::Pass { evaluations } = report else {
            return Err(format!("{name}: {report:?}"));
        };
        total += evaluations;
    }
    let cheat = FnLocal {
        bit: |_, p: &Prefix<'_>, k| {
            p.bit(3)?;
            Ok((k == 1).then_some(true))
        },
        queries: |_, _, _| BTreeSet::from([1u64]),
    };
    let trial = QueryTrial {
        n: 2,
        index: 0,
        k: 1,
        sigma: bits("101"),
    };
    let report = enforce_query_set(&cheat, &[trial]).map_err(e2s)?;
    ensure(
        report
            == QueryReport::Fail {
                trial: 0,
                index: 0,
                k: 1,
                position: 3,
            },
        || format!("violation fixture: {report:?}"),
    )?;
    Ok(format!(
        "{} strategies, {total} evaluations; violation caught at position 3",
        strategies.len()
    ))
}

type Criterion = (&'static str, u64, fn() -> Check);

fn main() -> ExitCode {
    let criteria: [Criterion; 13] = [
        ("enumeration round-trip", 5, enumeration_round_trip),
        ("martingale fairness", 10, martingale_fairness),
        ("circuit halving", 60, circuit_halving),
        ("derandomization diagonalizer", 60, derandomization),
        ("diagonal language meets all", 30, diagonal_meets_all),
        ("local diagonal", 30, local_diagonal),
        ("game conversions", 30, conversions),
        ("sparse avoidance", 10, sparse_meagerness),
        ("sigma-2 avoider", 20, sigma2),
        ("measure vs category", 20, measure_vs_category),
        ("union combinator", 5, union_combinator),
        ("amplification", 20, amplification),
        ("query-set enforcement", 10, query_sets),
    ];
    let mut failed = 0;
    for (number, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > Duration::from_secs(*limit) => Err(format!(
                "took {:.1}s, limit {limit}s ({detail})",
                elapsed.as_secs_f64()
            )),
            other => other,
        };
        match outcome {
            Ok(detail) => println!(
                "criterion {:>2} PASS {name} [{:.2}s] {detail}",
                number + 1,
                elapsed.as_secs_f64()
            ),
            Err(reason) => {
                failed += 1;
                println!(
                    "criterion {:>2} FAIL {name} [{:.2}s] {reason}",
                    number + 1,
                    elapsed.as_secs_f64()
                );
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
