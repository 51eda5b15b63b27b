use std::fmt::Write as _;
use std::sync::Arc;

use baire_core::arith::{cantor_pair, log_len, BoundFamily};
use baire_core::circuits::CircuitCaps;
use baire_core::game::{
    adversaries, diag_language_global, diag_language_local, indexed_to_winning,
    indexed_to_winning_loc, run_game,
};
use baire_core::language::chi_prefix;
use baire_core::martingale::{
    capital_trace, density_bettor, fairness_check, ConstantMartingale, Martingale,
};
use baire_core::rng::stream_rng;
use baire_core::strategy::{
    avoids_check, enforce_query_set, ext_of, meets_check, meets_check_local, meter_indexed,
    meter_local, witness_in, AvoidVerdict, Constructor, EnumerationCap, LocalConstructor,
    Materialized, QueryReport, QueryTrial, Slice,
};
use baire_core::strings::{rank_to_string, string_at_position, string_to_rank};
use baire_core::zoo::{
    build_language, build_strategy, halving_run, local_strategies, paired_ones_zeros,
    sigma2_avoider, FiniteLanguages, ZooStrategy,
};
use baire_core::{Bits, LanguageOracle};
use rand::Rng;

use crate::config::Opts;
use crate::CliError;

const DEFAULT_CAP: u64 = 1 << 12;

/// What a command produced.
#[derive(Debug, Default)]
pub struct Outcome {
    /// Primary artifact.
    pub output: String,
    /// Secondary notes for stderr.
    pub notes: String,
    /// Game result prefix, written separately from the transcript.
    pub result_prefix: Option<String>,
    pub passed: bool,
}

impl Outcome {
    fn pass(output: String) -> Self {
        Outcome {
            output,
            passed: true,
            ..Outcome::default()
        }
    }
}

fn language(o: &Opts) -> Result<LanguageOracle, CliError> {
    let text = o
        .language
        .as_deref()
        .ok_or_else(|| CliError::Config("language: missing".into()))?;
    Ok(build_language(&text.parse()?)?)
}

fn strategy(o: &Opts) -> Result<ZooStrategy, CliError> {
    let text = o
        .strategy
        .as_deref()
        .ok_or_else(|| CliError::Config("strategy: missing".into()))?;
    Ok(build_strategy(&text.parse()?)?)
}

fn sigma(o: &Opts) -> Result<Bits, CliError> {
    Ok(o.sigma.as_deref().unwrap_or("").parse()?)
}

pub fn run(command: &str, o: &Opts) -> Result<Outcome, CliError> {
    match command {
        "chi" => chi(o),
        "strategy" => apply(o),
        "check" => check(o),
        "game" => game(o),
        "diag" => diag(o),
        "circuit-diag" => circuit_diag(o),
        "martingale" => martingale(o),
        "verify" => verify(o),
        other => Err(CliError::Config(format!(
            "command: unknown subcommand {other:?}"
        ))),
    }
}

fn chi(o: &Opts) -> Result<Outcome, CliError> {
    let bits = chi_prefix(&language(o)?, o.bits.unwrap_or(0))?;
    Ok(Outcome::pass(format!("{bits}\n")))
}

fn apply(o: &Opts) -> Result<Outcome, CliError> {
    let h = strategy(o)?;
    let sigma = sigma(o)?;
    let index = o.index.unwrap_or(0);
    let cap = o.cap.unwrap_or(DEFAULT_CAP);
    let bound: BoundFamily = o.bound.as_deref().unwrap_or("poly(2)").parse()?;
    let (w, report) = match &h {
        ZooStrategy::Local(l) => meter_local(l.as_ref(), index, &sigma, &bound, cap)?,
        other => meter_indexed(other.as_indexed(cap).as_ref(), index, &sigma, &bound)?,
    };
    let mut out = String::new();
    writeln!(
        out,
        "strategy={}",
        o.strategy.as_deref().unwrap_or_default()
    )
    .ok();
    writeln!(out, "index={index}").ok();
    writeln!(out, "sigma={sigma}").ok();
    writeln!(out, "extension={w}").ok();
    writeln!(out, "result={}", sigma.concat(&w)).ok();
    writeln!(out, "bound={bound}").ok();
    writeln!(out, "meter {report}").ok();
    Ok(Outcome::pass(out))
}

fn check(o: &Opts) -> Result<Outcome, CliError> {
    let h = strategy(o)?;
    let lang = language(o)?;
    let index = o.index.unwrap_or(0);
    let horizon = o.horizon.unwrap_or(0);
    let cap = o.cap.unwrap_or(DEFAULT_CAP);
    let line = match o.mode.as_deref().unwrap_or("meets") {
        "avoids" => {
            let single = Slice {
                family: h.as_indexed(cap),
                index,
            };
            match avoids_check(&single, &lang, horizon)? {
                AvoidVerdict::AvoidsUpTo { horizon } => format!("AvoidsUpTo{{{horizon}}}"),
                AvoidVerdict::FailsAt { tau } => {
                    format!("FailsAt{{tau={tau:?}, |tau|={}}}", tau.len())
                }
            }
        }
        _ => match &h {
            ZooStrategy::Local(l) => {
                meets_check_local(l.as_ref(), index, &lang, horizon, cap)?.to_string()
            }
            other => {
                let single = Slice {
                    family: other.as_indexed(cap),
                    index,
                };
                meets_check(&single, &lang, horizon)?.to_string()
            }
        },
    };
    Ok(Outcome::pass(format!("{line}\n")))
}

fn game(o: &Opts) -> Result<Outcome, CliError> {
    let h = strategy(o)?;
    let cap = o.cap.unwrap_or(DEFAULT_CAP);
    let seed = o.seed.unwrap_or(0);
    let who = o.player_one.as_deref().unwrap_or("identity");
    let f = adversaries(seed)
        .into_iter()
        .find(|(name, _)| *name == who)
        .map(|(_, f)| f)
        .ok_or_else(|| CliError::Config(format!("player-one: unknown name {who:?}")))?;
    let g: Arc<dyn Constructor> = match (&h, o.local) {
        (ZooStrategy::Local(l), true) => Arc::new(Slice {
            family: Materialized {
                local: indexed_to_winning_loc(l.clone(), cap, 10),
                cap,
            },
            index: 0,
        }),
        (_, true) => {
            return Err(CliError::Config(
                "local: the strategy is not a local family".into(),
            ))
        }
        (_, false) => Arc::new(indexed_to_winning(h.as_indexed(cap))),
    };
    let t = run_game(
        f.as_ref(),
        g.as_ref(),
        o.max_moves.unwrap_or(1 << 16),
        o.horizon.unwrap_or(1 << 10),
    )?;
    let family = h.as_indexed(cap);
    let depth = match h {
        ZooStrategy::Single(_) => 0,
        _ => o.depth.unwrap_or(4),
    };
    let mut notes = String::new();
    let mut passed = true;
    for i in 0..=u64::from(depth) {
        match witness_in(family.as_ref(), i, &t.result_prefix)? {
            Some(tau) => writeln!(notes, "h_{i} met at |tau|={}", tau.len()).ok(),
            None => {
                passed = false;
                writeln!(notes, "h_{i} NOT met within {} bits", t.result_prefix.len()).ok()
            }
        };
    }
    Ok(Outcome {
        output: t.to_jsonl(),
        notes,
        result_prefix: Some(t.result_prefix.to_string()),
        passed,
    })
}

fn diag(o: &Opts) -> Result<Outcome, CliError> {
    let h = strategy(o)?;
    let cap = o.cap.unwrap_or(DEFAULT_CAP);
    let mut out = String::new();
    let mut passed = true;
    let mut note = |out: &mut String, ok: bool, line: String| {
        passed &= ok;
        writeln!(out, "{} {line}", if ok { "PASS" } else { "FAIL" }).ok();
    };
    if o.mode.as_deref() == Some("local") {
        let Some(l) = h.as_local() else {
            return Err(CliError::Config(
                "mode: local diagonal needs a local strategy".into(),
            ));
        };
        let d = diag_language_local(
            l.clone(),
            u64::from(o.blocks.unwrap_or(4)),
            EnumerationCap::default(),
        )?;
        let chi = d.direct_prefix()?;
        writeln!(out, "{chi}").ok();
        writeln!(out, "sizes={:?}", d.sizes()).ok();
        let agree = (1..=d.len()).try_fold(true, |acc, p| {
            Ok::<_, CliError>(acc && d.bit_at(p)? == chi.bit_or_zero(p))
        })?;
        note(
            &mut out,
            agree,
            format!("per-string membership agrees on {} positions", d.len()),
        );
        let mut start = 1usize;
        for (i, &f) in d.sizes().iter().enumerate().skip(1) {
            let w = baire_core::strategy::materialize_local(
                l.as_ref(),
                i as u64,
                &chi.prefix(start),
                cap,
            )?;
            let ok = chi.prefix(start + w.len()) == chi.prefix(start).concat(&w);
            note(&mut out, ok, format!("h_{i} met at block {i}"));
            start += f as usize;
        }
    } else {
        let blocks = o.blocks.unwrap_or(8);
        let family = h.as_indexed(cap);
        let d = diag_language_global(family.clone());
        let chi = d.direct_prefix(blocks)?;
        writeln!(out, "{chi}").ok();
        let checked = (chi.len() as u64).min(1 << 10);
        let mut agree = true;
        for p in 1..=checked {
            agree &= d.member(&string_at_position(p))? == chi.bit_or_zero(p);
        }
        note(
            &mut out,
            agree,
            format!("per-string membership agrees on {checked} positions"),
        );
        for i in 1..=u64::from(blocks) {
            let tau = chi.prefix((1usize << i) - 1);
            let w = ext_of(family.as_ref(), i, &tau)?;
            let ok = chi.prefix(tau.len() + w.len()) == tau.concat(&w);
            note(&mut out, ok, format!("h_{i} met at block {i}"));
        }
    }
    Ok(Outcome {
        output: out,
        passed,
        ..Outcome::default()
    })
}

fn circuit_diag(o: &Opts) -> Result<Outcome, CliError> {
    let steps = halving_run(
        o.n.unwrap_or(0),
        o.size.unwrap_or(0),
        &CircuitCaps::default(),
    )?;
    let mut out = String::from("bit,string,value,before,after\n");
    for (t, s) in steps.iter().enumerate() {
        writeln!(
            out,
            "{},{},{},{},{}",
            t + 1,
            s.z,
            u8::from(s.bit),
            s.before,
            s.after
        )
        .ok();
    }
    Ok(Outcome::pass(out))
}

fn martingale(o: &Opts) -> Result<Outcome, CliError> {
    let lang = language(o)?;
    let horizon = o.horizon.unwrap_or(0);
    let d: Box<dyn Martingale> = match o.martingale.as_deref().unwrap_or("density") {
        "constant" => Box::new(ConstantMartingale),
        _ => Box::new(density_bettor()),
    };
    let trace = capital_trace(d.as_ref(), &lang, horizon)?;
    Ok(Outcome::pass(trace.to_csv()))
}

fn verify(o: &Opts) -> Result<Outcome, CliError> {
    let suite = o.suite.as_deref().unwrap_or("all");
    let all = suite == "all";
    let mut out = String::new();
    let mut passed = true;
    let mut record = |out: &mut String, ok: bool, line: String| {
        passed &= ok;
        writeln!(out, "{} {line}", if ok { "PASS" } else { "FAIL" }).ok();
    };
    if all || suite == "enumeration" {
        let ok = (0..1u64 << 16).all(|r| string_to_rank(&rank_to_string(r)) == r);
        record(
            &mut out,
            ok,
            "enumeration: ranks below 2^16 round-trip".into(),
        );
    }
    if all || suite == "fairness" {
        let depth = o.depth.unwrap_or(10);
        for (name, report) in [
            ("density", fairness_check(&density_bettor(), depth)?),
            ("constant", fairness_check(&ConstantMartingale, depth)?),
        ] {
            record(
                &mut out,
                report.passed(),
                format!("fairness: {name} to depth {depth} {report:?}"),
            );
        }
    }
    if all || suite == "halving" {
        let (n, s) = (o.n.unwrap_or(2), o.size.unwrap_or(3));
        let steps = halving_run(n, s, &CircuitCaps::default())?;
        let initial = steps.first().map_or(0, |st| st.before);
        for (t, st) in steps.iter().enumerate() {
            let mut ok = st.after <= st.before / 2;
            if (t as f64 + 1.0) > (initial as f64).log2() {
                ok &= st.after == 0;
            }
            record(
                &mut out,
                ok,
                format!(
                    "halving: bit {} z={} {} -> {}",
                    t + 1,
                    st.z,
                    st.before,
                    st.after
                ),
            );
        }
    }
    if all || suite == "union" {
        let h = paired_ones_zeros();
        let mut rng = stream_rng(o.seed.unwrap_or(0), 11);
        let mut ok = true;
        for _ in 0..100 {
            let (i, j) = (rng.random_range(0..40u64), rng.random_range(0..40u64));
            let len = rng.random_range(0..20usize);
            let sigma: Bits = (0..len).map(|_| rng.random::<bool>()).collect();
            ok &= ext_of(&h, cantor_pair(i, j), &sigma)?
                == Bits::ones(i as usize).concat(&Bits::zeros(j as usize));
        }
        record(&mut out, ok, "union: 100 pairs bit-exact".into());
    }
    if all || suite == "query-sets" {
        let mut strategies: Vec<(&str, Arc<dyn LocalConstructor>)> = local_strategies();
        strategies.push((
            "sigma2",
            Arc::new(sigma2_avoider(
                Arc::new(FiniteLanguages),
                LanguageOracle::full(),
            )),
        ));
        let mut rng = stream_rng(o.seed.unwrap_or(0), 13);
        for (name, h) in strategies {
            let trials: Vec<QueryTrial> = (0..50)
                .map(|_| {
                    let len = rng.random_range(0..40u64);
                    QueryTrial {
                        n: log_len(len),
                        index: rng.random_range(0..5),
                        k: rng.random_range(1..8),
                        sigma: (0..len).map(|_| rng.random::<bool>()).collect(),
                    }
                })
                .collect();
            let report = enforce_query_set(h.as_ref(), &trials)?;
            record(
                &mut out,
                matches!(report, QueryReport::Pass { .. }),
                format!("query-sets: {name} {report:?}"),
            );
        }
    }
    Ok(Outcome {
        output: out,
        passed,
        ..Outcome::default()
    })
}
