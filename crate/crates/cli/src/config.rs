use std::path::{Path, PathBuf};

use baire_core::arith::BoundFamily;
use baire_core::circuits::{circuit_count, Basis, CircuitCaps};
use baire_core::zoo::{build_language, build_strategy, Spec, LANGUAGE_NAMES, STRATEGY_NAMES};
use baire_core::Bits;
use clap::Args;
use serde::Deserialize;

pub const COMMANDS: &[&str] = &[
    "chi",
    "strategy",
    "check",
    "game",
    "diag",
    "circuit-diag",
    "martingale",
    "verify",
];
pub const SUITES: &[&str] = &[
    "enumeration",
    "fairness",
    "halving",
    "union",
    "query-sets",
    "all",
];
pub const PLAYERS: &[&str] = &["identity", "append-0", "random"];
pub const MARTINGALES: &[&str] = &["density", "constant"];

pub const MAX_BITS: u64 = 1 << 20;
pub const MAX_HORIZON: u64 = 1 << 16;
pub const MAX_MOVES: u64 = 1 << 20;
pub const MAX_CAP: u64 = 1 << 16;
pub const MAX_DEPTH: u32 = 14;
pub const MAX_GLOBAL_BLOCKS: u32 = 12;
pub const MAX_LOCAL_BLOCKS: u32 = 4;

/// Every experiment parameter; the same keys are accepted as flags and in the config file.
#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct Opts {
    /// Subcommand to run (config file only).
    #[arg(skip)]
    pub command: Option<String>,
    /// Language spec, e.g. `sparse:seed=3,coeffs=1,1`.
    #[arg(long)]
    pub language: Option<String>,
    /// Strategy spec, e.g. `sparse` or `size-diag:c=1`.
    #[arg(long)]
    pub strategy: Option<String>,
    /// Strategy index `i`.
    #[arg(long)]
    pub index: Option<u64>,
    /// Input prefix as a bit string.
    #[arg(long)]
    pub sigma: Option<String>,
    /// Number of characteristic bits to print.
    #[arg(long)]
    pub bits: Option<u64>,
    #[arg(long)]
    pub horizon: Option<u64>,
    /// `meets` or `avoids` for check; `global` or `local` for diag.
    #[arg(long)]
    pub mode: Option<String>,
    /// Player I in a game: identity, append-0 or random.
    #[arg(long)]
    pub player_one: Option<String>,
    #[arg(long)]
    pub max_moves: Option<u64>,
    /// Use the local conversion in a game.
    #[arg(long)]
    #[serde(default)]
    pub local: bool,
    /// Circuit inputs.
    #[arg(long)]
    pub n: Option<usize>,
    /// Circuit size bound.
    #[arg(long)]
    pub size: Option<usize>,
    /// density or constant.
    #[arg(long)]
    pub martingale: Option<String>,
    /// Invariant suite for verify.
    #[arg(long)]
    pub suite: Option<String>,
    /// Fairness depth, or how many indices a game result is checked against.
    #[arg(long)]
    pub depth: Option<u32>,
    /// Diagonal blocks to build.
    #[arg(long)]
    pub blocks: Option<u32>,
    /// Longest extension materialized from a local strategy.
    #[arg(long)]
    pub cap: Option<u64>,
    /// Resource bound for metering, e.g. `poly(2)`.
    #[arg(long)]
    pub bound: Option<String>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Worker threads for circuit enumeration.
    #[arg(long)]
    pub threads: Option<usize>,
    /// Primary artifact path; stdout when absent.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Where a game writes its result prefix; stderr when absent.
    #[arg(long)]
    pub result_out: Option<PathBuf>,
}

macro_rules! overlay {
    ($top:ident, $base:ident; $($field:ident),*) => {
        Opts {
            $($field: $top.$field.or($base.$field),)*
            local: $top.local || $base.local,
        }
    };
}

impl Opts {
    /// Values set in `self` win over `base`.
    pub fn over(self, base: Opts) -> Opts {
        let top = self;
        overlay!(top, base; command, language, strategy, index, sigma, bits, horizon, mode, player_one,
            max_moves, n, size, martingale, suite, depth, blocks, cap, bound, seed, threads, output, result_out)
    }
}

/// Reads a TOML config file.
pub fn load(path: &Path) -> Result<Opts, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    toml::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

/// Problems that would stop `command` from starting; empty when it can run.
pub fn validate(command: &str, o: &Opts) -> Vec<String> {
    let mut d = Vec::new();
    if !COMMANDS.contains(&command) {
        d.push(format!("command: unknown subcommand {command:?}"));
        return d;
    }
    let required: &[(&str, bool)] = match command {
        "chi" => &[
            ("language", o.language.is_some()),
            ("bits", o.bits.is_some()),
        ],
        "strategy" => &[("strategy", o.strategy.is_some())],
        "check" => &[
            ("strategy", o.strategy.is_some()),
            ("language", o.language.is_some()),
            ("horizon", o.horizon.is_some()),
        ],
        "game" | "diag" => &[("strategy", o.strategy.is_some())],
        "circuit-diag" => &[("n", o.n.is_some()), ("size", o.size.is_some())],
        "martingale" => &[
            ("language", o.language.is_some()),
            ("horizon", o.horizon.is_some()),
        ],
        "verify" => &[("suite", o.suite.is_some())],
        _ => &[],
    };
    for (field, present) in required {
        if !present {
            d.push(format!("{field}: missing parameter for {command}"));
        }
    }
    if let Some(text) = &o.language {
        check_spec(&mut d, "language", text, LANGUAGE_NAMES, |s| {
            build_language(s).map(|_| ())
        });
    }
    if let Some(text) = &o.strategy {
        check_spec(&mut d, "strategy", text, STRATEGY_NAMES, |s| {
            build_strategy(s).map(|_| ())
        });
    }
    if let Some(s) = &o.sigma {
        if s.parse::<Bits>().is_err() {
            d.push(format!("sigma: {s:?} is not a bit string"));
        }
    }
    if let Some(b) = &o.bound {
        if let Err(e) = b.parse::<BoundFamily>() {
            d.push(format!("bound: {e}"));
        }
    }
    let limit = |d: &mut Vec<String>, field: &str, value: Option<u64>, cap: u64| {
        if let Some(v) = value {
            if v > cap {
                d.push(format!("{field}: scale guard: {v} exceeds cap {cap}"));
            }
        }
    };
    limit(&mut d, "bits", o.bits, MAX_BITS);
    limit(&mut d, "horizon", o.horizon, MAX_HORIZON);
    limit(&mut d, "max-moves", o.max_moves, MAX_MOVES);
    limit(&mut d, "cap", o.cap, MAX_CAP);
    limit(
        &mut d,
        "depth",
        o.depth.map(u64::from),
        u64::from(MAX_DEPTH),
    );
    let local = o.mode.as_deref() == Some("local");
    let block_cap = if local {
        MAX_LOCAL_BLOCKS
    } else {
        MAX_GLOBAL_BLOCKS
    };
    limit(
        &mut d,
        "blocks",
        o.blocks.map(u64::from),
        u64::from(block_cap),
    );
    let caps = CircuitCaps::default();
    limit(&mut d, "n", o.n.map(|v| v as u64), caps.max_inputs as u64);
    limit(
        &mut d,
        "size",
        o.size.map(|v| v as u64),
        caps.max_size as u64,
    );
    if let (Some(n), Some(s)) = (o.n, o.size) {
        if n <= caps.max_inputs && s <= caps.max_size {
            let count = circuit_count(Basis::Plain, n, s);
            if count > caps.max_count {
                d.push(format!(
                    "size: scale guard: {count} circuits exceed cap {}",
                    caps.max_count
                ));
            }
        }
    }
    if let Some(m) = &o.mode {
        let allowed: &[&str] = match command {
            "check" => &["meets", "avoids"],
            "diag" => &["global", "local"],
            _ => &[],
        };
        if !allowed.contains(&m.as_str()) {
            d.push(format!(
                "mode: {m:?} is not valid for {command} (expected one of {allowed:?})"
            ));
        }
    }
    let one_of = |d: &mut Vec<String>, field: &str, value: &Option<String>, names: &[&str]| {
        if let Some(v) = value {
            if !names.contains(&v.as_str()) {
                d.push(format!(
                    "{field}: unknown name {v:?} (expected one of {names:?})"
                ));
            }
        }
    };
    one_of(&mut d, "player-one", &o.player_one, PLAYERS);
    one_of(&mut d, "martingale", &o.martingale, MARTINGALES);
    one_of(&mut d, "suite", &o.suite, SUITES);
    if o.threads == Some(0) {
        d.push("threads: must be positive".into());
    }
    d
}

fn check_spec(
    d: &mut Vec<String>,
    field: &str,
    text: &str,
    names: &[&str],
    build: impl Fn(&Spec) -> baire_core::Result<()>,
) {
    match text.parse::<Spec>() {
        Err(e) => d.push(format!("{field}: {e}")),
        Ok(spec) if !names.contains(&spec.name.as_str()) => {
            d.push(format!("{field}: unknown {field} name {:?}", spec.name));
        }
        Ok(spec) => {
            if let Err(e) = build(&spec) {
                d.push(format!("{field}: {e}"));
            }
        }
    }
}
