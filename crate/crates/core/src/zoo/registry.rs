use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::language::{make_sparse, parse_explicit, LanguageOracle, Polynomial};
use crate::strategy::{Constructor, IndexedConstructor, LocalConstructor, Materialized, Uniform};
use crate::strings::Bits;

use super::{
    derand_diagonalizer, generic_builder, paired_ones_zeros, sigma2_avoider, singleton_avoider,
    size_diagonalizer, EchoFlip, FiniteLanguages, Ones, SingletonFamily, SizeDiagCaps,
    SparseAvoider,
};

pub const STRATEGY_NAMES: &[&str] = &[
    "singleton",
    "sparse",
    "size-diag",
    "derand-diag",
    "sigma2",
    "generic",
    "ones",
    "singleton-family",
    "paired",
    "echo",
];

pub const LANGUAGE_NAMES: &[&str] = &[
    "empty", "full", "parity", "sparse", "finite", "prefix", "file", "generic",
];

/// `name` or `name:key=value,key=value`. A value may itself contain commas
/// (`coeffs=1,1`): a piece without `=` continues the previous value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spec {
    pub name: String,
    pub params: BTreeMap<String, String>,
}

impl Spec {
    pub fn new(name: impl Into<String>) -> Self {
        Spec {
            name: name.into(),
            params: BTreeMap::new(),
        }
    }

    pub fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }
}

impl FromStr for Spec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, rest) = s.split_once(':').unwrap_or((s, ""));
        if name.is_empty() {
            return Err(Error::Parse(format!("empty name in spec {s:?}")));
        }
        let mut params = BTreeMap::new();
        let mut last: Option<String> = None;
        for piece in rest.split(',').filter(|p| !p.is_empty()) {
            match piece.split_once('=') {
                Some((k, v)) => {
                    params.insert(k.trim().to_string(), v.trim().to_string());
                    last = Some(k.trim().to_string());
                }
                None => {
                    let key = last
                        .as_ref()
                        .ok_or_else(|| Error::Parse(format!("expected key=value in {s:?}")))?;
                    let v = params.get_mut(key).expect("key inserted before");
                    v.push(',');
                    v.push_str(piece.trim());
                }
            }
        }
        Ok(Spec {
            name: name.to_string(),
            params,
        })
    }
}

impl fmt::Display for Spec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)?;
        let mut sep = ':';
        for (k, v) in &self.params {
            write!(f, "{sep}{k}={v}")?;
            sep = ',';
        }
        Ok(())
    }
}

struct Params<'a> {
    owner: &'a str,
    map: BTreeMap<String, String>,
}

impl<'a> Params<'a> {
    fn new(spec: &'a Spec) -> Self {
        Params {
            owner: &spec.name,
            map: spec.params.clone(),
        }
    }

    fn take<T: FromStr>(&mut self, key: &str, default: T) -> Result<T> {
        match self.map.remove(key) {
            None => Ok(default),
            Some(v) => v.parse().map_err(|_| {
                Error::InvalidArgument(format!("{}: bad value {v:?} for {key}", self.owner))
            }),
        }
    }

    fn take_str(&mut self, key: &str) -> Option<String> {
        self.map.remove(key)
    }

    fn finish(self) -> Result<()> {
        match self.map.keys().next() {
            None => Ok(()),
            Some(k) => Err(Error::InvalidArgument(format!(
                "{}: unknown parameter {k:?}",
                self.owner
            ))),
        }
    }
}

/// A zoo member in whichever presentation it naturally has.
#[derive(Clone)]
pub enum ZooStrategy {
    Single(Arc<dyn Constructor>),
    Indexed(Arc<dyn IndexedConstructor>),
    Local(Arc<dyn LocalConstructor>),
}

impl fmt::Debug for ZooStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ZooStrategy::Single(_) => "Single",
            ZooStrategy::Indexed(_) => "Indexed",
            ZooStrategy::Local(_) => "Local",
        })
    }
}

impl ZooStrategy {
    /// The strategy as an indexed family; local families are materialized up to `cap` bits.
    pub fn as_indexed(&self, cap: u64) -> Arc<dyn IndexedConstructor> {
        match self {
            ZooStrategy::Single(c) => Arc::new(Uniform(c.clone())),
            ZooStrategy::Indexed(h) => h.clone(),
            ZooStrategy::Local(h) => Arc::new(Materialized {
                local: h.clone(),
                cap,
            }),
        }
    }

    pub fn as_local(&self) -> Option<Arc<dyn LocalConstructor>> {
        match self {
            ZooStrategy::Local(h) => Some(h.clone()),
            _ => None,
        }
    }
}

fn parse_list<T: FromStr>(owner: &str, text: &str) -> Result<Vec<T>> {
    text.split([',', ';'])
        .filter(|p| !p.is_empty())
        .map(|p| {
            p.trim()
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("{owner}: bad list entry {p:?}")))
        })
        .collect()
}

/// Builds a language from its spec.
///
/// `empty`, `full`, `parity`; `sparse:seed=S,coeffs=c0,c1,…`;
/// `finite:members=x;y;…` (`-` for the empty string); `prefix:bits=0101`;
/// `file:path=…` (one line of bits); `generic:k=K,cap=C`.
pub fn build_language(spec: &Spec) -> Result<LanguageOracle> {
    let mut p = Params::new(spec);
    let lang = match spec.name.as_str() {
        "empty" => LanguageOracle::empty(),
        "full" => LanguageOracle::full(),
        "parity" => LanguageOracle::parity(),
        "sparse" => {
            let seed = p.take("seed", 0u64)?;
            let coeffs: Polynomial = p.take("coeffs", Polynomial::new(vec![1, 1]))?;
            make_sparse(coeffs, seed)
        }
        "finite" => {
            let members = p.take_str("members").unwrap_or_default();
            let parsed = members
                .split(';')
                .filter(|m| !m.is_empty())
                .map(|m| if m == "-" { Ok(Bits::new()) } else { m.parse() })
                .collect::<Result<Vec<Bits>>>()?;
            LanguageOracle::finite(spec.to_string(), parsed)
        }
        "prefix" => {
            let bits: Bits = p.take_str("bits").unwrap_or_default().parse()?;
            LanguageOracle::from_prefix(spec.to_string(), bits)
        }
        "file" => {
            let path = p
                .take_str("path")
                .ok_or_else(|| Error::InvalidArgument("file: missing parameter path".into()))?;
            let text = std::fs::read_to_string(&path)
                .map_err(|e| Error::InvalidArgument(format!("file: cannot read {path}: {e}")))?;
            parse_explicit(path, &text)?
        }
        "generic" => {
            let k = p.take("k", 3usize)?;
            let cap = p.take("cap", 1u64 << 12)?;
            generic_default(k, cap)?.lang
        }
        other => {
            return Err(Error::InvalidArgument(format!(
                "unknown language {other:?}"
            )));
        }
    };
    p.finish()?;
    Ok(lang)
}

/// `generic_builder` over the local zoo members (sparse, singleton of the empty language, echo).
pub fn generic_default(k: usize, cap: u64) -> Result<super::GenericLanguage> {
    let locals = local_strategies();
    let refs: Vec<&dyn LocalConstructor> = locals.iter().map(|(_, h)| h.as_ref()).collect();
    if k > refs.len() {
        return Err(Error::guard("generic K", k as u64, refs.len() as u64));
    }
    generic_builder(&refs, k, cap)
}

/// Builds a strategy from its spec.
///
/// `singleton:lang=…` (a parameterless language name), `sparse`,
/// `size-diag:c=1,bits=16,inputs=3,size=5`, `derand-diag:b=1,sizes=2;3`,
/// `sigma2:base=full`, `ones`, `singleton-family`, `paired`, `echo`.
pub fn build_strategy(spec: &Spec) -> Result<ZooStrategy> {
    let mut p = Params::new(spec);
    let out = match spec.name.as_str() {
        "singleton" => {
            let lang = p.take_str("lang").unwrap_or_else(|| "empty".into());
            let lang = build_language(&lang.parse()?)?;
            ZooStrategy::Local(Arc::new(singleton_avoider(lang)))
        }
        "sparse" => ZooStrategy::Local(Arc::new(SparseAvoider)),
        "size-diag" => {
            let c = p.take("c", 1u32)?;
            let caps = SizeDiagCaps {
                max_bits: p.take("bits", 16u64)?,
                max_inputs: p.take("inputs", 3usize)?,
                max_size: p.take("size", 5usize)?,
            };
            if caps.max_inputs > 4 {
                return Err(Error::guard(
                    "size-diag inputs",
                    caps.max_inputs as u64,
                    4u64,
                ));
            }
            ZooStrategy::Single(Arc::new(size_diagonalizer(c, caps)))
        }
        "derand-diag" => {
            let b = p.take("b", 1u32)?;
            let sizes = match p.take_str("sizes") {
                Some(text) => parse_list(&spec.name, &text)?,
                None => vec![2, 3],
            };
            if let Some(&s) = sizes.iter().find(|&&s| s > 5) {
                return Err(Error::guard("derand-diag size bound", s as u64, 5u64));
            }
            ZooStrategy::Single(Arc::new(derand_diagonalizer(b, sizes)?))
        }
        "sigma2" => {
            let base = p.take_str("base").unwrap_or_else(|| "full".into());
            let base = build_language(&base.parse()?)?;
            ZooStrategy::Local(Arc::new(sigma2_avoider(Arc::new(FiniteLanguages), base)))
        }
        "generic" => {
            return Err(Error::InvalidArgument(
                "generic names a language; use it as --language generic:k=3".into(),
            ))
        }
        "ones" => ZooStrategy::Indexed(Arc::new(Ones)),
        "singleton-family" => ZooStrategy::Indexed(Arc::new(SingletonFamily)),
        "paired" => ZooStrategy::Indexed(Arc::new(paired_ones_zeros())),
        "echo" => ZooStrategy::Local(Arc::new(EchoFlip)),
        other => {
            return Err(Error::InvalidArgument(format!(
                "unknown strategy {other:?}"
            )))
        }
    };
    p.finish()?;
    Ok(out)
}

/// The zoo's indexed families, local ones materialized up to `cap` bits.
pub fn indexed_families(cap: u64) -> Vec<(&'static str, Arc<dyn IndexedConstructor>)> {
    vec![
        ("ones", Arc::new(Ones)),
        ("singleton-family", Arc::new(SingletonFamily)),
        ("paired", Arc::new(paired_ones_zeros())),
        (
            "sparse",
            Arc::new(Materialized {
                local: SparseAvoider,
                cap,
            }),
        ),
        (
            "echo",
            Arc::new(Materialized {
                local: EchoFlip,
                cap,
            }),
        ),
    ]
}

/// The zoo's local strategies, in the order used by the generic builder.
pub fn local_strategies() -> Vec<(&'static str, Arc<dyn LocalConstructor>)> {
    vec![
        ("sparse", Arc::new(SparseAvoider)),
        (
            "singleton",
            Arc::new(singleton_avoider(LanguageOracle::empty())),
        ),
        ("echo", Arc::new(EchoFlip)),
    ]
}
