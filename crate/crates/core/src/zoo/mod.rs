//! Named strategies and test languages.

mod basic;
mod derand;
mod generic;
mod registry;
mod sigma2;
mod size_diag;

pub use basic::{
    census_within, paired_ones_zeros, singleton_avoider, sparse_avoider, sparse_threshold,
    EchoFlip, Ones, SingletonAvoider, SingletonFamily, SparseAvoider,
};
pub use derand::{derand_diagonalizer, CodingStep, DerandDiagonalizer, DerandRun};
pub use generic::{generic_builder, GenericBlock, GenericLanguage};
pub use registry::{
    build_language, build_strategy, generic_default, indexed_families, local_strategies, Spec,
    ZooStrategy, LANGUAGE_NAMES, STRATEGY_NAMES,
};
pub use sigma2::{sigma2_avoider, ChiView, FiniteLanguages, Sigma2Avoider, Sigma2Matrix};
pub use size_diag::{halving_run, size_diagonalizer, DiagStep, SizeDiagCaps, SizeDiagonalizer};
