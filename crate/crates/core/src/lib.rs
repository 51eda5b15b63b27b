//! Resource-bounded Baire category at desk scale.
//!
//! Finite extension strategies over characteristic sequences of languages,
//! Banach-Mazur games, diagonal language constructions, oracle-circuit
//! majority diagonalizers, and a density-betting martingale, all evaluated
//! exactly on finite prefixes.

pub mod arith;
pub mod circuits;
pub mod error;
pub mod game;
pub mod language;
pub mod martingale;
pub mod rng;
pub mod strategy;
pub mod strings;
pub mod zoo;

pub use error::{Error, Result};
pub use language::LanguageOracle;
pub use strings::Bits;
