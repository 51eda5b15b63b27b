//! Banach-Mazur games, the conversions between winning strategies and
//! indexed strategies, and diagonal languages meeting every member of a family.

mod convert;
mod diag;

use std::fmt::Write as _;

use rand::Rng;

use crate::error::{Error, Result};
use crate::rng::stream_rng;
use crate::strategy::{ext_single, Constructor, Prefix};
use crate::strings::Bits;

pub use convert::{
    indexed_to_winning, indexed_to_winning_loc, winning_to_indexed, winning_to_indexed_loc,
    IndexedToWinning, IndexedToWinningLoc, WinningToIndexed, WinningToIndexedLoc,
    BOUND_EVALUATIONS,
};
pub use diag::{diag_language_global, diag_language_local, DiagGlobal, DiagLocal};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Player {
    I,
    II,
}

impl Player {
    pub fn as_str(self) -> &'static str {
        match self {
            Player::I => "I",
            Player::II => "II",
        }
    }
}

/// One half-move.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MoveRecord {
    pub move_index: u64,
    pub player: Player,
    /// `|state|` after the move.
    pub state_length: u64,
    pub extension_length: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameTranscript {
    pub moves: Vec<MoveRecord>,
    pub result_prefix: Bits,
}

impl GameTranscript {
    pub fn move_count(&self) -> u64 {
        self.moves.len() as u64
    }

    /// `|(g∘f)^i(λ)|` for every completed round `i ≥ 1`.
    pub fn round_lengths(&self) -> Vec<u64> {
        self.moves
            .iter()
            .filter(|m| m.player == Player::II)
            .map(|m| m.state_length)
            .collect()
    }

    /// The state after every half-move, starting from `λ`.
    pub fn states(&self) -> Vec<Bits> {
        std::iter::once(0)
            .chain(self.moves.iter().map(|m| m.state_length))
            .map(|len| self.result_prefix.prefix(len as usize))
            .collect()
    }

    /// One JSON object per half-move, keys in a fixed order.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for m in &self.moves {
            writeln!(
                out,
                "{{\"move_index\":{},\"player\":\"{}\",\"state_length\":{},\"extension_length\":{}}}",
                m.move_index,
                m.player.as_str(),
                m.state_length,
                m.extension_length
            )
            .expect("write to String");
        }
        out
    }
}

/// Plays `f` (player I) against `g` (player II) from `λ`, for at most
/// `max_moves` half-moves or until the state reaches `horizon` bits.
pub fn run_game<F, G>(f: &F, g: &G, max_moves: u64, horizon: u64) -> Result<GameTranscript>
where
    F: Constructor + ?Sized,
    G: Constructor + ?Sized,
{
    let mut state = Bits::new();
    let mut moves = Vec::new();
    let mut player = Player::I;
    while (moves.len() as u64) < max_moves && (state.len() as u64) < horizon {
        let move_index = moves.len() as u64;
        let w = match player {
            Player::I => ext_single(f, &state)?,
            Player::II => {
                let w = ext_single(g, &state)?;
                if w.is_empty() {
                    return Err(Error::PlayerIIStalled { move_index });
                }
                w
            }
        };
        state.extend_from(&w);
        moves.push(MoveRecord {
            move_index,
            player,
            state_length: state.len() as u64,
            extension_length: w.len() as u64,
        });
        player = match player {
            Player::I => Player::II,
            Player::II => Player::I,
        };
    }
    Ok(GameTranscript {
        moves,
        result_prefix: state,
    })
}

/// Player I that never extends.
#[derive(Debug, Clone, Copy, Default)]
pub struct IdentityPlayer;

impl Constructor for IdentityPlayer {
    fn extension(&self, _prefix: &Prefix<'_>) -> Result<Bits> {
        Ok(Bits::new())
    }
}

/// Appends a fixed string.
#[derive(Debug, Clone, Default)]
pub struct Append(pub Bits);

impl Constructor for Append {
    fn extension(&self, _prefix: &Prefix<'_>) -> Result<Bits> {
        Ok(self.0.clone())
    }
}

/// Appends 0 to 3 random bits drawn from the stream `(seed, |σ|)`.
#[derive(Debug, Clone, Copy)]
pub struct RandomExtender {
    pub seed: u64,
}

impl Constructor for RandomExtender {
    fn extension(&self, prefix: &Prefix<'_>) -> Result<Bits> {
        let mut rng = stream_rng(self.seed, prefix.len());
        let len = rng.random_range(0..=3);
        Ok((0..len).map(|_| rng.random::<bool>()).collect())
    }
}

/// The fixed adversaries: identity, append "0", seeded random.
pub fn adversaries(seed: u64) -> Vec<(&'static str, Box<dyn Constructor>)> {
    vec![
        ("identity", Box::new(IdentityPlayer)),
        ("append-0", Box::new(Append(Bits::zeros(1)))),
        ("random", Box::new(RandomExtender { seed })),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alternating_play() {
        let t = run_game(&Append(Bits::zeros(1)), &Append(Bits::ones(1)), 8, 100).unwrap();
        assert_eq!(t.result_prefix.to_string(), "01010101");
        assert_eq!(t.round_lengths(), vec![2, 4, 6, 8]);
        let t = run_game(&IdentityPlayer, &Append(Bits::ones(1)), 10, 100).unwrap();
        assert_eq!(t.result_prefix.to_string(), "11111");
    }

    #[test]
    fn stalled_player_two() {
        assert_eq!(
            run_game(&IdentityPlayer, &IdentityPlayer, 4, 10),
            Err(Error::PlayerIIStalled { move_index: 1 })
        );
    }

    #[test]
    fn jsonl_schema() {
        let t = run_game(&IdentityPlayer, &Append(Bits::ones(2)), 2, 10).unwrap();
        assert_eq!(
            t.to_jsonl(),
            "{\"move_index\":0,\"player\":\"I\",\"state_length\":0,\"extension_length\":0}\n\
             {\"move_index\":1,\"player\":\"II\",\"state_length\":2,\"extension_length\":2}\n"
        );
    }

    #[test]
    fn random_extender_is_reproducible() {
        let r = RandomExtender { seed: 5 };
        let a = run_game(&r, &Append(Bits::ones(1)), 40, 1000).unwrap();
        let b = run_game(&r, &Append(Bits::ones(1)), 40, 1000).unwrap();
        assert_eq!(a, b);
    }
}
