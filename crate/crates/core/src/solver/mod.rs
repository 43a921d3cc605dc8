//! Exact solving of games on finite spaces.
//!
//! Set games are solved over accumulated sets; sequence games reduce to a
//! Büchi condition on a small arena. An independent history-tree oracle is
//! provided for cross-checking.

mod buchi;
mod oracle;
mod set_game;

use thiserror::Error;

use crate::game::{GameSpec, Mode, Player, Strategy};
use crate::topology::PointSet;

pub use buchi::{Arena, BuchiSolution};
pub use oracle::{default_depth, oracle_game_tree, DepthExceeded};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SolveStats {
    pub positions: usize,
    pub moves_examined: usize,
}

#[derive(Debug, Clone)]
pub struct SolveResult {
    pub winner: Player,
    strategy_i: Strategy,
    strategy_ii: Strategy,
    pub stats: SolveStats,
    /// Player I had no legal move at all.
    pub vacuous: bool,
    /// Set games: `win_i[mask]` says whether I wins from that accumulated set.
    win_i: Option<Vec<bool>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("Player {requested} does not win, so has no certified strategy")]
pub struct NotWinner {
    pub requested: Player,
}

impl SolveResult {
    fn new(
        i_wins: bool,
        strategy_i: Strategy,
        strategy_ii: Strategy,
        stats: SolveStats,
        vacuous: bool,
        win_i: Option<Vec<bool>>,
    ) -> Self {
        SolveResult {
            winner: if i_wins { Player::I } else { Player::II },
            strategy_i,
            strategy_ii,
            stats,
            vacuous,
            win_i,
        }
    }

    /// Set games only: does I win from accumulated set `s`?
    pub fn i_wins_from(&self, s: PointSet) -> Option<bool> {
        self.win_i.as_ref().map(|w| w[s.bits() as usize])
    }

    /// The winner's positional strategy.
    pub fn winning_strategy(&self) -> &Strategy {
        match self.winner {
            Player::I => &self.strategy_i,
            Player::II => &self.strategy_ii,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveOptions {
    /// Restrict I to ⊆-minimal offers in non-injective set games.
    pub prune: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { prune: true }
    }
}

pub fn solve(spec: &GameSpec) -> SolveResult {
    solve_with(spec, SolveOptions::default())
}

pub fn solve_with(spec: &GameSpec, options: SolveOptions) -> SolveResult {
    match spec.mode() {
        Mode::Set => set_game::solve_set_game(spec, options.prune),
        Mode::Sequence => buchi::solve_buchi_game(spec),
    }
}

pub fn solve_set_game(spec: &GameSpec) -> SolveResult {
    assert_eq!(spec.mode(), Mode::Set, "set-outcome game expected");
    set_game::solve_set_game(spec, true)
}

pub fn solve_buchi_game(spec: &GameSpec) -> SolveResult {
    assert_eq!(spec.mode(), Mode::Sequence, "sequence-outcome game expected");
    buchi::solve_buchi_game(spec)
}

/// The positional strategy certifying `player`'s win.
pub fn extract_strategy(result: &SolveResult, player: Player) -> Result<Strategy, NotWinner> {
    if result.winner == player {
        Ok(result.winning_strategy().clone())
    } else {
        Err(NotWinner { requested: player })
    }
}
