//! Strategy combinators taken from constructive arguments. Each one fails
//! with a structured error when a hypothesis it relies on breaks on the
//! given space, instead of producing a strategy that merely looks right.

mod dual;
mod onion;
mod regular;

use thiserror::Error;

use crate::game::{GameError, Player, StrategyError};

pub use dual::{dual_i, dual_ii, dual_iii, dual_iv, frechet_refuter, na_oo, pi_base_from_strategy, PiBaseReport};
pub use onion::{
    finite_gdelta, ii_transfer, ii_transfer_picks, q_to_wtilde, q_to_wtilde_trace, s1_onion_schedule,
    s1_onion_witness, OnionTrace,
};
pub use regular::RegularSpace;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error("cannot separate {x} from {y} inside {within}: the space is not regular there")]
    Separation { x: String, y: String, within: String },
    #[error("no open around {x} has its closure inside {within}")]
    Shrink { x: String, within: String },
    #[error("the space is not regular")]
    NotRegular,
    #[error("μ picked {pick} at inning {inning}, outside {offered} or equal to the point")]
    IllegalMu { inning: usize, pick: String, offered: String },
    #[error("no pick available at inning {stage}: {detail}")]
    Availability { stage: usize, detail: String },
    #[error("the answer set {set} at inning {stage} is not in Ω_x")]
    NotInOmega { stage: usize, set: String },
    #[error("no neighbourhood fits inside the answers {answers} at inning {stage}")]
    NoOpenInside { stage: usize, answers: String },
    #[error("expected a Player {expected} strategy for the {role}, got Player {found}")]
    Role { expected: Player, found: Player, role: &'static str },
    #[error("{0}")]
    Precondition(String),
    #[error(transparent)]
    Strategy(#[from] StrategyError),
    #[error(transparent)]
    Game(#[from] GameError),
}
